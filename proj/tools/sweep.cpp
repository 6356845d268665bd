#include "sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace bohmtoa::cli {

namespace {

constexpr std::array<std::string_view, 9> kAxes = {"r", "phi", "omega", "mass", "hbar", "L", "L/l", "dL", "T"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_values(std::string_view text) {
    if (text.find(':') == std::string_view::npos) return parse_list(text);
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:count");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double count = parse_number(parts[2]);
    if (count < 1.0 || count != std::floor(count) || count > 1e6) {
        throw std::invalid_argument("range count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return values;
}

}  // namespace

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> values;
    for (std::string_view item : split(text, ',')) values.push_back(parse_number(item));
    return values;
}

std::vector<SweepAxis> parse_sweep(std::string_view spec) {
    std::vector<SweepAxis> axes;
    for (std::string_view part : split(spec, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("sweep part needs name=values: '" + std::string(part) + "'");
        const std::string name(trim(part.substr(0, eq)));
        if (std::find(kAxes.begin(), kAxes.end(), name) == kAxes.end()) {
            throw std::invalid_argument("unknown sweep variable '" + name + "'");
        }
        for (const SweepAxis& a : axes) {
            if (a.name == name) throw std::invalid_argument("sweep variable '" + name + "' given twice");
        }
        axes.push_back({name, parse_values(part.substr(eq + 1))});
    }
    if (axes.empty()) throw std::invalid_argument("empty sweep specification");
    return axes;
}

std::string column_name(const std::string& axis) { return axis == "L/l" ? "L_over_l" : axis; }

}  // namespace bohmtoa::cli
