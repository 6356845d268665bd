#include <set>
#include <string>

#include "bohmtoa/validation.hpp"
#include "doctest.h"

using namespace bohmtoa::validation;

TEST_CASE("run_validation: every check passes and reports its tolerance") {
    const auto results = run_validation();
    REQUIRE(results.size() == 7);
    std::set<std::string> names;
    for (const auto& r : results) {
        INFO(r.name << " measured " << r.measured << " tolerance " << r.tolerance);
        CHECK(r.passed);
        CHECK(r.tolerance > 0.0);
        CHECK(r.measured <= r.tolerance);
        names.insert(r.name);
    }
    CHECK(names.size() == 7);
    CHECK(names.count("monte_carlo_chi_square") == 1);
}

TEST_CASE("run_validation: perturbation makes every check fail") {
    ValidationOptions opts;
    opts.perturb = true;
    for (const auto& r : run_validation(opts)) {
        INFO(r.name);
        CHECK_FALSE(r.passed);
    }
}

TEST_CASE("run_validation is deterministic for a fixed seed") {
    const auto a = run_validation({123, false});
    const auto b = run_validation({123, false});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].measured == b[i].measured);
}
