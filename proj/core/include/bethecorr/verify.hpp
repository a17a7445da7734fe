#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bethecorr/types.hpp"

// Self-contained property suites over the library's algebraic identities:
// seeded random instances, worst observed deviation per property, and a
// fixed-format text report.  Identical (suite, seed, trials) inputs produce
// byte-identical reports; everything runs single-threaded in a fixed order.

namespace bethecorr::verify {

// One checked property.  `worst` is the largest deviation metric observed
// over all instances; the property passes iff worst <= tolerance.  Metrics
// are relative errors unless the property is a structural check (violation
// count) or an explicit ratio bound.
struct PropertyResult {
    std::string name;
    int instances = 0;
    double worst = 0.0;
    double tolerance = 0.0;

    bool passed() const { return worst <= tolerance; }
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<PropertyResult> properties;

    bool all_passed() const;
};

// Suites in execution order: kernel, lemmas, formfactor, stringforms,
// generating.  run_suite also accepts "all".
const std::vector<std::string>& suite_names();

// trials sets the instance count of every randomized property; structural
// properties over fixed grids keep their fixed counts.  Throws DomainError
// for an unknown suite name or trials < 1.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, int trials);

std::string render_report(const SuiteReport& report);

} // namespace bethecorr::verify
