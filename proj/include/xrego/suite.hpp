#pragma once

// Named acceptance criteria, shared by `xrego validate` and the acceptance
// binary. Each criterion appends its detailed checks to a TheoryReport.

#include <cstdint>
#include <string>
#include <vector>

#include "xrego/harness.hpp"
#include "xrego/theory.hpp"

namespace xrego {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0: no limit
    std::string detail;

    bool within_time() const { return time_limit <= 0.0 || seconds <= time_limit; }
    bool ok() const { return pass && within_time(); }
};

struct SuiteOptions {
    std::uint64_t seed = 20240101;
    unsigned workers = 0;  // criterion 7 only; 0 reads XREGO_WORKERS
};

// 1 J closed form, 2 distribution laws, 3 equality case, 4 bound ordering,
// 5 dimension decay, 6 convergence curve, 7 local variants vs no-embedding,
// 8 structural invariants, 9 benchmark minima.
inline constexpr int kCriteria = 9;
std::string criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opts, TheoryReport& report);

struct ValidationResult {
    TheoryReport report;
    std::vector<CriterionResult> criteria;

    bool passed() const;
    // theory_report.json, theory_checks.csv, convergence.csv, criteria.csv
    void write(const std::string& dir) const;
};

// The theory suite: every criterion except the D=100 harness comparison
// (7), which is included on request.
ValidationResult run_validation(const SuiteOptions& opts, bool include_harness = false);

}  // namespace xrego
