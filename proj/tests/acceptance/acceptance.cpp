#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xrego/suite.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
    xrego::SuiteOptions opts;
    std::vector<int> only;
    std::string report_dir;
    app.add_option("--seed", opts.seed, "master seed");
    app.add_option("--only", only, "criterion ids to run (default: all)")->check(CLI::Range(1, xrego::kCriteria));
    app.add_option("--report", report_dir, "write the detailed report to this directory");
    CLI11_PARSE(app, argc, argv);
    if (only.empty())
        for (int i = 1; i <= xrego::kCriteria; ++i) only.push_back(i);

    xrego::ValidationResult all;
    int failed = 0;
    for (int id : only) {
        const auto r = xrego::run_criterion(id, opts, all.report);
        all.criteria.push_back(r);
        failed += !r.ok();
        std::string time = std::to_string(r.seconds).substr(0, 6) + "s";
        if (r.time_limit > 0) time += " (limit " + std::to_string(static_cast<int>(r.time_limit)) + "s)";
        if (!r.within_time()) time += " TOO SLOW";
        std::printf("%s criterion %d: %s | %s | %s\n", r.ok() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    time.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    if (!report_dir.empty()) all.write(report_dir);
    std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
    return failed == 0 ? 0 : 1;
}
