#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xrego/harness.hpp"
#include "xrego/suite.hpp"

namespace {

using namespace xrego;

ExperimentPlan load_plan(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
    return ExperimentPlan::from_json(j);
}

void check_dims(const ExperimentPlan& plan, bool large) {
    for (int D : plan.dims)
        if (D > 100 && !large)
            throw InvalidArgument("D=" + std::to_string(D) + " needs --large (runs take hours)");
}

int cmd_gen(const std::vector<std::string>& problems, const std::vector<int>& dims, std::uint64_t seed,
            const std::string& out) {
    write_manifest(out, build_manifest(problems, dims, seed));
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_run(const std::string& config, std::uint64_t seed, const std::string& out, unsigned workers,
            bool large) {
    const ExperimentPlan plan = load_plan(config);
    check_dims(plan, large);
    const ResultTable table = run_plan(plan, seed, workers);
    const auto cells = summarize(table.rows);
    std::vector<ProfileCurve> curves;
    if (!cells.empty()) curves = build_profiles(cells);
    emit(table.rows, curves, out);
    for (const auto& e : table.errors) std::fprintf(stderr, "cell error: %s\n", e.c_str());
    std::printf("%zu runs, %zu cell errors, output in %s\n", cells.size(), table.errors.size(), out.c_str());
    return table.errors.empty() ? 0 : 1;
}

int cmd_validate(std::uint64_t seed, const std::string& out, bool harness, const std::vector<int>& only,
                 unsigned workers) {
    SuiteOptions opts;
    opts.seed = seed;
    opts.workers = workers;
    ValidationResult res;
    if (only.empty()) {
        res = run_validation(opts, harness);
    } else {
        for (int id : only) res.criteria.push_back(run_criterion(id, opts, res.report));
    }
    for (const auto& c : res.criteria)
        std::printf("%s %d %s (%.2fs): %s\n", c.ok() ? "PASS" : "FAIL", c.id, c.title.c_str(), c.seconds,
                    c.detail.c_str());
    if (!out.empty()) res.write(out);
    return res.passed() ? 0 : 1;
}

int cmd_profile(const std::string& results, const std::string& out) {
    std::ifstream f(results);
    if (!f) throw IoError("cannot open " + results);
    const auto rows = read_results_csv(f);
    emit(rows, build_profiles(summarize(rows)), out);
    std::printf("profiles written to %s\n", out.c_str());
    return 0;
}

int cmd_replay(const std::string& config, std::uint64_t seed, const std::string& key) {
    const ExperimentPlan plan = load_plan(config);
    for (const auto& cell : enumerate_cells(plan, seed)) {
        if (cell.key.str() != key) continue;
        const RunRecord rec = run_cell(cell, plan);
        write_csv_header(std::cout);
        write_csv_rows(std::cout, rec, cell.key.rep);
        return 0;
    }
    std::fprintf(stderr, "no cell %s in this plan\n", key.c_str());
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-embedding global optimization experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string config, out;

    auto* gen = app.add_subcommand("gen", "write a problem manifest");
    std::vector<std::string> problems;
    std::vector<int> dims{10, 100};
    gen->add_option("--problems", problems, "problem names (default: all)");
    gen->add_option("--dims", dims, "ambient dimensions");
    gen->add_option("--seed", seed, "problem seed");
    gen->add_option("-o,--out", out, "manifest path")->required();

    auto* run = app.add_subcommand("run", "execute an experiment plan");
    bool large = false;
    run->add_option("-c,--config", config, "plan file (JSON); defaults apply when omitted");
    run->add_option("--seed", seed, "master seed");
    run->add_option("-o,--out", out, "output directory")->required();
    run->add_option("-j,--workers", workers, "worker threads (default: XREGO_WORKERS or 1)");
    run->add_flag("--large", large, "allow D > 100");

    auto* val = app.add_subcommand("validate", "run the theory validation suite");
    bool harness = false;
    std::vector<int> only;
    std::uint64_t vseed = SuiteOptions{}.seed;
    val->add_option("--seed", vseed, "master seed");
    val->add_option("-o,--out", out, "report directory");
    val->add_flag("--with-harness", harness, "include the D=100 local-solver comparison");
    val->add_option("--only", only, "criterion ids")->check(CLI::Range(1, kCriteria));
    val->add_option("-j,--workers", workers, "worker threads for the harness comparison");

    auto* prof = app.add_subcommand("profile", "rebuild profiles and medians from results.csv");
    std::string results;
    prof->add_option("results", results, "results.csv")->required();
    prof->add_option("-o,--out", out, "output directory")->required();

    auto* rep = app.add_subcommand("replay", "re-run one cell and print its rows");
    std::string key;
    rep->add_option("-c,--config", config, "plan file (JSON)");
    rep->add_option("--seed", seed, "master seed of the original run");
    rep->add_option("cell", key, "cell key, e.g. branin/D10/d2/direct/A-REGO/rep1")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_gen(problems, dims, seed, out);
        if (*run) return cmd_run(config, seed, out, workers, large);
        if (*val) return cmd_validate(vseed, out, harness, only, workers);
        if (*prof) return cmd_profile(results, out);
        if (*rep) return cmd_replay(config, seed, key);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
