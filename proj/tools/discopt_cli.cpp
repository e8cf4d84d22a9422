// discopt: generate, solve, verify, and benchmark discounted multi-agent
// combinatorial optimization instances (edge cover, spanning tree, perfect
// matching, shortest s-t path, reverse auction).
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "discopt/io.hpp"
#include "discopt/oracle.hpp"
#include "discopt/solver.hpp"

namespace {

using namespace discopt;

ProblemKind kind_from_cli(const std::string& name) {
    std::string canonical = name;
    std::replace(canonical.begin(), canonical.end(), '-', '_');
    auto kind = kind_from_name(canonical);
    if (!kind)
        throw DomainError("unknown kind '" + name + "'");
    return *kind;
}

int run_solve(const std::string& kind_name, const std::string& in, const std::string& out,
              const std::string& ledger_path, bool baseline) {
    ProblemInstance inst = read_instance(in);
    ProblemKind kind = kind_from_cli(kind_name);
    if (inst.kind != kind)
        throw DomainError(in + " is a " + discopt::kind_name(inst.kind) + " instance, not " + kind_name);
    if (baseline && kind != ProblemKind::spanning_tree)
        throw DomainError("--baseline applies to spanning-tree only");

    SolveResult result = solve(inst, baseline);
    write_allocation(out, inst, result.allocation);
    if (!ledger_path.empty())
        write_ledger(ledger_path, result.ledger, result.contracted_count);
    std::printf("solved %s: price %.17g, %zu elements assigned\n", in.c_str(),
                total_price(inst, result.allocation), result.allocation.assignment.size());
    return 0;
}

int run_validate(const std::string& in, const std::string& alloc_path) {
    ProblemInstance inst = read_instance(in);
    AllocationFile file = read_allocation(alloc_path, inst);
    bool structure_ok = validate_solution(inst, file.allocation);
    double recomputed = structure_ok ? total_price(inst, file.allocation) : 0.0;
    bool price_ok = structure_ok && std::abs(recomputed - file.price) <= 1e-9 * (1.0 + std::abs(recomputed));
    if (structure_ok && price_ok) {
        std::printf("PASS: %s is a valid %s solution, price %.17g\n", alloc_path.c_str(),
                    kind_name(inst.kind).c_str(), recomputed);
        return 0;
    }
    if (!structure_ok)
        std::printf("FAIL: %s is not a valid %s solution\n", alloc_path.c_str(), kind_name(inst.kind).c_str());
    else
        std::printf("FAIL: stored price %.17g does not match recomputed %.17g\n", file.price, recomputed);
    return 1;
}

int run_oracle(const std::string& in, const std::string& out) {
    ProblemInstance inst = read_instance(in);
    OracleResult result = exact_solve(inst);
    std::printf("oracle %s: optimal price %.17g\n", in.c_str(), result.price);
    if (!out.empty())
        write_allocation(out, inst, result.allocation);
    return 0;
}

int run_gen_random(const std::string& kind_name, int n, int k, std::uint64_t seed,
                   const std::string& out, double cost_min, double cost_max,
                   const std::string& curves, int s, int t) {
    RandomSpec spec;
    spec.kind = kind_from_cli(kind_name);
    spec.n = n;
    spec.k = k;
    spec.seed = seed;
    spec.cost_lo = cost_min;
    spec.cost_hi = cost_max;
    spec.s = s;
    spec.t = t;
    auto family = curve_family_from_name(curves);
    if (!family)
        throw DomainError("unknown curve family '" + curves + "'");
    spec.curves = *family;
    ProblemInstance inst = random_instance(spec);
    write_instance(out, inst);
    std::printf("wrote %s (%s, n=%d, k=%d, seed=%llu)\n", out.c_str(), kind_name.c_str(), n, k,
                static_cast<unsigned long long>(seed));
    return 0;
}

int run_gen_set_cover(const std::string& in, double eps, double big_m, const std::string& out) {
    SetCoverInstance sc = read_set_cover(in);
    ProblemInstance inst = generate_from_set_cover(sc, eps, big_m);
    write_instance(out, inst);
    std::printf("wrote %s (reverse auction, %d items, %zu agents)\n", out.c_str(), inst.n,
                inst.agents.size());
    return 0;
}

int run_bench(const std::string& corpus, const std::string& out) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw DomainError("bench: no .json instances under " + corpus);

    nlohmann::json report;
    report["instances"] = nlohmann::json::array();
    struct Agg {
        int count = 0, failures = 0;
        double max_ratio = 0.0, ratio_sum = 0.0;
    };
    std::map<std::string, Agg> aggregates;
    bool all_pass = true;

    for (const auto& file : files) {
        ProblemInstance inst = read_instance(file);
        SolveResult solved = solve(inst);
        RatioReport rr = ratio_report(inst, solved.allocation);
        std::string name = std::filesystem::path(file).filename().string();
        std::printf("%-40s %-16s n=%-3d ratio %.4f bound %.4f %s\n", name.c_str(),
                    kind_name(inst.kind).c_str(), inst.n, rr.ratio, rr.bound,
                    rr.pass ? "pass" : "FAIL");
        report["instances"].push_back({{"file", name},
                                       {"kind", kind_name(inst.kind)},
                                       {"n", inst.n},
                                       {"algorithm_price", rr.algorithm_price},
                                       {"oracle_price", rr.oracle_price},
                                       {"ratio", rr.ratio},
                                       {"bound", rr.bound},
                                       {"pass", rr.pass}});
        Agg& agg = aggregates[kind_name(inst.kind)];
        ++agg.count;
        agg.max_ratio = std::max(agg.max_ratio, rr.ratio);
        agg.ratio_sum += rr.ratio;
        if (!rr.pass) {
            ++agg.failures;
            all_pass = false;
        }
    }

    nlohmann::json aggregate = nlohmann::json::object();
    for (const auto& [kind, agg] : aggregates)
        aggregate[kind] = {{"count", agg.count},
                           {"max_ratio", agg.max_ratio},
                           {"mean_ratio", agg.ratio_sum / agg.count},
                           {"failures", agg.failures}};
    report["aggregate"] = std::move(aggregate);
    report["all_pass"] = all_pass;
    if (!out.empty())
        io_detail::save_file(out, report);
    std::printf("%zu instances, %s\n", files.size(), all_pass ? "all ratios within bound" : "RATIO FAILURES");
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discounted multi-agent combinatorial optimization toolkit"};
    app.require_subcommand(1);

    std::string kind, in, out, ledger, alloc, curves = "concave", corpus;
    bool baseline = false;
    int n = 6, k = 2, s = -1, t = -1;
    std::uint64_t seed = 0;
    double cost_min = 1.0, cost_max = 10.0, eps = 1e-6, big_m = 0.0;

    auto* cmd_solve = app.add_subcommand("solve", "run the greedy solver for an instance");
    cmd_solve->add_option("--kind", kind, "edge-cover|spanning-tree|perfect-matching|shortest-path|reverse-auction")->required();
    cmd_solve->add_option("--in", in, "instance file")->required();
    cmd_solve->add_option("--out", out, "allocation output file")->required();
    cmd_solve->add_option("--ledger", ledger, "potential ledger output file");
    cmd_solve->add_flag("--baseline", baseline, "spanning tree: use the repeated-cover baseline");

    auto* cmd_validate = app.add_subcommand("validate", "check an allocation against its instance");
    cmd_validate->add_option("--in", in, "instance file")->required();
    cmd_validate->add_option("--alloc", alloc, "allocation file")->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "exact exhaustive solve (small instances)");
    cmd_oracle->add_option("--in", in, "instance file")->required();
    cmd_oracle->add_option("--out", out, "optional optimal allocation output file");

    auto* cmd_gen = app.add_subcommand("gen", "generate instances");
    cmd_gen->require_subcommand(1);
    auto* cmd_gen_random = cmd_gen->add_subcommand("random", "seeded random instance");
    cmd_gen_random->add_option("--kind", kind, "problem kind")->required();
    cmd_gen_random->add_option("--n", n, "vertex count (item count for reverse-auction)")->required();
    cmd_gen_random->add_option("--k", k, "agent count")->required();
    cmd_gen_random->add_option("--seed", seed, "random seed")->required();
    cmd_gen_random->add_option("--out", out, "instance output file")->required();
    cmd_gen_random->add_option("--cost-min", cost_min, "lower cost bound (default 1)");
    cmd_gen_random->add_option("--cost-max", cost_max, "upper cost bound (default 10)");
    cmd_gen_random->add_option("--curves", curves, "identity|concave|flat|two-segment|mixed");
    cmd_gen_random->add_option("--s", s, "path source (default 0)");
    cmd_gen_random->add_option("--t", t, "path target (default n-1)");

    auto* cmd_gen_sc = cmd_gen->add_subcommand("set-cover", "reverse auction from a set cover instance");
    cmd_gen_sc->add_option("--in", in, "set cover file")->required();
    cmd_gen_sc->add_option("--eps", eps, "second-segment slope (default 1e-6)");
    cmd_gen_sc->add_option("--big-m", big_m, "sentinel item cost (default: derived)");
    cmd_gen_sc->add_option("--out", out, "instance output file")->required();

    auto* cmd_bench = app.add_subcommand("bench", "solve + oracle ratio sweep over a corpus directory");
    cmd_bench->add_option("--corpus", corpus, "directory of instance files")->required();
    cmd_bench->add_option("--out", out, "JSON report output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_solve->parsed())
            return run_solve(kind, in, out, ledger, baseline);
        if (cmd_validate->parsed())
            return run_validate(in, alloc);
        if (cmd_oracle->parsed())
            return run_oracle(in, out);
        if (cmd_gen->parsed()) {
            if (cmd_gen_random->parsed())
                return run_gen_random(kind, n, k, seed, out, cost_min, cost_max, curves, s, t);
            return run_gen_set_cover(in, eps, big_m, out);
        }
        if (cmd_bench->parsed())
            return run_bench(corpus, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
