#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "discopt/instance.hpp"

namespace discopt {

/// Size cap for exhaustive solving; DISCOPT_ORACLE_CAP overrides the default.
inline int oracle_cap() {
    if (const char* env = std::getenv("DISCOPT_ORACLE_CAP")) {
        int v = std::atoi(env);
        if (v >= 2) return v;
    }
    return 8;
}

struct OracleResult {
    Allocation allocation;
    double price = std::numeric_limits<double>::infinity();
};

namespace oracle_detail {

// Exact best partition of `elements` among the agents: depth-first over
// assignments with the monotone price of the partial assignment as the
// pruning bound. The first optimum in scan order is kept, so the reported
// allocation is deterministic.
class SplitSearch {
public:
    explicit SplitSearch(const ProblemInstance& inst) : inst_(inst), k_(static_cast<int>(inst.agents.size())) {}

    void run(const std::vector<int>& elements, OracleResult& best) {
        elements_ = &elements;
        best_ = &best;
        linear_.assign(static_cast<std::size_t>(k_), 0.0);
        value_.assign(static_cast<std::size_t>(k_), 0.0);
        chosen_.assign(elements.size(), 0);
        descend(0, 0.0);
    }

private:
    void descend(std::size_t idx, double partial) {
        if (partial >= best_->price) return;
        if (idx == elements_->size()) {
            best_->price = partial;
            best_->allocation.assignment.clear();
            for (std::size_t i = 0; i < elements_->size(); ++i)
                best_->allocation.assignment[(*elements_)[i]] = chosen_[i];
            return;
        }
        const int element = (*elements_)[idx];
        for (int a = 0; a < k_; ++a) {
            const auto& agent = inst_.agents[static_cast<std::size_t>(a)];
            double old_linear = linear_[static_cast<std::size_t>(a)];
            double old_value = value_[static_cast<std::size_t>(a)];
            double new_linear = old_linear + agent.cost(element);
            double new_value = agent.discount.evaluate(new_linear);
            linear_[static_cast<std::size_t>(a)] = new_linear;
            value_[static_cast<std::size_t>(a)] = new_value;
            chosen_[idx] = a;
            descend(idx + 1, partial - old_value + new_value);
            linear_[static_cast<std::size_t>(a)] = old_linear;
            value_[static_cast<std::size_t>(a)] = old_value;
        }
    }

    const ProblemInstance& inst_;
    int k_;
    const std::vector<int>* elements_ = nullptr;
    OracleResult* best_ = nullptr;
    std::vector<double> linear_, value_;
    std::vector<int> chosen_;
};

// Minimal edge covers are star forests: partition the vertices into blocks of
// size >= 2 and pick a center per block.
inline void enumerate_star_forests(int n, const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> unassigned(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) unassigned[static_cast<std::size_t>(v)] = v;
    std::vector<int> edges;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& rest) {
        if (rest.empty()) {
            emit(edges);
            return;
        }
        int v = rest.front();
        std::vector<int> others(rest.begin() + 1, rest.end());
        const int r = static_cast<int>(others.size());
        for (unsigned mask = 1; mask < (1u << r); ++mask) {
            std::vector<int> block{v};
            std::vector<int> remaining;
            for (int i = 0; i < r; ++i) {
                if (mask >> i & 1)
                    block.push_back(others[static_cast<std::size_t>(i)]);
                else
                    remaining.push_back(others[static_cast<std::size_t>(i)]);
            }
            const int b = static_cast<int>(block.size());
            const int center_options = b == 2 ? 1 : b;
            for (int c = 0; c < center_options; ++c) {
                int center = block[static_cast<std::size_t>(c)];
                std::size_t rollback = edges.size();
                for (int x : block)
                    if (x != center) edges.push_back(edge_id(n, center, x));
                rec(remaining);
                edges.resize(rollback);
            }
        }
    };
    rec(unassigned);
}

inline void enumerate_spanning_trees(int n, const std::function<void(const std::vector<int>&)>& emit) {
    if (n == 2) {
        std::vector<int> edges{edge_id(2, 0, 1)};
        emit(edges);
        return;
    }
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<int> edges;
    while (true) {
        // decode the Pruefer sequence
        std::fill(degree.begin(), degree.end(), 1);
        for (int v : seq) ++degree[static_cast<std::size_t>(v)];
        edges.clear();
        std::vector<int> deg = degree;
        for (int s : seq) {
            for (int leaf = 0; leaf < n; ++leaf) {
                if (deg[static_cast<std::size_t>(leaf)] == 1) {
                    edges.push_back(edge_id(n, leaf, s));
                    --deg[static_cast<std::size_t>(leaf)];
                    --deg[static_cast<std::size_t>(s)];
                    break;
                }
            }
        }
        int a = -1, b = -1;
        for (int v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] == 1) (a == -1 ? a : b) = v;
        edges.push_back(edge_id(n, a, b));
        emit(edges);

        int pos = n - 3;
        while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) {
            seq[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++seq[static_cast<std::size_t>(pos)];
    }
}

inline void enumerate_perfect_matchings(int n, const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> edges;
    std::function<void()> rec = [&]() {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!used[static_cast<std::size_t>(v)]) { u = v; break; }
        if (u == -1) {
            emit(edges);
            return;
        }
        used[static_cast<std::size_t>(u)] = 1;
        for (int v = u + 1; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            edges.push_back(edge_id(n, u, v));
            rec();
            edges.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
        used[static_cast<std::size_t>(u)] = 0;
    };
    rec();
}

inline void enumerate_st_paths(int n, int s, int t, const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> edges;
    std::function<void(int)> rec = [&](int u) {
        if (u == t) {
            emit(edges);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (v == u || visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = 1;
            edges.push_back(edge_id(n, u, v));
            rec(v);
            edges.pop_back();
            visited[static_cast<std::size_t>(v)] = 0;
        }
    };
    visited[static_cast<std::size_t>(s)] = 1;
    rec(s);
}

} // namespace oracle_detail

inline int auxiliary_vertex_count(int n) { return 2 * (n - 2) + 2; }

/// Exhaustive exact solver: enumerates every structure in the instance's
/// family and every agent partition of it. Refuses instances above the size
/// cap with a size report.
inline OracleResult exact_solve(const ProblemInstance& inst) {
    inst.check();
    const int cap = oracle_cap();
    const int n = inst.n;
    const int k = static_cast<int>(inst.agents.size());

    auto refuse = [&](const std::string& why) {
        throw DomainError("exact_solve: instance above cap (" + why + "; n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ", cap=" + std::to_string(cap) + ")");
    };
    if (inst.kind == ProblemKind::reverse_auction) {
        double work = 1.0;
        for (int i = 0; i < n; ++i) work *= k;
        if (work > 2e7) refuse("k^n item assignments exceed the work budget");
    } else {
        if (k > 3) refuse("more than 3 agents");
        if (inst.kind == ProblemKind::shortest_path) {
            if (auxiliary_vertex_count(n) > cap + 4)
                refuse("auxiliary graph larger than " + std::to_string(cap + 4) + " vertices");
        } else if (inst.kind == ProblemKind::perfect_matching) {
            if (n > cap + 4) refuse("vertex count above the matching cap");
        } else if (n > cap) {
            refuse("vertex count above cap");
        }
    }

    OracleResult best;
    oracle_detail::SplitSearch split(inst);
    auto consider = [&](const std::vector<int>& elements) { split.run(elements, best); };

    switch (inst.kind) {
    case ProblemKind::edge_cover:
        oracle_detail::enumerate_star_forests(n, consider);
        break;
    case ProblemKind::spanning_tree:
        oracle_detail::enumerate_spanning_trees(n, consider);
        break;
    case ProblemKind::perfect_matching:
        oracle_detail::enumerate_perfect_matchings(n, consider);
        break;
    case ProblemKind::shortest_path:
        oracle_detail::enumerate_st_paths(n, inst.s, inst.t, consider);
        break;
    case ProblemKind::reverse_auction: {
        std::vector<int> items(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) items[static_cast<std::size_t>(i)] = i;
        consider(items);
        break;
    }
    }
    if (!std::isfinite(best.price))
        throw InfeasibleError("exact_solve: no feasible structure");
    return best;
}

struct RatioReport {
    double algorithm_price = 0.0;
    double oracle_price = 0.0;
    double ratio = 1.0;
    double bound = 0.0; // ln(n) + 1 with n the relevant vertex count
    bool pass = false;
};

/// Compares a solver's output against the exact optimum. The bound line uses
/// the instance vertex count, except shortest paths, which are measured
/// against their auxiliary graph size.
inline RatioReport ratio_report(const ProblemInstance& inst, const Allocation& solver_output) {
    RatioReport report;
    report.algorithm_price = total_price(inst, solver_output);
    report.oracle_price = exact_solve(inst).price;
    int bound_n = inst.kind == ProblemKind::shortest_path ? auxiliary_vertex_count(inst.n) : inst.n;
    report.bound = std::log(static_cast<double>(bound_n)) + 1.0;
    if (report.oracle_price > 0.0)
        report.ratio = report.algorithm_price / report.oracle_price;
    else
        report.ratio = report.algorithm_price <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
    report.pass = report.ratio >= 1.0 - 1e-9 && report.ratio <= report.bound + 1e-9;
    return report;
}

} // namespace discopt
