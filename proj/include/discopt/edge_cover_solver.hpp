#pragma once

#include <limits>
#include <set>
#include <vector>

#include "discopt/instance.hpp"
#include "discopt/matching_engine.hpp"
#include "discopt/projection.hpp"

namespace discopt {

/// One (agent, S) candidate of the implicit set system: S with its cheapest
/// cover, the discounted price, and the average cost that drives the greedy.
struct RatioCandidate {
    int agent = -1;
    std::vector<int> covered;     // S, ascending vertex ids
    std::vector<int> cover_edges; // edge indices into that agent's projection
    double linear_cost = 0.0;
    double discounted_cost = 0.0;
    double ratio = std::numeric_limits<double>::infinity();
    int newly_covered = 0; // |S - Q|
};

/// One agent's view of the current search graph.
struct AgentView {
    int agent = 0;
    const DiscountCurve* curve = nullptr;
    const WeightedGraph* graph = nullptr;
};

namespace detail {

// global tie-break: ratio, then agent id, then sorted vertex list, then edges
inline bool candidate_less(const RatioCandidate& a, const RatioCandidate& b) {
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    if (a.agent != b.agent) return a.agent < b.agent;
    if (a.covered != b.covered) return a.covered < b.covered;
    return a.cover_edges < b.cover_edges;
}

} // namespace detail

/// Finds min cost(a,S)/|S-Q| over all agents and all S, by scanning the quota
/// family S_1..S_n: S_d is the cheapest set coverable with |S_d - Q| >= d, and
/// the true ratio minimizer is always matched by one of them.
inline RatioCandidate best_ratio_set(const std::vector<AgentView>& views,
                                     const std::vector<char>& in_q) {
    const int n = static_cast<int>(in_q.size());
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
        if (in_q[static_cast<std::size_t>(v)]) q.push_back(v);
    const int free_vertices = n - static_cast<int>(q.size());
    if (free_vertices <= 0)
        throw DomainError("best_ratio_set: Q already covers every vertex");

    RatioCandidate best;
    for (const auto& view : views) {
        for (int d = 1; d <= free_vertices; ++d) {
            QuotaCoverResult quota = min_cover_with_quota(*view.graph, q, d);
            RatioCandidate cand;
            cand.agent = view.agent;
            cand.covered = quota.covered;
            cand.cover_edges = quota.edge_indices;
            cand.linear_cost = quota.weight;
            cand.discounted_cost = view.curve->evaluate(quota.weight);
            cand.newly_covered = 0;
            for (int v : cand.covered)
                if (!in_q[static_cast<std::size_t>(v)]) ++cand.newly_covered;
            cand.ratio = cand.discounted_cost / cand.newly_covered;
            if (best.agent == -1 || detail::candidate_less(cand, best))
                best = std::move(cand);
        }
    }
    return best;
}

struct SolveResult {
    Allocation allocation;
    PotentialLedger ledger;
    int contracted_count = 0;  // spanning tree: super-vertices created
    int rounds = 0;            // baseline spanning tree: cover/contract rounds
    double matching_price = 0; // shortest path: auxiliary matching price
};

/// Greedy discounted edge cover: repeatedly take the best-ratio (a,S), then
/// re-cover each agent's accumulated vertex set U_a in one optimal cover C_a.
inline SolveResult solve_edge_cover(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::edge_cover)
        throw DomainError("solve_edge_cover: instance kind mismatch");

    const int n = inst.n;
    const int k = static_cast<int>(inst.agents.size());
    std::vector<WeightedGraph> graphs;
    graphs.reserve(static_cast<std::size_t>(k));
    std::vector<AgentView> views;
    for (int a = 0; a < k; ++a)
        graphs.push_back(agent_projection(inst, a));
    for (int a = 0; a < k; ++a)
        views.push_back({a, &inst.agents[static_cast<std::size_t>(a)].discount, &graphs[static_cast<std::size_t>(a)]});

    SolveResult result;
    std::vector<char> in_q(static_cast<std::size_t>(n), 0);
    std::vector<std::set<int>> covered_by(static_cast<std::size_t>(k)); // U_a
    int q_size = 0;
    int phase = 0;
    double prev_ratio = -std::numeric_limits<double>::infinity();
    while (q_size < n) {
        RatioCandidate cand = best_ratio_set(views, in_q);
        if (cand.ratio < prev_ratio - 1e-9 * (1.0 + std::abs(prev_ratio)))
            throw std::logic_error("solve_edge_cover: greedy ratio decreased between phases");
        prev_ratio = std::max(prev_ratio, cand.ratio);
        for (int v : cand.covered) {
            covered_by[static_cast<std::size_t>(cand.agent)].insert(v);
            if (!in_q[static_cast<std::size_t>(v)]) {
                in_q[static_cast<std::size_t>(v)] = 1;
                ++q_size;
                result.ledger.entries.push_back({"v" + std::to_string(v), cand.ratio, phase});
            }
        }
        ++phase;
    }

    // final per-agent re-cover; shared edges go to the lowest agent index
    for (int a = 0; a < k; ++a) {
        const auto& u_a = covered_by[static_cast<std::size_t>(a)];
        if (u_a.empty()) continue;
        std::vector<int> target(u_a.begin(), u_a.end());
        QuotaCoverResult cover = min_cover_of_subset(graphs[static_cast<std::size_t>(a)], target);
        for (int e : cover.edge_indices)
            result.allocation.assignment.emplace(e, a); // no overwrite
    }

    if (!validate_solution(inst, result.allocation))
        throw std::logic_error("solve_edge_cover: output is not an edge cover");
    double price = total_price(inst, result.allocation);
    double bound = result.ledger.sum();
    if (price > bound + 1e-9 * (1.0 + bound))
        throw std::logic_error("solve_edge_cover: price exceeds the potential sum");
    return result;
}

} // namespace discopt
