#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "discopt/edge_cover_solver.hpp"
#include "discopt/instance.hpp"
#include "discopt/matching_engine.hpp"

namespace discopt {

/// Matching under construction: the current matching M over original
/// vertices, the matched set Z, and per-edge ownership (agent, phase).
struct MatchState {
    std::vector<int> matching; // edge ids, ascending
    std::vector<int> matched;  // Z, ascending vertex ids
    std::map<int, std::pair<int, int>> ownership; // edge id -> (agent, phase)
};

/// Per-agent scalar graphs over a common edge structure (all edges, or a
/// restriction such as a reduction gadget), with id <-> index translation.
struct ProjectionSet {
    std::vector<WeightedGraph> graphs;
    std::vector<int> id_of_index; // graph edge index -> instance edge id
    std::vector<int> index_of_id; // instance edge id -> graph edge index, -1 if absent
};

inline ProjectionSet make_projections(const ProblemInstance& inst,
                                      const std::vector<char>* allowed_edges = nullptr) {
    ProjectionSet set;
    const int k = static_cast<int>(inst.agents.size());
    set.graphs.assign(static_cast<std::size_t>(k), WeightedGraph(inst.n));
    set.index_of_id.assign(static_cast<std::size_t>(complete_edge_count(inst.n)), -1);
    for (int u = 0; u < inst.n; ++u) {
        for (int v = u + 1; v < inst.n; ++v) {
            int id = edge_id(inst.n, u, v);
            if (allowed_edges && !(*allowed_edges)[static_cast<std::size_t>(id)]) continue;
            set.index_of_id[static_cast<std::size_t>(id)] = static_cast<int>(set.id_of_index.size());
            set.id_of_index.push_back(id);
            for (int a = 0; a < k; ++a)
                set.graphs[static_cast<std::size_t>(a)].add_edge(u, v, inst.agent_cost(a, u, v));
        }
    }
    return set;
}

struct AugmentationCandidate {
    int agent = -1;
    std::vector<int> edges; // the full matching on Z + V(F), edge ids ascending
    double linear_cost = 0.0;
    double discounted_cost = 0.0;
    double ratio = std::numeric_limits<double>::infinity();
    int saturated = 0; // t
};

/// Scans agents and even t, looking for the cheapest-per-new-vertex matching
/// extension with respect to M (edges of M count as free). Infeasible (a,t)
/// pairs are skipped; on a complete instance none are.
inline AugmentationCandidate best_augmentation(const ProblemInstance& inst,
                                               const ProjectionSet& projections,
                                               const MatchState& state) {
    const int n = inst.n;
    const int z_size = static_cast<int>(state.matched.size());
    if (z_size >= n)
        throw DomainError("best_augmentation: every vertex is already matched");

    std::vector<int> matching_indices;
    for (int e : state.matching) {
        int idx = projections.index_of_id[static_cast<std::size_t>(e)];
        if (idx == -1)
            throw DomainError("best_augmentation: M uses an edge outside the projection");
        matching_indices.push_back(idx);
    }

    AugmentationCandidate best;
    for (int a = 0; a < static_cast<int>(inst.agents.size()); ++a) {
        for (int t = 2; t <= n - z_size; t += 2) {
            SaturatingResult sat;
            try {
                sat = min_matching_saturating(projections.graphs[static_cast<std::size_t>(a)],
                                              matching_indices, state.matched, t);
            } catch (const InfeasibleError&) {
                continue;
            }
            AugmentationCandidate cand;
            cand.agent = a;
            for (int idx : sat.edge_indices)
                cand.edges.push_back(projections.id_of_index[static_cast<std::size_t>(idx)]);
            std::sort(cand.edges.begin(), cand.edges.end());
            cand.linear_cost = sat.added_weight;
            cand.discounted_cost = inst.agents[static_cast<std::size_t>(a)].discount.evaluate(sat.added_weight);
            cand.saturated = t;
            cand.ratio = cand.discounted_cost / t;
            bool better = best.agent == -1 || cand.ratio < best.ratio ||
                          (cand.ratio == best.ratio &&
                           (cand.agent < best.agent || (cand.agent == best.agent && cand.edges < best.edges)));
            if (better) best = std::move(cand);
        }
    }
    if (best.agent == -1)
        throw InfeasibleError("best_augmentation: no feasible augmentation");
    return best;
}

/// Adaptive greedy perfect matching: each phase may rematch previously
/// matched vertices, but once matched a vertex stays matched. An edge mask
/// restricts the search to a subgraph (used by the path reduction).
inline SolveResult solve_perfect_matching_adaptive(const ProblemInstance& inst,
                                                   const std::vector<char>* allowed_edges = nullptr) {
    inst.check();
    if (inst.kind != ProblemKind::perfect_matching)
        throw DomainError("solve_perfect_matching_adaptive: instance kind mismatch");

    const int n = inst.n;
    ProjectionSet projections = make_projections(inst, allowed_edges);

    SolveResult result;
    MatchState state;
    int phase = 0;
    while (static_cast<int>(state.matched.size()) < n) {
        AugmentationCandidate cand = best_augmentation(inst, projections, state);

        std::vector<char> was_matched(static_cast<std::size_t>(n), 0);
        for (int v : state.matched) was_matched[static_cast<std::size_t>(v)] = 1;

        std::map<int, std::pair<int, int>> next_ownership;
        std::vector<int> next_matched;
        for (int e : cand.edges) {
            auto it = state.ownership.find(e);
            if (it != state.ownership.end())
                next_ownership.emplace(e, it->second); // surviving edge keeps its owner
            else
                next_ownership.emplace(e, std::make_pair(cand.agent, phase));
            auto [u, v] = edge_vertices(n, e);
            next_matched.push_back(u);
            next_matched.push_back(v);
        }
        std::sort(next_matched.begin(), next_matched.end());

        if (static_cast<int>(next_matched.size()) != static_cast<int>(state.matched.size()) + cand.saturated)
            throw std::logic_error("solve_perfect_matching_adaptive: phase did not grow Z by t");
        for (int v : state.matched)
            if (!std::binary_search(next_matched.begin(), next_matched.end(), v))
                throw std::logic_error("solve_perfect_matching_adaptive: a matched vertex was dropped");

        for (int v : next_matched)
            if (!was_matched[static_cast<std::size_t>(v)])
                result.ledger.entries.push_back({"v" + std::to_string(v), cand.ratio, phase});

        state.matching = cand.edges;
        state.matched = std::move(next_matched);
        state.ownership = std::move(next_ownership);
        ++phase;
    }

    for (const auto& [e, owner] : state.ownership)
        result.allocation.assignment.emplace(e, owner.first);

    if (!validate_solution(inst, result.allocation))
        throw std::logic_error("solve_perfect_matching_adaptive: output is not a perfect matching");
    double price = total_price(inst, result.allocation);
    double bound = result.ledger.sum();
    if (price > bound + 1e-9 * (1.0 + bound))
        throw std::logic_error("solve_perfect_matching_adaptive: price exceeds the potential sum");
    return result;
}

} // namespace discopt
