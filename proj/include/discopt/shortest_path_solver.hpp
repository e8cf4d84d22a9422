#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "discopt/instance.hpp"
#include "discopt/matching_solver.hpp"

namespace discopt {

/// Auxiliary perfect-matching instance for the path reduction, with the maps
/// back to the original instance. Every vertex v outside {s,t} splits into
/// v' and v'' joined by a free edge; an s-t path corresponds to a perfect
/// matching of equal per-agent cost, with off-path vertices matched free.
struct GadgetMap {
    ProblemInstance aux;          // kind perfect_matching
    std::vector<int> origin;      // aux edge id -> original edge id; -1 filler; -2 sentinel
    std::vector<char> structural; // aux edge id -> gadget edge (filler or original-backed)
    std::vector<int> prime, dprime; // original vertex -> aux split ids (-1 for s, t)
    int aux_s = 0, aux_t = 1;
    int n = 0, s = 0, t = 0;      // original shape
};

/// Builds the auxiliary graph: twin copies (u',v') / (u'',v'') per inner
/// edge, (s,u') for edges at s, both (u',t) and (u'',t) for edges at t, and
/// the direct (s,t) edge. Non-gadget pairs carry a large sentinel cost.
inline GadgetMap build_matching_instance(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::shortest_path)
        throw DomainError("build_matching_instance: instance kind mismatch");

    GadgetMap gm;
    gm.n = inst.n;
    gm.s = inst.s;
    gm.t = inst.t;
    gm.prime.assign(static_cast<std::size_t>(inst.n), -1);
    gm.dprime.assign(static_cast<std::size_t>(inst.n), -1);
    int next = 2;
    for (int v = 0; v < inst.n; ++v) {
        if (v == inst.s || v == inst.t) continue;
        gm.prime[static_cast<std::size_t>(v)] = next++;
        gm.dprime[static_cast<std::size_t>(v)] = next++;
    }
    const int aux_n = next;
    const int aux_edges = complete_edge_count(aux_n);
    const double sentinel = 1.0 + inst.n * inst.max_cost();

    gm.aux.n = aux_n;
    gm.aux.kind = ProblemKind::perfect_matching;
    const int k = static_cast<int>(inst.agents.size());
    for (int a = 0; a < k; ++a) {
        AgentSpec spec;
        spec.id = inst.agents[static_cast<std::size_t>(a)].id;
        spec.discount = inst.agents[static_cast<std::size_t>(a)].discount;
        spec.costs.assign(static_cast<std::size_t>(aux_edges), sentinel);
        gm.aux.agents.push_back(std::move(spec));
    }
    gm.origin.assign(static_cast<std::size_t>(aux_edges), -2);
    gm.structural.assign(static_cast<std::size_t>(aux_edges), 0);

    auto put = [&](int au, int av, int original_edge) {
        int id = edge_id(aux_n, au, av);
        gm.origin[static_cast<std::size_t>(id)] = original_edge;
        gm.structural[static_cast<std::size_t>(id)] = 1;
        for (int a = 0; a < k; ++a)
            gm.aux.agents[static_cast<std::size_t>(a)].costs[static_cast<std::size_t>(id)] =
                original_edge < 0 ? 0.0
                                  : inst.agents[static_cast<std::size_t>(a)].cost(original_edge);
    };

    for (int v = 0; v < inst.n; ++v) {
        if (v == inst.s || v == inst.t) continue;
        put(gm.prime[static_cast<std::size_t>(v)], gm.dprime[static_cast<std::size_t>(v)], -1);
    }
    put(gm.aux_s, gm.aux_t, edge_id(inst.n, inst.s, inst.t));
    for (int u = 0; u < inst.n; ++u) {
        if (u == inst.s || u == inst.t) continue;
        put(gm.aux_s, gm.prime[static_cast<std::size_t>(u)], edge_id(inst.n, inst.s, u));
        put(gm.prime[static_cast<std::size_t>(u)], gm.aux_t, edge_id(inst.n, u, inst.t));
        put(gm.dprime[static_cast<std::size_t>(u)], gm.aux_t, edge_id(inst.n, u, inst.t));
        for (int v = u + 1; v < inst.n; ++v) {
            if (v == inst.s || v == inst.t) continue;
            put(gm.prime[static_cast<std::size_t>(u)], gm.prime[static_cast<std::size_t>(v)], edge_id(inst.n, u, v));
            put(gm.dprime[static_cast<std::size_t>(u)], gm.dprime[static_cast<std::size_t>(v)], edge_id(inst.n, u, v));
        }
    }
    gm.aux.check();
    return gm;
}

/// Pulls a perfect matching of the auxiliary instance back to original edges:
/// the pullback is one simple s-t path plus circuits; the circuits are
/// dropped (never increases any agent's bundle) and the path is returned.
inline Allocation extract_path(const GadgetMap& gm, const Allocation& matching_alloc,
                               const ProblemInstance& inst) {
    if (!validate_solution(gm.aux, matching_alloc))
        throw ValidationError("extract_path: allocation is not a perfect matching on the auxiliary instance");

    // each original vertex collects its matched structural edges
    std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(gm.n)); // (edge id, agent)
    for (const auto& [aux_edge, agent] : matching_alloc.assignment) {
        if (!gm.structural[static_cast<std::size_t>(aux_edge)])
            throw ValidationError("extract_path: matching uses a non-gadget edge");
        int orig = gm.origin[static_cast<std::size_t>(aux_edge)];
        if (orig < 0) continue; // filler
        auto [u, v] = edge_vertices(gm.n, orig);
        incident[static_cast<std::size_t>(u)].emplace_back(orig, agent);
        incident[static_cast<std::size_t>(v)].emplace_back(orig, agent);
    }
    if (incident[static_cast<std::size_t>(gm.s)].size() != 1 ||
        incident[static_cast<std::size_t>(gm.t)].size() != 1)
        throw ValidationError("extract_path: pullback degree at s or t is not one");

    Allocation path;
    int current = gm.s;
    int arrived_by = -1;
    while (current != gm.t) {
        const auto& inc = incident[static_cast<std::size_t>(current)];
        std::pair<int, int> step{-1, -1};
        for (const auto& e : inc)
            if (e.first != arrived_by) step = e;
        if (step.first == -1 || (current != gm.s && inc.size() != 2))
            throw ValidationError("extract_path: pullback does not form a simple s-t path");
        path.assignment[step.first] = step.second;
        auto [u, v] = edge_vertices(gm.n, step.first);
        current = u == current ? v : u;
        arrived_by = step.first;
    }
    if (!validate_solution(inst, path))
        throw ValidationError("extract_path: extracted edges are not an s-t path");
    return path;
}

/// Forward map: lifts an s-t path allocation to a perfect matching of the
/// auxiliary instance with identical per-agent bundle costs. Off-path
/// vertices are matched on their free split edge, assigned to agent 0.
inline Allocation path_to_matching(const GadgetMap& gm, const Allocation& path_alloc,
                                   const ProblemInstance& inst) {
    if (!validate_solution(inst, path_alloc))
        throw ValidationError("path_to_matching: allocation is not an s-t path");

    std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(gm.n));
    for (const auto& [e, agent] : path_alloc.assignment) {
        auto [u, v] = edge_vertices(gm.n, e);
        incident[static_cast<std::size_t>(u)].emplace_back(e, agent);
        incident[static_cast<std::size_t>(v)].emplace_back(e, agent);
    }

    Allocation matching;
    std::vector<char> on_path(static_cast<std::size_t>(gm.n), 0);
    on_path[static_cast<std::size_t>(gm.s)] = on_path[static_cast<std::size_t>(gm.t)] = 1;

    int current = gm.s;
    int arrived_by = -1;
    int entry_aux = gm.aux_s; // aux vertex that the next aux edge must leave from
    while (current != gm.t) {
        std::pair<int, int> step{-1, -1};
        for (const auto& e : incident[static_cast<std::size_t>(current)])
            if (e.first != arrived_by) step = e;
        auto [u, v] = edge_vertices(gm.n, step.first);
        int next_vertex = u == current ? v : u;
        on_path[static_cast<std::size_t>(next_vertex)] = 1;

        int to_aux;
        int leave_aux = -1;
        if (next_vertex == gm.t) {
            to_aux = gm.aux_t; // both split copies connect to t
        } else if (entry_aux == gm.aux_s ||
                   entry_aux == gm.prime[static_cast<std::size_t>(current)]) {
            // continue on the primed twin copy, leaving the other side free
            to_aux = gm.prime[static_cast<std::size_t>(next_vertex)];
            leave_aux = gm.dprime[static_cast<std::size_t>(next_vertex)];
        } else {
            to_aux = gm.dprime[static_cast<std::size_t>(next_vertex)];
            leave_aux = gm.prime[static_cast<std::size_t>(next_vertex)];
        }
        matching.assignment[edge_id(gm.aux.n, entry_aux, to_aux)] = step.second;
        entry_aux = leave_aux;
        current = next_vertex;
        arrived_by = step.first;
    }
    for (int v = 0; v < gm.n; ++v) {
        if (on_path[static_cast<std::size_t>(v)]) continue;
        matching.assignment[edge_id(gm.aux.n, gm.prime[static_cast<std::size_t>(v)],
                                    gm.dprime[static_cast<std::size_t>(v)])] = 0;
    }
    if (!validate_solution(gm.aux, matching))
        throw std::logic_error("path_to_matching: lifted matching is not perfect");
    return matching;
}

/// Reduction pipeline: build the gadget, run the adaptive matcher restricted
/// to gadget edges, pull the matching back to a path.
inline SolveResult solve_shortest_path(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::shortest_path)
        throw DomainError("solve_shortest_path: instance kind mismatch");

    GadgetMap gm = build_matching_instance(inst);
    SolveResult matching = solve_perfect_matching_adaptive(gm.aux, &gm.structural);

    SolveResult result;
    result.allocation = extract_path(gm, matching.allocation, inst);
    result.ledger = std::move(matching.ledger);
    result.matching_price = total_price(gm.aux, matching.allocation);

    double price = total_price(inst, result.allocation);
    if (price > result.matching_price + 1e-9 * (1.0 + result.matching_price))
        throw std::logic_error("solve_shortest_path: path price exceeds the matching price");
    return result;
}

} // namespace discopt
