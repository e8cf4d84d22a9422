#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "discopt/edge_cover_solver.hpp"
#include "discopt/instance.hpp"
#include "discopt/matching_engine.hpp"

namespace discopt {

/// Graph under contraction: super-vertices partition V; the per-agent cost
/// between two super-vertices is the minimum crossing original cost, realized
/// by a recorded representative edge.
class ContractedGraph {
public:
    struct Super {
        std::string label;        // "v<i>" or "z<j>"
        std::vector<int> members; // ascending original vertex ids
    };

    explicit ContractedGraph(const ProblemInstance& inst) : inst_(&inst) {
        for (int v = 0; v < inst.n; ++v)
            supers_.push_back({"v" + std::to_string(v), {v}});
    }

    int super_count() const { return static_cast<int>(supers_.size()); }
    const Super& super(int i) const { return supers_[static_cast<std::size_t>(i)]; }
    int created_count() const { return z_created_; } // n' so far

    /// Scalar projection for one agent. Edge index e of the returned graph
    /// joins supers edge_vertices(m, e); representatives[e] is the original
    /// edge id realizing the crossing minimum for this agent.
    WeightedGraph agent_graph(int agent, std::vector<int>* representatives) const {
        const int m = super_count();
        WeightedGraph g(m);
        if (representatives) representatives->clear();
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                double best = std::numeric_limits<double>::infinity();
                int rep = -1;
                for (int u : supers_[static_cast<std::size_t>(i)].members)
                    for (int v : supers_[static_cast<std::size_t>(j)].members) {
                        double c = inst_->agent_cost(agent, u, v);
                        if (c < best) {
                            best = c;
                            rep = edge_id(inst_->n, u, v);
                        }
                    }
                g.add_edge(i, j, best);
                if (representatives) representatives->push_back(rep);
            }
        }
        return g;
    }

    /// Merges each component (a set of current super indices, size >= 2) into
    /// one new super-vertex appended to the creation history.
    void contract(const std::vector<std::vector<int>>& components) {
        const int m = super_count();
        std::vector<int> owner(static_cast<std::size_t>(m), -1);
        for (std::size_t c = 0; c < components.size(); ++c) {
            if (components[c].size() < 2)
                throw DomainError("contract: component smaller than two super-vertices");
            for (int s : components[c]) {
                if (s < 0 || s >= m)
                    throw DomainError("contract: super-vertex index out of range");
                if (owner[static_cast<std::size_t>(s)] != -1)
                    throw DomainError("contract: overlapping components");
                owner[static_cast<std::size_t>(s)] = static_cast<int>(c);
            }
        }
        std::vector<Super> next;
        for (int s = 0; s < m; ++s)
            if (owner[static_cast<std::size_t>(s)] == -1)
                next.push_back(std::move(supers_[static_cast<std::size_t>(s)]));
        for (const auto& comp : components) {
            Super z;
            z.label = "z" + std::to_string(++z_created_);
            for (int s : comp)
                z.members.insert(z.members.end(), supers_[static_cast<std::size_t>(s)].members.begin(),
                                 supers_[static_cast<std::size_t>(s)].members.end());
            std::sort(z.members.begin(), z.members.end());
            next.push_back(std::move(z));
        }
        supers_ = std::move(next);
    }

private:
    const ProblemInstance* inst_;
    std::vector<Super> supers_;
    int z_created_ = 0;
};

namespace detail {

// connected components of the cover's endpoints, as sorted super index lists
inline std::vector<std::vector<int>> cover_components(int super_count,
                                                      const std::vector<std::pair<int, int>>& cover) {
    std::vector<int> parent(static_cast<std::size_t>(super_count));
    for (int i = 0; i < super_count; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::vector<char> touched(static_cast<std::size_t>(super_count), 0);
    for (const auto& [u, v] : cover) {
        touched[static_cast<std::size_t>(u)] = touched[static_cast<std::size_t>(v)] = 1;
        parent[static_cast<std::size_t>(find(u))] = find(v);
    }
    std::map<int, std::vector<int>> groups;
    for (int s = 0; s < super_count; ++s)
        if (touched[static_cast<std::size_t>(s)])
            groups[find(s)].push_back(s);
    std::vector<std::vector<int>> components;
    for (auto& [root, members] : groups)
        components.push_back(std::move(members));
    return components;
}

} // namespace detail

/// Removes edges until the selection is a spanning tree. From each cycle the
/// edge whose removal drops the price most is deleted (ties by edge id).
inline Allocation prune_to_tree(const ProblemInstance& inst, const Allocation& selected) {
    Allocation alloc = selected;
    const int n = inst.n;

    auto components_ok = [&]() {
        std::vector<int> comp;
        return detail::selected_components(inst, alloc, comp) == 1;
    };
    if (!components_ok())
        throw InfeasibleError("prune_to_tree: selected edges do not connect the graph");

    while (static_cast<int>(alloc.assignment.size()) > n - 1) {
        // locate one cycle by DFS over the selected edges
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n)); // (neighbor, edge)
        for (const auto& [e, agent] : alloc.assignment) {
            (void)agent;
            auto [u, v] = edge_vertices(n, e);
            adj[static_cast<std::size_t>(u)].emplace_back(v, e);
            adj[static_cast<std::size_t>(v)].emplace_back(u, e);
        }
        std::vector<int> state(static_cast<std::size_t>(n), 0), via_edge(static_cast<std::size_t>(n), -1),
            parent(static_cast<std::size_t>(n), -1);
        std::vector<int> cycle_edges;
        std::function<bool(int)> dfs = [&](int u) {
            state[static_cast<std::size_t>(u)] = 1;
            for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
                if (e == via_edge[static_cast<std::size_t>(u)]) continue;
                if (state[static_cast<std::size_t>(v)] == 1) {
                    cycle_edges.push_back(e);
                    for (int x = u; x != v; x = parent[static_cast<std::size_t>(x)])
                        cycle_edges.push_back(via_edge[static_cast<std::size_t>(x)]);
                    return true;
                }
                if (state[static_cast<std::size_t>(v)] == 0) {
                    parent[static_cast<std::size_t>(v)] = u;
                    via_edge[static_cast<std::size_t>(v)] = e;
                    if (dfs(v)) return true;
                }
            }
            state[static_cast<std::size_t>(u)] = 2;
            return false;
        };
        for (int v0 = 0; v0 < n && cycle_edges.empty(); ++v0)
            if (state[static_cast<std::size_t>(v0)] == 0) dfs(v0);
        if (cycle_edges.empty())
            throw std::logic_error("prune_to_tree: too many edges but no cycle found");

        std::sort(cycle_edges.begin(), cycle_edges.end());
        int best_edge = -1;
        double best_price = std::numeric_limits<double>::infinity();
        for (int e : cycle_edges) {
            Allocation without = alloc;
            without.assignment.erase(e);
            double price = total_price(inst, without);
            if (price < best_price) {
                best_price = price;
                best_edge = e;
            }
        }
        alloc.assignment.erase(best_edge);
    }
    return alloc;
}

/// Adaptive greedy spanning tree: interleaves the best-ratio cover search
/// with contraction of the chosen cover's components, then prunes.
inline SolveResult solve_spanning_tree_adaptive(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::spanning_tree)
        throw DomainError("solve_spanning_tree_adaptive: instance kind mismatch");

    const int k = static_cast<int>(inst.agents.size());
    ContractedGraph cg(inst);
    SolveResult result;
    Allocation selected;
    int phase = 0;
    while (cg.super_count() > 1) {
        const int m = cg.super_count();
        std::vector<WeightedGraph> graphs(static_cast<std::size_t>(k));
        std::vector<std::vector<int>> reps(static_cast<std::size_t>(k));
        std::vector<AgentView> views;
        for (int a = 0; a < k; ++a) {
            graphs[static_cast<std::size_t>(a)] = cg.agent_graph(a, &reps[static_cast<std::size_t>(a)]);
            views.push_back({a, &inst.agents[static_cast<std::size_t>(a)].discount, &graphs[static_cast<std::size_t>(a)]});
        }
        std::vector<char> in_q(static_cast<std::size_t>(m), 0); // empty Q on the contracted graph
        RatioCandidate cand = best_ratio_set(views, in_q);

        for (int s : cand.covered)
            result.ledger.entries.push_back({cg.super(s).label, cand.ratio, phase});

        std::vector<std::pair<int, int>> cover_pairs;
        for (int e : cand.cover_edges) {
            int rep = reps[static_cast<std::size_t>(cand.agent)][static_cast<std::size_t>(e)];
            selected.assignment.emplace(rep, cand.agent);
            cover_pairs.push_back({graphs[static_cast<std::size_t>(cand.agent)].edges[static_cast<std::size_t>(e)].u,
                                   graphs[static_cast<std::size_t>(cand.agent)].edges[static_cast<std::size_t>(e)].v});
        }
        cg.contract(detail::cover_components(m, cover_pairs));
        ++phase;
    }
    result.contracted_count = cg.created_count();
    result.allocation = prune_to_tree(inst, selected);

    if (!validate_solution(inst, result.allocation))
        throw std::logic_error("solve_spanning_tree_adaptive: output is not a spanning tree");
    double price = total_price(inst, result.allocation);
    double bound = result.ledger.sum();
    if (price > bound + 1e-9 * (1.0 + bound))
        throw std::logic_error("solve_spanning_tree_adaptive: price exceeds the potential sum");
    return result;
}

/// Baseline: alternate a full greedy edge cover with whole-component
/// contraction until one super-vertex remains; at most ceil(log2 n) rounds.
inline SolveResult solve_spanning_tree_baseline(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::spanning_tree)
        throw DomainError("solve_spanning_tree_baseline: instance kind mismatch");

    const int k = static_cast<int>(inst.agents.size());
    ContractedGraph cg(inst);
    SolveResult result;
    Allocation selected;
    int max_rounds = 1;
    while ((1 << max_rounds) < inst.n) ++max_rounds;
    while (cg.super_count() > 1) {
        const int m = cg.super_count();
        ProblemInstance sub;
        sub.n = m;
        sub.kind = ProblemKind::edge_cover;
        std::vector<std::vector<int>> reps(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
            WeightedGraph g = cg.agent_graph(a, &reps[static_cast<std::size_t>(a)]);
            AgentSpec spec;
            spec.id = inst.agents[static_cast<std::size_t>(a)].id;
            spec.discount = inst.agents[static_cast<std::size_t>(a)].discount;
            spec.costs.resize(g.edges.size());
            for (std::size_t e = 0; e < g.edges.size(); ++e)
                spec.costs[e] = g.edges[e].weight;
            sub.agents.push_back(std::move(spec));
        }
        SolveResult cover = solve_edge_cover(sub);

        std::vector<std::pair<int, int>> cover_pairs;
        for (const auto& [e, agent] : cover.allocation.assignment) {
            int rep = reps[static_cast<std::size_t>(agent)][static_cast<std::size_t>(e)];
            selected.assignment.emplace(rep, agent);
            auto [u, v] = edge_vertices(m, e);
            cover_pairs.push_back({u, v});
        }
        cg.contract(detail::cover_components(m, cover_pairs));
        ++result.rounds;
        if (result.rounds > max_rounds)
            throw std::logic_error("solve_spanning_tree_baseline: round count exceeded ceil(log2 n)");
    }
    result.allocation = prune_to_tree(inst, selected);
    if (!validate_solution(inst, result.allocation))
        throw std::logic_error("solve_spanning_tree_baseline: output is not a spanning tree");
    return result;
}

} // namespace discopt
