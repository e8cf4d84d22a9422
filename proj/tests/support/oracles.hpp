#pragma once

// Test-side brute-force oracles. These stay independent of the engine and
// solver code paths they are used to check: plain enumeration and bitmask
// DP only, no blossom, no auxiliary-graph constructions.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "discopt/instance.hpp"
#include "discopt/matching_engine.hpp"

namespace testsupport {

using discopt::WeightedGraph;

inline double u01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// weights on the 1/64 grid in [0, 20]: sums and halves stay exact in doubles
inline double grid_weight(std::mt19937_64& eng) {
    return static_cast<double>(eng() % 1281) / 64.0;
}

inline WeightedGraph random_graph(std::mt19937_64& eng, int n, double density) {
    WeightedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (u01(eng) < density) g.add_edge(u, v, grid_weight(eng));
    return g;
}

inline std::optional<double> brute_perfect_matching(const WeightedGraph& g) {
    const int n = g.vertex_count;
    if (n % 2 != 0) return std::nullopt;
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    std::optional<double> best;
    std::function<void(double)> rec = [&](double acc) {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (mate[static_cast<std::size_t>(i)] == -1) { u = i; break; }
        if (u == -1) {
            if (!best || acc < *best) best = acc;
            return;
        }
        for (int v = u + 1; v < n; ++v) {
            if (mate[static_cast<std::size_t>(v)] != -1) continue;
            int idx = g.find_edge(u, v);
            if (idx == -1) continue;
            mate[static_cast<std::size_t>(u)] = v;
            mate[static_cast<std::size_t>(v)] = u;
            rec(acc + g.edges[static_cast<std::size_t>(idx)].weight);
            mate[static_cast<std::size_t>(u)] = -1;
            mate[static_cast<std::size_t>(v)] = -1;
        }
    };
    rec(0.0);
    return best;
}

// cheapest edge set covering every vertex of target_mask (edges may touch
// vertices outside the mask); bitmask DP over the target vertices
inline std::optional<double> brute_cover_of(const WeightedGraph& g, unsigned target_mask) {
    const int n = g.vertex_count;
    int bits = 0;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (target_mask >> v & 1) pos[static_cast<std::size_t>(v)] = bits++;
    if (bits == 0) return 0.0;

    std::vector<unsigned> edge_bits;
    for (const auto& e : g.edges) {
        unsigned m = 0;
        if (pos[static_cast<std::size_t>(e.u)] >= 0) m |= 1u << pos[static_cast<std::size_t>(e.u)];
        if (pos[static_cast<std::size_t>(e.v)] >= 0) m |= 1u << pos[static_cast<std::size_t>(e.v)];
        edge_bits.push_back(m);
    }
    const unsigned full = (1u << bits) - 1;
    const double inf = 1e100;
    std::vector<double> dp(full + 1, inf);
    dp[0] = 0.0;
    for (unsigned m = 0; m < full; ++m) {
        if (dp[m] >= inf) continue;
        int next = 0;
        while (m >> next & 1) ++next;
        for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
            if (!(edge_bits[ei] >> next & 1)) continue;
            unsigned nm = m | edge_bits[ei];
            double w = dp[m] + g.edges[ei].weight;
            if (w < dp[nm]) dp[nm] = w;
        }
    }
    if (dp[full] >= inf) return std::nullopt;
    return dp[full];
}

inline std::optional<double> brute_edge_cover(const WeightedGraph& g) {
    if (g.vertex_count == 0) return 0.0;
    return brute_cover_of(g, (1u << g.vertex_count) - 1);
}

// min over all S with |S - Q| >= d of the cheapest cover of S
inline std::optional<double> brute_quota_cover(const WeightedGraph& g, const std::vector<int>& Q, int d) {
    const int n = g.vertex_count;
    unsigned qmask = 0;
    for (int v : Q) qmask |= 1u << v;
    std::optional<double> best;
    for (unsigned s = 0; s < (1u << n); ++s) {
        if (__builtin_popcount(s & ~qmask) < d) continue;
        auto c = brute_cover_of(g, s);
        if (c && (!best || *c < *best)) best = *c;
    }
    return best;
}

// min extra weight over matchings that keep Z saturated and saturate exactly
// t new vertices: choose the new vertices, then enumerate matchings
inline std::optional<double> brute_saturating(const WeightedGraph& g, const std::vector<int>& M,
                                              const std::vector<int>& Z, int t) {
    const int n = g.vertex_count;
    std::vector<char> in_z(static_cast<std::size_t>(n), 0);
    std::vector<char> in_m(g.edges.size(), 0);
    for (int v : Z) in_z[static_cast<std::size_t>(v)] = 1;
    for (int i : M) in_m[static_cast<std::size_t>(i)] = 1;
    std::vector<int> outside;
    for (int v = 0; v < n; ++v)
        if (!in_z[static_cast<std::size_t>(v)]) outside.push_back(v);

    std::optional<double> best;
    std::vector<int> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == t) {
            std::vector<char> use(static_cast<std::size_t>(n), 0);
            for (int v : Z) use[static_cast<std::size_t>(v)] = 1;
            for (int v : pick) use[static_cast<std::size_t>(v)] = 1;
            std::vector<int> mate(static_cast<std::size_t>(n), -1);
            std::function<void(double)> match = [&](double acc) {
                int u = -1;
                for (int i = 0; i < n; ++i)
                    if (use[static_cast<std::size_t>(i)] && mate[static_cast<std::size_t>(i)] == -1) {
                        u = i;
                        break;
                    }
                if (u == -1) {
                    if (!best || acc < *best) best = acc;
                    return;
                }
                for (int v = u + 1; v < n; ++v) {
                    if (!use[static_cast<std::size_t>(v)] || mate[static_cast<std::size_t>(v)] != -1) continue;
                    int idx = g.find_edge(u, v);
                    if (idx == -1) continue;
                    mate[static_cast<std::size_t>(u)] = v;
                    mate[static_cast<std::size_t>(v)] = u;
                    match(acc + (in_m[static_cast<std::size_t>(idx)] ? 0.0 : g.edges[static_cast<std::size_t>(idx)].weight));
                    mate[static_cast<std::size_t>(u)] = -1;
                    mate[static_cast<std::size_t>(v)] = -1;
                }
            };
            match(0.0);
            return;
        }
        for (std::size_t i = from; i < outside.size(); ++i) {
            pick.push_back(outside[i]);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return best;
}

// structure checkers written against the raw definitions (reachability via
// closure, straight degree counts) rather than the library's DFS helpers
inline bool naive_is_structure(const discopt::ProblemInstance& inst, const discopt::Allocation& alloc) {
    using discopt::ProblemKind;
    const int n = inst.n;
    if (inst.kind == ProblemKind::reverse_auction)
        return static_cast<int>(alloc.assignment.size()) == n;

    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int v = 0; v < n; ++v) reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 1;
    for (const auto& [e, agent] : alloc.assignment) {
        (void)agent;
        auto [u, v] = discopt::edge_vertices(n, e);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }
    for (int w = 0; w < n; ++w)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] &&
                    reach[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)])
                    reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;

    const int edges = static_cast<int>(alloc.assignment.size());
    switch (inst.kind) {
    case ProblemKind::edge_cover:
        for (int v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] < 1) return false;
        return true;
    case ProblemKind::spanning_tree: {
        if (edges != n - 1) return false;
        for (int v = 1; v < n; ++v)
            if (!reach[0][static_cast<std::size_t>(v)]) return false;
        return true;
    }
    case ProblemKind::perfect_matching:
        for (int v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] != 1) return false;
        return true;
    case ProblemKind::shortest_path: {
        if (deg[static_cast<std::size_t>(inst.s)] != 1 || deg[static_cast<std::size_t>(inst.t)] != 1)
            return false;
        int touched = 0;
        for (int v = 0; v < n; ++v) {
            int d = deg[static_cast<std::size_t>(v)];
            if (d > 0) ++touched;
            if (v != inst.s && v != inst.t && d != 0 && d != 2) return false;
            // every used vertex must sit on the s-side component
            if (d > 0 && !reach[static_cast<std::size_t>(inst.s)][static_cast<std::size_t>(v)]) return false;
        }
        if (!reach[static_cast<std::size_t>(inst.s)][static_cast<std::size_t>(inst.t)]) return false;
        return edges == touched - 1;
    }
    default:
        return false;
    }
}

} // namespace testsupport
