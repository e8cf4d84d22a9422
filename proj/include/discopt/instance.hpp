#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "discopt/concave.hpp"
#include "discopt/errors.hpp"

namespace discopt {

enum class ProblemKind { edge_cover, spanning_tree, perfect_matching, shortest_path, reverse_auction };

inline std::string kind_name(ProblemKind k) {
    switch (k) {
    case ProblemKind::edge_cover: return "edge_cover";
    case ProblemKind::spanning_tree: return "spanning_tree";
    case ProblemKind::perfect_matching: return "perfect_matching";
    case ProblemKind::shortest_path: return "shortest_path";
    case ProblemKind::reverse_auction: return "reverse_auction";
    }
    return "?";
}

inline std::optional<ProblemKind> kind_from_name(const std::string& s) {
    if (s == "edge_cover") return ProblemKind::edge_cover;
    if (s == "spanning_tree") return ProblemKind::spanning_tree;
    if (s == "perfect_matching") return ProblemKind::perfect_matching;
    if (s == "shortest_path") return ProblemKind::shortest_path;
    if (s == "reverse_auction") return ProblemKind::reverse_auction;
    return std::nullopt;
}

// costs are stored densely over the complete graph; solvers are polynomial
// but the exhaustive oracle is not, so instances are capped
inline constexpr int kMaxVertices = 512;

/// Dense upper-triangle edge indexing for the complete graph on n vertices.
inline int complete_edge_count(int n) { return n * (n - 1) / 2; }

inline int edge_id(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline std::pair<int, int> edge_vertices(int n, int id) {
    int u = 0;
    int row = n - 1;
    while (id >= row) {
        id -= row;
        --row;
        ++u;
    }
    return {u, u + 1 + id};
}

/// One agent: edge (or item) costs plus her discount function.
struct AgentSpec {
    int id = 0;
    DiscountCurve discount;
    std::vector<double> costs; // indexed by edge id (graph kinds) or item id (reverse auction)

    double cost(int element) const { return costs[static_cast<std::size_t>(element)]; }
};

/// A complete-graph problem instance (or an item set for reverse auctions).
struct ProblemInstance {
    int n = 0; // vertex count, or item count for reverse_auction
    ProblemKind kind = ProblemKind::edge_cover;
    int s = -1, t = -1; // shortest_path endpoints
    std::vector<AgentSpec> agents;

    int element_count() const {
        return kind == ProblemKind::reverse_auction ? n : complete_edge_count(n);
    }
    double agent_cost(int agent_index, int u, int v) const {
        return agents[static_cast<std::size_t>(agent_index)].cost(edge_id(n, u, v));
    }
    double max_cost() const {
        double m = 0.0;
        for (const auto& a : agents)
            for (double c : a.costs) m = std::max(m, c);
        return m;
    }

    void check() const {
        if (n < 2) throw DomainError("instance: n must be at least 2");
        if (n > kMaxVertices)
            throw DomainError("instance: n exceeds the cap of " + std::to_string(kMaxVertices));
        if (agents.empty()) throw DomainError("instance: at least one agent required");
        if (kind == ProblemKind::perfect_matching && n % 2 != 0)
            throw DomainError("instance: perfect matching requires even n");
        if (kind == ProblemKind::shortest_path) {
            if (s < 0 || s >= n || t < 0 || t >= n || s == t)
                throw DomainError("instance: shortest path needs distinct s, t in range");
        }
        const std::size_t want = static_cast<std::size_t>(element_count());
        for (const auto& a : agents) {
            if (a.costs.size() != want)
                throw DomainError("instance: agent " + std::to_string(a.id) + " has wrong cost count");
            for (double c : a.costs)
                if (!(c >= 0.0) || !std::isfinite(c))
                    throw DomainError("instance: agent " + std::to_string(a.id) + " has a negative or non-finite cost");
        }
    }
};

/// Partition of the selected edges/items among agents: element id -> agent index.
struct Allocation {
    std::map<int, int> assignment;

    bool operator==(const Allocation& o) const { return assignment == o.assignment; }
};

/// Per-vertex potentials recorded by the greedy solvers. Ids are "v<i>" for
/// original vertices and "z<j>" for contracted super-vertices.
struct PotentialLedger {
    struct Entry {
        std::string id;
        double potential = 0.0;
        int phase = 0;
    };
    std::vector<Entry> entries;

    double sum() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.potential;
        return s;
    }
};

/// Objective value sum_a d_a(sum of agent a's bundle costs).
inline double total_price(const ProblemInstance& inst, const Allocation& alloc) {
    std::vector<double> linear(inst.agents.size(), 0.0);
    const int elems = inst.element_count();
    for (const auto& [elem, agent] : alloc.assignment) {
        if (elem < 0 || elem >= elems)
            throw ValidationError("total_price: unknown element id " + std::to_string(elem));
        if (agent < 0 || agent >= static_cast<int>(inst.agents.size()))
            throw ValidationError("total_price: unknown agent index " + std::to_string(agent));
        linear[static_cast<std::size_t>(agent)] += inst.agents[static_cast<std::size_t>(agent)].cost(elem);
    }
    double price = 0.0;
    for (std::size_t a = 0; a < inst.agents.size(); ++a)
        price += inst.agents[a].discount.evaluate(linear[a]);
    return price;
}

namespace detail {

inline std::vector<int> vertex_degrees(const ProblemInstance& inst, const Allocation& alloc) {
    std::vector<int> deg(static_cast<std::size_t>(inst.n), 0);
    for (const auto& [elem, agent] : alloc.assignment) {
        (void)agent;
        auto [u, v] = edge_vertices(inst.n, elem);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

// component labels over the selected edges only
inline int selected_components(const ProblemInstance& inst, const Allocation& alloc, std::vector<int>& comp) {
    comp.assign(static_cast<std::size_t>(inst.n), -1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(inst.n));
    for (const auto& [elem, agent] : alloc.assignment) {
        (void)agent;
        auto [u, v] = edge_vertices(inst.n, elem);
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    int labels = 0;
    std::vector<int> stack;
    for (int v0 = 0; v0 < inst.n; ++v0) {
        if (comp[static_cast<std::size_t>(v0)] != -1) continue;
        comp[static_cast<std::size_t>(v0)] = labels;
        stack.push_back(v0);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(w)] == -1) {
                    comp[static_cast<std::size_t>(w)] = labels;
                    stack.push_back(w);
                }
            }
        }
        ++labels;
    }
    return labels;
}

} // namespace detail

/// True iff the selected element set is a member of the instance's structure
/// family: edge cover, spanning tree, perfect matching, simple s-t path, or a
/// full item assignment. Malformed assignments (unknown ids/agents) are false.
inline bool validate_solution(const ProblemInstance& inst, const Allocation& alloc) {
    const int elems = inst.element_count();
    for (const auto& [elem, agent] : alloc.assignment) {
        if (elem < 0 || elem >= elems) return false;
        if (agent < 0 || agent >= static_cast<int>(inst.agents.size())) return false;
    }
    switch (inst.kind) {
    case ProblemKind::edge_cover: {
        auto deg = detail::vertex_degrees(inst, alloc);
        return std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 1; });
    }
    case ProblemKind::spanning_tree: {
        if (static_cast<int>(alloc.assignment.size()) != inst.n - 1) return false;
        std::vector<int> comp;
        return detail::selected_components(inst, alloc, comp) == 1;
    }
    case ProblemKind::perfect_matching: {
        auto deg = detail::vertex_degrees(inst, alloc);
        return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
    }
    case ProblemKind::shortest_path: {
        if (alloc.assignment.empty()) return false;
        auto deg = detail::vertex_degrees(inst, alloc);
        int touched = 0;
        for (int v = 0; v < inst.n; ++v) {
            int d = deg[static_cast<std::size_t>(v)];
            if (v == inst.s || v == inst.t) {
                if (d != 1) return false;
            } else if (d != 0 && d != 2) {
                return false;
            }
            if (d > 0) ++touched;
        }
        if (static_cast<int>(alloc.assignment.size()) != touched - 1) return false; // acyclic
        // all selected edges must lie on the one s-t component (no stray cycles)
        std::vector<int> comp;
        detail::selected_components(inst, alloc, comp);
        if (comp[static_cast<std::size_t>(inst.s)] != comp[static_cast<std::size_t>(inst.t)]) return false;
        for (int v = 0; v < inst.n; ++v)
            if (deg[static_cast<std::size_t>(v)] > 0 &&
                comp[static_cast<std::size_t>(v)] != comp[static_cast<std::size_t>(inst.s)])
                return false;
        return true;
    }
    case ProblemKind::reverse_auction:
        return static_cast<int>(alloc.assignment.size()) == inst.n;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random instance generation. Draws land on a 1/64 grid so that sums of costs
// are exact in binary floating point; every generated curve validates.

enum class CurveFamily { identity, concave, flat, two_segment, mixed };

inline std::optional<CurveFamily> curve_family_from_name(const std::string& s) {
    if (s == "identity") return CurveFamily::identity;
    if (s == "concave") return CurveFamily::concave;
    if (s == "flat") return CurveFamily::flat;
    if (s == "two-segment") return CurveFamily::two_segment;
    if (s == "mixed") return CurveFamily::mixed;
    return std::nullopt;
}

namespace rnd {

inline double u01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& eng, int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// value in [lo, hi] on the 1/64 grid
inline double grid(std::mt19937_64& eng, double lo, double hi) {
    int a = static_cast<int>(std::ceil(lo * 64.0));
    int b = static_cast<int>(std::floor(hi * 64.0));
    if (b < a) b = a;
    return static_cast<double>(uniform_int(eng, a, b)) / 64.0;
}

inline DiscountCurve random_curve(std::mt19937_64& eng, CurveFamily family, double cost_scale) {
    if (family == CurveFamily::mixed) {
        static const CurveFamily chooser[] = {CurveFamily::identity, CurveFamily::concave,
                                              CurveFamily::concave, CurveFamily::flat,
                                              CurveFamily::two_segment};
        family = chooser[uniform_int(eng, 0, 4)];
    }
    switch (family) {
    case CurveFamily::identity:
        return identity_curve(std::max(1.0, cost_scale));
    case CurveFamily::flat: {
        DiscountCurve c;
        double cap = grid(eng, 0.5, std::max(1.0, cost_scale));
        c.breakpoints = {{0.0, 0.0}, {cap, cap}};
        c.final_slope = 0.0;
        return c;
    }
    case CurveFamily::two_segment: {
        DiscountCurve c;
        double knee = grid(eng, 0.5, std::max(1.0, cost_scale));
        c.breakpoints = {{0.0, 0.0}, {knee, knee}};
        c.final_slope = 1.0 / 1024.0;
        return c;
    }
    case CurveFamily::concave:
    default: {
        // 1..3 segments with strictly valid non-increasing slopes, first <= 1
        int segments = uniform_int(eng, 1, 3);
        std::vector<double> slopes;
        for (int i = 0; i < segments; ++i)
            slopes.push_back(static_cast<double>(uniform_int(eng, 0, 64)) / 64.0);
        slopes.push_back(static_cast<double>(uniform_int(eng, 0, 64)) / 64.0);
        std::sort(slopes.rbegin(), slopes.rend());
        DiscountCurve c;
        c.breakpoints = {{0.0, 0.0}};
        double x = 0.0, y = 0.0;
        for (int i = 0; i < segments; ++i) {
            double dx = grid(eng, 0.5, std::max(1.0, cost_scale));
            x += dx;
            y += slopes[static_cast<std::size_t>(i)] * dx;
            c.breakpoints.emplace_back(x, y);
        }
        c.final_slope = slopes.back();
        return c;
    }
    }
}

} // namespace rnd

struct RandomSpec {
    std::uint64_t seed = 0;
    int n = 4;
    int k = 1;
    ProblemKind kind = ProblemKind::edge_cover;
    double cost_lo = 1.0;
    double cost_hi = 10.0;
    CurveFamily curves = CurveFamily::concave;
    int s = -1, t = -1; // shortest_path; defaults 0 and n-1
};

/// Deterministic for a fixed RandomSpec; every generated curve validates.
inline ProblemInstance random_instance(const RandomSpec& spec) {
    if (spec.n < 2) throw DomainError("random_instance: n must be at least 2");
    if (spec.k < 1) throw DomainError("random_instance: k must be at least 1");
    if (spec.kind == ProblemKind::perfect_matching && spec.n % 2 != 0)
        throw DomainError("random_instance: perfect matching requires even n");
    if (!(spec.cost_lo >= 0.0) || !(spec.cost_hi >= spec.cost_lo))
        throw DomainError("random_instance: invalid cost range");

    ProblemInstance inst;
    inst.n = spec.n;
    inst.kind = spec.kind;
    if (spec.kind == ProblemKind::shortest_path) {
        inst.s = spec.s < 0 ? 0 : spec.s;
        inst.t = spec.t < 0 ? spec.n - 1 : spec.t;
    }

    std::mt19937_64 eng(spec.seed);
    const int elems = inst.element_count();
    for (int a = 0; a < spec.k; ++a) {
        AgentSpec agent;
        agent.id = a;
        agent.discount = rnd::random_curve(eng, spec.curves, spec.cost_hi);
        agent.costs.resize(static_cast<std::size_t>(elems));
        for (int e = 0; e < elems; ++e)
            agent.costs[static_cast<std::size_t>(e)] = rnd::grid(eng, spec.cost_lo, spec.cost_hi);
        inst.agents.push_back(std::move(agent));
    }
    inst.check();
    return inst;
}

} // namespace discopt
