#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "discopt/errors.hpp"

namespace discopt {

/// Scalar-weight graph used by the solver subroutines (single-agent projections).
struct WeightedGraph {
    struct Edge {
        int u = 0, v = 0;
        double weight = 0.0;
    };

    int vertex_count = 0;
    std::vector<Edge> edges;

    WeightedGraph() = default;
    explicit WeightedGraph(int n) : vertex_count(n), index_(static_cast<std::size_t>(n) * n, -1) {}

    int add_edge(int u, int v, double w) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw DomainError("WeightedGraph: vertex out of range");
        if (u == v)
            throw DomainError("WeightedGraph: self-loop");
        if (!(w >= 0.0))
            throw DomainError("WeightedGraph: negative weight");
        if (find_edge(u, v) != -1)
            throw DomainError("WeightedGraph: duplicate edge");
        int id = static_cast<int>(edges.size());
        edges.push_back({std::min(u, v), std::max(u, v), w});
        index_[static_cast<std::size_t>(u) * vertex_count + v] = id;
        index_[static_cast<std::size_t>(v) * vertex_count + u] = id;
        return id;
    }

    int find_edge(int u, int v) const {
        return index_[static_cast<std::size_t>(u) * vertex_count + v];
    }

    double weight_sum() const {
        double s = 0.0;
        for (const auto& e : edges) s += e.weight;
        return s;
    }

private:
    std::vector<int> index_;
};

struct Matching {
    std::vector<int> edge_indices; // ascending indices into the source graph
    double weight = 0.0;
};

namespace blossom_detail {

// Primal-dual blossom algorithm for minimum weight perfect matching on a
// dense cost matrix (infinity marks absent edges). Nodes n..2n-1 are blossom
// slots; outer[] maps every node to its outermost containing node.
class Matcher {
public:
    explicit Matcher(std::vector<double> cost, int n) : n_(n), cost_(std::move(cost)) {
        double mx = 1.0;
        for (double c : cost_)
            if (std::isfinite(c)) mx = std::max(mx, std::abs(c));
        eps_ = 1e-12 * mx;

        int nn = 2 * n_;
        outer_.resize(nn);
        deep_.resize(nn);
        shallow_.resize(nn);
        tip_.resize(nn);
        active_.resize(nn);
        type_.resize(nn);
        forest_.resize(nn);
        root_.resize(nn);
        blocked_.resize(nn);
        dual_.resize(nn);
        mate_.resize(nn);
        visited_.resize(nn);
        for (int i = 0; i < nn; ++i) {
            outer_[i] = i;
            deep_[i].clear();
            if (i < n_) deep_[i].push_back(i);
            shallow_[i].clear();
            tip_[i] = i;
            active_[i] = i < n_;
            type_[i] = kUnlabeled;
            forest_[i] = -1;
            root_[i] = i;
            blocked_[i] = false;
            dual_[i] = 0.0;
            mate_[i] = -1;
        }
        for (int i = n_; i < nn; ++i) free_.push_back(i);
        slack_.resize(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                slack_[pair_index(u, v)] = at(u, v);
    }

    // mate per original vertex, or throws InfeasibleError
    std::vector<int> solve() {
        if (n_ % 2 != 0)
            throw InfeasibleError("perfect matching: odd vertex count");
        long iterations = 0;
        const long limit = 200L * n_ * n_ + 1000;
        while (true) {
            heuristic();
            if (grow()) break;
            update_duals();
            if (++iterations > limit)
                throw std::logic_error("perfect matching: dual updates failed to converge");
        }
        for (int i = 0; i < 2 * n_; ++i)
            if (active_[i] && mate_[i] != -1 && outer_[i] == i)
                expand(i, /*expand_blocked=*/true);
        std::vector<int> mates(static_cast<std::size_t>(n_));
        for (int u = 0; u < n_; ++u)
            mates[static_cast<std::size_t>(u)] = mate_[u];
        return mates;
    }

private:
    static constexpr int kUnlabeled = 0, kOdd = 1, kEven = 2;

    double at(int u, int v) const { return cost_[static_cast<std::size_t>(u) * n_ + v]; }

    std::size_t pair_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u + 1) * (u + 2) / 2 + v;
    }

    bool edge_usable(int u, int v) const {
        double s = slack_[pair_index(u, v)];
        return std::isfinite(s) && s <= eps_;
    }

    // Greedy initial matching over tight edges, lowest-degree partner first.
    void heuristic() {
        std::vector<int> degree(static_cast<std::size_t>(n_), 0);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) {
                if (!edge_usable(u, v)) continue;
                ++degree[static_cast<std::size_t>(u)];
                ++degree[static_cast<std::size_t>(v)];
            }
        for (int u = 0; u < n_; ++u) {
            if (mate_[outer_[u]] != -1) continue;
            int best = -1;
            for (int v = 0; v < n_; ++v) {
                if (u == v || !edge_usable(u, v)) continue;
                if (outer_[u] == outer_[v] || mate_[outer_[v]] != -1) continue;
                if (best == -1 || degree[static_cast<std::size_t>(v)] < degree[static_cast<std::size_t>(best)])
                    best = v;
            }
            if (best != -1) {
                mate_[outer_[u]] = best;
                mate_[outer_[best]] = u;
            }
        }
    }

    void reset() {
        for (int i = 0; i < 2 * n_; ++i) {
            forest_[i] = -1;
            root_[i] = i;
            if (i >= n_ && active_[i] && outer_[i] == i)
                destroy_blossom(i);
        }
        std::fill(visited_.begin(), visited_.end(), 0);
        queue_.clear();
        for (int i = 0; i < n_; ++i) {
            if (mate_[outer_[i]] == -1) {
                type_[outer_[i]] = kEven;
                if (!visited_[outer_[i]]) queue_.push_back(i);
                visited_[outer_[i]] = 1;
            } else {
                type_[outer_[i]] = kUnlabeled;
            }
        }
    }

    // Grows the alternating forest from all unmatched roots. Returns true if
    // the matching is perfect afterwards.
    bool grow() {
        reset();
        while (!queue_.empty()) {
            int w = outer_[queue_.back()];
            queue_.pop_back();
            bool restart = false;
            for (std::size_t di = 0; di < deep_[w].size() && !restart; ++di) {
                int u = deep_[w][di];
                for (int v = 0; v < n_; ++v) {
                    if (u == v || !edge_usable(u, v)) continue;
                    if (type_[outer_[v]] == kOdd) continue;
                    if (type_[outer_[v]] != kEven) {
                        int vm = mate_[outer_[v]];
                        forest_[outer_[v]] = u;
                        type_[outer_[v]] = kOdd;
                        root_[outer_[v]] = root_[outer_[u]];
                        forest_[outer_[vm]] = v;
                        type_[outer_[vm]] = kEven;
                        root_[outer_[vm]] = root_[outer_[u]];
                        if (!visited_[outer_[vm]]) {
                            queue_.push_back(vm);
                            visited_[outer_[vm]] = 1;
                        }
                    } else if (root_[outer_[v]] != root_[outer_[u]]) {
                        augment(u, v);
                        reset();
                        restart = true;
                        break;
                    } else if (outer_[u] != outer_[v]) {
                        int b = contract_blossom(u, v);
                        queue_.push_back(b);
                        visited_[b] = 1;
                        restart = true;
                        break;
                    }
                }
            }
        }
        for (int i = 0; i < n_; ++i)
            if (mate_[outer_[i]] == -1) return false;
        return true;
    }

    // Contracts the odd cycle through u and v; the tip is their lowest common
    // forest ancestor. Returns the new blossom's node index.
    int contract_blossom(int u, int v) {
        if (free_.empty())
            throw std::logic_error("blossom: no free slot");
        int b = free_.back();
        free_.pop_back();

        std::vector<char> in_path(static_cast<std::size_t>(2 * n_), 0);
        for (int x = u; x != -1; x = forest_[outer_[x]])
            in_path[outer_[x]] = 1;
        int tip = outer_[v];
        while (!in_path[tip]) tip = outer_[forest_[tip]];
        tip_[b] = tip;

        shallow_[b].clear();
        deep_[b].clear();
        std::vector<int> up;
        for (int x = outer_[u]; x != tip; x = outer_[forest_[x]])
            up.push_back(x);
        up.push_back(tip);
        shallow_[b].assign(up.rbegin(), up.rend()); // tip first, then path back to u
        for (int x = outer_[v]; x != tip; x = outer_[forest_[x]])
            shallow_[b].push_back(x);

        for (int s : shallow_[b]) {
            outer_[s] = b;
            for (int x : deep_[s]) {
                deep_[b].push_back(x);
                outer_[x] = b;
            }
        }
        forest_[b] = forest_[tip];
        type_[b] = kEven;
        root_[b] = root_[tip];
        active_[b] = true;
        blocked_[b] = false;
        dual_[b] = 0.0;
        outer_[b] = b;
        mate_[b] = mate_[tip];
        return b;
    }

    // Frees an unblocked blossom, restoring its children as outer nodes.
    void destroy_blossom(int t) {
        if (t < n_ || (blocked_[t] && dual_[t] > eps_))
            return;
        for (int s : shallow_[t]) {
            outer_[s] = s;
            for (int x : deep_[s]) outer_[x] = s;
            destroy_blossom(s);
        }
        active_[t] = false;
        blocked_[t] = false;
        mate_[t] = -1;
        free_.push_back(t);
    }

    // Rewires mates inside node u against its mated neighbour, then unfolds u
    // unless it is an original vertex or a blocked blossom.
    void expand(int u, bool expand_blocked = false) {
        int v = outer_[mate_[u]];
        int best_index = std::numeric_limits<int>::max();
        int p = -1, q = -1;
        // the lowest-indexed tight edge joining the two sides keeps both
        // expansions consistent with each other
        for (int du : deep_[u]) {
            for (int dv : deep_[v]) {
                if (!edge_usable(du, dv)) continue;
                int idx = static_cast<int>(pair_index(du, dv));
                if (idx < best_index) {
                    best_index = idx;
                    p = du;
                    q = dv;
                }
            }
        }
        if (p == -1)
            throw std::logic_error("blossom: no tight edge between mates");
        mate_[u] = q;
        mate_[v] = p;
        if (u < n_ || (blocked_[u] && !expand_blocked)) return;

        // rotate the odd cycle so the child containing p comes first
        auto& cyc = shallow_[u];
        std::size_t pos = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int s = cyc[i];
            if (std::find(deep_[s].begin(), deep_[s].end(), p) != deep_[s].end()) {
                pos = i;
                break;
            }
        }
        std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(pos), cyc.end());

        mate_[cyc[0]] = mate_[u];
        for (std::size_t i = 1; i + 1 < cyc.size(); i += 2) {
            mate_[cyc[i]] = cyc[i + 1];
            mate_[cyc[i + 1]] = cyc[i];
        }

        for (int s : cyc) {
            outer_[s] = s;
            for (int x : deep_[s]) outer_[x] = s;
        }
        active_[u] = false;
        free_.push_back(u);

        for (int s : cyc)
            expand(s, expand_blocked);
    }

    // Augments along the forest paths root(u)..u - v..root(v).
    void augment(int u, int v) {
        int p = outer_[u];
        int q = outer_[v];
        int other_root_node = q;
        int fp = forest_[p];
        mate_[p] = q;
        mate_[q] = p;
        expand(p);
        expand(q);
        while (fp != -1) {
            q = outer_[forest_[p]];
            p = outer_[forest_[q]];
            fp = forest_[p];
            mate_[p] = q;
            mate_[q] = p;
            expand(p);
            expand(q);
        }
        p = other_root_node;
        fp = forest_[p];
        while (fp != -1) {
            q = outer_[forest_[p]];
            p = outer_[forest_[q]];
            fp = forest_[p];
            mate_[p] = q;
            mate_[q] = p;
            expand(p);
            expand(q);
        }
    }

    void update_duals() {
        const double inf = std::numeric_limits<double>::infinity();
        double e1 = inf, e2 = inf, e3 = inf;
        for (int u = 0; u < n_; ++u) {
            for (int v = u + 1; v < n_; ++v) {
                double s = slack_[pair_index(u, v)];
                if (!std::isfinite(s)) continue;
                int tu = type_[outer_[u]], tv = type_[outer_[v]];
                if ((tu == kEven && tv == kUnlabeled) || (tv == kEven && tu == kUnlabeled))
                    e1 = std::min(e1, s);
                else if (outer_[u] != outer_[v] && tu == kEven && tv == kEven)
                    e2 = std::min(e2, s);
            }
        }
        for (int i = n_; i < 2 * n_; ++i)
            if (active_[i] && outer_[i] == i && type_[i] == kOdd)
                e3 = std::min(e3, dual_[i]);

        double e = std::min({e1, e2 / 2.0, e3});
        if (!std::isfinite(e))
            throw InfeasibleError("perfect matching: no feasible matching exists");

        for (int i = 0; i < 2 * n_; ++i) {
            if (i != outer_[i] || !active_[i]) continue;
            if (type_[i] == kEven)
                dual_[i] += e;
            else if (type_[i] == kOdd)
                dual_[i] -= e;
        }
        for (int u = 0; u < n_; ++u) {
            for (int v = u + 1; v < n_; ++v) {
                if (outer_[u] == outer_[v]) continue;
                int tu = type_[outer_[u]], tv = type_[outer_[v]];
                double& s = slack_[pair_index(u, v)];
                if (tu == kEven && tv == kEven)
                    s -= 2.0 * e;
                else if (tu == kOdd && tv == kOdd)
                    s += 2.0 * e;
                else if ((tu == kEven && tv == kUnlabeled) || (tv == kEven && tu == kUnlabeled))
                    s -= e;
                else if ((tu == kOdd && tv == kUnlabeled) || (tv == kOdd && tu == kUnlabeled))
                    s += e;
            }
        }
        for (int i = n_; i < 2 * n_; ++i) {
            if (dual_[i] > eps_) {
                blocked_[i] = true;
            } else if (active_[i] && blocked_[i]) {
                if (mate_[i] == -1)
                    destroy_blossom(i);
                else {
                    blocked_[i] = false;
                    expand(i);
                }
            }
        }
    }

    int n_;
    double eps_;
    std::vector<double> cost_;
    std::vector<double> slack_;
    std::vector<int> outer_, tip_, type_, forest_, root_, mate_, queue_, free_;
    std::vector<std::vector<int>> deep_, shallow_;
    std::vector<char> active_, blocked_, visited_;
    std::vector<double> dual_;
};

} // namespace blossom_detail

/// Minimum weight perfect matching (blossom algorithm, exact on nonnegative
/// weights). Throws InfeasibleError when no perfect matching exists.
inline Matching min_weight_perfect_matching(const WeightedGraph& g) {
    const int n = g.vertex_count;
    Matching result;
    if (n == 0) return result;
    if (n % 2 != 0)
        throw InfeasibleError("perfect matching: odd vertex count");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(static_cast<std::size_t>(n) * n, inf);
    for (const auto& e : g.edges) {
        cost[static_cast<std::size_t>(e.u) * n + e.v] = e.weight;
        cost[static_cast<std::size_t>(e.v) * n + e.u] = e.weight;
    }
    blossom_detail::Matcher matcher(std::move(cost), n);
    std::vector<int> mates = matcher.solve();
    for (int u = 0; u < n; ++u) {
        int v = mates[static_cast<std::size_t>(u)];
        if (v <= u) continue;
        int idx = g.find_edge(u, v);
        if (idx == -1)
            throw std::logic_error("perfect matching: matched a missing edge");
        result.edge_indices.push_back(idx);
    }
    std::sort(result.edge_indices.begin(), result.edge_indices.end());
    for (int idx : result.edge_indices)
        result.weight += g.edges[static_cast<std::size_t>(idx)].weight;
    return result;
}

struct EdgeCoverResult {
    std::vector<int> edge_indices; // ascending
    double weight = 0.0;
};

/// Minimum weight edge cover via the classical matching reduction: double the
/// graph, join each vertex to its twin at twice its cheapest incident weight,
/// take a minimum perfect matching and replace twin edges by the endpoint's
/// cheapest incident edge.
inline EdgeCoverResult min_weight_edge_cover(const WeightedGraph& g) {
    const int n = g.vertex_count;
    EdgeCoverResult result;
    if (n == 0) return result;

    std::vector<int> cheapest(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const auto& e = g.edges[static_cast<std::size_t>(i)];
        for (int v : {e.u, e.v}) {
            int& c = cheapest[static_cast<std::size_t>(v)];
            if (c == -1 || e.weight < g.edges[static_cast<std::size_t>(c)].weight)
                c = i;
        }
    }
    for (int v = 0; v < n; ++v)
        if (cheapest[static_cast<std::size_t>(v)] == -1)
            throw InfeasibleError("edge cover: isolated vertex " + std::to_string(v));

    WeightedGraph doubled(2 * n);
    for (const auto& e : g.edges) {
        doubled.add_edge(e.u, e.v, e.weight);
        doubled.add_edge(e.u + n, e.v + n, e.weight);
    }
    for (int v = 0; v < n; ++v) {
        double mu = g.edges[static_cast<std::size_t>(cheapest[static_cast<std::size_t>(v)])].weight;
        doubled.add_edge(v, v + n, 2.0 * mu);
    }

    Matching pm = min_weight_perfect_matching(doubled);
    std::vector<int> cover;
    for (int idx : pm.edge_indices) {
        const auto& e = doubled.edges[static_cast<std::size_t>(idx)];
        if (e.u < n && e.v < n)
            cover.push_back(g.find_edge(e.u, e.v));
        else if (e.u < n && e.v == e.u + n)
            cover.push_back(cheapest[static_cast<std::size_t>(e.u)]);
    }
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    result.edge_indices = std::move(cover);
    for (int idx : result.edge_indices)
        result.weight += g.edges[static_cast<std::size_t>(idx)].weight;
    return result;
}

struct QuotaCoverResult {
    std::vector<int> covered;      // S: vertices covered by at least one real edge
    std::vector<int> edge_indices; // cover restricted to the input graph's edges
    double weight = 0.0;
};

/// Cheapest edge cover whose paid-covered vertex set S satisfies |S - Q| >= d.
/// Auxiliary construction: X gives every Q vertex a private zero-cost partner,
/// |Y| = n - |Q| - d dummies excuse that many vertices outside Q via
/// large-cost edges, and the forced |Y| * M offset is dropped from the weight.
inline QuotaCoverResult min_cover_with_quota(const WeightedGraph& g, const std::vector<int>& Q, int d) {
    const int n = g.vertex_count;
    std::vector<char> in_q(static_cast<std::size_t>(n), 0);
    for (int v : Q) {
        if (v < 0 || v >= n)
            throw DomainError("min_cover_with_quota: Q vertex out of range");
        if (in_q[static_cast<std::size_t>(v)])
            throw DomainError("min_cover_with_quota: duplicate vertex in Q");
        in_q[static_cast<std::size_t>(v)] = 1;
    }
    const int q_size = static_cast<int>(Q.size());
    if (d < 1)
        throw DomainError("min_cover_with_quota: d must be positive");
    if (d > n - q_size)
        throw InfeasibleError("min_cover_with_quota: quota exceeds vertices outside Q");

    std::vector<char> has_edge(static_cast<std::size_t>(n), 0);
    for (const auto& e : g.edges) {
        has_edge[static_cast<std::size_t>(e.u)] = 1;
        has_edge[static_cast<std::size_t>(e.v)] = 1;
    }
    const int y_size = std::max(0, n - q_size - d);
    int uncoverable = 0;
    for (int v = 0; v < n; ++v)
        if (!in_q[static_cast<std::size_t>(v)] && !has_edge[static_cast<std::size_t>(v)])
            ++uncoverable;
    if (uncoverable > y_size)
        throw InfeasibleError("min_cover_with_quota: quota infeasible, too many uncoverable vertices");

    const double big = 1.0 + g.weight_sum();
    WeightedGraph aux(n + q_size + y_size);
    for (const auto& e : g.edges)
        aux.add_edge(e.u, e.v, e.weight); // same indices as g
    std::vector<int> q_sorted(Q);
    std::sort(q_sorted.begin(), q_sorted.end());
    for (int i = 0; i < q_size; ++i)
        aux.add_edge(n + i, q_sorted[static_cast<std::size_t>(i)], 0.0);
    for (int j = 0; j < y_size; ++j)
        for (int v = 0; v < n; ++v)
            if (!in_q[static_cast<std::size_t>(v)])
                aux.add_edge(n + q_size + j, v, big);

    EdgeCoverResult cover = min_weight_edge_cover(aux);

    QuotaCoverResult result;
    const int real_edges = static_cast<int>(g.edges.size());
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int idx : cover.edge_indices) {
        if (idx >= real_edges) continue;
        result.edge_indices.push_back(idx);
        const auto& e = g.edges[static_cast<std::size_t>(idx)];
        in_s[static_cast<std::size_t>(e.u)] = 1;
        in_s[static_cast<std::size_t>(e.v)] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (in_s[static_cast<std::size_t>(v)]) result.covered.push_back(v);
    for (int idx : result.edge_indices)
        result.weight += g.edges[static_cast<std::size_t>(idx)].weight;

    int outside = 0;
    for (int v : result.covered)
        if (!in_q[static_cast<std::size_t>(v)]) ++outside;
    if (outside < d)
        throw std::logic_error("min_cover_with_quota: construction violated the quota");
    return result;
}

/// Cheapest edge cover of the vertex subset T (cover edges may touch vertices
/// outside T). Empty T yields the empty cover.
inline QuotaCoverResult min_cover_of_subset(const WeightedGraph& g, const std::vector<int>& T) {
    if (T.empty()) return {};
    std::vector<char> in_t(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v : T) in_t[static_cast<std::size_t>(v)] = 1;
    std::vector<int> q;
    for (int v = 0; v < g.vertex_count; ++v)
        if (!in_t[static_cast<std::size_t>(v)]) q.push_back(v);
    return min_cover_with_quota(g, q, static_cast<int>(T.size()));
}

struct SaturatingResult {
    std::vector<int> edge_indices; // the full matching on Z + V(F), ascending
    double added_weight = 0.0;     // sum of weights over edges outside M
};

/// Minimum extra weight F such that M + F contains a perfect matching that
/// keeps Z saturated and saturates exactly t new vertices: zero-weight M's
/// edges, add n-(|Z|+t) dummies joined free to V-Z, and take a minimum
/// perfect matching minus the dummy edges.
inline SaturatingResult min_matching_saturating(const WeightedGraph& g,
                                                const std::vector<int>& matching_edges,
                                                const std::vector<int>& Z, int t) {
    const int n = g.vertex_count;
    std::vector<char> in_z(static_cast<std::size_t>(n), 0);
    for (int v : Z) {
        if (v < 0 || v >= n)
            throw DomainError("min_matching_saturating: Z vertex out of range");
        in_z[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<char> in_m(g.edges.size(), 0);
    std::vector<int> touched(static_cast<std::size_t>(n), 0);
    for (int idx : matching_edges) {
        if (idx < 0 || idx >= static_cast<int>(g.edges.size()))
            throw DomainError("min_matching_saturating: bad matching edge index");
        in_m[static_cast<std::size_t>(idx)] = 1;
        const auto& e = g.edges[static_cast<std::size_t>(idx)];
        if (++touched[static_cast<std::size_t>(e.u)] > 1 || ++touched[static_cast<std::size_t>(e.v)] > 1)
            throw DomainError("min_matching_saturating: M is not a matching");
        if (!in_z[static_cast<std::size_t>(e.u)] || !in_z[static_cast<std::size_t>(e.v)])
            throw DomainError("min_matching_saturating: M has an endpoint outside Z");
    }
    if (static_cast<int>(matching_edges.size()) * 2 != static_cast<int>(Z.size()))
        throw DomainError("min_matching_saturating: Z must equal V(M)");
    if (t <= 0 || t % 2 != 0)
        throw DomainError("min_matching_saturating: t must be even and positive");
    const int z_size = static_cast<int>(Z.size());
    if (t > n - z_size)
        throw DomainError("min_matching_saturating: t exceeds unmatched vertices");

    const int dummies = n - z_size - t;
    WeightedGraph aux(n + dummies);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const auto& e = g.edges[static_cast<std::size_t>(i)];
        aux.add_edge(e.u, e.v, in_m[static_cast<std::size_t>(i)] ? 0.0 : e.weight);
    }
    for (int j = 0; j < dummies; ++j)
        for (int v = 0; v < n; ++v)
            if (!in_z[static_cast<std::size_t>(v)])
                aux.add_edge(n + j, v, 0.0);

    Matching pm = min_weight_perfect_matching(aux);

    SaturatingResult result;
    int new_vertices = 0;
    for (int idx : pm.edge_indices) {
        const auto& e = aux.edges[static_cast<std::size_t>(idx)];
        if (e.u >= n || e.v >= n) continue;
        result.edge_indices.push_back(idx); // same index space as g for real edges
        if (!in_z[static_cast<std::size_t>(e.u)]) ++new_vertices;
        if (!in_z[static_cast<std::size_t>(e.v)]) ++new_vertices;
        if (!in_m[static_cast<std::size_t>(idx)])
            result.added_weight += g.edges[static_cast<std::size_t>(idx)].weight;
    }
    if (new_vertices != t)
        throw std::logic_error("min_matching_saturating: construction saturated the wrong count");
    std::sort(result.edge_indices.begin(), result.edge_indices.end());
    return result;
}

} // namespace discopt
