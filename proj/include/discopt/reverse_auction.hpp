#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "discopt/edge_cover_solver.hpp"
#include "discopt/instance.hpp"

namespace discopt {

/// Weighted set cover instance (U, C, w).
struct SetCoverInstance {
    struct Set {
        std::vector<int> elements; // ascending, within [0, universe)
        double weight = 0.0;
    };
    int universe = 0;
    std::vector<Set> sets;

    void check() const {
        if (universe < 1)
            throw DomainError("set cover: empty universe");
        std::vector<char> seen(static_cast<std::size_t>(universe), 0);
        for (const auto& s : sets) {
            if (!(s.weight >= 0.0))
                throw DomainError("set cover: negative weight");
            for (int e : s.elements) {
                if (e < 0 || e >= universe)
                    throw DomainError("set cover: element out of range");
                seen[static_cast<std::size_t>(e)] = 1;
            }
        }
        for (int e = 0; e < universe; ++e)
            if (!seen[static_cast<std::size_t>(e)])
                throw DomainError("set cover: element " + std::to_string(e) + " is in no set");
    }
};

/// Hardness-style generator: one agent per set S with item cost w(S) inside S
/// and a large sentinel elsewhere; the discount curve runs at slope 1 up to
/// w(S) and then flattens to eps, so one item costs w(S) and further items
/// from the same set are nearly free. big_m <= 0 picks a default above
/// sum(w)/eps, which keeps sentinel items out of any optimal or greedy buy.
inline ProblemInstance generate_from_set_cover(const SetCoverInstance& sc, double eps = 1e-6,
                                               double big_m = 0.0) {
    sc.check();
    if (!(eps > 0.0) || !(eps < 1.0))
        throw DomainError("generate_from_set_cover: eps must lie in (0,1)");
    double weight_sum = 0.0;
    for (const auto& s : sc.sets) weight_sum += s.weight;
    if (big_m <= 0.0)
        big_m = (weight_sum + 1.0) / eps;
    if (!(big_m > weight_sum / eps))
        throw DomainError("generate_from_set_cover: big_m must exceed sum(w)/eps");

    ProblemInstance inst;
    inst.n = sc.universe;
    inst.kind = ProblemKind::reverse_auction;
    for (int i = 0; i < static_cast<int>(sc.sets.size()); ++i) {
        const auto& set = sc.sets[static_cast<std::size_t>(i)];
        AgentSpec agent;
        agent.id = i;
        if (set.weight > 0.0)
            agent.discount.breakpoints = {{0.0, 0.0}, {set.weight, set.weight}};
        else
            agent.discount.breakpoints = {{0.0, 0.0}};
        agent.discount.final_slope = eps;
        agent.costs.assign(static_cast<std::size_t>(sc.universe), big_m);
        for (int e : set.elements)
            agent.costs[static_cast<std::size_t>(e)] = set.weight;
        inst.agents.push_back(std::move(agent));
    }
    inst.check();
    return inst;
}

struct GreedyCoverResult {
    std::vector<int> set_indices; // pick order
    double weight = 0.0;
};

/// Classical greedy set cover: repeatedly the set with the least
/// weight-per-new-element (ties to the lowest set index).
inline GreedyCoverResult greedy_set_cover(const SetCoverInstance& sc) {
    sc.check();
    std::vector<char> covered(static_cast<std::size_t>(sc.universe), 0);
    std::vector<char> used(sc.sets.size(), 0);
    int remaining = sc.universe;
    GreedyCoverResult result;
    while (remaining > 0) {
        int best = -1, best_new = 0;
        double best_ratio = 0.0;
        for (int i = 0; i < static_cast<int>(sc.sets.size()); ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            int fresh = 0;
            for (int e : sc.sets[static_cast<std::size_t>(i)].elements)
                if (!covered[static_cast<std::size_t>(e)]) ++fresh;
            if (fresh == 0) continue;
            double ratio = sc.sets[static_cast<std::size_t>(i)].weight / fresh;
            if (best == -1 || ratio < best_ratio) {
                best = i;
                best_ratio = ratio;
                best_new = fresh;
            }
        }
        if (best == -1)
            throw InfeasibleError("greedy_set_cover: uncovered elements remain");
        used[static_cast<std::size_t>(best)] = 1;
        result.set_indices.push_back(best);
        result.weight += sc.sets[static_cast<std::size_t>(best)].weight;
        remaining -= best_new;
        for (int e : sc.sets[static_cast<std::size_t>(best)].elements)
            covered[static_cast<std::size_t>(e)] = 1;
    }
    return result;
}

/// Greedy reverse auction. For a fixed agent the cheapest size-q bundle of
/// uncovered items is the prefix of items sorted by her cost, so each phase
/// scans agents and prefix sizes for the best discounted price per item.
inline SolveResult solve_reverse_auction_greedy(const ProblemInstance& inst) {
    inst.check();
    if (inst.kind != ProblemKind::reverse_auction)
        throw DomainError("solve_reverse_auction_greedy: instance kind mismatch");

    const int n = inst.n;
    const int k = static_cast<int>(inst.agents.size());
    std::vector<int> uncovered(static_cast<std::size_t>(n));
    std::iota(uncovered.begin(), uncovered.end(), 0);

    SolveResult result;
    int phase = 0;
    while (!uncovered.empty()) {
        int best_agent = -1;
        double best_ratio = 0.0;
        std::vector<int> best_items;
        for (int a = 0; a < k; ++a) {
            std::vector<int> order = uncovered;
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
                return inst.agents[static_cast<std::size_t>(a)].cost(x) <
                       inst.agents[static_cast<std::size_t>(a)].cost(y);
            });
            double linear = 0.0;
            for (int q = 1; q <= static_cast<int>(order.size()); ++q) {
                linear += inst.agents[static_cast<std::size_t>(a)].cost(order[static_cast<std::size_t>(q - 1)]);
                double ratio = inst.agents[static_cast<std::size_t>(a)].discount.evaluate(linear) / q;
                if (best_agent == -1 || ratio < best_ratio) {
                    best_agent = a;
                    best_ratio = ratio;
                    best_items.assign(order.begin(), order.begin() + q);
                }
            }
        }
        std::sort(best_items.begin(), best_items.end());
        for (int item : best_items) {
            result.allocation.assignment[item] = best_agent;
            result.ledger.entries.push_back({"i" + std::to_string(item), best_ratio, phase});
        }
        std::vector<int> rest;
        for (int item : uncovered)
            if (!std::binary_search(best_items.begin(), best_items.end(), item))
                rest.push_back(item);
        uncovered = std::move(rest);
        ++phase;
    }

    if (!validate_solution(inst, result.allocation))
        throw std::logic_error("solve_reverse_auction_greedy: output is not a full assignment");
    return result;
}

} // namespace discopt
