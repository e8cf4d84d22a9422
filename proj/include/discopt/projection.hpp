#pragma once

#include "discopt/instance.hpp"
#include "discopt/matching_engine.hpp"

namespace discopt {

/// Single-agent scalar projection of a graph instance: the complete graph on
/// n vertices weighted by that agent's costs. Edge indices equal edge ids.
inline WeightedGraph agent_projection(const ProblemInstance& inst, int agent) {
    WeightedGraph g(inst.n);
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v)
            g.add_edge(u, v, inst.agent_cost(agent, u, v));
    return g;
}

} // namespace discopt
