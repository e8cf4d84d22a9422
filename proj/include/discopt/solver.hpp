#pragma once

#include "discopt/edge_cover_solver.hpp"
#include "discopt/matching_solver.hpp"
#include "discopt/reverse_auction.hpp"
#include "discopt/shortest_path_solver.hpp"
#include "discopt/spanning_tree_solver.hpp"

namespace discopt {

/// Runs the solver matching the instance kind.
inline SolveResult solve(const ProblemInstance& inst, bool baseline = false) {
    switch (inst.kind) {
    case ProblemKind::edge_cover:
        return solve_edge_cover(inst);
    case ProblemKind::spanning_tree:
        return baseline ? solve_spanning_tree_baseline(inst) : solve_spanning_tree_adaptive(inst);
    case ProblemKind::perfect_matching:
        return solve_perfect_matching_adaptive(inst);
    case ProblemKind::shortest_path:
        return solve_shortest_path(inst);
    case ProblemKind::reverse_auction:
        return solve_reverse_auction_greedy(inst);
    }
    throw DomainError("solve: unknown problem kind");
}

} // namespace discopt
