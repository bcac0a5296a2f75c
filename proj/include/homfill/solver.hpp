#pragma once

#include <cstdint>
#include <optional>

#include "homfill/chain.hpp"

namespace homfill {

enum class FillStatus { optimal, upper_bound, infeasible_within_budget };

inline const char* to_string(FillStatus s) {
    switch (s) {
        case FillStatus::optimal: return "optimal";
        case FillStatus::upper_bound: return "upper_bound";
        case FillStatus::infeasible_within_budget: return "infeasible_within_budget";
    }
    return "?";
}

struct FillOptions {
    std::uint64_t node_budget = 50'000'000;
    std::int64_t time_budget_ms = -1;  // disabled by default; wall-clock budgets
                                       // can break run-to-run determinism
    enum class Search { certify, adaptive };
    Search search = Search::certify;
    // Hard cap on the searched norm; 0 = automatic (max(64, 4|z|^2)). A result
    // truncated by the cap is reported as upper_bound / infeasible_within_budget.
    Rational norm_cap = 0;
};

// Result of a minimal-filling search. status == optimal certifies that no
// chain with smaller norm and the same boundary exists anywhere in the
// complex: either the search region reached a fixed point of expansion, or it
// contains N^B(hull(supp z)) for the achieved norm B, which confines every
// filling of norm <= B (each face-connected support component of a filling
// must touch supp z and has at most B cells).
struct FillingResult {
    std::optional<Chain> filling;
    Rational norm = 0;
    FillStatus status = FillStatus::infeasible_within_budget;
    int region_depth = 0;        // expansions from hull(supp z)
    bool region_full = false;    // region certifiably contains every candidate
    bool proven_no_filling = false;  // search exhausted a fixed-point region
    std::uint64_t nodes = 0;
};

// Minimal l1-norm filling of the cycle z: minimizes |c| over (n+1)-chains
// with boundary(c) = z, searching an expanding subcomplex filtration with
// branch-and-bound (value branching for absolute norms over Z, support
// branching with Smith-form feasibility for discrete norms, exact simplex
// over Q with the absolute norm). Ties among equal-norm optima are broken by
// the lexicographically least coefficient vector in canonical cell order
// (coefficients ordered 0 < 1 < -1 < 2 < ...), except over Q:abs where the
// deterministic basic optimum is returned.
FillingResult exact_filling(const Chain& z, const FillOptions& opts = {});

// Filling area of a closed edge path: converts the path to a unit-coefficient
// 1-chain (backtracks cancel) and delegates to exact_filling.
FillingResult area(const ComplexPtr& cx, const std::vector<VertexId>& loop,
                   const NormedRing& ring, const FillOptions& opts = {});

}  // namespace homfill
