#pragma once

#include <vector>

#include "homfill/util.hpp"

namespace homfill {

using RatMat = std::vector<std::vector<Rational>>;

struct LpResult {
    bool feasible = false;
    Rational value;
    std::vector<Rational> x;
};

// min c^T x subject to A x = b, x >= 0, solved exactly over the rationals by
// two-phase primal simplex with Bland's rule (termination guaranteed).
LpResult simplex_min(const RatMat& a, const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

// min |x|_1 subject to A x = b over the rationals (split x = pos - neg).
LpResult min_l1_solution(const RatMat& a, const std::vector<Rational>& b);

}  // namespace homfill
