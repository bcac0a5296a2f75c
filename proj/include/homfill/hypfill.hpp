#pragma once

#include "homfill/chain.hpp"
#include "homfill/metric.hpp"
#include "homfill/solver.hpp"

namespace homfill {

// Everything the linear filler needs about a Rips complex of a
// delta-hyperbolic metric. Requires d > 4*delta + 2*epsilon.
struct HyperbolicContext {
    ComplexPtr rips;          // flag complex with metric and rips_distance set
    Rational d;               // Rips parameter
    Rational delta;
    Rational epsilon = 1;     // net parameter (1 for graph vertices)
    VertexId basepoint = 0;
    Rational margin = 0;      // required distance from the truncation boundary
    int max_degree = 0;       // k: maximal vertex degree in the Rips 1-skeleton
    Int bound_n = 0;          // N = max{k+1, (k-1)(k+1)} + 1

    static HyperbolicContext create(ComplexPtr rips, const Rational& delta,
                                    const Rational& epsilon, VertexId basepoint,
                                    std::optional<Rational> margin = std::nullopt);
};

// N = max{k+1, (k-1)(k+1)} + 1.
Int linear_bound(int k);

struct ReductionStep {
    int case_id = 0;                  // 1, 2 or 3
    VertexId v = -1;                  // the farthest supported vertex
    std::vector<VertexId> involved;   // case 1/2: u_i, v, u_j; case 3: u1, u'
    std::optional<Chain> applied;     // 2-chain subtracted in this step
    Rational norm_before, norm_after;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::uint64_t cells_used = 0;  // total 2-cells across steps
};

// Constructive filling of a 1-cycle in the Rips complex: repeatedly reduces
// the cycle at its farthest supported vertex (cases 1-3), yielding c with
// boundary(c) = z and, over a discrete norm, |c| <= N * |z|. Throws
// CertificationError when a step cannot be validated or the 2-cell budget
// N * |z| is exceeded (signals delta or d mis-estimated).
std::pair<FillingResult, ReductionTrace> linear_fill(const HyperbolicContext& ctx, const Chain& z);

}  // namespace homfill
