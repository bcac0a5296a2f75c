#pragma once

#include <string>
#include <vector>

#include "homfill/solver.hpp"

namespace homfill {

struct ProfileEntry {
    Rational l;            // cycle-norm threshold (a realized |z| value)
    Rational f_hat;        // max filling norm among examined cycles with |z| <= l
    long samples = 0;      // cycles with |z| <= l examined
    bool exhaustive = false;
    bool flagged = false;  // some underlying filling was budget-truncated
    FillStatus worst_status = FillStatus::optimal;
};

// Sampled values of an isoperimetric function l -> f_hat(l). Exhaustive
// entries are true values of f_n restricted to the complex and the enumerated
// coefficient window; sampled entries are lower bounds for the sup.
struct IsoProfile {
    std::string complex_id;
    int dim = 1;
    std::string ring_spec;
    std::vector<ProfileEntry> entries;  // ascending l, f_hat non-decreasing
    Rational l_exhaustive = 0;          // exhaustion threshold actually used
    int coeff_window = 1;               // coefficient window of the exhaustion
    long sample_count = 0;
    std::uint64_t seed = 0;
    std::string mode;  // "exhaustive", "exhaustive+sampled", "family", ...
};

struct SamplerConfig {
    Rational l_exhaustive = 0;  // enumerate all cycles with |z| <= this
    int coeff_window = 1;       // coefficient magnitudes enumerated (Z/Q)
    long samples = 0;           // random closed walks beyond the exhaustion
    int sample_maxlen = 12;
    std::uint64_t seed = 1;
};

// The isoperimetric profile of dimension n up to l_max: enumerates connected
// n-cycles with |z| <= l_exhaustive (coefficients in a window; full residue
// range over Z_m), composes disjoint-support combinations, samples random
// closed walks beyond (dimension 1 only), and fills everything by
// exact_filling.
IsoProfile profile(const ComplexPtr& cx, int n, const Rational& l_max, const SamplerConfig& cfg,
                   const NormedRing& ring, const FillOptions& fill_opts = {});

// Profile assembled from a caller-provided cycle family (entries are lower
// bounds, mode "family").
IsoProfile profile_from_cycles(const ComplexPtr& cx, int n, const Rational& l_max,
                               const std::vector<Chain>& cycles, const NormedRing& ring,
                               const FillOptions& fill_opts = {});

struct GrowthClass {
    std::string label;  // linear | subquadratic | quadratic | superquadratic
    double exponent = 0;
    double log_intercept = 0;  // fit: f(l) = exp(log_intercept) * l^exponent
    double exponent_low = 0, exponent_high = 0;  // confidence band (2 sigma)
    double max_residual = 0;
    bool sub_euclidean = false;  // exponent <= (n+1)/n within tolerance
    int points_used = 0;
};

// Least-squares fit of log f_hat against log l over the strictly increasing
// envelope points. Requires at least 5 distinct l with f_hat > 0.
GrowthClass classify_growth(const IsoProfile& p);

struct ThetaReport {
    Rational a12, a23, a13;  // A(a2^-1 a1), A(a3^-1 a2), A(a3^-1 a1)
    bool certified = false;  // all three areas optimal
    bool holds = false;      // a13 <= a12 + a23
};

// Axiom (A1), triangle inequality for theta curves, checked with certified
// areas; an uncertified area makes the report inconclusive rather than failed.
ThetaReport check_theta(const ComplexPtr& cx, const std::vector<VertexId>& a1,
                        const std::vector<VertexId>& a2, const std::vector<VertexId>& a3,
                        const NormedRing& ring, const FillOptions& opts = {});

struct RectangleReport {
    Rational area;
    Rational d1, d2;
    Rational k;  // 1/N from the attaching-polygon metadata (1/3 if simplicial)
    bool certified = false;
    bool holds = false;  // area >= k * d1 * d2
};

// Axiom (A2), rectangle inequality: gamma is the concatenation of the four
// paths a1..a4 (each ending where the next starts, a4 ending at a1's start).
RectangleReport check_rectangle(const ComplexPtr& cx, const std::vector<VertexId>& a1,
                                const std::vector<VertexId>& a2, const std::vector<VertexId>& a3,
                                const std::vector<VertexId>& a4, const NormedRing& ring,
                                const FillOptions& opts = {});

struct ConingEntry {
    Rational radius;
    Rational c_hat;   // max over cycles of fill_norm / (r * |z|)
    long cycles = 0;
    bool flagged = false;
};

struct ConingReport {
    std::vector<ConingEntry> entries;
    Rational c_overall;  // max over radii
    std::uint64_t seed = 0;
};

// Coning-inequality constant estimates: for each radius, fills k-cycles
// (k <= n) supported in the ball around the basepoint. The cycle pool mixes
// the full-ball boundary, single-cell boundaries and seeded random blob
// boundaries so near-extremal cycles are represented.
ConingReport check_coning(const ComplexPtr& cx, VertexId basepoint,
                          const std::vector<Rational>& radii, int n, const NormedRing& ring,
                          long blob_samples = 12, std::uint64_t seed = 1,
                          const FillOptions& opts = {});

struct SubEuclideanReport {
    double c_hat = 0;       // max f_hat(l) / l^((n+1)/n)
    double trend_slope = 0; // slope of log ratio over the top half of l
    bool pass = false;
    double tolerance = 0.15;
};

// Rank-n condition: f_hat(l) <= C * l^((n+1)/n) with no upward trend of the
// ratio across the top half of the l range.
SubEuclideanReport check_subeuclidean(const IsoProfile& p, int n, double tolerance = 0.15);

// Deterministic rectangle-loop family on complexes with a lattice embedding
// (grid and z2 presets); loops are closed vertex paths, sorted by
// (width, height, position).
std::vector<std::vector<VertexId>> rectangle_loops(const ComplexPtr& cx, int max_side);

// Seeded random closed walks in the 1-skeleton, freely reduced to cycles.
std::vector<Chain> sample_cycles(const ComplexPtr& cx, const NormedRing& ring, long count,
                                 int maxlen, std::uint64_t seed);

}  // namespace homfill
