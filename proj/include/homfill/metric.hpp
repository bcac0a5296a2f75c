#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "homfill/util.hpp"

namespace homfill {

// A finite metric space with exact rational distances. Backed either by an
// explicit matrix (axioms checked on construction) or by a graph whose
// breadth-first distances define the metric (axioms hold by construction).
class FiniteMetric {
  public:
    static FiniteMetric from_matrix(std::vector<std::vector<Rational>> d);
    static FiniteMetric from_graph(int points, const std::vector<std::pair<int, int>>& edges);

    int points() const { return points_; }
    bool is_graph() const { return !adjacency_.empty(); }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

    Rational dist(int u, int v) const;
    // Integer distance fast path; valid when integral() is true.
    int dist_int(int u, int v) const;
    bool integral() const { return integral_; }

    Rational max_distance() const;

    // Ball truncation provenance (set by builders): the space is the ball of
    // the given radius around the center in some ambient space.
    std::optional<std::pair<int, Rational>> truncation;

  private:
    FiniteMetric() = default;
    const std::vector<int>& row(int u) const;

    struct BfsCache {
        std::mutex mu;
        std::vector<std::vector<int>> rows;
    };

    int points_ = 0;
    bool integral_ = false;
    std::vector<std::vector<Rational>> matrix_;      // explicit metric
    std::vector<std::vector<int>> adjacency_;        // graph metric
    std::shared_ptr<BfsCache> cache_;                // lazily filled, thread-safe
};

// (u,v)_base = (d(u,base) + d(v,base) - d(u,v)) / 2, exact.
Rational gromov_product(const FiniteMetric& m, int u, int v, int base);

struct DeltaOptions {
    bool exact = true;
    int exact_cap = 300;        // full quadruple enumeration only up to this size
    long sample_count = 100000; // sampled mode
    std::uint64_t seed = 0;
};

struct HyperbolicityEstimate {
    Rational delta;
    bool exact = false;              // max over all quadruples (or certified zero)
    std::uint64_t quadruples = 0;    // quadruples (or triples in the shortcut) examined
    std::uint64_t seed = 0;          // sampled mode only
};

// Four-point hyperbolicity constant: the max over quadruples (u,v,w,b) of
// min((u,v)_b, (v,w)_b) - (u,w)_b, clamped at 0. Exact mode enumerates all
// quadruples; a single-basepoint pass runs first and certifies delta = 0
// outright when its defect vanishes (base change at most doubles the
// constant, so a zero stays zero). Sampled mode reports a lower bound.
HyperbolicityEstimate estimate_delta(const FiniteMetric& m, const DeltaOptions& opts = {});

// Defect of one ordered quadruple, for oracles and spot checks.
Rational four_point_defect(const FiniteMetric& m, int u, int v, int w, int base);

}  // namespace homfill
