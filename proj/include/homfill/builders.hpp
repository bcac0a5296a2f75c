#pragma once

#include <string>
#include <vector>

#include "homfill/complex.hpp"
#include "homfill/metric.hpp"

namespace homfill {

// Group presentation with single-letter generator names. In relator words a
// lowercase letter is a generator, the matching uppercase letter its inverse.
struct Presentation {
    std::vector<std::string> generators;  // single letters, e.g. {"a","b"}
    std::vector<std::string> relators;    // nonempty freely reduced words

    // Identification strategy for word enumeration.
    enum class NormalForm { automatic, free_reduction, abelian, dehn };
    NormalForm normal_form = NormalForm::automatic;

    void validate() const;
};

// Shipped presets: "f2", "free:N", "z2", "z2:w1,w2,..." (generators given as
// words in a,b; certified via abelianization), "genus2".
Presentation preset_presentation(const std::string& name);

struct BuiltSpace {
    ComplexPtr complex;
    std::shared_ptr<const FiniteMetric> metric;
};

// The ball of word-metric radius `radius` in the Cayley graph, with one
// fan-triangulated relator disk glued per embedded relator polygon fully
// contained in the ball. Metric = graph metric on generator edges.
BuiltSpace cayley_ball(const Presentation& p, int radius);

// Flag complex on the points of m with edges at distance <= d, truncated at
// dimension max_dim; stores d and the metric handle on the result.
ComplexPtr rips_complex(std::shared_ptr<const FiniteMetric> m, const Rational& d, int max_dim);

// (w+1) x (h+1) vertex grid; each unit square split along the same diagonal.
// Metric = graph metric of the 1-skeleton (diagonals included).
BuiltSpace grid_complex(int w, int h);

// Rooted tree: the root has `valence` children, every other internal vertex
// valence - 1, down to the given depth. A 1-complex with its graph metric.
BuiltSpace tree_complex(int valence, int depth);

// Preset dispatcher for the CLI: f2 | free:N | z2 | z2:words | genus2 |
// grid:WxH | tree:V,D, with a radius/size argument where applicable.
BuiltSpace build_preset(const std::string& preset, int radius);

}  // namespace homfill
