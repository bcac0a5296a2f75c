#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homfill/util.hpp"

namespace homfill {

class FiniteMetric;

using VertexId = int;
using CellId = int;

// A k-simplex as its strictly increasing vertex tuple (canonical orientation).
struct Cell {
    std::vector<VertexId> verts;

    int dim() const { return static_cast<int>(verts.size()) - 1; }
    bool operator==(const Cell& o) const { return verts == o.verts; }
    bool operator<(const Cell& o) const { return verts < o.verts; }
};

struct Incidence {
    CellId face;
    int sign;  // +1 or -1
};

// A finite simplicial complex. Cells of each dimension are stored sorted
// lexicographically by vertex tuple, so cell ids are canonical and
// serialization round-trips byte-stable. Immutable after construction.
class Complex {
  public:
    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    int vertex_count() const { return vertex_count_; }

    int cell_count(int k) const {
        if (k < 0 || k > dim()) return 0;
        return static_cast<int>(cells_[k].size());
    }
    const Cell& cell(int k, CellId id) const { return cells_[k][id]; }
    const std::vector<Cell>& cells(int k) const { return cells_[k]; }

    // Faces with alternating signs: face i of (v0<...<vk) drops vi, sign (-1)^i.
    const std::vector<Incidence>& boundary_of(int k, CellId id) const { return boundaries_[k][id]; }
    // Ids of (k+1)-cells having this k-cell as a face.
    const std::vector<CellId>& cofaces_of(int k, CellId id) const { return cofaces_[k][id]; }

    // Id lookup; returns nullopt if the simplex is absent.
    std::optional<CellId> find_cell(const Cell& c) const;

    // Metadata (optional, set by builders).
    std::shared_ptr<const FiniteMetric> metric;   // vertex metric handle
    std::optional<Rational> rips_distance;        // d for Rips complexes
    int attaching_polygon_edges = 0;              // max relator polygon size pre-subdivision, 0 if n/a
    std::string preset_name;                      // provenance
    bool identification_certified = true;         // false for heuristic word reduction
    std::vector<std::pair<int, int>> lattice;     // per-vertex plane coordinates (grid/z2)

  private:
    friend class ComplexBuilder;
    int vertex_count_ = 0;
    std::vector<std::vector<Cell>> cells_;                     // [dim][id]
    std::vector<std::vector<std::vector<Incidence>>> boundaries_;
    std::vector<std::vector<std::vector<CellId>>> cofaces_;
    std::vector<std::map<std::vector<VertexId>, CellId>> index_;
};

using ComplexPtr = std::shared_ptr<const Complex>;

// Accumulates simplices (faces are added automatically), then freezes into a
// Complex with canonical ids and incidence tables.
class ComplexBuilder {
  public:
    void add_vertex(VertexId v);
    void add_simplex(const std::vector<VertexId>& verts);  // any order, distinct entries
    ComplexPtr build();

  private:
    int max_vertex_ = -1;
    std::vector<std::map<std::vector<VertexId>, char>> seen_;
};

// A subcomplex of a parent complex, id-preserving: members are parent cell ids.
class SubComplex {
  public:
    explicit SubComplex(ComplexPtr parent);

    const ComplexPtr& parent() const { return parent_; }
    bool contains(int k, CellId id) const;
    void insert(int k, CellId id);  // does not close under faces by itself
    int cell_count(int k) const;
    int total_cells() const;
    // Sorted member ids of dimension k.
    std::vector<CellId> members(int k) const;

    bool operator==(const SubComplex& o) const { return flags_ == o.flags_; }

  private:
    ComplexPtr parent_;
    std::vector<std::vector<char>> flags_;
    std::vector<int> counts_;
};

// Smallest subcomplex containing the given cells (face closure).
SubComplex hull(ComplexPtr cx, const std::vector<std::pair<int, CellId>>& cells);

// N(sub): sub plus every cell with at least one boundary face in sub, closed
// under faces. Monotone: sub is contained in the result.
SubComplex expand_neighborhood(const SubComplex& sub);

bool is_subcomplex(const SubComplex& sub);

}  // namespace homfill
