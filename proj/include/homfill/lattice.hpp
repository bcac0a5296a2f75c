#pragma once

#include <vector>

#include "homfill/rings.hpp"
#include "homfill/util.hpp"

namespace homfill {

using IntMat = std::vector<std::vector<Int>>;  // row-major, rectangular

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SmithForm {
    IntMat u;               // rows x rows
    IntMat v;               // cols x cols
    std::vector<Int> diag;  // min(rows, cols) entries
    int rank = 0;           // nonzero diagonal entries
};

SmithForm smith_normal_form(IntMat a);

// Outcome of solving A x = b over Z, Q or Z_m (ring chosen by its kind; the
// norm is irrelevant here). On infeasibility, an integer certificate row y and
// modulus M are produced with: y^T A == 0 (mod M) entrywise, y^T b != 0
// (mod M); M == 0 means exact equality over Z/Q. Any feasible superset of the
// columns must then contain a new column v with y^T v != 0 (mod M).
struct LinearSolution {
    bool feasible = false;
    std::vector<Coeff> particular;  // length = cols, ring-canonical
    std::vector<Int> cert_row;      // length = rows (when infeasible)
    Int cert_mod = 0;
};

LinearSolution solve_linear(const IntMat& a, const std::vector<Int>& b, const NormedRing& ring);

// Basis of {x : A x = 0 over the ring}: free columns of the Smith form, plus
// torsion generators over Z_m. Entries are ring-canonical.
std::vector<std::vector<Coeff>> kernel_basis(const IntMat& a, const NormedRing& ring);

// The canonical-form machinery of a finitely generated abelian group given as
// coker(Z^rank_gens <- relations). Elements are represented by their
// transformed coordinate tuples, which are canonical under addition.
class AbelianCoker {
  public:
    // relator_columns[j] is the abelianization of relator j (length = gens).
    AbelianCoker(int gens, const IntMat& relator_columns);

    int gens() const { return gens_; }
    std::vector<Int> canon_of_exponent(const std::vector<Int>& x) const;
    std::vector<Int> add(const std::vector<Int>& cw, const std::vector<Int>& dw) const;
    std::vector<Int> generator(int k) const;  // canonical tuple of e_k
    std::vector<Int> identity() const { return std::vector<Int>(gens_, 0); }
    const std::vector<Int>& moduli() const { return moduli_; }  // 0 = free coordinate

  private:
    std::vector<Int> reduce(std::vector<Int> w) const;
    int gens_;
    IntMat u_;                 // transform
    std::vector<Int> moduli_;  // per-row modulus, 0 = free coordinate
};

}  // namespace homfill
