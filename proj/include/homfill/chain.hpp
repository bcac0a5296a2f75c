#pragma once

#include <map>
#include <vector>

#include "homfill/complex.hpp"
#include "homfill/rings.hpp"

namespace homfill {

// A sparse chain in C_k(X; R): cell id -> nonzero coefficient.
class Chain {
  public:
    Chain(ComplexPtr cx, int dim, NormedRing ring)
        : cx_(std::move(cx)), dim_(dim), ring_(std::move(ring)) {
        if (dim_ < 0 || dim_ > cx_->dim()) throw ContractError("chain dimension out of range");
    }

    const ComplexPtr& complex() const { return cx_; }
    int dim() const { return dim_; }
    const NormedRing& ring() const { return ring_; }
    const std::map<CellId, Coeff>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int support_size() const { return static_cast<int>(coeffs_.size()); }

    Coeff coeff(CellId id) const {
        const auto it = coeffs_.find(id);
        return it == coeffs_.end() ? ring_.zero() : it->second;
    }

    // Adds v to the coefficient of the cell; erases entries that become zero.
    void add_to(CellId id, const Coeff& v) {
        if (id < 0 || id >= cx_->cell_count(dim_)) throw ContractError("cell id out of range");
        const Coeff nv = ring_.add(coeff(id), v);
        if (ring_.is_zero(nv))
            coeffs_.erase(id);
        else
            coeffs_[id] = nv;
    }

    void set(CellId id, const Coeff& v) {
        if (id < 0 || id >= cx_->cell_count(dim_)) throw ContractError("cell id out of range");
        const Coeff cv = ring_.canon(v);
        if (ring_.is_zero(cv))
            coeffs_.erase(id);
        else
            coeffs_[id] = cv;
    }

    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain operator-() const;
    Chain scaled(const Coeff& r) const;

    bool operator==(const Chain& o) const {
        return dim_ == o.dim_ && ring_ == o.ring_ && coeffs_ == o.coeffs_;
    }

  private:
    ComplexPtr cx_;
    int dim_;
    NormedRing ring_;
    std::map<CellId, Coeff> coeffs_;
};

// Alternating-sign boundary; errors below dimension 1.
Chain boundary(const Chain& c);

// Sum of coefficient norms, exact.
Rational l1_norm(const Chain& c);

bool is_cycle(const Chain& c);

// Decomposes a cycle into cycles with connected supports (connectivity via
// shared codimension-1 faces). Supports are pairwise disjoint and norms add.
std::vector<Chain> split_connected_support(const Chain& cycle);

// Chain on an oriented simplex given by an arbitrary-order vertex tuple;
// coefficient is adjusted by the permutation sign to the canonical order.
Chain oriented_simplex_chain(const ComplexPtr& cx, const NormedRing& ring,
                             const std::vector<VertexId>& verts, const Coeff& r);

// The 1-chain of a closed edge path with unit coefficients; backtracks cancel.
Chain path_to_chain(const ComplexPtr& cx, const NormedRing& ring,
                    const std::vector<VertexId>& path);

}  // namespace homfill
