#pragma once

#include <string>
#include <vector>

#include "homfill/util.hpp"

namespace homfill {

enum class RingKind { integers, rationals, integers_mod };
enum class NormKind { discrete, absolute };

// A ring element. Integers and mod-m residues keep denominator 1; rationals
// are kept in lowest terms with positive denominator (cpp_rational invariant).
using Coeff = Rational;

// Descriptor of a coefficient ring equipped with a norm. Immutable value type;
// all coefficient arithmetic is routed through it so that mod-m reduction and
// canonical forms are applied consistently.
class NormedRing {
  public:
    NormedRing() = default;

    static NormedRing integers(NormKind norm) { return NormedRing(RingKind::integers, norm, 0); }
    static NormedRing rationals(NormKind norm) { return NormedRing(RingKind::rationals, norm, 0); }
    static NormedRing integers_mod(const Int& m, NormKind norm);

    // Parses spec strings like "Z:abs", "Q:disc", "Zmod5:disc".
    static NormedRing parse(const std::string& spec);
    std::string spec_string() const;

    RingKind kind() const { return kind_; }
    NormKind norm_kind() const { return norm_; }
    const Int& modulus() const { return modulus_; }

    bool operator==(const NormedRing& o) const {
        return kind_ == o.kind_ && norm_ == o.norm_ && modulus_ == o.modulus_;
    }
    bool operator!=(const NormedRing& o) const { return !(*this == o); }

    Coeff zero() const { return Coeff(0); }
    Coeff one() const { return canon(Coeff(1)); }
    Coeff from_int(long v) const { return canon(Coeff(v)); }

    // Brings an arbitrary rational into the ring's canonical form. Rejects
    // values that do not belong to the ring (e.g. 1/2 over the integers).
    Coeff canon(const Coeff& v) const;

    Coeff add(const Coeff& a, const Coeff& b) const { return reduce(a + b); }
    Coeff sub(const Coeff& a, const Coeff& b) const { return reduce(a - b); }
    Coeff neg(const Coeff& a) const { return reduce(-a); }
    Coeff mul(const Coeff& a, const Coeff& b) const { return reduce(a * b); }

    bool is_zero(const Coeff& a) const { return a == 0; }
    bool eq(const Coeff& a, const Coeff& b) const { return a == b; }

    // The norm |r| as an exact nonnegative rational.
    Rational norm(const Coeff& a) const;

    // Total order used for deterministic tie-breaking: 0 < 1 < -1 < 2 < -2 < ...
    // sorted by (norm-agnostic magnitude, sign, denominator). A well-order on
    // the integers and on each mod-m ring.
    bool coeff_less(const Coeff& a, const Coeff& b) const;

    Coeff parse_coeff(const std::string& s) const;
    std::string format_coeff(const Coeff& c) const { return rational_to_string(c); }

    // Uniform-ish random element for property tests; bounded magnitude for
    // infinite rings, full residue range for mod-m.
    Coeff random(Rng& rng) const;

  private:
    NormedRing(RingKind k, NormKind n, Int m) : kind_(k), norm_(n), modulus_(std::move(m)) {}

    Coeff reduce(const Coeff& v) const;

    RingKind kind_ = RingKind::integers;
    NormKind norm_ = NormKind::absolute;
    Int modulus_ = 0;
};

// Validated construction from parts; throws ConfigError on unsupported
// combinations (absolute norm is only defined on subrings of C).
NormedRing make_ring(RingKind kind, NormKind norm, const Int& modulus = Int(0));

}  // namespace homfill
