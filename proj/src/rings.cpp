#include "homfill/rings.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace homfill {

namespace mp = boost::multiprecision;

NormedRing NormedRing::integers_mod(const Int& m, NormKind norm) {
    if (m < 2) throw ConfigError("modulus must be >= 2");
    if (norm == NormKind::absolute)
        throw ConfigError("absolute norm requires a subring of the complex numbers; "
                          "integers mod " + m.str() + " only supports the discrete norm");
    return NormedRing(RingKind::integers_mod, norm, m);
}

NormedRing make_ring(RingKind kind, NormKind norm, const Int& modulus) {
    if (kind == RingKind::integers_mod) return NormedRing::integers_mod(modulus, norm);
    if (kind == RingKind::integers) return NormedRing::integers(norm);
    return NormedRing::rationals(norm);
}

NormedRing NormedRing::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("ring spec must look like Z:abs, Q:disc or Zmod5:disc, got '" + spec + "'");
    const std::string ring = spec.substr(0, colon);
    const std::string norm_s = spec.substr(colon + 1);
    NormKind norm;
    if (norm_s == "abs")
        norm = NormKind::absolute;
    else if (norm_s == "disc")
        norm = NormKind::discrete;
    else
        throw ConfigError("unknown norm '" + norm_s + "' (expected abs or disc)");
    if (ring == "Z") return make_ring(RingKind::integers, norm);
    if (ring == "Q") return make_ring(RingKind::rationals, norm);
    if (ring.rfind("Zmod", 0) == 0) {
        const std::string mod_s = ring.substr(4);
        if (mod_s.empty() || mod_s.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("bad modulus in ring spec '" + spec + "'");
        return make_ring(RingKind::integers_mod, norm, Int(mod_s));
    }
    throw ConfigError("unknown ring '" + ring + "' (expected Z, Q or ZmodM)");
}

std::string NormedRing::spec_string() const {
    std::string s;
    switch (kind_) {
        case RingKind::integers: s = "Z"; break;
        case RingKind::rationals: s = "Q"; break;
        case RingKind::integers_mod: s = "Zmod" + modulus_.str(); break;
    }
    s += (norm_ == NormKind::absolute) ? ":abs" : ":disc";
    return s;
}

Coeff NormedRing::canon(const Coeff& v) const {
    switch (kind_) {
        case RingKind::rationals:
            return v;
        case RingKind::integers:
            if (mp::denominator(v) != 1)
                throw ContractError("coefficient " + rational_to_string(v) + " is not an integer");
            return v;
        case RingKind::integers_mod: {
            if (mp::denominator(v) != 1)
                throw ContractError("coefficient " + rational_to_string(v) +
                                    " is not a residue mod " + modulus_.str());
            Int r = mp::numerator(v) % modulus_;
            if (r < 0) r += modulus_;
            return Coeff(r);
        }
    }
    return v;
}

Coeff NormedRing::reduce(const Coeff& v) const {
    if (kind_ != RingKind::integers_mod) return v;
    Int r = mp::numerator(v) % modulus_;
    if (r < 0) r += modulus_;
    return Coeff(r);
}

Rational NormedRing::norm(const Coeff& a) const {
    if (norm_ == NormKind::discrete) return a == 0 ? Rational(0) : Rational(1);
    return a < 0 ? Rational(-a) : Rational(a);
}

bool NormedRing::coeff_less(const Coeff& a, const Coeff& b) const {
    if (a == b) return false;
    // Magnitude key: for mod-m use the lift of least absolute value, matching
    // the order on lifted integers; otherwise plain |.|.
    auto key = [this](const Coeff& v) -> Rational {
        if (kind_ == RingKind::integers_mod) {
            Int r = mp::numerator(v);
            Int alt = r - modulus_;
            return (r <= -alt) ? Rational(r) : Rational(alt);
        }
        return v;
    };
    const Rational ka = key(a), kb = key(b);
    const Rational ma = ka < 0 ? -ka : ka;
    const Rational mb = kb < 0 ? -kb : kb;
    if (ma != mb) return ma < mb;
    return ka > kb;  // positive before negative at equal magnitude
}

Coeff NormedRing::parse_coeff(const std::string& s) const {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return canon(Coeff(Int(s)));
        const Int num(s.substr(0, slash));
        const Int den(s.substr(slash + 1));
        if (den == 0) throw ContractError("zero denominator in coefficient '" + s + "'");
        return canon(Coeff(num, den));
    } catch (const std::exception& e) {
        throw IoError("cannot parse coefficient '" + s + "': " + e.what());
    }
}

Coeff NormedRing::random(Rng& rng) const {
    switch (kind_) {
        case RingKind::integers:
            return Coeff(rng.range(-1000000, 1000000));
        case RingKind::rationals: {
            const std::int64_t num = rng.range(-100000, 100000);
            const std::int64_t den = rng.range(1, 1000);
            return Coeff(Int(num), Int(den));
        }
        case RingKind::integers_mod: {
            if (modulus_ <= Int(std::numeric_limits<std::int64_t>::max())) {
                const auto m = static_cast<std::int64_t>(modulus_);
                return Coeff(Int(rng.range(0, m - 1)));
            }
            Int r = 0;
            for (int i = 0; i < 4; ++i) r = (r << 64) + Int(rng.next());
            return Coeff(r % modulus_);
        }
    }
    return Coeff(0);
}

}  // namespace homfill
