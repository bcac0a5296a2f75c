#include "homfill/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "homfill/lattice.hpp"
#include "homfill/metric.hpp"

namespace homfill {

namespace {

std::string chain_key(const Chain& c) {
    std::string s;
    for (const auto& [id, v] : c.coeffs()) {
        s += std::to_string(id);
        s += ':';
        s += rational_to_string(v);
        s += ';';
    }
    return s;
}

// z and -z have equal cycle and filling norms; cache both under one key.
std::string sign_normalized_key(const Chain& c) {
    if (c.is_zero()) return "";
    const auto& [id, v] = *c.coeffs().begin();
    const Coeff nv = c.ring().neg(v);
    if (c.ring().coeff_less(nv, v)) return chain_key(-c);
    return chain_key(c);
}

struct FillRecord {
    Rational z_norm;
    Rational fill_norm;
    FillStatus status;
    bool usable = false;        // a filling was found
    bool non_boundary = false;  // certified: no filling exists at all
};

class FillCache {
  public:
    FillCache(const FillOptions& opts) : opts_(opts) {}

    FillRecord fill(const Chain& z) {
        const std::string key = sign_normalized_key(z);
        const auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        FillRecord rec;
        rec.z_norm = l1_norm(z);
        const FillingResult res = exact_filling(z, opts_);
        rec.status = res.status;
        rec.usable = res.filling.has_value() && res.status != FillStatus::infeasible_within_budget;
        rec.non_boundary = res.proven_no_filling;
        rec.fill_norm = rec.usable ? res.norm : Rational(0);
        cache_.emplace(key, rec);
        return rec;
    }

  private:
    FillOptions opts_;
    std::map<std::string, FillRecord> cache_;
};

// Connected n-cell support sets of size <= max_size, connectivity via shared
// (n-1)-faces; canonical enumeration anchored at each minimal cell id.
void enumerate_connected_supports(const ComplexPtr& cx, int n, int max_size,
                                  const std::function<void(const std::vector<CellId>&)>& emit) {
    const int count = cx->cell_count(n);
    auto neighbors = [&](CellId c) {
        std::set<CellId> out;
        for (const auto& inc : cx->boundary_of(n, c))
            for (CellId cof : cx->cofaces_of(n - 1, inc.face))
                if (cof != c) out.insert(cof);
        return out;
    };
    std::vector<CellId> current;
    std::function<void(CellId, std::set<CellId>&, std::set<CellId>&)> grow =
        [&](CellId anchor, std::set<CellId>& ext, std::set<CellId>& banned) {
            emit(current);
            if (static_cast<int>(current.size()) == max_size) return;
            std::vector<CellId> exts(ext.begin(), ext.end());
            std::set<CellId> banned_here;
            for (CellId c : exts) {
                if (banned.count(c) || banned_here.count(c)) continue;
                std::set<CellId> next_ext = ext;
                next_ext.erase(c);
                for (CellId nb : neighbors(c))
                    if (nb > anchor && !banned.count(nb) && !banned_here.count(nb) &&
                        std::find(current.begin(), current.end(), nb) == current.end())
                        next_ext.insert(nb);
                current.push_back(c);
                std::set<CellId> merged_ban = banned;
                merged_ban.insert(banned_here.begin(), banned_here.end());
                grow(anchor, next_ext, merged_ban);
                current.pop_back();
                banned_here.insert(c);
            }
        };
    for (CellId s = 0; s < count; ++s) {
        current = {s};
        std::set<CellId> ext;
        for (CellId nb : neighbors(s))
            if (nb > s) ext.insert(nb);
        std::set<CellId> banned;
        grow(s, ext, banned);
    }
}

// All cycles over the ring supported exactly on the given cells, with
// coefficients drawn from the enumeration window (full residue range over
// Z_m). Returns false when the combination count would explode.
bool cycles_on_support(const ComplexPtr& cx, int n, const std::vector<CellId>& support,
                       const NormedRing& ring, int window, std::vector<Chain>& out) {
    IntMat a;
    std::map<CellId, int> row_of;
    for (CellId c : support)
        for (const auto& inc : cx->boundary_of(n, c))
            if (!row_of.count(inc.face)) {
                row_of[inc.face] = static_cast<int>(row_of.size());
                a.emplace_back();
            }
    for (auto& row : a) row.assign(support.size(), 0);
    for (std::size_t j = 0; j < support.size(); ++j)
        for (const auto& inc : cx->boundary_of(n, support[j]))
            a[row_of.at(inc.face)][j] = inc.sign;

    const auto basis = kernel_basis(a, ring);
    if (basis.empty()) return true;
    const int dim = static_cast<int>(basis.size());

    std::vector<Coeff> lambda_values;
    if (ring.kind() == RingKind::integers_mod) {
        for (Int r = 0; r < ring.modulus(); ++r) lambda_values.push_back(Coeff(r));
    } else {
        for (int v = -window; v <= window; ++v) lambda_values.push_back(Coeff(v));
    }
    double combos = 1;
    for (int i = 0; i < dim; ++i) combos *= static_cast<double>(lambda_values.size());
    if (combos > 200000.0) return false;

    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        bool all_zero = true;
        for (int i = 0; i < dim; ++i)
            if (!ring.is_zero(lambda_values[idx[i]])) all_zero = false;
        if (!all_zero) {
            Chain z(cx, n, ring);
            for (int i = 0; i < dim; ++i) {
                const Coeff& li = lambda_values[idx[i]];
                if (ring.is_zero(li)) continue;
                for (std::size_t j = 0; j < support.size(); ++j)
                    z.add_to(support[j], ring.mul(li, basis[i][j]));
            }
            if (z.support_size() == static_cast<int>(support.size())) out.push_back(std::move(z));
        }
        int pos = 0;
        while (pos < dim && ++idx[pos] == lambda_values.size()) idx[pos++] = 0;
        if (pos == dim) break;
    }
    return true;
}

struct Sample {
    Rational z_norm;
    Rational fill_norm;
    FillStatus status;
    bool exhaustive;
};

IsoProfile assemble(const ComplexPtr& cx, int n, const Rational& l_max,
                    const NormedRing& ring, std::vector<Sample>& samples) {
    IsoProfile p;
    p.complex_id = cx->preset_name.empty() ? "complex" : cx->preset_name;
    p.dim = n;
    p.ring_spec = ring.spec_string();
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.z_norm < b.z_norm; });
    std::set<Rational> ls;
    for (const Sample& s : samples)
        if (s.z_norm <= l_max) ls.insert(s.z_norm);
    Rational best = 0;
    for (const Rational& l : ls) {
        ProfileEntry e;
        e.l = l;
        e.exhaustive = true;
        long count = 0;
        bool flagged = false;
        FillStatus worst = FillStatus::optimal;
        for (const Sample& s : samples) {
            if (s.z_norm > l) break;
            ++count;
            best = std::max(best, s.fill_norm);
            if (s.status != FillStatus::optimal) {
                worst = s.status;
                if (s.status == FillStatus::infeasible_within_budget) flagged = true;
            }
            if (!s.exhaustive) e.exhaustive = false;
        }
        e.f_hat = best;
        e.samples = count;
        e.flagged = flagged;
        e.worst_status = worst;
        p.entries.push_back(e);
    }
    return p;
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys, double& intercept,
                 double& stderr_out, double& max_resid) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / n;
    double ss = 0;
    max_resid = 0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
        max_resid = std::max(max_resid, std::abs(r));
    }
    if (n > 2) {
        const double var = ss / (n - 2);
        stderr_out = std::sqrt(var * n / denom);
    } else {
        stderr_out = 0;
    }
    return slope;
}

}  // namespace

std::vector<Chain> sample_cycles(const ComplexPtr& cx, const NormedRing& ring, long count,
                                 int maxlen, std::uint64_t seed) {
    std::vector<Chain> out;
    const int verts = cx->cell_count(0);
    if (verts == 0 || cx->dim() < 1) return out;
    Rng rng(seed);
    long attempts = 0;
    const long max_attempts = count * 40 + 100;
    while (static_cast<long>(out.size()) < count && attempts++ < max_attempts) {
        std::vector<VertexId> path{static_cast<VertexId>(rng.below(verts))};
        std::map<VertexId, int> seen{{path[0], 0}};
        std::optional<std::pair<int, int>> loop;
        for (int step = 0; step < maxlen; ++step) {
            const VertexId at = path.back();
            const auto& edges = cx->cofaces_of(0, at);
            if (edges.empty()) break;
            const CellId eid = edges[rng.below(edges.size())];
            const Cell& e = cx->cell(1, eid);
            const VertexId next = e.verts[0] == at ? e.verts[1] : e.verts[0];
            path.push_back(next);
            const auto it = seen.find(next);
            if (it != seen.end()) {
                loop = {{it->second, static_cast<int>(path.size()) - 1}};
                break;
            }
            seen[next] = static_cast<int>(path.size()) - 1;
        }
        if (!loop) continue;
        const std::vector<VertexId> cycle_path(path.begin() + loop->first,
                                               path.begin() + loop->second + 1);
        Chain z = path_to_chain(cx, ring, cycle_path);
        if (!z.is_zero()) out.push_back(std::move(z));
    }
    return out;
}

std::vector<std::vector<VertexId>> rectangle_loops(const ComplexPtr& cx, int max_side) {
    std::vector<std::vector<VertexId>> out;
    if (cx->lattice.empty()) return out;
    std::map<std::pair<int, int>, VertexId> at;
    for (VertexId v = 0; v < static_cast<VertexId>(cx->lattice.size()); ++v)
        at[cx->lattice[v]] = v;
    auto vertex = [&](int x, int y) -> std::optional<VertexId> {
        const auto it = at.find({x, y});
        if (it == at.end()) return std::nullopt;
        return it->second;
    };
    auto edge_ok = [&](VertexId a, VertexId b) {
        return cx->find_cell(Cell{{std::min(a, b), std::max(a, b)}}).has_value();
    };
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (const auto& [x, y] : cx->lattice) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    for (int w = 1; w <= max_side; ++w)
        for (int h = 1; h <= max_side; ++h)
            for (int x0 = min_x; x0 + w <= max_x; ++x0)
                for (int y0 = min_y; y0 + h <= max_y; ++y0) {
                    std::vector<VertexId> loop;
                    bool ok = true;
                    auto push = [&](int x, int y) {
                        const auto v = vertex(x, y);
                        if (!v) {
                            ok = false;
                            return;
                        }
                        if (!loop.empty() && !edge_ok(loop.back(), *v)) {
                            ok = false;
                            return;
                        }
                        loop.push_back(*v);
                    };
                    for (int x = x0; x <= x0 + w && ok; ++x) push(x, y0);
                    for (int y = y0 + 1; y <= y0 + h && ok; ++y) push(x0 + w, y);
                    for (int x = x0 + w - 1; x >= x0 && ok; --x) push(x, y0 + h);
                    for (int y = y0 + h - 1; y >= y0 && ok; --y) push(x0, y);
                    if (ok) out.push_back(std::move(loop));
                }
    return out;
}

IsoProfile profile(const ComplexPtr& cx, int n, const Rational& l_max, const SamplerConfig& cfg,
                   const NormedRing& ring, const FillOptions& fill_opts) {
    if (n < 1 || n > cx->dim()) throw ContractError("profile: dimension out of range");

    FillCache cache(fill_opts);
    std::vector<Sample> samples;
    const Rational l_exh = std::min(cfg.l_exhaustive, l_max);

    // Exhaustive part: connected supports first, then disjoint combinations.
    std::vector<std::pair<Chain, FillRecord>> connected;
    if (l_exh > 0) {
        const int max_cells = static_cast<int>(boost::multiprecision::numerator(l_exh) /
                                               boost::multiprecision::denominator(l_exh));
        std::set<std::string> seen;
        enumerate_connected_supports(cx, n, max_cells, [&](const std::vector<CellId>& supp) {
            if (supp.empty()) return;
            std::vector<Chain> zs;
            if (!cycles_on_support(cx, n, supp, ring, cfg.coeff_window, zs)) {
                std::cerr << "warning: skipping a support with too many coefficient "
                             "combinations\n";
                return;
            }
            for (Chain& z : zs) {
                if (l1_norm(z) > l_exh) continue;
                if (!seen.insert(sign_normalized_key(z)).second) continue;
                const FillRecord rec = cache.fill(z);
                if (rec.non_boundary) continue;  // not part of the sup
                samples.push_back({rec.z_norm, rec.fill_norm, rec.status, true});
                connected.push_back({std::move(z), rec});
            }
        });

        // Disjoint-support combinations up to the exhaustion threshold.
        std::function<void(std::size_t, Chain, Rational)> combine =
            [&](std::size_t from, Chain acc, Rational norm_acc) {
                for (std::size_t i = from; i < connected.size(); ++i) {
                    const Rational total = norm_acc + connected[i].second.z_norm;
                    if (total > l_exh) continue;
                    Chain merged = acc;
                    bool disjoint = true;
                    for (const auto& [id, v] : connected[i].first.coeffs())
                        if (!merged.ring().is_zero(merged.coeff(id))) {
                            disjoint = false;
                            break;
                        }
                    if (!disjoint) continue;
                    merged += connected[i].first;
                    if (split_connected_support(merged).size() < 2) continue;
                    const FillRecord rec = cache.fill(merged);
                    if (!rec.non_boundary)
                        samples.push_back({rec.z_norm, rec.fill_norm, rec.status, true});
                    combine(i + 1, merged, total);
                }
            };
        for (std::size_t i = 0; i < connected.size(); ++i) {
            if (2 * connected[i].second.z_norm > l_exh) continue;
            combine(i + 1, connected[i].first, connected[i].second.z_norm);
        }
    }

    // Sampled part (dimension 1): random closed walks beyond the exhaustion.
    if (cfg.samples > 0 && n == 1) {
        for (Chain& z : sample_cycles(cx, ring, cfg.samples, cfg.sample_maxlen, cfg.seed)) {
            const Rational nz = l1_norm(z);
            if (nz > l_max || nz <= l_exh) continue;
            const FillRecord rec = cache.fill(z);
            if (rec.non_boundary) continue;
            samples.push_back({rec.z_norm, rec.fill_norm, rec.status, false});
        }
    }

    IsoProfile p = assemble(cx, n, l_max, ring, samples);
    p.l_exhaustive = l_exh;
    p.coeff_window = cfg.coeff_window;
    p.sample_count = cfg.samples;
    p.seed = cfg.seed;
    p.mode = l_exh > 0 ? (cfg.samples > 0 ? "exhaustive+sampled" : "exhaustive") : "sampled";
    return p;
}

IsoProfile profile_from_cycles(const ComplexPtr& cx, int n, const Rational& l_max,
                               const std::vector<Chain>& cycles, const NormedRing& ring,
                               const FillOptions& fill_opts) {
    FillCache cache(fill_opts);
    std::vector<Sample> samples;
    for (const Chain& z : cycles) {
        if (z.is_zero()) continue;
        const FillRecord rec = cache.fill(z);
        if (rec.non_boundary) continue;
        samples.push_back({rec.z_norm, rec.fill_norm, rec.status, false});
    }
    IsoProfile p = assemble(cx, n, l_max, ring, samples);
    p.mode = "family";
    return p;
}

GrowthClass classify_growth(const IsoProfile& p) {
    // Upper envelope: entries where f_hat strictly increases.
    std::vector<double> xs, ys;
    Rational prev = -1;
    for (const auto& e : p.entries) {
        if (e.f_hat <= 0 || e.l <= 0) continue;
        if (e.f_hat > prev) {
            xs.push_back(std::log(rational_to_double(e.l)));
            ys.push_back(std::log(rational_to_double(e.f_hat)));
            prev = e.f_hat;
        }
    }
    std::set<double> distinct(xs.begin(), xs.end());
    if (distinct.size() < 5)
        throw ContractError("classify_growth needs at least 5 distinct l with f_hat > 0, got " +
                            std::to_string(distinct.size()));
    GrowthClass g;
    double intercept = 0, se = 0, max_resid = 0;
    g.exponent = ols_slope(xs, ys, intercept, se, max_resid);
    g.log_intercept = intercept;
    g.exponent_low = g.exponent - 2 * se;
    g.exponent_high = g.exponent + 2 * se;
    g.max_residual = max_resid;
    g.points_used = static_cast<int>(xs.size());
    if (g.exponent < 1.25)
        g.label = "linear";
    else if (g.exponent < 1.75)
        g.label = "subquadratic";
    else if (g.exponent <= 2.25)
        g.label = "quadratic";
    else
        g.label = "superquadratic";
    const double boundary = (p.dim + 1.0) / p.dim;
    g.sub_euclidean = g.exponent <= boundary + 0.1;
    return g;
}

ThetaReport check_theta(const ComplexPtr& cx, const std::vector<VertexId>& a1,
                        const std::vector<VertexId>& a2, const std::vector<VertexId>& a3,
                        const NormedRing& ring, const FillOptions& opts) {
    auto endpoints_match = [&](const std::vector<VertexId>& p, const std::vector<VertexId>& q) {
        return !p.empty() && !q.empty() && p.front() == q.front() && p.back() == q.back();
    };
    if (!endpoints_match(a1, a2) || !endpoints_match(a2, a3))
        throw ContractError("theta check: the three paths must share both endpoints");
    auto loop_area = [&](const std::vector<VertexId>& p, const std::vector<VertexId>& q) {
        std::vector<VertexId> loop = p;
        loop.insert(loop.end(), q.rbegin(), q.rend());
        return area(cx, loop, ring, opts);
    };
    const FillingResult r12 = loop_area(a1, a2);
    const FillingResult r23 = loop_area(a2, a3);
    const FillingResult r13 = loop_area(a1, a3);
    ThetaReport rep;
    rep.a12 = r12.norm;
    rep.a23 = r23.norm;
    rep.a13 = r13.norm;
    rep.certified = r12.status == FillStatus::optimal && r23.status == FillStatus::optimal &&
                    r13.status == FillStatus::optimal;
    rep.holds = rep.a13 <= rep.a12 + rep.a23;
    return rep;
}

RectangleReport check_rectangle(const ComplexPtr& cx, const std::vector<VertexId>& a1,
                                const std::vector<VertexId>& a2, const std::vector<VertexId>& a3,
                                const std::vector<VertexId>& a4, const NormedRing& ring,
                                const FillOptions& opts) {
    if (!cx->metric) throw ContractError("rectangle check needs a vertex metric");
    auto chained = [&](const std::vector<VertexId>& p, const std::vector<VertexId>& q) {
        return !p.empty() && !q.empty() && p.back() == q.front();
    };
    if (!chained(a1, a2) || !chained(a2, a3) || !chained(a3, a4) || !chained(a4, a1))
        throw ContractError("rectangle check: gamma must be the concatenation of the four paths");
    std::vector<VertexId> loop = a1;
    for (const auto* part : {&a2, &a3, &a4})
        loop.insert(loop.end(), part->begin() + 1, part->end());

    auto set_distance = [&](const std::vector<VertexId>& p, const std::vector<VertexId>& q) {
        Rational best = -1;
        for (VertexId u : p)
            for (VertexId v : q) {
                const Rational d = cx->metric->dist(u, v);
                if (best < 0 || d < best) best = d;
            }
        return best;
    };
    RectangleReport rep;
    rep.d1 = set_distance(a1, a3);
    rep.d2 = set_distance(a2, a4);
    const int attach = cx->attaching_polygon_edges > 0 ? cx->attaching_polygon_edges : 3;
    rep.k = Rational(1, attach);
    const FillingResult r = area(cx, loop, ring, opts);
    rep.area = r.norm;
    rep.certified = r.status == FillStatus::optimal;
    rep.holds = rep.area >= rep.k * rep.d1 * rep.d2;
    return rep;
}

ConingReport check_coning(const ComplexPtr& cx, VertexId basepoint,
                          const std::vector<Rational>& radii, int n, const NormedRing& ring,
                          long blob_samples, std::uint64_t seed, const FillOptions& opts) {
    if (!cx->metric) throw ContractError("coning check needs a vertex metric");
    if (n >= cx->dim()) throw ContractError("coning check needs n < dim(complex)");
    ConingReport rep;
    rep.seed = seed;
    rep.c_overall = 0;
    FillCache cache(opts);
    for (const Rational& r : radii) {
        if (r <= 0) throw ContractError("coning radii must be positive");
        ConingEntry entry;
        entry.radius = r;
        entry.c_hat = 0;
        Rng rng(seed + static_cast<std::uint64_t>(rational_to_double(r) * 1000));
        for (int k = 1; k <= n; ++k) {
            // (k+1)-cells whose vertices stay in the ball; their sub-chains
            // have boundaries supported in the ball.
            std::vector<CellId> pool;
            for (CellId c = 0; c < cx->cell_count(k + 1); ++c) {
                bool inside = true;
                for (VertexId v : cx->cell(k + 1, c).verts)
                    if (cx->metric->dist(basepoint, v) > r) {
                        inside = false;
                        break;
                    }
                if (inside) pool.push_back(c);
            }
            if (pool.empty()) continue;

            auto consider = [&](const std::vector<CellId>& blob) {
                Chain s(cx, k + 1, ring);
                for (CellId c : blob) s.set(c, ring.one());
                Chain z = boundary(s);
                if (z.is_zero()) return;
                const FillRecord rec = cache.fill(z);
                if (!rec.usable) {
                    if (!rec.non_boundary) entry.flagged = true;
                    return;
                }
                ++entry.cycles;
                if (rec.status != FillStatus::optimal) entry.flagged = true;
                const Rational ratio = rec.fill_norm / (r * rec.z_norm);
                entry.c_hat = std::max(entry.c_hat, ratio);
            };

            consider(pool);  // the full-ball chain: a near-extremal cycle
            const long singles = std::min<long>(static_cast<long>(pool.size()), 12);
            for (long i = 0; i < singles; ++i) consider({pool[i]});
            for (long b = 0; b < blob_samples; ++b) {
                std::vector<CellId> blob;
                for (CellId c : pool)
                    if (rng.below(2) == 0) blob.push_back(c);
                if (!blob.empty() && blob.size() < pool.size()) consider(blob);
            }
        }
        rep.c_overall = std::max(rep.c_overall, entry.c_hat);
        rep.entries.push_back(entry);
    }
    return rep;
}

SubEuclideanReport check_subeuclidean(const IsoProfile& p, int n, double tolerance) {
    if (p.dim != n) throw ContractError("profile dimension does not match n");
    std::vector<double> ls, ratios;
    for (const auto& e : p.entries) {
        if (e.f_hat <= 0 || e.l <= 0) continue;
        const double l = rational_to_double(e.l);
        ls.push_back(l);
        ratios.push_back(rational_to_double(e.f_hat) / std::pow(l, (n + 1.0) / n));
    }
    if (ls.size() < 4)
        throw ContractError("check_subeuclidean needs at least 4 entries with f_hat > 0");
    SubEuclideanReport rep;
    rep.tolerance = tolerance;
    for (double r : ratios) rep.c_hat = std::max(rep.c_hat, r);
    // Trend over the top half of the l range.
    const std::size_t start = ls.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = start; i < ls.size(); ++i) {
        xs.push_back(std::log(ls[i]));
        ys.push_back(std::log(ratios[i]));
    }
    if (xs.size() < 2) {
        rep.trend_slope = 0;
    } else {
        double intercept = 0, se = 0, mr = 0;
        rep.trend_slope = ols_slope(xs, ys, intercept, se, mr);
    }
    rep.pass = rep.trend_slope <= tolerance;
    return rep;
}

}  // namespace homfill
