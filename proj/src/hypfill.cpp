#include "homfill/hypfill.hpp"

#include <algorithm>
#include <set>

namespace homfill {

namespace {

Int round_half_up(const Rational& q) {
    // nearest integer, ties away from zero
    if (q < 0) return -round_half_up(-q);
    const Rational shifted = q + Rational(1, 2);
    return boost::multiprecision::numerator(shifted) /
           boost::multiprecision::denominator(shifted);
}

// Signed coefficient of the directed edge a -> b (so that its boundary is
// b - a) inside a 1-chain.
Coeff directed_coeff(const Chain& c, VertexId a, VertexId b) {
    const auto id = c.complex()->find_cell(Cell{{std::min(a, b), std::max(a, b)}});
    if (!id) return c.ring().zero();
    const Coeff v = c.coeff(*id);
    return a < b ? v : c.ring().neg(v);
}

std::set<VertexId> vertex_support(const Chain& c) {
    std::set<VertexId> out;
    for (const auto& [id, v] : c.coeffs()) {
        const Cell& e = c.complex()->cell(1, id);
        out.insert(e.verts.begin(), e.verts.end());
    }
    return out;
}

std::vector<VertexId> supported_neighbors(const Chain& c, VertexId v) {
    std::vector<VertexId> out;
    for (const auto& [id, coeff] : c.coeffs()) {
        const Cell& e = c.complex()->cell(1, id);
        if (e.verts[0] == v) out.push_back(e.verts[1]);
        if (e.verts[1] == v) out.push_back(e.verts[0]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Int linear_bound(int k) {
    const Int a = k + 1;
    const Int b = Int(k - 1) * Int(k + 1);
    return std::max(a, b) + 1;
}

HyperbolicContext HyperbolicContext::create(ComplexPtr rips, const Rational& delta,
                                            const Rational& epsilon, VertexId basepoint,
                                            std::optional<Rational> margin) {
    HyperbolicContext ctx;
    if (!rips->metric || !rips->rips_distance)
        throw ContractError("hyperbolic context needs a Rips complex with metric and distance");
    ctx.rips = std::move(rips);
    ctx.d = *ctx.rips->rips_distance;
    ctx.delta = delta;
    ctx.epsilon = epsilon;
    ctx.basepoint = basepoint;
    if (basepoint < 0 || basepoint >= ctx.rips->metric->points())
        throw ContractError("basepoint out of range");
    if (!(ctx.d > 4 * delta + 2 * epsilon))
        throw ConfigError("linear filler precondition violated: need d > 4*delta + 2*epsilon (d=" +
                          rational_to_string(ctx.d) + ", delta=" + rational_to_string(delta) +
                          ", epsilon=" + rational_to_string(epsilon) + ")");
    ctx.margin = margin ? *margin : 2 * ctx.d + 4 * delta;
    int k = 0;
    for (CellId v = 0; v < ctx.rips->cell_count(0); ++v)
        k = std::max(k, static_cast<int>(ctx.rips->cofaces_of(0, v).size()));
    ctx.max_degree = k;
    ctx.bound_n = linear_bound(k);
    return ctx;
}

std::pair<FillingResult, ReductionTrace> linear_fill(const HyperbolicContext& ctx, const Chain& z) {
    const ComplexPtr& cx = ctx.rips;
    const FiniteMetric& metric = *cx->metric;
    const NormedRing& ring = z.ring();
    if (z.complex() != cx) throw ContractError("cycle lives in a different complex");
    if (z.dim() != 1) throw ContractError("linear filler reduces 1-cycles only");
    if (!z.is_zero() && !is_cycle(z)) throw ContractError("linear_fill: input is not a cycle");

    // Truncation margin: the support must keep its distance from the ball
    // boundary so that every vertex the reduction touches stays inside.
    if (metric.truncation) {
        const auto& [center, radius] = *metric.truncation;
        for (VertexId u : vertex_support(z)) {
            const Rational slack = radius - metric.dist(center, u);
            if (slack < ctx.margin)
                throw ContractError("cycle support is closer than the safety margin (" +
                                    rational_to_string(ctx.margin) +
                                    ") to the truncation boundary");
        }
    }

    auto disc_norm = [](const Chain& c) { return Rational(c.support_size()); };

    ReductionTrace trace;
    Chain work = z;
    Chain filling(cx, 2, ring);
    const Rational budget = Rational(ctx.bound_n) * disc_norm(z);

    auto fail = [&](const std::string& why) {
        throw CertificationError("linear filler: " + why + " (after " +
                                 std::to_string(trace.steps.size()) + " steps)");
    };

    while (!work.is_zero()) {
        if (Rational(trace.cells_used) > budget)
            fail("2-cell budget N*|z| exceeded; delta or d is likely mis-estimated");

        // Farthest supported vertex, ties by least id.
        VertexId v = -1;
        Rational vdist = -1;
        for (VertexId u : vertex_support(work)) {
            const Rational du = metric.dist(ctx.basepoint, u);
            if (du > vdist) {
                v = u;
                vdist = du;
            }
        }
        const std::vector<VertexId> nbrs = supported_neighbors(work, v);
        const int l = static_cast<int>(nbrs.size());
        if (l < 2) fail("supported vertex with fewer than two supported neighbours");

        auto adjacent = [&](VertexId a, VertexId b) { return metric.dist(a, b) <= ctx.d; };

        int pi = -1, pj = -1;
        for (int i = 0; i < l && pi < 0; ++i)
            for (int j = i + 1; j < l; ++j)
                if (adjacent(nbrs[i], nbrs[j])) {
                    pi = i;
                    pj = j;
                    break;
                }

        const Rational before = l1_norm(work);
        ReductionStep step;
        step.v = v;
        step.norm_before = before;

        if (pi >= 0 && l == 2) {
            // Case 1: exactly two supported neighbours, adjacent.
            const VertexId u1 = nbrs[0], u2 = nbrs[1];
            const Coeff r1 = directed_coeff(work, u1, v);
            const Coeff r2 = directed_coeff(work, u2, v);
            if (!ring.is_zero(ring.add(r1, r2))) fail("case 1 cycle condition r1 + r2 = 0 broken");
            step.case_id = 1;
            step.involved = {u1, v, u2};
            step.applied = oriented_simplex_chain(cx, ring, {u1, v, u2}, r1);
        } else if (pi >= 0) {
            // Case 2: some adjacent pair among the supported neighbours.
            const VertexId a = nbrs[pi], b = nbrs[pj];
            const Coeff ra = directed_coeff(work, a, v);
            step.case_id = 2;
            step.involved = {a, v, b};
            step.applied = oriented_simplex_chain(cx, ring, {a, v, b}, ra);
        } else {
            // Case 3: all supported neighbours pairwise further than d.
            step.case_id = 3;
            // u1: supported neighbour with d(u1, x0) >= d(v, x0) - 2*delta,
            // least id.
            VertexId u1 = -1;
            for (VertexId u : nbrs)
                if (metric.dist(u, ctx.basepoint) >= vdist - 2 * ctx.delta) {
                    u1 = u;
                    break;
                }
            if (u1 < 0) fail("case 3: no neighbour within 2*delta of the farthest distance");

            // u': a net point near the geodesic [x0, v] at distance round(d/2)
            // from v, validated against the claim's distance conditions.
            const Rational target = std::min(Rational(round_half_up(ctx.d / 2)), vdist);
            const std::set<VertexId> supp_verts = vertex_support(work);
            const std::vector<VertexId> u1_nbrs = supported_neighbors(work, u1);

            auto validate = [&](VertexId cand) {
                if (cand == u1) return false;
                if (std::binary_search(u1_nbrs.begin(), u1_nbrs.end(), cand)) return false;
                for (VertexId x : supp_verts)
                    if (metric.dist(x, u1) <= ctx.d + 2 * ctx.delta &&
                        metric.dist(x, cand) > ctx.d)
                        return false;
                for (VertexId u : nbrs)
                    if (u != u1 && metric.dist(u, cand) > ctx.d) return false;
                return true;
            };

            VertexId path_pos = -1;
            for (int w = 0; w < metric.points(); ++w)
                if (metric.dist(v, w) == target &&
                    metric.dist(v, w) + metric.dist(w, ctx.basepoint) == vdist) {
                    path_pos = w;
                    break;
                }
            if (path_pos < 0) {
                // No vertex exactly on a geodesic at that distance (possible
                // for matrix metrics); fall back to the best approximation.
                Rational best_defect = -1;
                for (int w = 0; w < metric.points(); ++w) {
                    const Rational defect =
                        (metric.dist(v, w) + metric.dist(w, ctx.basepoint) - vdist) +
                        boost::multiprecision::abs(metric.dist(v, w) - target);
                    if (best_defect < 0 || defect < best_defect) {
                        best_defect = defect;
                        path_pos = w;
                    }
                }
            }
            VertexId uprime = -1;
            if (validate(path_pos)) {
                uprime = path_pos;
            } else {
                for (int w = 0; w < metric.points(); ++w)
                    if (metric.dist(w, path_pos) <= ctx.epsilon + 1 && validate(w)) {
                        uprime = w;
                        break;
                    }
            }
            if (uprime < 0) fail("case 3: no valid u' near the geodesic midpoint");
            step.involved = {u1, uprime};

            Chain applied(cx, 2, ring);
            Coeff rx_sum = ring.zero();
            for (VertexId x : u1_nbrs) {
                const Coeff rx = directed_coeff(work, u1, x);
                rx_sum = ring.add(rx_sum, rx);
                applied += oriented_simplex_chain(cx, ring, {u1, x, uprime}, rx);
            }
            if (!ring.is_zero(rx_sum)) fail("case 3: cycle condition sum r_x = 0 broken");
            step.applied = std::move(applied);
        }

        Chain next = work;
        next -= boundary(*step.applied);
        step.norm_after = l1_norm(next);

        if (step.case_id == 1) {
            if (ring.norm_kind() == NormKind::discrete && !(step.norm_after <= before - 1))
                fail("case 1 did not reduce the norm by at least 1");
            if (!(step.norm_after < before)) fail("case 1 did not strictly reduce the norm");
        }
        if (step.norm_after > before) fail("step increased the cycle norm");
        if (step.case_id == 2) {
            // The branched edge (u_i, v) must be eliminated.
            const auto eid = cx->find_cell(
                Cell{{std::min(step.involved[0], v), std::max(step.involved[0], v)}});
            if (!ring.is_zero(next.coeff(*eid))) fail("case 2 did not eliminate the edge");
        }
        if (step.case_id == 3) {
            // The (u1, u') edge must remain untouched: sum of r_x vanishes.
            const Coeff c = directed_coeff(next, step.involved[0], step.involved[1]);
            const Coeff was = directed_coeff(work, step.involved[0], step.involved[1]);
            if (!ring.eq(c, was)) fail("case 3 changed the (u1,u') coefficient");
        }
        if (!next.is_zero() && !is_cycle(next)) fail("intermediate chain is not a cycle");

        trace.cells_used += step.applied->support_size();
        filling += *step.applied;
        work = std::move(next);
        trace.steps.push_back(std::move(step));
    }

    // Exact boundary check.
    Chain check = boundary(filling);
    check -= z;
    if (!check.is_zero()) throw CertificationError("linear filler produced a wrong boundary");

    if (ring.norm_kind() == NormKind::discrete &&
        Rational(filling.support_size()) > budget)
        throw CertificationError("linear filler exceeded the certified bound N*|z|");

    FillingResult result;
    result.norm = l1_norm(filling);
    result.filling = std::move(filling);
    result.status = FillStatus::upper_bound;
    result.nodes = trace.steps.size();
    return {std::move(result), std::move(trace)};
}

}  // namespace homfill
