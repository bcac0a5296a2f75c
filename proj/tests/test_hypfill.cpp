#include <doctest.h>

#include "homfill/builders.hpp"
#include "homfill/hypfill.hpp"
#include "homfill/profiler.hpp"

using namespace homfill;

namespace {

const NormedRing kZd = NormedRing::parse("Z:disc");

HyperbolicContext tree_rips_context(int depth, std::optional<Rational> margin = Rational(0)) {
    const auto ball = build_preset("f2", depth);
    const auto rips = rips_complex(ball.metric, 3, 2);
    return HyperbolicContext::create(rips, 0, 1, 0, margin);
}

}  // namespace

TEST_CASE("linear bound formula") {
    CHECK(linear_bound(2) == 4);    // max{3,3}+1
    CHECK(linear_bound(4) == 16);   // max{5,15}+1
    CHECK(linear_bound(1) == 3);    // max{2,0}+1
    CHECK(linear_bound(52) == 2704);
}

TEST_CASE("context validates the d > 4*delta + 2*epsilon precondition") {
    const auto ball = build_preset("f2", 3);
    const auto rips = rips_complex(ball.metric, 2, 2);
    // d = 2 = 4*0 + 2*1 violates the strict inequality
    CHECK_THROWS_AS(HyperbolicContext::create(rips, 0, 1, 0), ConfigError);
    const auto rips3 = rips_complex(ball.metric, 3, 2);
    const auto ctx = HyperbolicContext::create(rips3, 0, 1, 0);
    CHECK(ctx.bound_n == linear_bound(ctx.max_degree));
    CHECK(ctx.margin == 6);  // default 2d + 4*delta
}

TEST_CASE("empty cycle gives an empty trace") {
    const auto ctx = tree_rips_context(3);
    const Chain z(ctx.rips, 1, kZd);
    const auto [res, trace] = linear_fill(ctx, z);
    CHECK(res.norm == 0);
    CHECK(trace.steps.empty());
}

TEST_CASE("a Rips 2-cell boundary fills in one case-1 step") {
    const auto ctx = tree_rips_context(3);
    REQUIRE(ctx.rips->cell_count(2) > 0);
    Chain c(ctx.rips, 2, kZd);
    c.set(0, Coeff(1));
    const Chain z = boundary(c);
    const auto [res, trace] = linear_fill(ctx, z);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].case_id == 1);
    CHECK(res.norm == 1);
    Chain check = boundary(*res.filling);
    check -= z;
    CHECK(check.is_zero());
}

TEST_CASE("random cycles fill with certified bounds and exact boundaries") {
    const auto ctx = tree_rips_context(4);
    const auto cycles = sample_cycles(ctx.rips, kZd, 40, 10, 2024);
    REQUIRE(cycles.size() >= 30);
    const Rational n_bound(ctx.bound_n);
    for (const Chain& z : cycles) {
        const auto [res, trace] = linear_fill(ctx, z);
        REQUIRE(res.filling.has_value());
        Chain check = boundary(*res.filling);
        check -= z;
        CHECK(check.is_zero());
        CHECK(Rational(res.filling->support_size()) <= n_bound * Rational(z.support_size()));
        // trace invariants: norms never increase; case 1 strictly decreases
        for (const auto& step : trace.steps) {
            CHECK(step.norm_after <= step.norm_before);
            if (step.case_id == 1) CHECK(step.norm_after <= step.norm_before - 1);
        }
    }
}

TEST_CASE("case 2 fires when the farthest vertex has extra neighbours") {
    const auto ctx = tree_rips_context(4, Rational(0));
    // two triangles sharing their deepest vertex; oriented so the shared
    // edge does not cancel, the deep vertex keeps three supported neighbours
    const auto& m = *ctx.rips->metric;
    // vertices: 0 = identity, 1..4 = generators; pick x at distance 2
    VertexId deep = -1, p1 = -1, p2 = -1;
    for (int v = 0; v < m.points() && deep < 0; ++v)
        if (m.dist(0, v) == 2)
            for (int a = 0; a < m.points() && deep < 0; ++a) {
                if (m.dist(0, a) != 1 || m.dist(a, v) != 1) continue;
                for (int b = 0; b < m.points(); ++b)
                    if (m.dist(0, b) == 1 && m.dist(b, v) == 3 && b != a) {
                        deep = v;
                        p1 = a;
                        p2 = b;
                        break;
                    }
            }
    REQUIRE(deep >= 0);
    for (int sign : {1, -1}) {
        Chain c(ctx.rips, 2, kZd);
        const Chain t1 = oriented_simplex_chain(ctx.rips, kZd, {0, p1, deep}, Coeff(1));
        const Chain t2 = oriented_simplex_chain(ctx.rips, kZd, {0, p2, deep}, Coeff(sign));
        c += t1;
        c += t2;
        const Chain z = boundary(c);
        const auto [res, trace] = linear_fill(ctx, z);
        Chain check = boundary(*res.filling);
        check -= z;
        CHECK(check.is_zero());
        if (sign == -1 || sign == 1) {
            // at least one orientation leaves three supported neighbours at
            // the deep vertex, forcing a case-2 step before case 1
            bool case2 = false;
            for (const auto& step : trace.steps) case2 |= step.case_id == 2;
            static bool seen_case2 = false;
            seen_case2 |= case2;
            if (sign == -1) CHECK(seen_case2);
        }
    }
}

TEST_CASE("case 3 fires on an engineered delta = 1/2 metric") {
    // Six points: x0, v, u1, u2, u', w with d(u1,u2) = 6 > d = 5 at the
    // farthest vertex v, and u' on the geodesic [x0, v] at distance 3 from v.
    const int X = 0, V = 1, U1 = 2, U2 = 3, UP = 4, W = 5;
    std::vector<std::vector<Rational>> d(6, std::vector<Rational>(6, 0));
    auto set = [&](int a, int b, int val) { d[a][b] = d[b][a] = val; };
    set(X, V, 10); set(X, U1, 9); set(X, U2, 10); set(X, UP, 7); set(X, W, 5);
    set(V, U1, 5); set(V, U2, 5); set(V, UP, 3); set(V, W, 5);
    set(U1, U2, 6); set(U1, UP, 3); set(U1, W, 4);
    set(U2, UP, 3); set(U2, W, 5);
    set(UP, W, 3);
    auto metric = std::make_shared<FiniteMetric>(FiniteMetric::from_matrix(d));
    const auto est = estimate_delta(*metric);
    REQUIRE(est.exact);
    REQUIRE(est.delta <= Rational(3, 4));  // d = 5 > 4*delta + 2*epsilon
    const auto rips = rips_complex(metric, 5, 2);
    const auto ctx = HyperbolicContext::create(rips, est.delta, 1, X, Rational(0));
    const Chain z = path_to_chain(rips, kZd, {U1, V, U2, W, U1});
    REQUIRE(is_cycle(z));
    const auto [res, trace] = linear_fill(ctx, z);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].case_id == 3);
    CHECK(trace.steps[0].v == V);
    CHECK(trace.steps[0].involved == std::vector<VertexId>{U1, UP});
    Chain check = boundary(*res.filling);
    check -= z;
    CHECK(check.is_zero());
    CHECK(Rational(res.filling->support_size()) <=
          Rational(ctx.bound_n) * Rational(z.support_size()));
}

TEST_CASE("linear fill works over every shipped ring with the discrete norm") {
    for (const char* spec : {"Z:disc", "Q:disc", "Zmod5:disc", "Zmod2:disc"}) {
        const NormedRing ring = NormedRing::parse(spec);
        const auto ctx = tree_rips_context(4);
        const auto cycles = sample_cycles(ctx.rips, ring, 10, 8, 5);
        for (Chain z : cycles) {
            // scale by a random-ish unit to vary coefficients
            const auto [res, trace] = linear_fill(ctx, z);
            Chain check = boundary(*res.filling);
            check -= z;
            CHECK(check.is_zero());
            CHECK(Rational(res.filling->support_size()) <=
                  Rational(ctx.bound_n) * Rational(z.support_size()));
        }
    }
}

TEST_CASE("absolute norm runs uncertified") {
    const NormedRing za = NormedRing::parse("Z:abs");
    const auto ctx = tree_rips_context(4);
    const auto cycles = sample_cycles(ctx.rips, za, 10, 8, 6);
    for (const Chain& z : cycles) {
        const auto [res, trace] = linear_fill(ctx, z);
        Chain check = boundary(*res.filling);
        check -= z;
        CHECK(check.is_zero());
        CHECK(res.status == FillStatus::upper_bound);
    }
}

TEST_CASE("margin enforcement") {
    // support on the sphere of the ball, margin demanded
    const auto ball = build_preset("f2", 3);
    const auto rips = rips_complex(ball.metric, 3, 2);
    const auto ctx = HyperbolicContext::create(rips, 0, 1, 0);  // default margin 6
    const auto cycles = sample_cycles(rips, kZd, 5, 8, 3);
    REQUIRE(!cycles.empty());
    CHECK_THROWS_AS(linear_fill(ctx, cycles[0]), ContractError);
}

TEST_CASE("intermediate chains are cycles throughout the trace") {
    const auto ctx = tree_rips_context(4);
    const auto cycles = sample_cycles(ctx.rips, kZd, 15, 10, 11);
    for (const Chain& z : cycles) {
        auto [res, trace] = linear_fill(ctx, z);
        Chain work = z;
        for (const auto& step : trace.steps) {
            work -= boundary(*step.applied);
            if (!work.is_zero()) CHECK(is_cycle(work));
            CHECK(l1_norm(work) == step.norm_after);
        }
        CHECK(work.is_zero());
    }
}
