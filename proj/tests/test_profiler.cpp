#include <doctest.h>

#include "homfill/builders.hpp"
#include "homfill/profiler.hpp"
#include "oracles.hpp"

using namespace homfill;

namespace {

const NormedRing kZ = NormedRing::parse("Z:abs");
const NormedRing kZd = NormedRing::parse("Z:disc");

IsoProfile synthetic(const std::vector<std::pair<long, double>>& pts, int dim = 1) {
    IsoProfile p;
    p.dim = dim;
    p.ring_spec = "Z:abs";
    p.mode = "synthetic";
    for (const auto& [l, f] : pts) {
        ProfileEntry e;
        e.l = Rational(l);
        // represent f approximately as an exact rational
        e.f_hat = Rational(static_cast<long>(f * 10000), 10000);
        e.samples = 1;
        p.entries.push_back(e);
    }
    return p;
}

}  // namespace

TEST_CASE("profile on a small grid: exhaustive short cycles") {
    const auto g = grid_complex(4, 4);
    SamplerConfig cfg;
    cfg.l_exhaustive = 3;
    const IsoProfile p = profile(g.complex, 1, 3, cfg, kZ);
    REQUIRE(!p.entries.empty());
    // shortest nonzero cycle: a triangle boundary, |z| = 3, fill norm 1
    CHECK(p.entries.front().l == 3);
    CHECK(p.entries.front().f_hat == 1);
    CHECK(p.entries.front().exhaustive);
    for (const auto& e : p.entries) CHECK_FALSE(e.flagged);
}

TEST_CASE("exhaustive profile equals brute force over all short boundaries") {
    // On grid(2,1): every 1-cycle with |z| <= 4 enumerated both ways.
    const auto g = grid_complex(2, 1);
    SamplerConfig cfg;
    cfg.l_exhaustive = 4;
    cfg.coeff_window = 2;
    const IsoProfile p = profile(g.complex, 1, 4, cfg, kZ);

    // Oracle: all integer 2-chains with coefficients in [-2,2] give all
    // boundaries; bucket their minimal filling norms (boundary map injective).
    std::map<Rational, Rational> best;  // |z| -> max over z of min-fill
    const int cells = g.complex->cell_count(2);
    std::vector<int> v(cells, -2);
    while (true) {
        Chain c(g.complex, 2, kZ);
        for (int i = 0; i < cells; ++i)
            if (v[i] != 0) c.set(i, Coeff(v[i]));
        const Chain z = boundary(c);
        if (!z.is_zero()) {
            const Rational nz = l1_norm(z);
            if (nz <= 4) {
                const auto fill = oracle::unique_filling(z);
                REQUIRE(fill.has_value());
                Rational fn = 0;
                for (const auto& x : *fill) fn += x < 0 ? -x : x;
                auto& slot = best[nz];
                slot = std::max(slot, fn);
            }
        }
        int pos = 0;
        while (pos < cells && ++v[pos] == 3) v[pos++] = -2;
        if (pos == cells) break;
    }
    Rational running = 0;
    for (auto& [l, f] : best) {
        running = std::max(running, f);
        f = running;
    }
    for (const auto& e : p.entries) {
        REQUIRE(best.count(e.l));
        CHECK(e.f_hat == best[e.l]);
    }
    CHECK(p.entries.size() == best.size());
}

TEST_CASE("profile on a tree is identically zero") {
    const auto t = tree_complex(4, 4);
    SamplerConfig cfg;
    cfg.l_exhaustive = 6;
    cfg.samples = 50;
    const IsoProfile p = profile(t.complex, 1, 8, cfg, kZd);
    for (const auto& e : p.entries) CHECK(e.f_hat == 0);
    // no nonzero cycles exist at all, so no entries either
    CHECK(p.entries.empty());
}

TEST_CASE("profile is invariant under sign flips of the cycles") {
    const auto g = grid_complex(3, 3);
    const auto loops = rectangle_loops(g.complex, 2);
    std::vector<Chain> cycles, flipped;
    for (const auto& loop : loops) {
        cycles.push_back(path_to_chain(g.complex, kZ, loop));
        flipped.push_back(-cycles.back());
    }
    const IsoProfile a = profile_from_cycles(g.complex, 1, 20, cycles, kZ);
    const IsoProfile b = profile_from_cycles(g.complex, 1, 20, flipped, kZ);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].l == b.entries[i].l);
        CHECK(a.entries[i].f_hat == b.entries[i].f_hat);
    }
}

TEST_CASE("rectangle loops on grids") {
    const auto g = grid_complex(3, 3);
    const auto loops = rectangle_loops(g.complex, 3);
    // sizes (w,h) with positions: sum over w,h of (4-w)*(4-h), w,h in 1..3
    CHECK(loops.size() == 36);
    for (const auto& loop : loops) {
        const Chain z = path_to_chain(g.complex, kZ, loop);
        CHECK(is_cycle(z));
    }
}

TEST_CASE("rectangle-family profile on the grid is quadratic") {
    const auto g = grid_complex(6, 6);
    std::vector<Chain> cycles;
    for (const auto& loop : rectangle_loops(g.complex, 3))
        cycles.push_back(path_to_chain(g.complex, kZ, loop));
    const IsoProfile p = profile_from_cycles(g.complex, 1, 100, cycles, kZ);
    // f_hat(2(n+m)) = 2nm for rectangles: l = 4,6,8,10,12
    std::map<Rational, Rational> expect{{4, 2}, {6, 4}, {8, 8}, {10, 12}, {12, 18}};
    REQUIRE(p.entries.size() == expect.size());
    for (const auto& e : p.entries) CHECK(e.f_hat == expect.at(e.l));
    const GrowthClass cls = classify_growth(p);
    CHECK(cls.label == "quadratic");
    CHECK(cls.exponent > 1.75);
    CHECK(cls.exponent < 2.25);
}

TEST_CASE("classify_growth on synthetic data") {
    SUBCASE("linear") {
        const auto p = synthetic({{1, 3}, {2, 6}, {3, 9}, {4, 12}, {5, 15}, {6, 18}});
        const GrowthClass g = classify_growth(p);
        CHECK(g.label == "linear");
        CHECK(g.exponent == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("quadratic from grid-like data") {
        std::vector<std::pair<long, double>> pts;
        for (long n = 1; n <= 6; ++n) pts.push_back({4 * n, 2.0 * n * n});
        const GrowthClass g = classify_growth(synthetic(pts));
        CHECK(g.label == "quadratic");
        CHECK(g.exponent == doctest::Approx(2.0).epsilon(0.01));
    }
    SUBCASE("sub-euclidean flag at the boundary exponent") {
        std::vector<std::pair<long, double>> pts;
        for (long n = 1; n <= 8; ++n) pts.push_back({n, std::pow(n, 1.5)});
        auto p = synthetic(pts, 2);  // (n+1)/n = 3/2
        const GrowthClass g = classify_growth(p);
        CHECK(g.sub_euclidean);
    }
    SUBCASE("scale invariance of the label") {
        std::vector<std::pair<long, double>> pts, scaled;
        for (long n = 1; n <= 6; ++n) {
            pts.push_back({3 * n, 1.0 * n * n});
            scaled.push_back({3 * n, 17.0 * n * n});
        }
        CHECK(classify_growth(synthetic(pts)).label ==
              classify_growth(synthetic(scaled)).label);
    }
    SUBCASE("too little data is rejected") {
        const auto p = synthetic({{1, 1}, {2, 2}, {3, 3}});
        CHECK_THROWS_AS(classify_growth(p), ContractError);
    }
}

TEST_CASE("theta triangle inequality") {
    const auto g = grid_complex(4, 4);
    auto vid = [](int x, int y) { return y * 5 + x; };
    const std::vector<VertexId> a1{vid(0, 0), vid(1, 0), vid(2, 0)};
    const std::vector<VertexId> a2{vid(0, 0), vid(1, 1), vid(2, 0)};
    const std::vector<VertexId> a3{vid(0, 0), vid(0, 1), vid(1, 2), vid(2, 1), vid(2, 0)};
    SUBCASE("identical paths give zero areas") {
        const ThetaReport rep = check_theta(g.complex, a1, a1, a1, kZ);
        CHECK(rep.certified);
        CHECK(rep.holds);
        CHECK(rep.a12 == 0);
        CHECK(rep.a13 == 0);
    }
    SUBCASE("equal first pair reduces to equality") {
        const ThetaReport rep = check_theta(g.complex, a1, a1, a3, kZ);
        CHECK(rep.certified);
        CHECK(rep.holds);
        CHECK(rep.a12 == 0);
        CHECK(rep.a13 == rep.a23);
    }
    SUBCASE("generic triple") {
        const ThetaReport rep = check_theta(g.complex, a1, a2, a3, kZ);
        CHECK(rep.certified);
        CHECK(rep.holds);
        CHECK(rep.a13 <= rep.a12 + rep.a23);
    }
    SUBCASE("mismatched endpoints are rejected") {
        CHECK_THROWS_AS(check_theta(g.complex, a1, a2, {vid(0, 0), vid(0, 1)}, kZ),
                        ContractError);
    }
}

TEST_CASE("rectangle inequality on grids") {
    const auto g = grid_complex(5, 5);
    auto vid = [](int x, int y) { return y * 6 + x; };
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            std::vector<VertexId> a1, a2, a3, a4;
            for (int x = 0; x <= n; ++x) a1.push_back(vid(x, 0));
            for (int y = 0; y <= m; ++y) a2.push_back(vid(n, y));
            for (int x = n; x >= 0; --x) a3.push_back(vid(x, m));
            for (int y = m; y >= 0; --y) a4.push_back(vid(0, y));
            const RectangleReport rep = check_rectangle(g.complex, a1, a2, a3, a4, kZ);
            CHECK(rep.certified);
            CHECK(rep.holds);
            CHECK(rep.area == 2 * n * m);
            CHECK(rep.k == Rational(1, 3));
            CHECK(rep.d1 == m);  // bottom and top rows are m apart
            CHECK(rep.d2 == n);
        }
    SUBCASE("degenerate rectangle holds trivially") {
        const std::vector<VertexId> a1{vid(0, 0), vid(1, 0)};
        const std::vector<VertexId> a2{vid(1, 0), vid(1, 1)};
        const std::vector<VertexId> a3{vid(1, 1), vid(0, 1)};
        const std::vector<VertexId> a4{vid(0, 1), vid(0, 0)};
        const RectangleReport rep = check_rectangle(g.complex, a1, a2, a3, a4, kZ);
        CHECK(rep.holds);  // d1 = d2 = 1, area 2 >= 1/3
    }
}

TEST_CASE("coning estimates are stable on a grid") {
    const auto g = grid_complex(8, 8);
    const VertexId center = 4 * 9 + 4;
    const ConingReport rep =
        check_coning(g.complex, center, {Rational(2), Rational(3), Rational(4)}, 1, kZ, 8, 5);
    REQUIRE(rep.entries.size() == 3);
    Rational lo = rep.entries[0].c_hat, hi = rep.entries[0].c_hat;
    for (const auto& e : rep.entries) {
        CHECK(e.cycles > 0);
        CHECK_FALSE(e.flagged);
        lo = std::min(lo, e.c_hat);
        hi = std::max(hi, e.c_hat);
    }
    CHECK(hi < 2 * lo);  // varies by less than a factor of 2
    CHECK(rep.c_overall == hi);
}

TEST_CASE("sub-euclidean checks") {
    SUBCASE("linear passes for n = 1") {
        std::vector<std::pair<long, double>> pts;
        for (long n = 1; n <= 8; ++n) pts.push_back({n, 1.0 * n});
        CHECK(check_subeuclidean(synthetic(pts), 1).pass);
    }
    SUBCASE("quadratic passes at the boundary for n = 1") {
        std::vector<std::pair<long, double>> pts;
        for (long n = 1; n <= 8; ++n) pts.push_back({n, 1.0 * n * n});
        CHECK(check_subeuclidean(synthetic(pts), 1).pass);
    }
    SUBCASE("l^2.5 fails for n = 1") {
        std::vector<std::pair<long, double>> pts;
        for (long n = 1; n <= 8; ++n) pts.push_back({n, std::pow(n, 2.5)});
        CHECK_FALSE(check_subeuclidean(synthetic(pts), 1).pass);
    }
}

TEST_CASE("sampled cycles are reproducible and respect the length cap") {
    const auto g = grid_complex(5, 5);
    const auto a = sample_cycles(g.complex, kZd, 25, 8, 99);
    const auto b = sample_cycles(g.complex, kZd, 25, 8, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (const auto& z : a) {
        CHECK(is_cycle(z));
        CHECK(l1_norm(z) <= 8);
    }
}
