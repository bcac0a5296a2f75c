#include <doctest.h>

#include "homfill/builders.hpp"
#include "homfill/chain.hpp"

using namespace homfill;

namespace {

const NormedRing kZ = NormedRing::parse("Z:abs");

CellId cell_of(const ComplexPtr& cx, std::vector<VertexId> verts) {
    std::sort(verts.begin(), verts.end());
    const auto id = cx->find_cell(Cell{verts});
    REQUIRE(id.has_value());
    return *id;
}

}  // namespace

TEST_CASE("boundary of a triangle follows the alternating convention") {
    ComplexBuilder b;
    b.add_simplex({0, 1, 2});
    const auto cx = b.build();
    Chain c(cx, 2, kZ);
    c.set(cell_of(cx, {0, 1, 2}), Coeff(1));
    const Chain bd = boundary(c);
    CHECK(bd.coeff(cell_of(cx, {1, 2})) == Coeff(1));
    CHECK(bd.coeff(cell_of(cx, {0, 2})) == Coeff(-1));
    CHECK(bd.coeff(cell_of(cx, {0, 1})) == Coeff(1));
    CHECK(boundary(bd).is_zero());
    CHECK_THROWS_AS(boundary(boundary(bd)), ContractError);  // below dimension 1
}

TEST_CASE("boundary of boundary vanishes on every basis cell") {
    const auto [cx, metric] = grid_complex(3, 3);
    for (int k = 2; k <= cx->dim(); ++k)
        for (CellId id = 0; id < cx->cell_count(k); ++id) {
            Chain c(cx, k, kZ);
            c.set(id, Coeff(1));
            CHECK(boundary(boundary(c)).is_zero());
        }
}

TEST_CASE("two adjacent grid squares sum to the outer loop") {
    // 2x1 grid: squares side by side; orienting both consistently leaves the
    // 6-edge outer loop (diagonals cancel within each square pair).
    const auto [cx, metric] = grid_complex(2, 1);
    Chain c(cx, 2, kZ);
    for (CellId id = 0; id < cx->cell_count(2); ++id) {
        // orient the two triangles of each square so the diagonal cancels
        const auto& verts = cx->cell(2, id).verts;
        const bool lower = verts[1] - verts[0] == 1;  // contains the bottom edge
        c.set(id, lower ? Coeff(1) : Coeff(-1));
    }
    const Chain bd = boundary(c);
    CHECK(is_cycle(bd));
    CHECK(bd.support_size() == 6);
    for (const auto& [id, v] : bd.coeffs()) {
        const auto& e = cx->cell(1, id).verts;
        CHECK(e[1] - e[0] != 4);  // no diagonal of a unit square survives
    }
}

TEST_CASE("l1 norm") {
    const auto [cx, metric] = grid_complex(2, 2);
    Chain z(cx, 1, kZ);
    CHECK(l1_norm(z) == 0);
    z.set(0, Coeff(2));
    z.set(1, Coeff(-1));
    CHECK(l1_norm(z) == 3);
    const NormedRing zd = NormedRing::parse("Z:disc");
    Chain d(cx, 1, zd);
    d.set(0, Coeff(3));
    CHECK(l1_norm(d) == 1);
}

TEST_CASE("l1 norm is additive on disjoint supports") {
    const auto [cx, metric] = grid_complex(4, 4);
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Chain a(cx, 1, kZ), b(cx, 1, kZ);
        const int edges = cx->cell_count(1);
        for (int i = 0; i < 6; ++i) {
            a.set(static_cast<CellId>(rng.below(edges / 2)), Coeff(rng.range(-3, 3)));
            b.set(static_cast<CellId>(edges / 2 + rng.below(edges / 2)),
                  Coeff(rng.range(-3, 3)));
        }
        Chain sum = a;
        sum += b;
        CHECK(l1_norm(sum) == l1_norm(a) + l1_norm(b));
    }
}

TEST_CASE("is_cycle") {
    const auto [cx, metric] = grid_complex(2, 2);
    Chain single(cx, 1, kZ);
    single.set(0, Coeff(1));
    CHECK_FALSE(is_cycle(single));
    // boundary of any 2-chain is a cycle
    Chain c(cx, 2, kZ);
    c.set(0, Coeff(3));
    c.set(5, Coeff(-2));
    CHECK(is_cycle(boundary(c)));
    // 4 edges around a grid square, oriented consistently: (0,0)->(1,0)->(1,1)->(0,1)->(0,0)
    const Chain loop = path_to_chain(cx, kZ, {0, 1, 4, 3, 0});
    CHECK(is_cycle(loop));
    CHECK(l1_norm(loop) == 4);
}

TEST_CASE("hull closes under faces and keeps ids") {
    const auto [cx, metric] = grid_complex(3, 3);
    SUBCASE("single 2-cell") {
        const SubComplex h = hull(cx, {{2, 0}});
        CHECK(h.cell_count(2) == 1);
        CHECK(h.cell_count(1) == 3);
        CHECK(h.cell_count(0) == 3);
        CHECK(is_subcomplex(h));
    }
    SUBCASE("empty set") {
        const SubComplex h = hull(cx, {});
        CHECK(h.total_cells() == 0);
    }
    SUBCASE("two disjoint edges") {
        // horizontal edges on opposite sides
        const auto e1 = cx->find_cell(Cell{{0, 1}});
        const auto e2 = cx->find_cell(Cell{{14, 15}});
        const SubComplex h = hull(cx, {{1, *e1}, {1, *e2}});
        CHECK(h.cell_count(1) == 2);
        CHECK(h.cell_count(0) == 4);
        CHECK(h.cell_count(2) == 0);
    }
    SUBCASE("idempotence") {
        const SubComplex h = hull(cx, {{2, 3}, {1, 7}});
        std::vector<std::pair<int, CellId>> all;
        for (int k = 0; k <= cx->dim(); ++k)
            for (CellId id : h.members(k)) all.push_back({k, id});
        CHECK(hull(cx, all) == h);
    }
}

TEST_CASE("expand_neighborhood on a 3x3 grid vertex") {
    const auto [cx, metric] = grid_complex(3, 3);
    // center-ish vertex 5 = (1,1)
    const SubComplex start = hull(cx, {{0, 5}});
    const SubComplex n1 = expand_neighborhood(start);
    // oracle: cells with a boundary face in {5}, then face closure
    int expected_edges = 0;
    std::vector<char> endpoint(cx->cell_count(0), 0);
    for (CellId e = 0; e < cx->cell_count(1); ++e) {
        const auto& verts = cx->cell(1, e).verts;
        if (verts[0] == 5 || verts[1] == 5) {
            ++expected_edges;
            endpoint[verts[0]] = endpoint[verts[1]] = 1;
        }
    }
    CHECK(n1.cell_count(1) == expected_edges);
    CHECK(n1.cell_count(2) == 0);  // no 2-cell has a boundary face equal to a vertex
    int expected_vertices = 0;
    for (char f : endpoint) expected_vertices += f;
    CHECK(n1.cell_count(0) == expected_vertices);
    CHECK(is_subcomplex(n1));

    SUBCASE("monotone and reaches a fixed point at the full complex") {
        SubComplex cur = n1;
        int guard = 0;
        while (true) {
            const SubComplex next = expand_neighborhood(cur);
            CHECK(next.total_cells() >= cur.total_cells());
            if (next == cur) break;
            cur = next;
            REQUIRE(++guard < 32);
        }
        CHECK(cur.cell_count(2) == cx->cell_count(2));
        CHECK(expand_neighborhood(cur) == cur);
    }
    SUBCASE("empty subcomplex stays empty") {
        const SubComplex empty = hull(cx, {});
        CHECK(expand_neighborhood(empty).total_cells() == 0);
    }
}

TEST_CASE("split_connected_support") {
    const auto [cx, metric] = grid_complex(6, 3);
    const Chain far_loop = path_to_chain(cx, kZ, {0, 1, 8, 7, 0});
    const Chain far_loop2 = path_to_chain(cx, kZ, {12, 13, 20, 19, 12});
    SUBCASE("connected loop is a singleton") {
        const auto parts = split_connected_support(far_loop);
        CHECK(parts.size() == 1);
        CHECK(parts[0] == far_loop);
    }
    SUBCASE("two far-apart square loops split with norms adding") {
        Chain z = far_loop;
        z += far_loop2;
        const auto parts = split_connected_support(z);
        REQUIRE(parts.size() == 2);
        CHECK(l1_norm(parts[0]) + l1_norm(parts[1]) == l1_norm(z));
        Chain sum = parts[0];
        sum += parts[1];
        CHECK(sum == z);
        for (const auto& p : parts) CHECK(is_cycle(p));
        // supports disjoint
        for (const auto& [id, v] : parts[0].coeffs())
            CHECK(parts[1].coeffs().find(id) == parts[1].coeffs().end());
    }
    SUBCASE("zero chain gives no components") {
        const Chain zero(cx, 1, kZ);
        CHECK(split_connected_support(zero).empty());
    }
    SUBCASE("non-cycle input is rejected") {
        Chain bad(cx, 1, kZ);
        bad.set(0, Coeff(1));
        CHECK_THROWS_AS(split_connected_support(bad), ContractError);
    }
}

TEST_CASE("oriented simplex chains carry permutation signs") {
    ComplexBuilder b;
    b.add_simplex({0, 1, 2});
    const auto cx = b.build();
    const Chain pos = oriented_simplex_chain(cx, kZ, {0, 1, 2}, Coeff(1));
    const Chain swapped = oriented_simplex_chain(cx, kZ, {1, 0, 2}, Coeff(1));
    CHECK(swapped == -pos);
    const Chain cycled = oriented_simplex_chain(cx, kZ, {2, 0, 1}, Coeff(1));
    CHECK(cycled == pos);
}

TEST_CASE("path_to_chain cancels backtracks") {
    const auto [cx, metric] = grid_complex(2, 2);
    const Chain back = path_to_chain(cx, kZ, {0, 1, 0});
    CHECK(back.is_zero());
    const Chain partial = path_to_chain(cx, kZ, {0, 1, 2, 1, 4});
    // 0->1 then 1->2->1 cancels, then 1->4
    CHECK(partial.support_size() == 2);
}
