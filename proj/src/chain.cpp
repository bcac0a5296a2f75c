#include "homfill/chain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace homfill {

Chain& Chain::operator+=(const Chain& o) {
    if (cx_ != o.cx_ || dim_ != o.dim_ || ring_ != o.ring_)
        throw ContractError("chain sum: mismatched complex, dimension or ring");
    for (const auto& [id, v] : o.coeffs_) add_to(id, v);
    return *this;
}

Chain& Chain::operator-=(const Chain& o) {
    if (cx_ != o.cx_ || dim_ != o.dim_ || ring_ != o.ring_)
        throw ContractError("chain sum: mismatched complex, dimension or ring");
    for (const auto& [id, v] : o.coeffs_) add_to(id, ring_.neg(v));
    return *this;
}

Chain Chain::operator-() const {
    Chain out(cx_, dim_, ring_);
    for (const auto& [id, v] : coeffs_) out.set(id, ring_.neg(v));
    return out;
}

Chain Chain::scaled(const Coeff& r) const {
    Chain out(cx_, dim_, ring_);
    for (const auto& [id, v] : coeffs_) out.add_to(id, ring_.mul(r, v));
    return out;
}

Chain boundary(const Chain& c) {
    if (c.dim() < 1)
        throw ContractError("no boundary below dimension 1");
    Chain out(c.complex(), c.dim() - 1, c.ring());
    for (const auto& [id, v] : c.coeffs()) {
        for (const auto& inc : c.complex()->boundary_of(c.dim(), id)) {
            out.add_to(inc.face, inc.sign > 0 ? v : c.ring().neg(v));
        }
    }
    return out;
}

Rational l1_norm(const Chain& c) {
    Rational total = 0;
    for (const auto& [id, v] : c.coeffs()) total += c.ring().norm(v);
    return total;
}

bool is_cycle(const Chain& c) {
    if (c.dim() < 1) throw ContractError("is_cycle requires dimension >= 1");
    return boundary(c).is_zero();
}

std::vector<Chain> split_connected_support(const Chain& cycle) {
    if (!is_cycle(cycle)) throw ContractError("split_connected_support: input is not a cycle");
    const auto& cx = cycle.complex();
    const int k = cycle.dim();

    std::vector<CellId> supp;
    supp.reserve(cycle.coeffs().size());
    for (const auto& [id, _] : cycle.coeffs()) supp.push_back(id);

    // Union-find over support cells, merged through shared (k-1)-faces.
    std::vector<int> uf(supp.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::map<CellId, int> face_owner;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        for (const auto& inc : cx->boundary_of(k, supp[i])) {
            const auto [it, fresh] = face_owner.try_emplace(inc.face, static_cast<int>(i));
            if (!fresh) uf[find(static_cast<int>(i))] = find(it->second);
        }
    }

    std::map<int, Chain> comps;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        const int root = find(static_cast<int>(i));
        auto it = comps.find(root);
        if (it == comps.end())
            it = comps.emplace(root, Chain(cx, k, cycle.ring())).first;
        it->second.set(supp[i], cycle.coeff(supp[i]));
    }

    std::vector<Chain> out;
    out.reserve(comps.size());
    for (auto& [_, ch] : comps) out.push_back(std::move(ch));
    return out;
}

Chain oriented_simplex_chain(const ComplexPtr& cx, const NormedRing& ring,
                             const std::vector<VertexId>& verts, const Coeff& r) {
    std::vector<VertexId> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ContractError("oriented simplex has repeated vertices");
    const auto id = cx->find_cell(Cell{sorted});
    if (!id) throw ContractError("oriented simplex is not a cell of the complex");
    // Permutation sign from the given tuple to ascending order.
    std::vector<VertexId> perm = verts;
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        std::size_t m = i;
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[j] < perm[m]) m = j;
        if (m != i) {
            std::swap(perm[i], perm[m]);
            sign = -sign;
        }
    }
    Chain out(cx, static_cast<int>(verts.size()) - 1, ring);
    out.set(*id, sign > 0 ? ring.canon(r) : ring.neg(ring.canon(r)));
    return out;
}

Chain path_to_chain(const ComplexPtr& cx, const NormedRing& ring,
                    const std::vector<VertexId>& path) {
    Chain out(cx, 1, ring);
    if (path.size() < 2) return out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const VertexId u = path[i], v = path[i + 1];
        if (u == v) continue;
        const auto id = cx->find_cell(Cell{{std::min(u, v), std::max(u, v)}});
        if (!id) throw ContractError("path edge (" + std::to_string(u) + "," + std::to_string(v) +
                                     ") is not in the complex");
        // Directed edge u->v carries +1 on the canonical (min,max) cell when
        // u < v, else -1, so that its boundary is v - u.
        out.add_to(*id, u < v ? ring.one() : ring.neg(ring.one()));
    }
    return out;
}

}  // namespace homfill
