#include "homfill/complex.hpp"

#include <algorithm>

namespace homfill {

std::optional<CellId> Complex::find_cell(const Cell& c) const {
    const int k = c.dim();
    if (k < 0 || k > dim()) return std::nullopt;
    const auto& idx = index_[k];
    const auto it = idx.find(c.verts);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

void ComplexBuilder::add_vertex(VertexId v) {
    if (v < 0) throw ContractError("vertex ids must be nonnegative");
    max_vertex_ = std::max(max_vertex_, v);
    if (seen_.empty()) seen_.resize(1);
    seen_[0][{v}] = 1;
}

void ComplexBuilder::add_simplex(const std::vector<VertexId>& verts) {
    if (verts.empty()) throw ContractError("empty simplex");
    std::vector<VertexId> s = verts;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ContractError("simplex has repeated vertices");
    if (s.front() < 0) throw ContractError("vertex ids must be nonnegative");
    const int k = static_cast<int>(s.size()) - 1;
    if (static_cast<int>(seen_.size()) <= k) seen_.resize(k + 1);
    max_vertex_ = std::max(max_vertex_, s.back());
    // Close under faces by inserting all sub-tuples.
    for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
        std::vector<VertexId> face;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask & (1u << i)) face.push_back(s[i]);
        seen_[face.size() - 1][std::move(face)] = 1;
    }
}

ComplexPtr ComplexBuilder::build() {
    auto cx = std::make_shared<Complex>();
    if (seen_.empty()) seen_.resize(1);
    cx->vertex_count_ = max_vertex_ + 1;
    const int top = static_cast<int>(seen_.size()) - 1;
    cx->cells_.resize(top + 1);
    cx->index_.resize(top + 1);
    cx->boundaries_.resize(top + 1);
    cx->cofaces_.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        cx->cells_[k].reserve(seen_[k].size());
        for (const auto& [verts, _] : seen_[k]) {
            const CellId id = static_cast<CellId>(cx->cells_[k].size());
            cx->cells_[k].push_back(Cell{verts});
            cx->index_[k][verts] = id;
        }
    }
    for (int k = 1; k <= top; ++k) {
        cx->boundaries_[k].resize(cx->cells_[k].size());
        cx->cofaces_[k - 1].resize(cx->cells_[k - 1].size());
        for (CellId id = 0; id < static_cast<CellId>(cx->cells_[k].size()); ++id) {
            const auto& verts = cx->cells_[k][id].verts;
            auto& bnd = cx->boundaries_[k][id];
            bnd.reserve(verts.size());
            std::vector<VertexId> face(verts.size() - 1);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                face.clear();
                for (std::size_t j = 0; j < verts.size(); ++j)
                    if (j != i) face.push_back(verts[j]);
                const CellId fid = cx->index_[k - 1].at(face);
                bnd.push_back(Incidence{fid, (i % 2 == 0) ? +1 : -1});
                cx->cofaces_[k - 1][fid].push_back(id);
            }
        }
    }
    if (top >= 0) cx->cofaces_[top].resize(cx->cells_[top].size());
    seen_.clear();
    max_vertex_ = -1;
    return cx;
}

SubComplex::SubComplex(ComplexPtr parent) : parent_(std::move(parent)) {
    const int d = parent_->dim();
    flags_.resize(d + 1);
    counts_.assign(d + 1, 0);
    for (int k = 0; k <= d; ++k) flags_[k].assign(parent_->cell_count(k), 0);
}

bool SubComplex::contains(int k, CellId id) const {
    if (k < 0 || k >= static_cast<int>(flags_.size())) return false;
    return flags_[k][id] != 0;
}

void SubComplex::insert(int k, CellId id) {
    if (!flags_[k][id]) {
        flags_[k][id] = 1;
        ++counts_[k];
    }
}

int SubComplex::cell_count(int k) const {
    if (k < 0 || k >= static_cast<int>(counts_.size())) return 0;
    return counts_[k];
}

int SubComplex::total_cells() const {
    int total = 0;
    for (int c : counts_) total += c;
    return total;
}

std::vector<CellId> SubComplex::members(int k) const {
    std::vector<CellId> out;
    if (k < 0 || k >= static_cast<int>(flags_.size())) return out;
    out.reserve(counts_[k]);
    for (CellId id = 0; id < static_cast<CellId>(flags_[k].size()); ++id)
        if (flags_[k][id]) out.push_back(id);
    return out;
}

namespace {

void close_faces(SubComplex& sub) {
    const auto& cx = *sub.parent();
    for (int k = cx.dim(); k >= 1; --k)
        for (CellId id : sub.members(k))
            for (const auto& inc : cx.boundary_of(k, id)) sub.insert(k - 1, inc.face);
}

}  // namespace

SubComplex hull(ComplexPtr cx, const std::vector<std::pair<int, CellId>>& cells) {
    SubComplex sub(cx);
    for (const auto& [k, id] : cells) {
        if (k < 0 || k > cx->dim() || id < 0 || id >= cx->cell_count(k))
            throw ContractError("hull: cell does not exist");
        sub.insert(k, id);
    }
    close_faces(sub);
    return sub;
}

SubComplex expand_neighborhood(const SubComplex& sub) {
    const auto& cx = *sub.parent();
    SubComplex out = sub;
    for (int k = 0; k < cx.dim(); ++k)
        for (CellId id : sub.members(k))
            for (CellId cof : cx.cofaces_of(k, id)) out.insert(k + 1, cof);
    close_faces(out);
    return out;
}

bool is_subcomplex(const SubComplex& sub) {
    const auto& cx = *sub.parent();
    for (int k = 1; k <= cx.dim(); ++k)
        for (CellId id : sub.members(k))
            for (const auto& inc : cx.boundary_of(k, id))
                if (!sub.contains(k - 1, inc.face)) return false;
    return true;
}

}  // namespace homfill
