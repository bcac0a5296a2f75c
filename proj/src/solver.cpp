#include "homfill/solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "homfill/lattice.hpp"
#include "homfill/simplex_lp.hpp"

namespace homfill {

namespace {

using Clock = std::chrono::steady_clock;
using CoeffMap = std::map<CellId, Coeff>;

struct StopSearch {};   // feasibility query satisfied
struct OutOfBudget {};  // node or time budget exhausted

Int floor_rational(const Rational& q) {
    const Int num = boost::multiprecision::numerator(q);
    const Int den = boost::multiprecision::denominator(q);
    if (num >= 0) return num / den;
    return -((-num + den - 1) / den);
}

Int ceil_rational(const Rational& q) { return -floor_rational(-q); }

struct Budget {
    std::uint64_t* nodes = nullptr;
    std::uint64_t node_limit = 0;
    bool timed = false;
    Clock::time_point deadline;

    void tick() {
        if (++(*nodes) > node_limit) throw OutOfBudget{};
        if (timed && (*nodes & 0x3ff) == 0 && Clock::now() > deadline) throw OutOfBudget{};
    }
};

// A filling problem restricted to a region, with pinned cells folded into the
// target. Local cell indices follow the branching order (expansion depth,
// then cell id). Rows are all faces of instance cells, faces of pinned cells
// and the support of the target cycle.
struct Instance {
    ComplexPtr cx;
    NormedRing ring;
    int fill_dim = 1;

    std::vector<CellId> cell_global;  // local -> global, branching order
    std::vector<CellId> edge_global;
    std::map<CellId, int> edge_local;
    std::vector<std::vector<std::pair<int, int>>> cell_faces;    // (local edge, sign)
    std::vector<std::vector<std::pair<int, int>>> edge_cofaces;  // (local cell, sign)
    std::vector<Coeff> target;

    Instance(const Chain& z, const std::vector<std::pair<CellId, int>>& region_cells_with_depth,
             const std::vector<std::pair<CellId, Coeff>>& pins) {
        cx = z.complex();
        ring = z.ring();
        fill_dim = z.dim() + 1;

        std::set<CellId> pinned;
        for (const auto& [cell, v] : pins) pinned.insert(cell);

        std::vector<std::pair<std::pair<int, CellId>, CellId>> order;
        order.reserve(region_cells_with_depth.size());
        for (const auto& [cell, depth] : region_cells_with_depth)
            if (!pinned.count(cell)) order.push_back({{depth, cell}, cell});
        std::sort(order.begin(), order.end());
        cell_global.reserve(order.size());
        for (const auto& [key, cell] : order) cell_global.push_back(cell);

        auto edge_index = [&](CellId e) {
            const auto it = edge_local.find(e);
            if (it != edge_local.end()) return it->second;
            const int idx = static_cast<int>(edge_global.size());
            edge_local[e] = idx;
            edge_global.push_back(e);
            target.push_back(ring.zero());
            return idx;
        };

        cell_faces.resize(cell_global.size());
        for (std::size_t c = 0; c < cell_global.size(); ++c)
            for (const auto& inc : cx->boundary_of(fill_dim, cell_global[c]))
                cell_faces[c].push_back({edge_index(inc.face), inc.sign});

        for (const auto& [id, v] : z.coeffs()) target[edge_index(id)] = v;
        for (const auto& [cell, v] : pins)
            for (const auto& inc : cx->boundary_of(fill_dim, cell)) {
                const int e = edge_index(inc.face);
                const Coeff delta = inc.sign > 0 ? v : ring.neg(v);
                target[e] = ring.sub(target[e], delta);
            }

        edge_cofaces.resize(edge_global.size());
        for (std::size_t c = 0; c < cell_global.size(); ++c)
            for (const auto& [e, s] : cell_faces[c])
                edge_cofaces[e].push_back({static_cast<int>(c), s});
    }

    int cells() const { return static_cast<int>(cell_global.size()); }
    int edges() const { return static_cast<int>(edge_global.size()); }

    CoeffMap to_map(const std::vector<Coeff>& local) const {
        CoeffMap out;
        for (std::size_t c = 0; c < local.size(); ++c)
            if (!ring.is_zero(local[c])) out[cell_global[c]] = local[c];
        return out;
    }
};

struct SearchOutcome {
    bool found = false;
    Rational best_norm;
    std::vector<Coeff> best;  // per local cell
    bool complete = false;    // search space fully explored up to the cap
};

// ------------------------------------------------------------------
// Value-branching engine (absolute norm over the integers).
// ------------------------------------------------------------------
class ValueSearch {
  public:
    ValueSearch(const Instance& inst, Budget& budget, const Rational& cap, bool feasibility)
        : inst_(inst), budget_(budget), cap_(cap), feasibility_(feasibility) {
        val_.assign(inst_.cells(), inst_.ring.zero());
        assigned_.assign(inst_.cells(), 0);
        res_ = inst_.target;
        unassigned_.resize(inst_.edges());
        for (int e = 0; e < inst_.edges(); ++e) {
            unassigned_[e] = static_cast<int>(inst_.edge_cofaces[e].size());
            if (!inst_.ring.is_zero(res_[e])) unsat_.insert(e);
        }
    }

    SearchOutcome run() {
        out_.complete = true;
        try {
            search();
        } catch (const StopSearch&) {
            out_.complete = false;
        }
        return std::move(out_);
    }

  private:
    Rational bound() const { return out_.found ? out_.best_norm : cap_; }

    bool assign(int cell, const Coeff& v, std::vector<int>& trail) {
        val_[cell] = v;
        assigned_[cell] = 1;
        partial_ += inst_.ring.norm(v);
        trail.push_back(cell);
        for (const auto& [e, s] : inst_.cell_faces[cell]) {
            if (!inst_.ring.is_zero(v)) {
                const Coeff delta = s > 0 ? v : inst_.ring.neg(v);
                res_[e] = inst_.ring.sub(res_[e], delta);
                if (inst_.ring.is_zero(res_[e]))
                    unsat_.erase(e);
                else
                    unsat_.insert(e);
            }
            --unassigned_[e];
            pending_.push_back(e);
        }
        return partial_ <= bound();
    }

    void undo(std::vector<int>& trail) {
        while (!trail.empty()) {
            const int cell = trail.back();
            trail.pop_back();
            const Coeff v = val_[cell];
            for (const auto& [e, s] : inst_.cell_faces[cell]) {
                if (!inst_.ring.is_zero(v)) {
                    const Coeff delta = s > 0 ? v : inst_.ring.neg(v);
                    res_[e] = inst_.ring.add(res_[e], delta);
                    if (inst_.ring.is_zero(res_[e]))
                        unsat_.erase(e);
                    else
                        unsat_.insert(e);
                }
                ++unassigned_[e];
            }
            partial_ -= inst_.ring.norm(v);
            assigned_[cell] = 0;
            val_[cell] = inst_.ring.zero();
        }
    }

    // Unit propagation: an edge with a single unassigned coface forces its
    // value. Returns false on conflict; assignments go on the trail.
    bool propagate(std::vector<int>& trail) {
        while (!pending_.empty()) {
            const int e = pending_.back();
            pending_.pop_back();
            if (unassigned_[e] == 0) {
                if (!inst_.ring.is_zero(res_[e])) return false;
                continue;
            }
            if (unassigned_[e] == 1) {
                int cell = -1, sign = 0;
                for (const auto& [c, s] : inst_.edge_cofaces[e])
                    if (!assigned_[c]) {
                        cell = c;
                        sign = s;
                        break;
                    }
                const Coeff v = sign > 0 ? res_[e] : inst_.ring.neg(res_[e]);
                if (!assign(cell, v, trail)) return false;
            }
        }
        return true;
    }

    Rational lower_bound() const {
        // One unit of coefficient norm changes at most fill_dim + 1 residuals.
        Rational total = 0;
        Rational worst = 0;
        for (int e : unsat_) {
            const Rational r = inst_.ring.norm(res_[e]);
            total += r;
            worst = std::max(worst, r);
        }
        const Rational avg = total / (inst_.fill_dim + 1);
        return std::max(avg, worst);
    }

    void record_solution() {
        out_.found = true;
        out_.best_norm = partial_;
        out_.best.assign(inst_.cells(), inst_.ring.zero());
        for (int c = 0; c < inst_.cells(); ++c)
            if (assigned_[c]) out_.best[c] = val_[c];
        if (feasibility_) throw StopSearch{};
    }

    void search() {
        budget_.tick();
        std::vector<int> trail;
        for (int e : unsat_) pending_.push_back(e);
        if (!propagate(trail)) {
            pending_.clear();
            undo(trail);
            return;
        }
        if (unsat_.empty()) {
            record_solution();
            undo(trail);
            return;
        }
        const Rational lb = lower_bound();
        if (partial_ + lb > bound() || (out_.found && partial_ + lb >= out_.best_norm)) {
            undo(trail);
            return;
        }
        // Anchor: unsatisfied edge with fewest unassigned cofaces.
        int anchor = -1;
        for (int e : unsat_)
            if (anchor < 0 || unassigned_[e] < unassigned_[anchor] ||
                (unassigned_[e] == unassigned_[anchor] && e < anchor))
                anchor = e;
        int cell = inst_.cells();
        int sign = 0;
        for (const auto& [c, s] : inst_.edge_cofaces[anchor])
            if (!assigned_[c] && c < cell) {
                cell = c;
                sign = s;
            }

        // Candidates: residual-solving value first, then by magnitude, lazily
        // (the bound tightens as incumbents improve). |v| <= bound - partial
        // keeps enumeration complete for everything better than the incumbent.
        const Coeff star = sign > 0 ? res_[anchor] : inst_.ring.neg(res_[anchor]);
        auto try_value = [&](const Coeff& v) {
            std::vector<int> sub;
            if (assign(cell, v, sub) && propagate(sub)) search();
            pending_.clear();
            undo(sub);
        };
        const Rational star_norm = inst_.ring.norm(star);
        if (star_norm <= bound() - partial_) try_value(star);
        for (Int mag = 0; Rational(mag) <= bound() - partial_; ++mag) {
            for (int pm : {+1, -1}) {
                if (mag == 0 && pm < 0) continue;
                const Coeff v(pm > 0 ? mag : Int(-mag));
                if (v == star) continue;
                if (inst_.ring.norm(v) > bound() - partial_) break;
                try_value(v);
            }
        }
        undo(trail);
    }

    const Instance& inst_;
    Budget& budget_;
    Rational cap_;
    bool feasibility_;

    std::vector<Coeff> val_;
    std::vector<char> assigned_;
    std::vector<Coeff> res_;
    std::vector<int> unassigned_;
    std::set<int> unsat_;
    std::vector<int> pending_;
    Rational partial_ = 0;
    SearchOutcome out_;
};

// ------------------------------------------------------------------
// Support-branching engine (discrete norms over Z, Q, Z_m): iterative
// deepening on the support size. Covered leaves are decided by exact linear
// solves whose infeasibility certificates drive the support growth.
// ------------------------------------------------------------------
class SupportSearch {
  public:
    SupportSearch(const Instance& inst, Budget& budget) : inst_(inst), budget_(budget) {
        in_s_.assign(inst_.cells(), 0);
        excluded_.assign(inst_.cells(), 0);
        cover_.assign(inst_.edges(), 0);
        for (int e = 0; e < inst_.edges(); ++e)
            if (!inst_.ring.is_zero(inst_.target[e])) zedges_.push_back(e);
    }

    SearchOutcome run(const Int& t_cap, bool feasibility) {
        feasibility_ = feasibility;
        out_ = SearchOutcome{};
        out_.complete = true;
        for (Int t = 0; t <= t_cap; ++t) {
            t_ = t;
            try {
                if (search()) return std::move(out_);
            } catch (const StopSearch&) {
                out_.complete = false;
                return std::move(out_);
            }
        }
        return std::move(out_);
    }

  private:
    bool search() {
        budget_.tick();
        int anchor = -1, avail = -1;
        int uncovered = 0;
        for (int e : zedges_) {
            if (cover_[e] > 0) continue;
            ++uncovered;
            int a = 0;
            for (const auto& [c, s] : inst_.edge_cofaces[e])
                if (!in_s_[c] && !excluded_[c]) ++a;
            if (a == 0) return false;
            if (anchor < 0 || a < avail || (a == avail && e < anchor)) {
                anchor = e;
                avail = a;
            }
        }
        const Int lb((uncovered + inst_.fill_dim) / (inst_.fill_dim + 1));
        if (Int(static_cast<long>(s_list_.size())) + lb > t_) return false;

        std::vector<int> branch_cells;
        if (anchor >= 0) {
            for (const auto& [c, s] : inst_.edge_cofaces[anchor])
                if (!in_s_[c] && !excluded_[c]) branch_cells.push_back(c);
        } else {
            const LinearSolution sol = solve_leaf();
            if (sol.feasible) {
                record_solution(sol);
                return true;
            }
            if (Int(static_cast<long>(s_list_.size())) >= t_) return false;
            branch_cells = certificate_anchors(sol);
            if (branch_cells.empty()) return false;
        }
        std::sort(branch_cells.begin(), branch_cells.end());
        bool found = false;
        std::size_t taken = 0;
        for (int c : branch_cells) {
            push_cell(c);
            const bool sub = search();
            pop_cell(c);
            if (sub) {
                found = true;
                break;
            }
            excluded_[c] = 1;
            ++taken;
        }
        for (std::size_t i = 0; i < taken; ++i) excluded_[branch_cells[i]] = 0;
        return found;
    }

    void push_cell(int c) {
        in_s_[c] = 1;
        s_list_.push_back(c);
        for (const auto& [e, s] : inst_.cell_faces[c]) ++cover_[e];
    }
    void pop_cell(int c) {
        in_s_[c] = 0;
        s_list_.pop_back();
        for (const auto& [e, s] : inst_.cell_faces[c]) --cover_[e];
    }

    // Rows: every edge incident to S plus every target edge. Over Q rows are
    // scaled by target denominators so the integer solver applies.
    LinearSolution solve_leaf() {
        rows_.clear();
        std::set<int> row_set(zedges_.begin(), zedges_.end());
        for (int c : s_list_)
            for (const auto& [e, s] : inst_.cell_faces[c]) row_set.insert(e);
        rows_.assign(row_set.begin(), row_set.end());

        IntMat a(rows_.size(), std::vector<Int>(s_list_.size(), 0));
        std::vector<Int> b(rows_.size(), 0);
        std::map<int, int> row_of;
        for (std::size_t i = 0; i < rows_.size(); ++i) row_of[rows_[i]] = static_cast<int>(i);
        for (std::size_t j = 0; j < s_list_.size(); ++j)
            for (const auto& [e, s] : inst_.cell_faces[s_list_[j]]) a[row_of.at(e)][j] = s;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Coeff& t = inst_.target[rows_[i]];
            const Int den = boost::multiprecision::denominator(t);
            if (den != 1)
                for (auto& entry : a[i]) entry *= den;
            b[i] = boost::multiprecision::numerator(t);
        }
        return solve_linear(a, b, inst_.ring);
    }

    void record_solution(const LinearSolution& sol) {
        out_.best.assign(inst_.cells(), inst_.ring.zero());
        Int support = 0;
        for (std::size_t j = 0; j < s_list_.size(); ++j) {
            out_.best[s_list_[j]] = sol.particular[j];
            if (!inst_.ring.is_zero(sol.particular[j])) ++support;
        }
        out_.best_norm = Rational(support);
        out_.found = true;
        if (feasibility_) throw StopSearch{};
    }

    std::vector<int> certificate_anchors(const LinearSolution& sol) const {
        // Any feasible superset must add a cell whose column pairs nontrivially
        // with the certificate row modulo cert_mod.
        std::map<int, Int> y;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (sol.cert_row[i] != 0) y[rows_[i]] = sol.cert_row[i];
        const Int& mod = sol.cert_mod;
        std::set<int> cands;
        for (const auto& [e, ye] : y) {
            if (mod != 0 && ye % mod == 0) continue;
            for (const auto& [c, s] : inst_.edge_cofaces[e])
                if (!in_s_[c] && !excluded_[c]) cands.insert(c);
        }
        std::vector<int> out;
        for (int c : cands) {
            Int pairing = 0;
            for (const auto& [e, s] : inst_.cell_faces[c]) {
                const auto it = y.find(e);
                if (it != y.end()) pairing += Int(s) * it->second;
            }
            if (mod != 0) pairing %= mod;
            if (pairing != 0) out.push_back(c);
        }
        return out;
    }

    const Instance& inst_;
    Budget& budget_;
    bool feasibility_ = false;
    Int t_;
    std::vector<char> in_s_, excluded_;
    std::vector<int> cover_;
    std::vector<int> s_list_;
    std::vector<int> zedges_;
    std::vector<int> rows_;
    SearchOutcome out_;
};

// ------------------------------------------------------------------
// Region-level orchestration.
// ------------------------------------------------------------------

enum class EngineKind { value_z, support, simplex_q };

EngineKind engine_for(const NormedRing& ring) {
    if (ring.norm_kind() == NormKind::discrete) return EngineKind::support;
    if (ring.kind() == RingKind::integers) return EngineKind::value_z;
    if (ring.kind() == RingKind::rationals) return EngineKind::simplex_q;
    throw ConfigError("no filling engine for ring " + ring.spec_string());
}

struct RegionOutcome {
    bool found = false;
    bool proven_empty = false;  // no filling in the region at all
    bool empty_up_to_cap = false;
    Rational best_norm;
    CoeffMap best;
};

constexpr int kPrecheckCells = 200;

RegionOutcome search_region(const Instance& inst, Budget& budget, const Rational& cap) {
    RegionOutcome out;

    // Exact solvability precheck on small regions: an infeasibility
    // certificate here rules out fillings of every norm.
    if (inst.cells() <= kPrecheckCells && engine_for(inst.ring) != EngineKind::simplex_q) {
        IntMat a(inst.edges(), std::vector<Int>(inst.cells(), 0));
        std::vector<Int> b(inst.edges(), 0);
        for (int c = 0; c < inst.cells(); ++c)
            for (const auto& [e, s] : inst.cell_faces[c]) a[e][c] = s;
        bool scaled_ok = true;
        for (int e = 0; e < inst.edges(); ++e) {
            const Int den = boost::multiprecision::denominator(inst.target[e]);
            if (den != 1)
                for (auto& entry : a[e]) entry *= den;
            b[e] = boost::multiprecision::numerator(inst.target[e]);
            (void)scaled_ok;
        }
        const LinearSolution sol = solve_linear(a, b, inst.ring);
        if (!sol.feasible) {
            out.proven_empty = true;
            return out;
        }
    }

    switch (engine_for(inst.ring)) {
        case EngineKind::value_z: {
            ValueSearch vs(inst, budget, cap, false);
            SearchOutcome so = vs.run();
            if (so.found) {
                out.found = true;
                out.best_norm = so.best_norm;
                out.best = inst.to_map(so.best);
            } else {
                out.proven_empty = inst.cells() == 0;
                out.empty_up_to_cap = true;
            }
            return out;
        }
        case EngineKind::support: {
            SupportSearch ss(inst, budget);
            SearchOutcome so = ss.run(floor_rational(cap), false);
            if (so.found) {
                out.found = true;
                out.best_norm = so.best_norm;
                out.best = inst.to_map(so.best);
            } else {
                out.proven_empty = inst.cells() == 0;
                out.empty_up_to_cap = true;
            }
            return out;
        }
        case EngineKind::simplex_q: {
            RatMat a(inst.edges(), std::vector<Rational>(inst.cells(), Rational(0)));
            std::vector<Rational> b(inst.edges());
            for (int c = 0; c < inst.cells(); ++c)
                for (const auto& [e, s] : inst.cell_faces[c]) a[e][c] = s;
            for (int e = 0; e < inst.edges(); ++e) b[e] = inst.target[e];
            budget.tick();
            const LpResult lp = min_l1_solution(a, b);
            if (lp.feasible) {
                out.found = true;
                out.best_norm = lp.value;
                out.best = inst.to_map(std::vector<Coeff>(lp.x.begin(), lp.x.end()));
            } else {
                out.proven_empty = true;
            }
            return out;
        }
    }
    return out;
}

// Does a filling with norm <= bound exist with the given pins? Returns the
// witness (pins included) when found.
std::optional<CoeffMap> query_feasible(const Chain& z,
                                       const std::vector<std::pair<CellId, int>>& region_cells,
                                       const std::vector<std::pair<CellId, Coeff>>& pins,
                                       const Rational& bound, Budget& budget) {
    Rational pin_norm = 0;
    for (const auto& [cell, v] : pins) pin_norm += z.ring().norm(v);
    if (pin_norm > bound) return std::nullopt;
    const Rational sub_bound = bound - pin_norm;

    Instance inst(z, region_cells, pins);
    SearchOutcome so;
    switch (engine_for(z.ring())) {
        case EngineKind::value_z: {
            ValueSearch vs(inst, budget, sub_bound, true);
            so = vs.run();
            break;
        }
        case EngineKind::support: {
            SupportSearch ss(inst, budget);
            so = ss.run(floor_rational(sub_bound), true);
            break;
        }
        case EngineKind::simplex_q:
            return std::nullopt;
    }
    if (!so.found) return std::nullopt;
    CoeffMap sol = inst.to_map(so.best);
    for (const auto& [cell, v] : pins)
        if (!z.ring().is_zero(v)) sol[cell] = v;
    return sol;
}

// Lexicographically least coefficient vector among fillings of norm exactly
// nu_star, by witness refinement: scan cells in canonical order, lowering
// each coefficient as far as feasibility allows (0 < 1 < -1 < 2 < ...).
CoeffMap canonicalize(const Chain& z, const std::vector<std::pair<CellId, int>>& region_cells,
                      CoeffMap witness, const Rational& nu_star, Budget& budget) {
    const NormedRing& ring = z.ring();
    std::vector<CellId> canonical;
    canonical.reserve(region_cells.size());
    for (const auto& [cell, depth] : region_cells) canonical.push_back(cell);
    std::sort(canonical.begin(), canonical.end());

    std::vector<std::pair<CellId, Coeff>> pins;
    pins.reserve(canonical.size());
    for (CellId cell : canonical) {
        const auto wit = witness.find(cell);
        if (wit == witness.end()) {
            pins.push_back({cell, ring.zero()});
            continue;
        }
        const Coeff w = wit->second;
        std::vector<Coeff> cands{ring.zero()};
        if (ring.kind() != RingKind::rationals) {
            const Rational wmag = [&] {
                if (ring.kind() == RingKind::integers_mod) {
                    const Int r = boost::multiprecision::numerator(w);
                    const Int alt = r - ring.modulus();
                    return (r <= -alt) ? Rational(r) : Rational(-alt);
                }
                return w < 0 ? Rational(-w) : Rational(w);
            }();
            const Int cap = std::min(ceil_rational(wmag), Int(4096));
            for (Int mag = 1; mag <= cap; ++mag)
                for (int pm : {+1, -1}) {
                    const Coeff v = ring.canon(Coeff(pm > 0 ? mag : Int(-mag)));
                    if (!ring.eq(v, w) && ring.coeff_less(v, w) &&
                        std::find(cands.begin(), cands.end(), v) == cands.end())
                        cands.push_back(v);
                }
        }
        bool lowered = false;
        for (const Coeff& v : cands) {
            auto trial = pins;
            trial.push_back({cell, v});
            const auto sol = query_feasible(z, region_cells, trial, nu_star, budget);
            if (!sol) continue;
            witness = *sol;
            pins = std::move(trial);
            lowered = true;
            break;
        }
        if (!lowered) pins.push_back({cell, w});
    }
    CoeffMap out;
    for (const auto& [cell, v] : pins)
        if (!ring.is_zero(v)) out[cell] = v;
    return out;
}

Rational auto_cap(const Chain& z, const Rational& requested) {
    if (requested > 0) return requested;
    const Rational nz = l1_norm(z);
    const Rational quad = 4 * nz * nz;
    return std::max(Rational(64), quad);
}

}  // namespace

FillingResult exact_filling(const Chain& z, const FillOptions& opts) {
    const ComplexPtr& cx = z.complex();
    const int n = z.dim();
    if (n >= 1 && !is_cycle(z)) throw ContractError("exact_filling: input chain is not a cycle");

    FillingResult result;
    if (z.is_zero()) {
        if (n + 1 <= cx->dim()) result.filling = Chain(cx, n + 1, z.ring());
        result.norm = 0;
        result.status = FillStatus::optimal;
        result.region_full = true;
        return result;
    }
    if (n >= cx->dim()) {
        // No cells of dimension n+1 exist anywhere: certified non-boundary.
        result.status = FillStatus::infeasible_within_budget;
        result.proven_no_filling = true;
        result.region_full = true;
        return result;
    }

    std::uint64_t nodes = 0;
    Budget budget;
    budget.nodes = &nodes;
    budget.node_limit = opts.node_budget;
    if (opts.time_budget_ms >= 0) {
        budget.timed = true;
        budget.deadline = Clock::now() + std::chrono::milliseconds(opts.time_budget_ms);
    }

    const Rational cap = auto_cap(z, opts.norm_cap);
    const bool q_abs =
        z.ring().kind() == RingKind::rationals && z.ring().norm_kind() == NormKind::absolute;

    // Region filtration: hull(supp z), then repeated neighborhood expansion.
    std::vector<std::pair<int, CellId>> seed;
    for (const auto& [id, v] : z.coeffs()) seed.push_back({n, id});
    SubComplex region = hull(cx, seed);
    std::vector<std::pair<CellId, int>> region_cells;  // (cell, depth when added)
    std::set<CellId> known;
    int depth = 0;
    auto absorb = [&](const SubComplex& r) {
        for (CellId id : r.members(n + 1))
            if (known.insert(id).second) region_cells.push_back({id, depth});
    };
    absorb(region);

    std::optional<RegionOutcome> best;
    int stable = 0;
    bool certified = false;
    bool proven_none = false;

    // Grow the region by whole steps, recording per-cell insertion depth.
    auto expand_to = [&](int target_depth) {
        while (depth < target_depth) {
            SubComplex next = expand_neighborhood(region);
            if (next.total_cells() == region.total_cells()) return true;  // fixed point
            ++depth;
            region = std::move(next);
            absorb(region);
        }
        SubComplex probe = expand_neighborhood(region);
        return probe.total_cells() == region.total_cells();
    };

    try {
        if (opts.search == FillOptions::Search::certify) {
            // Search once past the hull, then jump straight to the depth the
            // locality certificate needs: a filling of norm <= B has every
            // face-connected support component touching supp z with at most
            // B cells, hence lives inside N^B(hull(supp z)).
            bool fixed_point = expand_to(1);
            while (true) {
                const RegionOutcome outcome =
                    search_region(Instance(z, region_cells, {}), budget, cap);
                if (outcome.found) {
                    best = outcome;
                    const int needed = static_cast<int>(ceil_rational(best->best_norm));
                    if (!q_abs && depth >= needed) {
                        certified = true;
                        break;
                    }
                    if (fixed_point) {
                        certified = true;
                        break;
                    }
                    fixed_point = expand_to(q_abs ? depth + 1 : needed);
                } else {
                    if (fixed_point) {
                        proven_none = outcome.proven_empty;
                        break;
                    }
                    fixed_point = expand_to(depth + 1);
                }
            }
        } else {
            while (true) {
                const RegionOutcome outcome =
                    search_region(Instance(z, region_cells, {}), budget, cap);
                if (outcome.found) {
                    stable = (best && best->best_norm == outcome.best_norm) ? stable + 1 : 0;
                    best = outcome;
                    if (!q_abs && Int(depth) >= ceil_rational(best->best_norm)) {
                        certified = true;
                        break;
                    }
                }
                SubComplex next = expand_neighborhood(region);
                const bool fixed_point = next.total_cells() == region.total_cells();
                if (fixed_point) {
                    if (best) {
                        certified = true;  // minimal fillings live in z's components
                    } else if (outcome.proven_empty) {
                        proven_none = true;
                    }
                    break;
                }
                if (best && stable >= 2 && depth >= 2) break;
                ++depth;
                region = std::move(next);
                absorb(region);
            }
        }

        result.region_depth = depth;
        result.region_full = certified;
        result.proven_no_filling = proven_none;
        if (!best) {
            result.status = FillStatus::infeasible_within_budget;
            result.nodes = nodes;
            return result;
        }

        CoeffMap coeffs = best->best;
        if (certified && !q_abs)
            coeffs = canonicalize(z, region_cells, std::move(coeffs), best->best_norm, budget);

        Chain filling(cx, n + 1, z.ring());
        for (const auto& [cell, v] : coeffs) filling.set(cell, v);
        result.filling = std::move(filling);
        result.norm = best->best_norm;
        result.status = certified ? FillStatus::optimal : FillStatus::upper_bound;
        result.nodes = nodes;
        return result;
    } catch (const OutOfBudget&) {
        result.nodes = nodes;
        result.region_depth = depth;
        if (best) {
            Chain filling(cx, n + 1, z.ring());
            for (const auto& [cell, v] : best->best) filling.set(cell, v);
            result.filling = std::move(filling);
            result.norm = best->best_norm;
            result.status = FillStatus::upper_bound;
        } else {
            result.status = FillStatus::infeasible_within_budget;
        }
        return result;
    }
}

FillingResult area(const ComplexPtr& cx, const std::vector<VertexId>& loop,
                   const NormedRing& ring, const FillOptions& opts) {
    if (loop.size() < 1 || loop.front() != loop.back())
        throw ContractError("area: path is not closed");
    const Chain gamma = path_to_chain(cx, ring, loop);
    return exact_filling(gamma, opts);
}

}  // namespace homfill
