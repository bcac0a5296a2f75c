#include "homfill/simplex_lp.hpp"

#include <algorithm>

namespace homfill {

namespace {

// Tableau simplex on A x = b, x >= 0 with a starting basis of artificial
// variables. Bland's rule throughout.
class Tableau {
  public:
    Tableau(const RatMat& a, const std::vector<Rational>& b)
        : rows_(static_cast<int>(a.size())), cols_(a.empty() ? 0 : static_cast<int>(a[0].size())) {
        t_.assign(rows_, std::vector<Rational>(cols_ + rows_ + 1, Rational(0)));
        basis_.resize(rows_);
        for (int i = 0; i < rows_; ++i) {
            const bool flip = b[i] < 0;
            for (int j = 0; j < cols_; ++j) t_[i][j] = flip ? -a[i][j] : a[i][j];
            t_[i][cols_ + i] = 1;
            t_[i].back() = flip ? -b[i] : b[i];
            basis_[i] = cols_ + i;
        }
    }

    int total_vars() const { return cols_ + rows_; }

    // Minimizes cost (length total_vars); returns optimum.
    Rational run(const std::vector<Rational>& cost) {
        // Reduced-cost row: z_j = cost_j - cost_B^T B^{-1} A_j.
        std::vector<Rational> red(total_vars() + 1, Rational(0));
        for (int j = 0; j <= total_vars(); ++j) {
            Rational acc = j < total_vars() ? cost[j] : Rational(0);
            for (int i = 0; i < rows_; ++i) acc -= cost[basis_[i]] * t_[i][j];
            red[j] = acc;
        }
        while (true) {
            int enter = -1;
            for (int j = 0; j < total_vars(); ++j)
                if (red[j] < 0 && !banned_[j]) {
                    enter = j;  // Bland: least index
                    break;
                }
            if (enter < 0) break;
            int leave = -1;
            for (int i = 0; i < rows_; ++i) {
                if (t_[i][enter] <= 0) continue;
                if (leave < 0) {
                    leave = i;
                    continue;
                }
                const Rational cur = t_[i].back() / t_[i][enter];
                const Rational best = t_[leave].back() / t_[leave][enter];
                if (cur < best || (cur == best && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave < 0) throw ContractError("unbounded linear program");
            pivot(leave, enter, red);
        }
        Rational value = 0;
        for (int i = 0; i < rows_; ++i) value += cost[basis_[i]] * t_[i].back();
        return value;
    }

    std::vector<Rational> solution(int n) const {
        std::vector<Rational> x(n, Rational(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < n) x[basis_[i]] = t_[i].back();
        return x;
    }

    bool artificial_in_basis() const {
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_ && t_[i].back() != 0) return true;
        return false;
    }

    // Drives zero-valued artificial variables out of the basis where possible.
    void purge_artificials() {
        std::vector<Rational> dummy(total_vars() + 1, Rational(0));
        for (int i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            for (int j = 0; j < cols_; ++j)
                if (t_[i][j] != 0) {
                    pivot(i, j, dummy);
                    break;
                }
        }
    }

    void ban_artificials() {
        banned_.assign(total_vars(), 0);
        for (int j = cols_; j < total_vars(); ++j) banned_[j] = 1;
    }

    void init_bans() { banned_.assign(total_vars(), 0); }

  private:
    void pivot(int leave, int enter, std::vector<Rational>& red) {
        const Rational p = t_[leave][enter];
        for (auto& v : t_[leave]) v /= p;
        for (int i = 0; i < rows_; ++i) {
            if (i == leave || t_[i][enter] == 0) continue;
            const Rational f = t_[i][enter];
            for (int j = 0; j <= total_vars(); ++j) t_[i][j] -= f * t_[leave][j];
        }
        if (!red.empty() && red[enter] != 0) {
            const Rational f = red[enter];
            for (int j = 0; j <= total_vars(); ++j) red[j] -= f * t_[leave][j];
        }
        basis_[leave] = enter;
    }

    int rows_, cols_;
    RatMat t_;
    std::vector<int> basis_;
    std::vector<char> banned_;
};

}  // namespace

LpResult simplex_min(const RatMat& a, const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
    LpResult out;
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    if (rows == 0) {
        out.feasible = true;
        out.value = 0;
        out.x.assign(cols, Rational(0));
        return out;
    }

    Tableau tab(a, b);
    tab.init_bans();

    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> phase1(tab.total_vars(), Rational(0));
    for (int j = cols; j < tab.total_vars(); ++j) phase1[j] = 1;
    const Rational infeas = tab.run(phase1);
    if (infeas != 0) return out;  // infeasible
    tab.purge_artificials();
    if (tab.artificial_in_basis()) return out;  // redundant-row corner, cannot happen after purge
    tab.ban_artificials();

    // Phase 2.
    std::vector<Rational> phase2(tab.total_vars(), Rational(0));
    for (int j = 0; j < cols; ++j) phase2[j] = c[j];
    out.value = tab.run(phase2);
    out.x = tab.solution(cols);
    out.feasible = true;
    return out;
}

LpResult min_l1_solution(const RatMat& a, const std::vector<Rational>& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    RatMat split(rows, std::vector<Rational>(2 * cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            split[i][j] = a[i][j];
            split[i][cols + j] = -a[i][j];
        }
    const std::vector<Rational> cost(2 * cols, Rational(1));
    LpResult r = simplex_min(split, b, cost);
    if (!r.feasible) return r;
    LpResult out;
    out.feasible = true;
    out.value = r.value;
    out.x.resize(cols);
    for (int j = 0; j < cols; ++j) out.x[j] = r.x[j] - r.x[cols + j];
    return out;
}

}  // namespace homfill
