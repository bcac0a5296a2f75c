#include "homfill/lattice.hpp"

#include <algorithm>

namespace homfill {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

IntMat identity_matrix(int n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace

SmithForm smith_normal_form(IntMat a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    SmithForm out;
    out.u = identity_matrix(rows);
    out.v = identity_matrix(cols);
    const int dim = std::min(rows, cols);
    out.diag.assign(dim, 0);

    auto row_op = [&](int dst, int src, const Int& q) {  // row dst -= q * row src
        for (int j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
        for (int j = 0; j < rows; ++j) out.u[dst][j] -= q * out.u[src][j];
    };
    auto col_op = [&](int dst, int src, const Int& q) {  // col dst -= q * col src
        for (int i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
        for (int i = 0; i < cols; ++i) out.v[i][dst] -= q * out.v[i][src];
    };
    auto swap_rows = [&](int i, int j) {
        std::swap(a[i], a[j]);
        std::swap(out.u[i], out.u[j]);
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(out.v[r][i], out.v[r][j]);
    };

    int t = 0;
    while (t < dim) {
        // Find smallest-magnitude nonzero pivot in the remaining block.
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi < 0 || abs_int(a[i][j]) < abs_int(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
            if (a[i][t] != 0) {
                const Int q = a[i][t] / a[t][t];
                row_op(i, t, q);
                if (a[i][t] != 0) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (a[t][j] != 0) {
                const Int q = a[t][j] / a[t][t];
                col_op(j, t, q);
                if (a[t][j] != 0) clean = false;
            }
        if (!clean) continue;  // re-pick a smaller pivot

        // Divisibility: pivot must divide everything below-right.
        bool fixed = true;
        for (int i = t + 1; i < rows && fixed; ++i)
            for (int j = t + 1; j < cols && fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_op(t, i, Int(-1));  // add row i to row t
                    fixed = false;
                }
        if (!fixed) continue;

        if (a[t][t] < 0) {
            for (int j = 0; j < cols; ++j) a[t][j] = -a[t][j];
            for (int j = 0; j < rows; ++j) out.u[t][j] = -out.u[t][j];
        }
        out.diag[t] = a[t][t];
        ++t;
    }
    out.rank = 0;
    for (const Int& d : out.diag)
        if (d != 0) ++out.rank;
    return out;
}

LinearSolution solve_linear(const IntMat& a, const std::vector<Int>& b, const NormedRing& ring) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    LinearSolution out;

    const SmithForm snf = smith_normal_form(a);
    // z = U b
    std::vector<Int> z(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) z[i] += snf.u[i][j] * b[j];

    const Int m = ring.kind() == RingKind::integers_mod ? ring.modulus() : Int(0);
    std::vector<Coeff> y(cols, Coeff(0));

    for (int i = 0; i < rows; ++i) {
        const Int d = i < static_cast<int>(snf.diag.size()) ? snf.diag[i] : Int(0);
        if (d != 0) {
            switch (ring.kind()) {
                case RingKind::rationals:
                    y[i] = Coeff(z[i], d);
                    break;
                case RingKind::integers:
                    if (z[i] % d != 0) {
                        out.feasible = false;
                        out.cert_row = snf.u[i];
                        out.cert_mod = d;
                        return out;
                    }
                    y[i] = Coeff(z[i] / d);
                    break;
                case RingKind::integers_mod: {
                    const Int g = boost::multiprecision::gcd(d, m);
                    Int zi = z[i] % m;
                    if (zi < 0) zi += m;
                    if (zi % g != 0) {
                        out.feasible = false;
                        out.cert_row = snf.u[i];
                        out.cert_mod = g;
                        return out;
                    }
                    // Solve d * t == z[i] (mod m): t = (z/g) * inv(d/g) mod (m/g).
                    const Int mg = m / g;
                    Int dg = (d / g) % mg;
                    if (dg < 0) dg += mg;
                    Int inv = 0, new_inv = 1, r = mg == 0 ? Int(1) : mg, new_r = dg;
                    if (mg <= 1) {
                        y[i] = Coeff(0);
                        break;
                    }
                    while (new_r != 0) {
                        const Int q = r / new_r;
                        Int tmp = inv - q * new_inv;
                        inv = new_inv;
                        new_inv = tmp;
                        tmp = r - q * new_r;
                        r = new_r;
                        new_r = tmp;
                    }
                    Int t = ((zi / g) % mg) * (inv % mg) % mg;
                    if (t < 0) t += mg;
                    y[i] = Coeff(t);
                    break;
                }
            }
        } else {
            // Zero row of D: need z[i] == 0 (mod m over Z_m, exactly otherwise).
            bool ok;
            if (ring.kind() == RingKind::integers_mod)
                ok = (z[i] % m) == 0;
            else
                ok = z[i] == 0;
            if (!ok) {
                out.feasible = false;
                out.cert_row = snf.u[i];
                out.cert_mod = m;  // 0 over Z/Q
                return out;
            }
        }
    }

    // particular = V y (y entries beyond diag are zero).
    out.particular.assign(cols, Coeff(0));
    for (int i = 0; i < cols; ++i) {
        Coeff acc(0);
        for (int j = 0; j < cols; ++j)
            if (y[j] != 0) acc += Coeff(snf.v[i][j]) * y[j];
        out.particular[i] = ring.canon(acc);
    }
    out.feasible = true;
    return out;
}

std::vector<std::vector<Coeff>> kernel_basis(const IntMat& a, const NormedRing& ring) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<std::vector<Coeff>> out;
    if (cols == 0) return out;
    if (rows == 0) {
        for (int j = 0; j < cols; ++j) {
            std::vector<Coeff> e(cols, Coeff(0));
            e[j] = ring.one();
            out.push_back(std::move(e));
        }
        return out;
    }
    const SmithForm snf = smith_normal_form(a);
    const int dim = static_cast<int>(snf.diag.size());
    auto column = [&](int j, const Int& scale) {
        std::vector<Coeff> v(cols);
        for (int i = 0; i < cols; ++i) v[i] = ring.canon(Coeff(snf.v[i][j] * scale));
        return v;
    };
    for (int j = 0; j < cols; ++j) {
        const Int d = j < dim ? snf.diag[j] : Int(0);
        if (d == 0) {
            out.push_back(column(j, 1));
        } else if (ring.kind() == RingKind::integers_mod) {
            const Int g = boost::multiprecision::gcd(d, ring.modulus());
            const Int step = ring.modulus() / g;
            if (step != ring.modulus()) out.push_back(column(j, step));
        }
    }
    return out;
}

AbelianCoker::AbelianCoker(int gens, const IntMat& relator_columns) : gens_(gens) {
    IntMat r(gens, std::vector<Int>(relator_columns.size(), 0));
    for (std::size_t j = 0; j < relator_columns.size(); ++j) {
        if (static_cast<int>(relator_columns[j].size()) != gens)
            throw ContractError("relator column length mismatch");
        for (int i = 0; i < gens; ++i) r[i][j] = relator_columns[j][i];
    }
    if (relator_columns.empty()) {
        u_ = identity_matrix(gens);
        moduli_.assign(gens, 0);
        return;
    }
    const SmithForm snf = smith_normal_form(std::move(r));
    u_ = snf.u;
    moduli_.assign(gens, 0);
    for (int i = 0; i < static_cast<int>(snf.diag.size()); ++i) moduli_[i] = snf.diag[i];
}

std::vector<Int> AbelianCoker::reduce(std::vector<Int> w) const {
    for (int i = 0; i < gens_; ++i)
        if (moduli_[i] != 0) {
            w[i] %= moduli_[i];
            if (w[i] < 0) w[i] += moduli_[i];
        }
    return w;
}

std::vector<Int> AbelianCoker::canon_of_exponent(const std::vector<Int>& x) const {
    std::vector<Int> w(gens_, 0);
    for (int i = 0; i < gens_; ++i)
        for (int j = 0; j < gens_; ++j) w[i] += u_[i][j] * x[j];
    return reduce(std::move(w));
}

std::vector<Int> AbelianCoker::add(const std::vector<Int>& cw, const std::vector<Int>& dw) const {
    std::vector<Int> w(gens_);
    for (int i = 0; i < gens_; ++i) w[i] = cw[i] + dw[i];
    return reduce(std::move(w));
}

std::vector<Int> AbelianCoker::generator(int k) const {
    std::vector<Int> e(gens_, 0);
    e[k] = 1;
    return canon_of_exponent(e);
}

}  // namespace homfill
