#include "homfill/metric.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <thread>

namespace homfill {

FiniteMetric FiniteMetric::from_matrix(std::vector<std::vector<Rational>> d) {
    FiniteMetric m;
    m.points_ = static_cast<int>(d.size());
    for (int i = 0; i < m.points_; ++i) {
        if (static_cast<int>(d[i].size()) != m.points_)
            throw ContractError("distance matrix is not square");
        if (d[i][i] != 0) throw ContractError("distance matrix has nonzero diagonal");
        for (int j = 0; j < m.points_; ++j) {
            if (d[i][j] < 0) throw ContractError("negative distance");
            if (d[i][j] != d[j][i]) throw ContractError("distance matrix is not symmetric");
            if (i != j && d[i][j] == 0) throw ContractError("distinct points at distance 0");
        }
    }
    for (int i = 0; i < m.points_; ++i)
        for (int j = 0; j < m.points_; ++j)
            for (int k = 0; k < m.points_; ++k)
                if (d[i][j] > d[i][k] + d[k][j])
                    throw ContractError("triangle inequality fails in distance matrix");
    m.integral_ = true;
    for (int i = 0; i < m.points_ && m.integral_; ++i)
        for (int j = 0; j < m.points_; ++j)
            if (boost::multiprecision::denominator(d[i][j]) != 1) {
                m.integral_ = false;
                break;
            }
    m.matrix_ = std::move(d);
    return m;
}

FiniteMetric FiniteMetric::from_graph(int points, const std::vector<std::pair<int, int>>& edges) {
    FiniteMetric m;
    m.points_ = points;
    m.integral_ = true;
    m.adjacency_.assign(points, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= points || v >= points || u == v)
            throw ContractError("bad edge in metric graph");
        m.adjacency_[u].push_back(v);
        m.adjacency_[v].push_back(u);
    }
    for (auto& row : m.adjacency_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    m.cache_ = std::make_shared<BfsCache>();
    m.cache_->rows.assign(points, {});
    return m;
}

const std::vector<int>& FiniteMetric::row(int u) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& r = cache_->rows[u];
    if (!r.empty()) return r;
    std::vector<int> dist(points_, -1);
    std::deque<int> queue{u};
    dist[u] = 0;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int y : adjacency_[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
    }
    for (int v : dist)
        if (v < 0) throw ContractError("metric graph is disconnected");
    r = std::move(dist);
    return r;
}

Rational FiniteMetric::dist(int u, int v) const {
    if (u < 0 || v < 0 || u >= points_ || v >= points_)
        throw ContractError("point index out of range");
    if (!adjacency_.empty()) return Rational(row(u)[v]);
    return matrix_[u][v];
}

int FiniteMetric::dist_int(int u, int v) const {
    if (!adjacency_.empty()) return row(u)[v];
    return static_cast<int>(boost::multiprecision::numerator(matrix_[u][v]));
}

Rational FiniteMetric::max_distance() const {
    Rational best = 0;
    for (int u = 0; u < points_; ++u)
        for (int v = u + 1; v < points_; ++v) best = std::max(best, dist(u, v));
    return best;
}

Rational gromov_product(const FiniteMetric& m, int u, int v, int base) {
    return (m.dist(u, base) + m.dist(v, base) - m.dist(u, v)) / 2;
}

Rational four_point_defect(const FiniteMetric& m, int u, int v, int w, int base) {
    const Rational d = std::min(gromov_product(m, u, v, base), gromov_product(m, v, w, base)) -
                       gromov_product(m, u, w, base);
    return d < 0 ? Rational(0) : d;
}

namespace {

// Distances scaled to int64 by the lcm of denominators; only used when that
// lcm stays small (it is 1 for graph metrics).
struct ScaledDistances {
    std::vector<std::vector<std::int64_t>> d;
    Int denom;
};

ScaledDistances scale_distances(const FiniteMetric& m) {
    const int n = m.points();
    ScaledDistances out;
    out.d.assign(n, std::vector<std::int64_t>(n, 0));
    if (m.integral()) {
        out.denom = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.d[i][j] = m.dist_int(i, j);
        return out;
    }
    Int lcm = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(m.dist(i, j)));
    out.denom = lcm;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational scaled = m.dist(i, j) * Rational(lcm);
            out.d[i][j] = static_cast<std::int64_t>(boost::multiprecision::numerator(scaled));
        }
    return out;
}

// Max defect over triples with one fixed basepoint, times 2*denom.
std::int64_t basepoint_defect(const std::vector<std::vector<std::int64_t>>& d, int base) {
    const int n = static_cast<int>(d.size());
    // A[u][v] = 2 * (u,v)_base, scaled.
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) a[u][v] = d[u][base] + d[v][base] - d[u][v];

    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<std::int64_t>> futures;
    for (unsigned t = 0; t < jobs; ++t) {
        futures.push_back(std::async(std::launch::async, [&, t]() {
            std::int64_t best = 0;
            for (int u = static_cast<int>(t); u < n; u += static_cast<int>(jobs)) {
                const auto& au = a[u];
                for (int w = u; w < n; ++w) {
                    const auto& aw = a[w];
                    std::int64_t m = std::numeric_limits<std::int64_t>::min();
                    for (int v = 0; v < n; ++v) m = std::max(m, std::min(au[v], aw[v]));
                    best = std::max(best, m - au[w]);
                }
            }
            return best;
        }));
    }
    std::int64_t best = 0;
    for (auto& f : futures) best = std::max(best, f.get());
    return best;
}

// (largest pair-sum - second largest) for one 4-subset; equals twice the max
// ordered four-point defect over the orderings of the subset.
inline std::int64_t subset_defect(const std::vector<std::vector<std::int64_t>>& d, int a, int b,
                                  int c, int e) {
    const std::int64_t s1 = d[a][b] + d[c][e];
    const std::int64_t s2 = d[a][c] + d[b][e];
    const std::int64_t s3 = d[a][e] + d[b][c];
    std::int64_t hi = s1, mid = s2;
    if (mid > hi) std::swap(hi, mid);
    if (s3 > hi) {
        mid = hi;
        hi = s3;
    } else if (s3 > mid) {
        mid = s3;
    }
    return hi - mid;
}

}  // namespace

HyperbolicityEstimate estimate_delta(const FiniteMetric& m, const DeltaOptions& opts) {
    const int n = m.points();
    HyperbolicityEstimate est;
    est.seed = opts.seed;
    if (n <= 3) {
        est.delta = 0;
        est.exact = true;
        est.quadruples = 0;
        return est;
    }
    const ScaledDistances sd = scale_distances(m);
    const Rational unit = Rational(1) / (2 * Rational(sd.denom));

    if (opts.exact) {
        // Single-basepoint pass: zero defect here certifies delta = 0 overall.
        const std::int64_t base_defect = basepoint_defect(sd.d, 0);
        if (base_defect == 0) {
            est.delta = 0;
            est.exact = true;
            est.quadruples = static_cast<std::uint64_t>(n) * n * n;
            return est;
        }
        if (n > opts.exact_cap)
            throw ContractError("exact delta estimation beyond " + std::to_string(opts.exact_cap) +
                                " points; use sampled mode");
        std::int64_t best = base_defect;
        std::uint64_t count = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int e = c + 1; e < n; ++e) {
                        best = std::max(best, subset_defect(sd.d, a, b, c, e));
                        ++count;
                    }
        est.delta = Rational(best) * unit;
        est.exact = true;
        est.quadruples = count;
        return est;
    }

    Rng rng(opts.seed);
    std::int64_t best = 0;
    for (long i = 0; i < opts.sample_count; ++i) {
        const int a = static_cast<int>(rng.below(n));
        const int b = static_cast<int>(rng.below(n));
        const int c = static_cast<int>(rng.below(n));
        const int e = static_cast<int>(rng.below(n));
        best = std::max(best, subset_defect(sd.d, a, b, c, e));
    }
    est.delta = Rational(best) * unit;
    est.exact = false;
    est.quadruples = static_cast<std::uint64_t>(opts.sample_count);
    return est;
}

}  // namespace homfill
