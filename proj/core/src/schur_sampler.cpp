#include "wanderer/schur_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wanderer/error.hpp"
#include "wanderer/trunc_geom.hpp"

namespace wanderer {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// distinct values of v, and the index of each entry among them
std::vector<double> distinct(const std::vector<double>& v, std::vector<std::size_t>& ids) {
    std::vector<double> vals;
    ids.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto it = std::find(vals.begin(), vals.end(), v[i]);
        ids[i] = static_cast<std::size_t>(it - vals.begin());
        if (it == vals.end()) vals.push_back(v[i]);
    }
    return vals;
}

// cdf numerators 1 - q^k, k = 0..size-1, in the same floating-point form as
// detail::cdf_int, so that a scan reproduces the exact cdf comparison
struct CdfTable {
    double q = 0.0, logq = 0.0;
    std::vector<double> num;

    CdfTable(double q_, double logq_) : q(q_), logq(logq_) {
        num.push_back(0.0);
        if (q == 0.0) return;
        for (std::int64_t k = 1; k <= kMaxTable; ++k) {
            num.push_back(-std::expm1(static_cast<double>(k) * logq));
            if (num.back() == 1.0) break;
        }
    }

    double at(std::int64_t k) const {
        return k < static_cast<std::int64_t>(num.size()) ? num[static_cast<std::size_t>(k)]
                                                          : -std::expm1(static_cast<double>(k) * logq);
    }

    // smallest x >= a with cdf(x) >= u
    std::int64_t quantile(std::int64_t a, std::int64_t b, bool bounded, double u) const {
        if (q == 0.0 || (bounded && a == b)) return a;
        const double c = bounded ? at(b - a + 1) : 1.0;
        const auto len = static_cast<std::int64_t>(num.size());
        for (std::int64_t k = 1; k < len; ++k) {
            if (bounded && a + k - 1 >= b) return b;
            if ((bounded ? num[static_cast<std::size_t>(k)] / c : num[static_cast<std::size_t>(k)]) >= u) return a + k - 1;
        }
        return detail::quantile_impl(a, b, bounded, q, logq, u);
    }

    static constexpr std::int64_t kMaxTable = 1 << 16;
};

struct QTable {
    std::vector<std::size_t> xid, yid;
    std::size_t ny = 0;
    std::vector<CdfTable> cdf;

    explicit QTable(const SamplerConfig& cfg) {
        const auto xv = distinct(cfg.X, xid);
        const auto yv = distinct(cfg.Y, yid);
        ny = yv.size();
        for (double x : xv)
            for (double y : yv)
                cdf.emplace_back(x * y, x * y > 0.0 ? std::log(x * y) : -std::numeric_limits<double>::infinity());
    }
};

// One update n -> n+1 of the row lambda(n, 0..M), in place, top K parts.
inline void update_row(std::vector<std::int64_t>& row, std::size_t M, std::size_t K, std::size_t n, const QTable& t,
                       const NoiseField& f) {
    const std::size_t yid = t.yid[n];
    for (std::size_t m = 1; m <= M; ++m) {
        const CdfTable& d = t.cdf[t.xid[m - 1] * t.ny + yid];
        const std::uint64_t cell = f.cell(static_cast<std::int64_t>(n + 1), static_cast<std::int64_t>(m));
        const std::int64_t* left = row.data() + (m - 1) * K;
        std::int64_t* cur = row.data() + m * K;
        const std::size_t top = std::min({m, n + 1, K});
        std::int64_t old_prev = kInf;
        for (std::size_t i = 0; i < top; ++i) {
            const std::int64_t old_i = cur[i];
            const std::int64_t a = std::max(left[i], old_i);
            std::int64_t v;
            if (i == 0) {
                v = d.q == 0.0 ? a : d.quantile(a, 0, false, f.uniform_in(cell, 1));
            } else {
                const std::int64_t b = std::min(left[i - 1], old_prev);
                if (a > b)
                    throw Error(ErrorCode::InvalidParams,
                                "push-block bounds crossed at n=" + std::to_string(n + 1) + " m=" + std::to_string(m));
                v = (d.q == 0.0 || a == b) ? a : d.quantile(a, b, true, f.uniform_in(cell, static_cast<std::int64_t>(i + 1)));
            }
            cur[i] = v;
            old_prev = old_i;
        }
    }
}

}  // namespace

void validate_config(const SamplerConfig& cfg) {
    if (cfg.M == 0 || cfg.N == 0) throw Error(ErrorCode::InvalidParams, "M and N must be positive");
    if (cfg.X.size() != cfg.M || cfg.Y.size() != cfg.N) throw Error(ErrorCode::InvalidParams, "|X| = M and |Y| = N");
    double xmax = 0.0, ymax = 0.0;
    for (double x : cfg.X) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "X entries must be >= 0");
        xmax = std::max(xmax, x);
    }
    for (double y : cfg.Y) {
        if (!(y >= 0.0) || !std::isfinite(y)) throw Error(ErrorCode::InvalidParams, "Y entries must be >= 0");
        ymax = std::max(ymax, y);
    }
    if (!(xmax * ymax < 1.0)) throw Error(ErrorCode::InvalidParams, "need x_i y_j < 1");
}

TopParts sample_schur_top(const SamplerConfig& cfg, const NoiseField& f, std::size_t K) {
    validate_config(cfg);
    if (K == 0) K = std::min(cfg.M, cfg.N);
    const QTable t(cfg);
    std::vector<std::int64_t> row((cfg.M + 1) * K, 0);
    for (std::size_t n = 0; n < cfg.N; ++n) update_row(row, cfg.M, K, n, t, f);
    TopParts out;
    out.M = cfg.M;
    out.K = K;
    out.values.assign(row.begin() + static_cast<std::ptrdiff_t>(K), row.end());
    return out;
}

PartitionSequence to_sequence(const TopParts& t) {
    PartitionSequence seq;
    seq.reserve(t.M);
    for (std::size_t j = 1; j <= t.M; ++j) {
        std::vector<std::int64_t> parts(t.values.begin() + static_cast<std::ptrdiff_t>((j - 1) * t.K),
                                        t.values.begin() + static_cast<std::ptrdiff_t>(j * t.K));
        seq.emplace_back(std::move(parts));
    }
    return seq;
}

PartitionSequence sample_schur(const SamplerConfig& cfg, const NoiseField& f, std::size_t max_parts) {
    std::size_t K = std::min(cfg.M, cfg.N);
    if (max_parts > 0) K = std::min(K, max_parts);
    return to_sequence(sample_schur_top(cfg, f, K));
}

std::vector<std::vector<Partition>> sample_schur_grid(const SamplerConfig& cfg, const NoiseField& f) {
    validate_config(cfg);
    const std::size_t K = std::min(cfg.M, cfg.N);
    const QTable t(cfg);
    std::vector<std::int64_t> row((cfg.M + 1) * K, 0);
    std::vector<std::vector<Partition>> grid(cfg.N + 1, std::vector<Partition>(cfg.M + 1));
    auto snapshot = [&](std::size_t n) {
        for (std::size_t m = 0; m <= cfg.M; ++m)
            grid[n][m] = Partition(std::vector<std::int64_t>(row.begin() + static_cast<std::ptrdiff_t>(m * K),
                                                             row.begin() + static_cast<std::ptrdiff_t>((m + 1) * K)));
    };
    snapshot(0);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        update_row(row, cfg.M, K, n, t, f);
        snapshot(n + 1);
    }
    return grid;
}

bool check_hypothesis(const std::vector<double>& XA, const std::vector<double>& YA, const std::vector<double>& XB,
                      const std::vector<double>& YB, std::size_t A, std::size_t B) {
    const std::size_t M = std::min(XA.size(), XB.size()), N = std::min(YA.size(), YB.size());
    for (std::size_t i = 0; i + B < M; ++i)
        for (std::size_t j = 0; j + A < N; ++j)
            if (XA[i + B] * YA[j + A] > XB[i] * YB[j]) return false;
    return true;
}

CoupledSample sample_coupled(const SamplerConfig& cfgA, const SamplerConfig& cfgB, std::size_t A, std::size_t B,
                             const NoiseField& f, std::size_t K) {
    if (cfgA.M != cfgB.M || cfgA.N != cfgB.N) throw Error(ErrorCode::InvalidParams, "coupled configs must share M, N");
    CoupledSample s;
    s.shift = std::max(A, B);
    s.first = sample_schur_top(cfgA, f, K + s.shift);
    s.second = sample_schur_top(cfgB,
                                f.shifted(static_cast<std::int64_t>(A), static_cast<std::int64_t>(B),
                                          static_cast<std::int64_t>(s.shift)),
                                K);
    return s;
}

std::size_t coupling_violations(const CoupledSample& s) {
    std::size_t bad = 0;
    const std::size_t K = s.second.K;
    for (std::size_t j = 1; j <= s.first.M; ++j)
        for (std::size_t k = 1; k <= K; ++k)
            if (s.first.at(j, k + s.shift) > s.second.at(j, k)) ++bad;
    return bad;
}

}  // namespace wanderer
