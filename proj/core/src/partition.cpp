#include "wanderer/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "wanderer/error.hpp"

namespace wanderer {

namespace {

using Parts = std::vector<std::int64_t>;

void trim(Parts& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::int64_t at(const Parts& v, std::size_t i) { return i >= 1 && i <= v.size() ? v[i - 1] : 0; }

void check_pair(const std::vector<double>& X, const std::vector<double>& Y) {
    for (double x : X)
        for (double y : Y)
            if (!(x >= 0.0 && y >= 0.0 && x * y < 1.0))
                throw Error(ErrorCode::InvalidParams, "need x_i, y_j >= 0 and x_i y_j < 1");
}

}  // namespace

Partition::Partition(std::initializer_list<std::int64_t> parts) : Partition(Parts(parts)) {}

Partition::Partition(Parts parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw Error(ErrorCode::Negative, "partition parts must be nonnegative");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw Error(ErrorCode::NonMonotone, "partition parts must be weakly decreasing");
    }
    trim(parts_);
}

std::int64_t Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0}); }

std::string to_string(const Partition& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.parts()[i]);
    }
    return s + "]";
}

Partition parse_partition(const std::string& text) {
    Parts parts;
    std::string cur;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            cur += ch;
        } else if (ch == ',' || ch == ']') {
            if (!cur.empty()) parts.push_back(std::stoll(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) parts.push_back(std::stoll(cur));
    return Partition(parts);
}

bool interlaces(const Partition& lam, const Partition& mu) {
    const std::size_t n = std::max(lam.length(), mu.length()) + 1;
    for (std::size_t i = 1; i <= n; ++i)
        if (lam.part(i) < mu.part(i) || mu.part(i) < lam.part(i + 1)) return false;
    return true;
}

bool contains(const Partition& lam, const Partition& mu) {
    for (std::size_t i = 1; i <= mu.length(); ++i)
        if (lam.part(i) < mu.part(i)) return false;
    return true;
}

double skew_schur_one(const Partition& lam, const Partition& mu, double x) {
    if (!interlaces(lam, mu)) return 0.0;
    return std::pow(x, static_cast<double>(lam.weight() - mu.weight()));
}

double skew_schur_multi(const Partition& lam, const Partition& mu, const std::vector<double>& xs) {
    if (!contains(lam, mu)) return 0.0;
    const std::size_t n = xs.size();
    if (n == 0) return lam == mu ? 1.0 : 0.0;
    const Parts& L = lam.parts();
    std::map<Parts, double> cur{{mu.parts(), 1.0}};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t rem = n - 1 - j;
        std::map<Parts, double> next;
        for (const auto& [kappa, w] : cur) {
            // kappa <= nu <= lam with kappa interlaced by nu and lam_{i+rem} <= nu_i
            Parts nu;
            const std::size_t max_len = std::min(kappa.size() + 1, L.size());
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i > max_len) {
                    Parts out = nu;
                    trim(out);
                    const double diff = static_cast<double>(std::accumulate(out.begin(), out.end(), std::int64_t{0}) -
                                                            std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0}));
                    next[out] += w * std::pow(xs[j], diff);
                    return;
                }
                const std::int64_t lo = std::max(at(kappa, i), at(L, i + rem));
                std::int64_t hi = std::min(at(L, i), i == 1 ? std::numeric_limits<std::int64_t>::max() : at(kappa, i - 1));
                if (!nu.empty()) hi = std::min(hi, nu.back());
                for (std::int64_t v = lo; v <= hi; ++v) {
                    nu.push_back(v);
                    rec(i + 1);
                    nu.pop_back();
                }
            };
            // parts beyond max_len must be forced to zero
            bool ok = true;
            for (std::size_t i = max_len + 1; i <= L.size(); ++i)
                if (at(L, i + rem) > 0 || at(kappa, i) > 0) ok = false;
            if (ok) rec(1);
        }
        cur = std::move(next);
    }
    auto it = cur.find(L);
    return it == cur.end() ? 0.0 : it->second;
}

double schur_process_weight(const PartitionSequence& seq, const std::vector<double>& X,
                            const std::vector<double>& Y) {
    if (seq.size() != X.size()) throw Error(ErrorCode::InvalidParams, "sequence length must equal |X|");
    check_pair(X, Y);
    double w = 1.0;
    for (double x : X)
        for (double y : Y) w *= 1.0 - x * y;
    Partition prev;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        w *= skew_schur_one(seq[i], prev, X[i]);
        if (w == 0.0) return 0.0;
        prev = seq[i];
    }
    return w * skew_schur_multi(prev, Partition{}, Y);
}

SupportEnumeration enumerate_support(std::size_t M, const std::vector<double>& X, const std::vector<double>& Y,
                                     std::int64_t cap, std::size_t node_budget) {
    if (X.size() != M) throw Error(ErrorCode::InvalidParams, "|X| must equal M");
    check_pair(X, Y);
    const std::size_t N = Y.size();
    double pref = 1.0;
    for (double x : X)
        for (double y : Y) pref *= 1.0 - x * y;

    SupportEnumeration out;
    std::map<Parts, double> top_cache;
    std::size_t nodes = 0;
    PartitionSequence seq;
    double total = 0.0;

    std::function<void(std::size_t, const Parts&, double)> level = [&](std::size_t i, const Parts& kappa, double w) {
        if (++nodes > node_budget) throw Error(ErrorCode::CapTooLarge, "enumeration exceeded node budget");
        if (i > M) {
            auto it = top_cache.find(kappa);
            if (it == top_cache.end())
                it = top_cache.emplace(kappa, skew_schur_multi(Partition(kappa), Partition{}, Y)).first;
            const double prob = w * it->second;
            out.states.emplace_back(seq, prob);
            total += prob;
            return;
        }
        const std::size_t max_len = std::min({kappa.size() + 1, i, N});
        Parts nu;
        std::function<void(std::size_t)> rec = [&](std::size_t r) {
            if (r > max_len) {
                Parts v = nu;
                trim(v);
                const double d = static_cast<double>(std::accumulate(v.begin(), v.end(), std::int64_t{0}) -
                                                     std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0}));
                seq.push_back(Partition(v));
                level(i + 1, v, w * std::pow(X[i - 1], d));
                seq.pop_back();
                return;
            }
            const std::int64_t lo = at(kappa, r);
            std::int64_t hi = r == 1 ? cap : at(kappa, r - 1);
            if (!nu.empty()) hi = std::min(hi, nu.back());
            for (std::int64_t v = lo; v <= hi; ++v) {
                nu.push_back(v);
                rec(r + 1);
                nu.pop_back();
            }
        };
        if (kappa.size() > max_len) return;
        rec(1);
    };
    level(1, Parts{}, pref);
    out.tail = std::max(0.0, 1.0 - total);
    return out;
}

std::string sequence_key(const PartitionSequence& seq) {
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ";";
        s += to_string(seq[i]);
    }
    return s;
}

}  // namespace wanderer
