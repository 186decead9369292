#ifndef WANDERER_TESTS_GEN_HPP
#define WANDERER_TESTS_GEN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "wanderer/partition.hpp"
#include "wanderer/trunc_geom.hpp"

namespace gen {

// Small hand-rolled generator set for property tests. Every case is reproducible
// from (seed, case index).
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

    // open (0,1), including values pressed against both ends
    double unit() {
        switch (integer(0, 9)) {
            case 0: return std::ldexp(1.0, -static_cast<int>(integer(1, 60)));
            case 1: return 1.0 - std::ldexp(1.0, -static_cast<int>(integer(1, 52)));
            default: {
                double u = 0.0;
                while (u <= 0.0 || u >= 1.0) u = uniform(0.0, 1.0);
                return u;
            }
        }
    }

    double ratio() {
        switch (integer(0, 7)) {
            case 0: return 0.0;
            case 1: return uniform(0.95, 0.9999);
            case 2: return uniform(0.0, 1e-3);
            default: return uniform(0.0, 0.95);
        }
    }

    wanderer::TruncGeom trunc_geom() {
        wanderer::TruncGeom d;
        d.a = integer(-20, 20);
        if (coin(0.7)) d.b = d.a + integer(0, 40);
        d.q = ratio();
        return d;
    }

    std::vector<double> decreasing(std::size_t max_len, double hi) {
        std::vector<double> v(static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_len))));
        for (double& x : v) x = uniform(0.05, hi);
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    }

    wanderer::Partition partition(std::size_t max_len, std::int64_t max_part) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_len))));
        for (auto& x : v) x = integer(0, max_part);
        std::sort(v.begin(), v.end(), std::greater<>());
        return wanderer::Partition(v);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Runs prop on `cases` generated cases; the case seed is reported on failure by the caller.
inline void for_all(std::uint64_t seed, std::size_t cases, const std::function<void(Gen&, std::size_t)>& prop) {
    for (std::size_t c = 0; c < cases; ++c) {
        Gen g(seed * 1000003ULL + c);
        prop(g, c);
    }
}

}  // namespace gen

#endif
