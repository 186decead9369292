#ifndef WANDERER_NOISE_HPP
#define WANDERER_NOISE_HPP

#include <cstdint>

namespace wanderer {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// seed for replicate r of a run with base seed s
inline std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t r) {
    return mix64(mix64(base ^ 0x6a09e667f3bcc909ULL) + r * 0x9e3779b97f4a7c15ULL);
}

// Random-access uniforms U(n, m, k) on (0,1). Offsets realize the shifted field
// U(n + dn, m + dm, k + dk) used by the monotone coupling.
class NoiseField {
public:
    explicit NoiseField(std::uint64_t seed = 0) : seed_(seed), key_(mix64(seed ^ 0x243f6a8885a308d3ULL)) {}

    std::uint64_t seed() const { return seed_; }

    NoiseField shifted(std::int64_t dn, std::int64_t dm, std::int64_t dk) const {
        NoiseField f = *this;
        f.dn_ += dn;
        f.dm_ += dm;
        f.dk_ += dk;
        return f;
    }

    std::uint64_t bits(std::int64_t n, std::int64_t m, std::int64_t k) const { return bits_in(cell(n, m), k); }

    // hash of the (n, m) prefix, so that several k at one cell share it
    std::uint64_t cell(std::int64_t n, std::int64_t m) const {
        const std::uint64_t h = mix64(key_ ^ (static_cast<std::uint64_t>(n + dn_) * 0x9e3779b97f4a7c15ULL));
        return mix64(h ^ (static_cast<std::uint64_t>(m + dm_) * 0xc2b2ae3d27d4eb4fULL));
    }
    std::uint64_t bits_in(std::uint64_t cell, std::int64_t k) const {
        return mix64(cell ^ (static_cast<std::uint64_t>(k + dk_) * 0x165667b19e3779f9ULL));
    }

    // (j + 1/2) 2^-53 for a 53-bit j: never 0 or 1
    double operator()(std::int64_t n, std::int64_t m, std::int64_t k) const { return uniform_in(cell(n, m), k); }
    double uniform_in(std::uint64_t cell, std::int64_t k) const {
        return (static_cast<double>(bits_in(cell, k) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::int64_t dn_ = 0, dm_ = 0, dk_ = 0;
};

inline double noise_at(const NoiseField& f, std::int64_t n, std::int64_t m, std::int64_t k) { return f(n, m, k); }

}  // namespace wanderer

#endif
