#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace scenesmith {

// splitmix64; used for seeding and for mixing (master_seed, frame_index)
// into independent per-frame streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t frame_seed(std::uint64_t master_seed, std::uint64_t frame_index) {
    return mix64(master_seed + 0x9E3779B97F4A7C15ull * (frame_index + 1));
}

// PCG32: explicit value-type generator so sampling stays a pure function of
// its seed. Identical output on every platform.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x853C49E6748FEA9Bull)
        : state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += mix64(seed);
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // uniform in [0, 1) with 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        std::uint32_t n = static_cast<std::uint32_t>(hi - lo + 1);
        std::uint32_t v = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(next_u32()) * n) >> 32);
        return lo + static_cast<int>(v);
    }

    // size_t variant for container indexing
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<std::uint64_t>(next_u32()) * n) >> 32);
    }

    // Box-Muller-free normal is not needed; tests use a polar-method helper.
    double normal() {
        // rational approximation of the inverse CDF (Acklam); plenty for
        // test-noise purposes and fully deterministic
        double u = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        if (u >= 1.0) u = 1.0 - 0x1.0p-53;
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
        static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
        const double plow = 0.02425, phigh = 1 - plow;
        double q, r;
        if (u < plow) {
            q = std::sqrt(-2 * std::log(u));
            return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
        }
        if (u <= phigh) {
            q = u - 0.5;
            r = q * q;
            return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
                   (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
        }
        q = std::sqrt(-2 * std::log(1 - u));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace scenesmith
