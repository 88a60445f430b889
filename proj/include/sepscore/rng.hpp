#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string_view>
#include <vector>

namespace sepscore {

/// SplitMix64 finalizer; full-avalanche mixing of a 64-bit word.
inline std::uint64_t mix_bits(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Derive an independent sub-seed from a master seed and a stream number.
/// Counter-based, so replicate r's stream never depends on how many other
/// replicates ran before it.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix_bits(mix_bits(master ^ 0x6A09E667F3BCC909ull) ^
                    mix_bits(stream ^ 0xBB67AE8584CAA73Bull));
}

/// Derive a sub-seed from a master seed and a label such as
/// "subsample/groupA". Stochastic operations key their streams on stable
/// labels so that adding a new operation never perturbs existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view path) {
    // FNV-1a over the label bytes, then mixed with the master seed.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : path) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return derive_seed(master, h);
}

/// Small deterministic generator used for every stochastic operation in the
/// library. The update and output rules are pinned here (rather than relying
/// on std::shuffle / std::normal_distribution, whose sequences are
/// implementation-defined) so seeded results are stable everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix_bits(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); unbiased via rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = (UINT64_MAX / n) * n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    /// Standard normal deviate (Box-Muller; the paired deviate is cached).
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi_v<double> * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

/// k distinct draws from {0..n-1}, returned sorted ascending.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace sepscore
