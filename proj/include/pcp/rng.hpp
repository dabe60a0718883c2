#ifndef PCP_RNG_HPP
#define PCP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace pcp {

/// Deterministic 64-bit generator (SplitMix64). Unlike the standard
/// library engines, its output (including the Gaussian variates below)
/// is byte-identical across platforms and standard library
/// implementations, which the benchmark CSVs rely on.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

    /// Standard normal via the polar (Marsaglia) method.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Independent stream derived from this seed and a stream index.
    Rng split(uint64_t stream) const {
        Rng mix(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        mix.next_u64();
        return Rng(mix.next_u64());
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace pcp

#endif
