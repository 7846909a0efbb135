#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace shadowlab {

// Splittable counter-based generator. The core mixer is SplitMix64
// (Steele/Lea/Flood): output_i = mix(seed + (i+1)*GAMMA). Streams are derived
// by hashing a label into the seed, so (master_seed, label) reproduces the
// same stream bit-exactly on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    SeededRng(std::uint64_t master_seed, std::string_view label)
        : state_(mix(master_seed ^ fnv1a(label))) {}

    /// Independent child stream for a labelled subtask.
    SeededRng stream(std::string_view label) const {
        return SeededRng(mix(state_ ^ fnv1a(label)));
    }

    /// Child stream indexed by a counter (e.g. trial number).
    SeededRng stream(std::uint64_t index) const {
        return SeededRng(mix(state_ ^ mix(index + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    /// Standard normal via the polar (Marsaglia) method.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = next_symmetric();
            v = next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    std::uint64_t state() const { return state_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace shadowlab
