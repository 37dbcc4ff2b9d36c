#pragma once

#include <cstdint>
#include <string_view>

namespace ccc {

// Deterministic, implementation-pinned RNG (splitmix64 stream). All randomized
// code in this library goes through this class so results are reproducible
// across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, bound), bound >= 1
    int next_below(int bound) {
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
        return static_cast<int>(wide >> 64);
    }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view s);

// Stable sub-seed derivation: one experiment seed_base reproduces every
// instance, solve and trial. derive_seed(base, role, index) is pure.
std::uint64_t derive_seed(std::uint64_t base, std::string_view role, std::uint64_t index);

}  // namespace ccc
