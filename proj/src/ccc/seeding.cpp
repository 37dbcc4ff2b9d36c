#include "ccc/seeding.hpp"

namespace ccc {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view role, std::uint64_t index) {
    Rng rng(base ^ fnv1a64(role));
    std::uint64_t h = rng.next_u64();
    Rng rng2(h ^ (index * 0xd1342543de82ef95ULL + 1));
    return rng2.next_u64();
}

}  // namespace ccc
