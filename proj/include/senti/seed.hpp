#pragma once

#include <cstdint>
#include <string_view>

namespace senti {

// All randomness in the pipeline flows from one master seed. Sub-seeds are
// derived by label so that independent stages (folds, per-tree bootstraps,
// sampling) never share a stream and the fan-out is stable across platforms.

// splitmix64 finalizer; full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// FNV-1a over the label bytes, then mixed with the master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return mix64(master ^ h);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
    return mix64(derive_seed(master, label) ^ mix64(index));
}

}  // namespace senti
