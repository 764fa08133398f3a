#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace slidefuse {

/// mt19937_64 seeded through std::seed_seq from (seed, stream). Both the
/// engine and seed_seq are fully specified by the standard, so sequences are
/// identical across platforms and standard libraries.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream);

/// Uniform integer in [0, bound) by rejection sampling; bound > 0.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

/// Fisher-Yates shuffle driven by uniform_below. Unlike std::shuffle the
/// resulting permutation does not depend on the standard library.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace slidefuse
