#pragma once

#include "mpmo/core.hpp"

#include <cstddef>
#include <random>

namespace mpmo {

/// One generator per run; every uniform choice draws from it.
using Rng = std::mt19937_64;

/// Uniform index in [0, n). `n` must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);

}  // namespace mpmo
