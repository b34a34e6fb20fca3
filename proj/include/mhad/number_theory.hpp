#pragma once

#include <cstdint>
#include <vector>

namespace mhad {

std::int64_t euler_phi(std::int64_t m);

// base^exp mod m for m >= 1, exp >= 0.
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

std::int64_t mod(std::int64_t x, std::int64_t m);

// Sorted distinct values of x^2 mod m.
std::vector<std::int64_t> squares_mod(std::int64_t m);

}  // namespace mhad
