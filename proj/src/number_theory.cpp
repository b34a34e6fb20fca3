#include "mhad/number_theory.hpp"

#include <algorithm>

#include "mhad/error.hpp"

namespace mhad {

std::int64_t euler_phi(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "euler_phi needs m >= 1");
  std::int64_t result = m;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m < 1 || exp < 0) throw Error(ErrorCode::InvalidArgument, "pow_mod needs m >= 1 and exp >= 0");
  std::int64_t result = 1 % m;
  std::int64_t b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return result;
}

std::vector<std::int64_t> squares_mod(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < m; ++x) out.push_back(x * x % m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mhad
