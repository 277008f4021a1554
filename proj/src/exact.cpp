#include "qdouble/exact.hpp"

#include <numeric>

namespace qdouble::exact {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    factors.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::domain_error("no primitive root found");
}

std::vector<long long> primitive_integer_vector(const std::vector<Rational>& v) {
  BigInt lcm = 1;
  for (const auto& x : v) {
    BigInt d = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt k = boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x));
    ints.push_back(k);
    g = boost::multiprecision::gcd(g, k);
  }
  std::vector<long long> out;
  if (g == 0) return std::vector<long long>(v.size(), 0);
  int sign = 0;
  for (const auto& k : ints)
    if (k != 0) {
      sign = k > 0 ? 1 : -1;
      break;
    }
  for (const auto& k : ints) out.push_back(static_cast<long long>(k / g) * sign);
  return out;
}

}  // namespace qdouble::exact
