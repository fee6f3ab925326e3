#pragma once

// Exact arithmetic aliases and small numeric helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace relopt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline int sign_of(const Int& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }
inline int sign_of(const Rat& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

}  // namespace relopt
