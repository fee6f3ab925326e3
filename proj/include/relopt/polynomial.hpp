#pragma once

// Dense integer polynomials with exact root isolation on (0,1).
//
// Root counting uses Sturm sequences built from a primitive pseudo-remainder
// chain, so every step stays in integers. Isolating intervals are bisected to
// dyadic rational endpoints until each contains exactly one distinct root.

#include <algorithm>
#include <utility>
#include <vector>

#include "relopt/numbers.hpp"

namespace relopt {

// coefficients ascending: p(x) = c[0] + c[1] x + ...
using Poly = std::vector<Int>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline bool poly_is_zero(const Poly& p) { return p.empty(); }

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

inline Poly poly_scale(const Poly& a, const Int& s) {
  Poly r = a;
  for (Int& c : r) c *= s;
  poly_trim(r);
  return r;
}

inline Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Int(i);
  poly_trim(r);
  return r;
}

inline Rat poly_eval(const Poly& a, const Rat& x) {
  Rat r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + Rat(a[i]);
  return r;
}

inline Int poly_content(const Poly& a) {
  Int g = 0;
  for (const Int& c : a) g = boost::multiprecision::gcd(g, c);
  return g;
}

inline Poly poly_primitive(Poly a) {
  Int g = poly_content(a);
  if (g > 1)
    for (Int& c : a) c /= g;
  return a;
}

// primitive pseudo-remainder of a by b (deg a >= deg b >= 0)
inline Poly poly_prem(Poly a, const Poly& b) {
  const Int lead = b.back();
  while (!a.empty() && poly_deg(a) >= poly_deg(b)) {
    int shift = poly_deg(a) - poly_deg(b);
    Int coef = a.back();
    for (Int& c : a) c *= lead;
    for (size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= coef * b[i];
    poly_trim(a);
  }
  return poly_primitive(std::move(a));
}

inline std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq;
  Poly a = poly_primitive(p);
  if (poly_is_zero(a)) return seq;
  seq.push_back(a);
  Poly b = poly_primitive(poly_derivative(a));
  while (!poly_is_zero(b)) {
    seq.push_back(b);
    Poly r = poly_prem(seq[seq.size() - 2], b);
    for (Int& c : r) c = -c;
    b = std::move(r);
  }
  return seq;
}

inline int sturm_variations(const std::vector<Poly>& seq, const Rat& x) {
  int var = 0, prev = 0;
  for (const Poly& p : seq) {
    int s = sign_of(poly_eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// number of distinct roots in the half-open interval(lo, hi]
inline int sturm_count(const std::vector<Poly>& seq, const Rat& lo, const Rat& hi) {
  if (seq.empty()) return 0;
  return sturm_variations(seq, lo) - sturm_variations(seq, hi);
}

struct RootInterval {
  Rat lo, hi;        // dyadic endpoints, exactly one distinct root inside
  bool sign_change;  // p changes sign over [lo, hi]
};

// Distinct roots of p strictly inside (0,1), each isolated in an interval
// whose endpoints are not roots.
inline std::vector<RootInterval> isolate_roots_01(const Poly& p_in) {
  std::vector<RootInterval> out;
  Poly p = p_in;
  poly_trim(p);
  if (poly_is_zero(p)) return out;
  // strip factors of x and (x-1); they only carry roots at the endpoints
  size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  p.erase(p.begin(), p.begin() + low);
  Rat one = 1;
  while (!p.empty() && poly_eval(p, one) == 0) {
    // divide by (x - 1)
    Poly q(p.size() - 1);
    Int carry = 0;
    for (size_t i = p.size(); i-- > 1;) {
      carry += p[i];
      q[i - 1] = carry;
    }
    p = std::move(q);
    poly_trim(p);
  }
  if (poly_deg(p) < 1) return out;
  auto seq = sturm_sequence(p);
  struct Span {
    Rat lo, hi;
    int count;
  };
  std::vector<Span> work;
  int total = sturm_count(seq, Rat(0), Rat(1));
  if (total == 0) return out;
  work.push_back({Rat(0), Rat(1), total});
  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      // shrink until both endpoints are strictly interior non-root dyadics,
      // then record the sign behavior
      Rat lo = s.lo, hi = s.hi;
      while (lo == 0 || hi == 1 || poly_eval(p, lo) == 0 ||
             poly_eval(p, hi) == 0) {
        Rat mid = (lo + hi) / 2;
        while (poly_eval(p, mid) == 0) mid = (lo + mid) / 2;
        if (sturm_count(seq, lo, mid) == 1)
          hi = mid;
        else
          lo = mid;
      }
      int sl = sign_of(poly_eval(p, lo));
      int sh = sign_of(poly_eval(p, hi));
      out.push_back({lo, hi, sl != sh});
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    while (poly_eval(p, mid) == 0) mid = (s.lo + mid) / 2;
    int left = sturm_count(seq, s.lo, mid);
    work.push_back({s.lo, mid, left});
    work.push_back({mid, s.hi, s.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace relopt
