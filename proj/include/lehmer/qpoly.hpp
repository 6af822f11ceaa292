#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lehmer/errors.hpp"

namespace lehmer {

// Dense integer polynomial in q.  Coefficients stay far below 2^63 in every
// computation here (they are bounded by group cardinalities); products still
// go through a checked accumulator.
struct QPoly {
  std::vector<long long> c;  // c[i] is the coefficient of q^i; no trailing zeros

  QPoly() = default;
  QPoly(std::initializer_list<long long> init) : c(init) { trim(); }
  explicit QPoly(std::vector<long long> v) : c(std::move(v)) { trim(); }

  static QPoly zero() { return QPoly(); }
  static QPoly one() { return QPoly{1}; }
  static QPoly monomial(long long coeff, int deg) {
    QPoly p;
    if (coeff != 0) {
      p.c.assign(deg + 1, 0);
      p.c[deg] = coeff;
    }
    return p;
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return int(c.size()) - 1; }  // -1 for the zero polynomial
  long long at(int i) const { return (i >= 0 && i < int(c.size())) ? c[i] : 0; }

  long long eval_at_one() const {
    long long s = 0;
    for (long long x : c) s += x;
    return s;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  auto operator<=>(const QPoly&) const = default;
};

inline QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(int(i)) + b.at(int(i));
  r.trim();
  return r;
}

inline QPoly operator-(const QPoly& a, const QPoly& b) {
  QPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(int(i)) - b.at(int(i));
  r.trim();
  return r;
}

inline QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly::zero();
  QPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      __int128 acc = (__int128)r.c[i + j] + (__int128)a.c[i] * b.c[j];
      if (acc > INT64_MAX || acc < INT64_MIN)
        throw Error(errc::structure_failure, "coefficient overflow in polynomial product");
      r.c[i + j] = (long long)acc;
    }
  }
  r.trim();
  return r;
}

inline QPoly& operator+=(QPoly& a, const QPoly& b) { return a = a + b; }
inline QPoly& operator*=(QPoly& a, const QPoly& b) { return a = a * b; }

// [n]_q = 1 + q + ... + q^(n-1); [0]_q = 0.
inline QPoly q_analog(int n) {
  QPoly p;
  p.c.assign(std::max(n, 0), 1);
  return p;
}

inline bool is_palindromic(const QPoly& p) {
  if (p.is_zero()) throw Error(errc::zero_polynomial, "palindromicity of the zero polynomial");
  int d = p.degree();
  for (int i = 0; 2 * i <= d; ++i)
    if (p.c[i] != p.c[d - i]) return false;
  return true;
}

// Exact division; nullopt when d does not divide p.
inline std::optional<QPoly> divide_exact(const QPoly& p, const QPoly& d) {
  if (d.is_zero()) return std::nullopt;
  if (p.is_zero()) return QPoly::zero();
  if (p.degree() < d.degree()) return std::nullopt;
  QPoly rem = p;
  std::vector<long long> q(p.degree() - d.degree() + 1, 0);
  long long lead = d.c.back();
  for (int i = p.degree() - d.degree(); i >= 0; --i) {
    long long top = rem.at(i + d.degree());
    if (top % lead != 0) return std::nullopt;
    long long coeff = top / lead;
    q[i] = coeff;
    if (coeff != 0)
      for (int j = 0; j <= d.degree(); ++j) {
        if (i + j >= int(rem.c.size())) rem.c.resize(i + j + 1, 0);
        rem.c[i + j] -= coeff * d.c[j];
      }
  }
  rem.trim();
  if (!rem.is_zero()) return std::nullopt;
  return QPoly(std::move(q));
}

// Greedy factorization of p into q-analogues, largest factor first; the
// returned list of n's is ascending.  Yields the exponents+1 multiset when p
// is the length generating function of a finite reflection group.
inline std::optional<std::vector<int>> factor_q_analogues(const QPoly& p) {
  if (p.is_zero() || p.c[0] != 1 || p.c.back() != 1) return std::nullopt;
  std::vector<int> ns;
  QPoly cur = p;
  while (cur.degree() > 0) {
    bool found = false;
    for (int n = cur.degree() + 1; n >= 2; --n) {
      if (auto q = divide_exact(cur, q_analog(n))) {
        ns.push_back(n);
        cur = *q;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  if (cur != QPoly::one()) return std::nullopt;
  std::sort(ns.begin(), ns.end());
  return ns;
}

// "1 + 3q + 6q^2" style rendering.
inline std::string to_string(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= p.degree(); ++i) {
    long long a = p.c[i];
    if (a == 0) continue;
    if (!out.empty()) out += (a > 0) ? " + " : " - ";
    else if (a < 0) out += "-";
    long long mag = a > 0 ? a : -a;
    if (i == 0) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag);
      out += "q";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace lehmer
