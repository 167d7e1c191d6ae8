#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "numera/errors.hpp"
#include "numera/rational.hpp"

namespace numera {

/// Dense univariate polynomial over the rationals, coefficients stored
/// from the constant term up, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rat c) { coef_.push_back(std::move(c)); normalize(); }
  explicit Poly(std::vector<Rat> coef) : coef_(std::move(coef)) { normalize(); }

  static Poly x() { return Poly({Rat(0), Rat(1)}); }
  static Poly from_ints(const std::vector<long>& cs) {
    std::vector<Rat> v;
    v.reserve(cs.size());
    for (long c : cs) v.emplace_back(c);
    return Poly(std::move(v));
  }

  bool is_zero() const { return coef_.empty(); }
  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<Rat>& coef() const { return coef_; }
  const Rat& operator[](std::size_t i) const { return coef_[i]; }
  const Rat& lead() const { return coef_.back(); }

  bool operator==(const Poly& o) const { return coef_ == o.coef_; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.coef_.size(), b.coef_.size()), Rat(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
    for (std::size_t i = 0; i < b.coef_.size(); ++i) v[i] += b.coef_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> v(a.coef_.size() + b.coef_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      for (std::size_t j = 0; j < b.coef_.size(); ++j)
        v[i + j] += a.coef_[i] * b.coef_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& a, const Rat& s) {
    Poly r = a;
    for (auto& c : r.coef_) c *= s;
    r.normalize();
    return r;
  }

  /// Euclidean division; returns (quotient, remainder).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    std::vector<Rat> rem = a.coef_;
    std::vector<Rat> quo(
        a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, Rat(0));
    const int db = b.degree();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
      if (rem[i] == 0) continue;
      Rat f = rem[i] / b.lead();
      quo[i - db] = f;
      for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coef_[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  Poly derivative() const {
    if (coef_.size() <= 1) return Poly();
    std::vector<Rat> v(coef_.size() - 1);
    for (std::size_t i = 1; i < coef_.size(); ++i)
      v[i - 1] = coef_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(v));
  }

  Rat eval(const Rat& x) const {
    Rat r(0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Interval Horner evaluation: encloses p([lo,hi]).
  std::pair<Rat, Rat> eval_interval(const Rat& lo, const Rat& hi) const {
    Rat L(0), H(0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
      Rat a = L * lo, b = L * hi, c = H * lo, d = H * hi;
      L = std::min(std::min(a, b), std::min(c, d)) + *it;
      H = std::max(std::max(a, b), std::max(c, d)) + *it;
    }
    return {L, H};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lead());
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Largest squarefree divisor (same set of roots, all simple).
  Poly squarefree_part() const {
    if (degree() <= 0) return monic();
    Poly g = gcd(*this, derivative());
    if (g.degree() == 0) return monic();
    return divmod(*this, g).first.monic();
  }

  /// Primitive integer scalar multiple with positive leading coefficient.
  std::vector<Int> primitive_ints() const {
    Int den(1);
    for (const auto& c : coef_) {
      Int d;
      mpz_lcm(d.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      den = d;
    }
    std::vector<Int> out;
    out.reserve(coef_.size());
    Int content(0);
    for (const auto& c : coef_) {
      Int v = c.get_num() * (den / c.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
      out.push_back(v);
    }
    if (content != 0)
      for (auto& v : out) v /= content;
    if (!out.empty() && out.back() < 0)
      for (auto& v : out) v = -v;
    return out;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rat& c = coef_[i];
      if (c == 0) continue;
      if (!s.empty()) s += (c > 0) ? " + " : " - ";
      else if (c < 0) s += "-";
      Rat a = abs(c);
      bool unit = (a == 1 && i > 0);
      if (!unit) s += rat_str(a);
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void normalize() {
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
  }
  std::vector<Rat> coef_;
};

/// Sturm chain of a squarefree polynomial; counts distinct real roots.
class SturmChain {
 public:
  explicit SturmChain(const Poly& p) {
    chain_.push_back(p);
    if (p.degree() >= 1) {
      chain_.push_back(p.derivative());
      while (chain_.back().degree() >= 1) {
        Poly r = -Poly::divmod(chain_[chain_.size() - 2], chain_.back()).second;
        if (r.is_zero()) break;
        chain_.push_back(std::move(r));
      }
    }
  }

  int variations_at(const Rat& x) const {
    int v = 0, prev = 0;
    for (const auto& p : chain_) {
      Rat val = p.eval(x);
      int s = sgn(val);
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  }

  /// Number of distinct roots in the half-open interval (lo, hi].
  int count_roots(const Rat& lo, const Rat& hi) const {
    return variations_at(lo) - variations_at(hi);
  }

 private:
  static int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }
  std::vector<Poly> chain_;
};

/// Cauchy root bound: all real roots lie in [-B, B].
inline Rat cauchy_bound(const Poly& p) {
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rat(abs(p[i])));
  return Rat(1) + m / Rat(abs(p.lead()));
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<Poly, Poly, Poly> poly_xgcd(Poly a, Poly b) {
  Poly s0(Rat(1)), s1, t0, t1(Rat(1));
  while (!b.is_zero()) {
    auto [q, r] = Poly::divmod(a, b);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!a.is_zero()) {
    Rat inv = Rat(1) / a.lead();
    return {a * inv, s0 * inv, t0 * inv};
  }
  return {a, s0, t0};
}

}  // namespace numera
