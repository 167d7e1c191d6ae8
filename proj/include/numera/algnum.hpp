#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "numera/errors.hpp"
#include "numera/poly.hpp"
#include "numera/rational.hpp"

namespace numera {

class AlgNum;

/// A number field presentation Q[x]/(modulus) together with an isolating
/// interval selecting one real root.  The modulus must be squarefree but
/// may be reducible; all value decisions go through the selected root.
class AlgField {
 public:
  struct Data {
    Poly modulus;       // squarefree, monic
    SturmChain sturm;   // of the modulus
    Rat lo, hi;         // open isolating interval, endpoints not roots
    Data(Poly m, Rat l, Rat h)
        : modulus(std::move(m)), sturm(modulus), lo(std::move(l)),
          hi(std::move(h)) {}
  };

  AlgField() = default;

  static AlgField make(const Poly& modulus, Rat lo, Rat hi) {
    Poly m = modulus.monic();
    if (m.degree() < 1) throw NotSquarefreeError("modulus must be nonconstant");
    if (Poly::gcd(m, m.derivative()).degree() != 0)
      throw NotSquarefreeError("modulus is not squarefree: " + m.str());
    // Nudge endpoints off roots so (lo, hi] counting is unambiguous.
    while (m.eval(lo) == 0) lo -= (hi - lo) / 16;
    while (m.eval(hi) == 0) hi += (hi - lo) / 16;
    auto data = std::make_shared<Data>(std::move(m), lo, hi);
    if (data->sturm.count_roots(data->lo, data->hi) != 1)
      throw IsolationError("interval does not isolate exactly one root");
    AlgField f;
    f.data_ = std::move(data);
    f.tighten(128);
    return f;
  }

  /// The rational numbers, presented as Q[x]/(x - r).
  static AlgField rationals(const Rat& r = Rat(0)) {
    return make(Poly({-r, Rat(1)}), r - 1, r + 1);
  }

  bool valid() const { return static_cast<bool>(data_); }
  int degree() const { return data_->modulus.degree(); }
  const Poly& modulus() const { return data_->modulus; }
  std::pair<Rat, Rat> iso() const { return {data_->lo, data_->hi}; }
  bool same(const AlgField& o) const { return data_ == o.data_; }

  inline AlgNum element(Poly residue) const;
  inline AlgNum from_rat(const Rat& r) const;
  inline AlgNum zero() const;
  inline AlgNum one() const;
  /// The selected root itself.
  inline AlgNum root() const;

  /// Bisects the stored isolating interval up to `steps` times, keeping
  /// the half that contains the selected root.
  void tighten(int steps) const {
    for (int i = 0; i < steps; ++i) {
      Rat mid = (data_->lo + data_->hi) / 2;
      if (data_->modulus.eval(mid) == 0) {
        // root is rational and equal to mid; shrink symmetrically
        Rat w = (data_->hi - data_->lo) / 4;
        data_->lo = mid - w;
        data_->hi = mid + w;
        continue;
      }
      if (data_->sturm.count_roots(data_->lo, mid) == 1)
        data_->hi = mid;
      else
        data_->lo = mid;
    }
  }

  const std::shared_ptr<Data>& data() const { return data_; }

 private:
  std::shared_ptr<Data> data_;
};

/// An element of Q(theta): a residue polynomial evaluated at the selected
/// root of the field modulus.
class AlgNum {
 public:
  AlgNum() = default;
  AlgNum(AlgField field, Poly residue)
      : field_(std::move(field)),
        residue_(Poly::divmod(std::move(residue), field_.modulus()).second) {}

  const AlgField& field() const { return field_; }
  const Poly& residue() const { return residue_; }
  bool is_rational() const { return residue_.degree() <= 0; }
  /// Only valid when the residue is constant.
  Rat rat_value() const {
    return residue_.is_zero() ? Rat(0) : residue_[0];
  }

  friend AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    a.check(b);
    return AlgNum(a.field_, a.residue_ + b.residue_);
  }
  friend AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    a.check(b);
    return AlgNum(a.field_, a.residue_ - b.residue_);
  }
  AlgNum operator-() const { return AlgNum(field_, -residue_); }
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    a.check(b);
    return AlgNum(a.field_, a.residue_ * b.residue_);
  }
  friend AlgNum operator*(const AlgNum& a, const Rat& s) {
    return AlgNum(a.field_, a.residue_ * s);
  }
  friend AlgNum operator/(const AlgNum& a, const AlgNum& b) {
    a.check(b);
    return a * b.inverse();
  }

  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

  /// Multiplicative inverse of the value.  When the modulus is reducible
  /// the inversion happens modulo the factor that carries the root.
  AlgNum inverse() const {
    if (residue_.is_zero()) throw DivisionByZeroError("1/0 in Q(theta)");
    Poly mod = field_.modulus();
    Poly res = residue_;
    for (;;) {
      auto [g, s, t] = poly_xgcd(res, mod);
      if (g.degree() == 0) return AlgNum(field_, s);
      if (root_of(g)) throw DivisionByZeroError("division by value zero");
      // the root lives in the cofactor; invert there
      mod = Poly::divmod(mod, g).first;
      res = Poly::divmod(res, mod).second;
      if (res.is_zero()) throw DivisionByZeroError("division by value zero");
    }
  }

  int sign() const {
    if (residue_.is_zero()) return 0;
    if (residue_.degree() == 0) return residue_[0] > 0 ? 1 : -1;
    Poly g = Poly::gcd(residue_, field_.modulus());
    if (g.degree() >= 1 && root_of(g)) return 0;
    // value is nonzero; refine until the interval enclosure decides
    auto [lo, hi] = field_.iso();
    const auto& sturm = *&field_.data()->sturm;
    const Poly& modulus = field_.modulus();
    for (;;) {
      auto [L, H] = residue_.eval_interval(lo, hi);
      if (L > 0) return 1;
      if (H < 0) return -1;
      Rat mid = (lo + hi) / 2;
      if (modulus.eval(mid) == 0) {
        Rat v = residue_.eval(mid);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
      }
      if (sturm.count_roots(lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
  }

  bool is_zero_value() const { return sign() == 0; }

  friend int compare(const AlgNum& a, const AlgNum& b) {
    if (a.residue_ == b.residue_) return 0;
    return (a - b).sign();
  }
  friend bool operator==(const AlgNum& a, const AlgNum& b) {
    return compare(a, b) == 0;
  }
  friend bool operator<(const AlgNum& a, const AlgNum& b) {
    return compare(a, b) < 0;
  }
  friend bool operator<=(const AlgNum& a, const AlgNum& b) {
    return compare(a, b) <= 0;
  }

  /// Rational enclosure of the value with width at most `eps`.
  std::pair<Rat, Rat> enclosure(const Rat& eps) const {
    auto [lo, hi] = field_.iso();
    const auto& sturm = field_.data()->sturm;
    const Poly& modulus = field_.modulus();
    for (;;) {
      auto [L, H] = residue_.eval_interval(lo, hi);
      if (H - L <= eps) return {L, H};
      Rat mid = (lo + hi) / 2;
      if (modulus.eval(mid) == 0) {
        Rat v = residue_.eval(mid);
        return {v, v};
      }
      if (sturm.count_roots(lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
  }

  double approx() const {
    if (is_rational()) return rat_value().get_d();
    auto [L, H] = enclosure(Rat(1, 1000000000000000000L));
    return Rat((L + H) / 2).get_d();
  }

  /// Largest integer not exceeding the value, decided exactly.
  Int floor_value() const {
    auto [L, H] = enclosure(Rat(1, 4));
    Int c = floor_rat(L);
    AlgNum next = *this - field_.from_rat(Rat(c) + 1);
    return next.sign() >= 0 ? c + 1 : c;
  }

  /// Correctly rounded decimal string (round half away from zero).
  std::string to_decimal(int digits) const {
    Int scale = pow_int(Int(10), static_cast<unsigned long>(digits));
    AlgNum scaled = *this * Rat(scale) + field_.from_rat(Rat(1, 2));
    Int n = scaled.floor_value();
    bool neg = n < 0;
    Int m = neg ? Int(-n) : n;
    std::string frac = m.get_str();
    std::string whole = "0";
    if (static_cast<int>(frac.size()) > digits) {
      whole = frac.substr(0, frac.size() - digits);
      frac = frac.substr(frac.size() - digits);
    } else {
      frac = std::string(digits - frac.size(), '0') + frac;
    }
    std::string s = (neg ? "-" : "") + whole;
    if (digits > 0) s += "." + frac;
    return s;
  }

  friend AlgNum operator+(const AlgNum& a, const Rat& r) {
    return a + a.field_.from_rat(r);
  }
  friend AlgNum operator-(const AlgNum& a, const Rat& r) {
    return a - a.field_.from_rat(r);
  }

  std::string serialize(int digits = 12) const {
    auto join = [](const std::vector<Rat>& cs) {
      std::string s = "[";
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += rat_str(cs[i]);
      }
      return s + "]";
    };
    auto [lo, hi] = field_.iso();
    return "poly:" + join(residue_.coef()) + " field:" +
           join(field_.modulus().coef()) + " iso:(" + rat_str(lo) + "," +
           rat_str(hi) + ") ~" + to_decimal(digits);
  }

 private:
  void check(const AlgNum& o) const {
    if (!field_.same(o.field_))
      throw DomainError("mixing elements of different fields");
  }
  /// Does the selected root satisfy g?  (g divides the modulus.)
  bool root_of(const Poly& g) const {
    auto [lo, hi] = field_.iso();
    if (g.degree() < 1) return false;
    SturmChain sc(g);
    return sc.count_roots(lo, hi) > 0;
  }

  AlgField field_;
  Poly residue_;
};

inline AlgNum AlgField::element(Poly residue) const {
  return AlgNum(*this, std::move(residue));
}
inline AlgNum AlgField::from_rat(const Rat& r) const {
  return AlgNum(*this, Poly(r));
}
inline AlgNum AlgField::zero() const { return from_rat(Rat(0)); }
inline AlgNum AlgField::one() const { return from_rat(Rat(1)); }
inline AlgNum AlgField::root() const { return AlgNum(*this, Poly::x()); }

}  // namespace numera
