#pragma once

#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "numera/counting.hpp"
#include "numera/realline.hpp"

namespace numera {

// ---------------------------------------------------------------------------
// Greedy expansions of 1

/// Digits of the greedy base-theta expansion of 1, either finite
/// (t_1..t_m, t_m != 0) or ultimately periodic with preperiod N and
/// period p.  The comparison stream is e(1) when infinite and the
/// quasi-expansion e*(1) = (t_1..t_{m-1}(t_m - 1))^omega when finite.
struct ThetaExpansionOfOne {
  std::vector<long> digits;  // t_1..t_m (finite) or t_1..t_{N+p}
  bool finite = false;
  int preperiod_N = 0, period_p = 0;  // finite case: N = m, p = 0

  int stored() const { return static_cast<int>(digits.size()); }

  /// j-th digit (0-based) of the comparison / recurrence stream.
  long compare_at(std::size_t j) const {
    if (finite) {
      std::size_t m = digits.size();
      return digits[j % m] - (j % m == m - 1 ? 1 : 0);
    }
    if (j < digits.size()) return digits[j];
    std::size_t n = static_cast<std::size_t>(preperiod_N);
    return digits[n + (j - n) % period_p];
  }
};

inline ThetaExpansionOfOne theta_expansion_of_one(const AlgField& f,
                                                  int budget = 1000) {
  AlgNum theta = f.root();
  if ((theta - f.one()).sign() <= 0) throw DomainError("root must exceed 1");
  ThetaExpansionOfOne e;
  AlgNum r = f.one();
  std::vector<Poly> seen;  // remainder residues after each digit
  for (int i = 0; i < budget; ++i) {
    AlgNum tr = theta * r;
    Int d = tr.floor_value();
    e.digits.push_back(d.get_si());
    r = tr - f.from_rat(Rat(d));
    if (r.is_zero_value()) {
      e.finite = true;
      e.preperiod_N = static_cast<int>(e.digits.size());
      e.period_p = 0;
      return e;
    }
    for (std::size_t j = 0; j < seen.size(); ++j)
      if (seen[j] == r.residue()) {
        e.finite = false;
        e.preperiod_N = static_cast<int>(j) + 1;
        e.period_p = static_cast<int>(seen.size() - j);
        return e;
      }
    seen.push_back(r.residue());
  }
  throw NotEventuallyPeriodicWithinBudget(
      "expansion of 1 did not repeat within the budget");
}

/// Greedy base-theta digits of x in [0,1]; exactly n_digits digits, with
/// the first exact remainder repetition recorded when one occurs.
struct GreedyExpansion {
  std::vector<long> digits;
  bool up = false;
  int preperiod = 0, period = 0;
};

inline GreedyExpansion greedy_theta_expansion(const AlgNum& x,
                                              const AlgField& f,
                                              int n_digits) {
  if (x.sign() < 0 || (x - f.one()).sign() > 0)
    throw DomainError("point outside [0,1]");
  GreedyExpansion g;
  AlgNum theta = f.root(), r = x;
  std::vector<Poly> seen;
  for (int i = 0; i < n_digits; ++i) {
    if (!g.up) {
      for (std::size_t j = 0; j < seen.size(); ++j)
        if (seen[j] == r.residue()) {
          g.up = true;
          g.preperiod = static_cast<int>(j);
          g.period = static_cast<int>(seen.size() - j);
          break;
        }
      if (!g.up) seen.push_back(r.residue());
    }
    AlgNum tr = theta * r;
    Int d = tr.floor_value();
    g.digits.push_back(d.get_si());
    r = tr - f.from_rat(Rat(d));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Pisot certification

enum class PisotStatus { Pisot, NotPisot, Unknown };

namespace detail {
inline std::vector<std::complex<double>> durand_kerner(
    const std::vector<double>& monic) {  // coefficients low-to-high, lead 1
  const int n = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> z(n);
  std::complex<double> seed(0.4, 0.9), w(1, 0);
  for (int i = 0; i < n; ++i) {
    w *= seed;
    z[i] = w;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (int i = n; i >= 0; --i) r = r * x + monic[i];
    return r;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom(1, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}
}  // namespace detail

/// Is the selected root an algebraic integer > 1 whose other conjugates
/// all have modulus < 1?  Real conjugates are screened exactly with Sturm
/// counts; complex ones via certified numeric root bounds.  The stripped
/// modulus is assumed minimal for the root; when certification fails the
/// verdict is Unknown.
inline PisotStatus pisot_check(const AlgField& f) {
  Poly p = f.modulus().squarefree_part();
  auto [lo, hi] = f.iso();
  if (f.root().sign() <= 0 || (f.root() - f.one()).sign() <= 0)
    return PisotStatus::NotPisot;  // requires theta > 1
  // rational root in the isolating interval: theta itself is rational
  for (const Rat& r : detail::rational_roots(p))
    if (lo < r && r <= hi) {
      if (r.get_den() != 1) return PisotStatus::NotPisot;
      return r >= 2 ? PisotStatus::Pisot : PisotStatus::NotPisot;
    }
  // strip rational linear factors: they belong to other factors
  Poly q = p;
  for (const Rat& r : detail::rational_roots(p))
    q = Poly::divmod(q, Poly({-r, Rat(1)})).first;
  auto ints = q.primitive_ints();
  if (ints.back() != 1) return PisotStatus::Unknown;  // maybe not integral

  // exact screen for real conjugates of modulus >= 1
  SturmChain sturm(q);
  Rat bound = cauchy_bound(q);
  if (sturm.count_roots(Rat(1), bound) > 1) return PisotStatus::NotPisot;
  if (sturm.count_roots(-bound, Rat(-1)) > 0) return PisotStatus::NotPisot;
  int real_count = sturm.count_roots(-bound, bound);

  const int deg = q.degree();
  if (deg - real_count == 0) return PisotStatus::Pisot;  // all roots real, ok

  // complex conjugates: numeric roots with a posteriori certification
  std::vector<double> monic(deg + 1);
  for (int i = 0; i <= deg; ++i)
    monic[i] = (i <= q.degree() ? q[i].get_d() : 0.0);
  for (int i = 0; i <= deg; ++i) monic[i] /= q.lead().get_d();
  auto roots = detail::durand_kerner(monic);
  Poly dq = q.derivative();
  int certified_complex = 0;
  for (const auto& z : roots) {
    // certified distance to the nearest true root
    double num = 0, den = 0;
    {
      std::complex<double> pv = 0, dv = 0;
      for (int i = deg; i >= 0; --i) pv = pv * z + monic[i];
      for (int i = deg - 1; i >= 0; --i)
        dv = dv * z + monic[i + 1] * static_cast<double>(i + 1);
      num = std::abs(pv);
      den = std::abs(dv);
    }
    if (den == 0) return PisotStatus::Unknown;
    double err = deg * num / den;
    if (std::abs(z.imag()) <= err) continue;  // treated by the real screen
    ++certified_complex;
    if (std::abs(z) + err < 1.0) continue;
    if (std::abs(z) - err > 1.0) return PisotStatus::NotPisot;
    return PisotStatus::Unknown;  // too close to the unit circle to decide
  }
  if (certified_complex != deg - real_count) return PisotStatus::Unknown;
  return PisotStatus::Pisot;
}

// ---------------------------------------------------------------------------
// Bertrand systems

/// Positional numeration system built from the expansion of 1: the value
/// sequence U, the factor automaton A and the representation automaton
/// A' (A plus a fresh initial state rejecting leading zeroes).
struct BertrandSystem {
  AlgField field;
  ThetaExpansionOfOne expansion;
  Dfa a, a_prime;
  std::vector<Int> u_seq;        // U_0, U_1, ...
  std::vector<long> max_digit;   // per a_prime state: digit of the deepening
                                 // edge, or -1 when absent
};

inline BertrandSystem build_bertrand(const ThetaExpansionOfOne& e,
                                     const AlgField& f, int n_terms = 64) {
  BertrandSystem b;
  b.field = f;
  b.expansion = e;
  const int m = e.stored();  // states q_1..q_m
  if (m == 0) throw DomainError("empty expansion");

  // digit alphabet: every label that actually occurs on an edge
  long dmax = 0;
  for (int i = 0; i < m; ++i) {
    dmax = std::max(dmax, e.digits[i] - 1);       // fan-back edges
    bool deeper = !e.finite || i + 1 < m;         // t_i edge to q_{i+1}/wrap
    if (deeper) dmax = std::max(dmax, e.digits[i]);
  }
  std::vector<std::string> letters;
  for (long d = 0; d <= dmax; ++d) letters.push_back(std::to_string(d));
  Alphabet alpha(letters);

  // automaton A over states q_1..q_m
  Dfa a;
  a.alphabet = alpha;
  for (int i = 1; i <= m; ++i) a.add_state("q" + std::to_string(i), true);
  a.initial = 0;
  for (int i = 0; i < m; ++i) {
    for (long d = 0; d < e.digits[i]; ++d) a.delta[i][d] = 0;  // back to q_1
    if (!e.finite) {
      int next = (i + 1 < m) ? i + 1 : e.preperiod_N;  // wrap into the cycle
      a.delta[i][e.digits[i]] = next;
    } else if (i + 1 < m) {
      a.delta[i][e.digits[i]] = i + 1;
    }
  }
  b.a = a;

  // A': fresh initial state q_0, no leading zeroes, epsilon accepted
  Dfa ap;
  ap.alphabet = alpha;
  ap.add_state("q0", true);
  for (int i = 1; i <= m; ++i) ap.add_state("q" + std::to_string(i), true);
  ap.initial = 0;
  for (long d = 1; d < e.digits[0]; ++d) ap.delta[0][d] = 1;
  bool has_t1_edge = (!e.finite && m >= 1) || (e.finite && m >= 2);
  if (has_t1_edge && m >= 2) ap.delta[0][e.digits[0]] = 2;
  if (has_t1_edge && m == 1) ap.delta[0][e.digits[0]] = 1 + e.preperiod_N;
  for (int i = 0; i < m; ++i)
    for (int s = 0; s < alpha.size(); ++s)
      if (a.delta[i][s] != kSink) ap.delta[i + 1][s] = a.delta[i][s] + 1;
  b.a_prime = ap;

  b.max_digit.assign(ap.num_states(), -1);
  if (has_t1_edge) b.max_digit[0] = e.digits[0];
  for (int i = 0; i < m; ++i) {
    bool deeper = !e.finite || i + 1 < m;
    if (deeper) b.max_digit[i + 1] = e.digits[i];
  }

  // U_0 = 1, U_n = sum_k d_k U_{n-k} + 1 over the recurrence stream
  b.u_seq.push_back(1);
  for (int n = 1; n <= n_terms; ++n) {
    Int un = 1;
    for (int k = 1; k <= n; ++k)
      un += Int(e.compare_at(k - 1)) * b.u_seq[n - k];
    b.u_seq.push_back(un);
  }
  return b;
}

/// Closed-form interval of a left factor of L(A'), classified by whether
/// the walk keeps taking the deepening edge (three shapes).
inline std::pair<AlgNum, AlgNum> closed_form_interval(const BertrandSystem& b,
                                                      const Word& w) {
  const AlgField& f = b.field;
  AlgNum theta = f.root(), itheta = theta.inverse();
  int q = b.a_prime.initial;
  int last_free = -1;  // last position that did not take the deepening edge
  AlgNum low = f.zero(), pw = itheta;  // pw = theta^{-(i+1)}
  std::vector<AlgNum> pows;
  for (std::size_t i = 0; i < w.size(); ++i) {
    pows.push_back(pw);
    low += pw * Rat(static_cast<long>(w[i]));
    if (w[i] != b.max_digit[q]) last_free = static_cast<int>(i);
    q = b.a_prime.step(q, w[i]);
    if (q == kSink) throw NotALeftFactorError("not a left factor");
    pw *= itheta;
  }
  if (last_free == -1) return {low, f.one()};  // prefix of e(1)
  AlgNum up = f.zero();
  for (int i = 0; i <= last_free; ++i)
    up += pows[i] * Rat(static_cast<long>(w[i]));
  up += pows[last_free];
  return {low, up};
}

// ---------------------------------------------------------------------------
// Parry's lexicographic condition

/// Is every shift of the digit stream strictly lexicographically below
/// the comparison stream of the expansion of 1?
inline bool parry_check(const UpWord& s, const ThetaExpansionOfOne& e) {
  const int r2 = e.finite ? 0 : e.preperiod_N;
  const int p2 = e.finite ? e.stored() : e.period_p;
  const int shifts =
      static_cast<int>(s.preperiod.size() + s.period.size());
  for (int i = 0; i < shifts; ++i) {
    int r1 = std::max(0, static_cast<int>(s.preperiod.size()) - i);
    int p1 = static_cast<int>(s.period.size());
    long bound = std::max(r1, r2) + std::lcm(static_cast<long>(p1),
                                             static_cast<long>(p2));
    bool less = false;
    for (long j = 0; j < bound; ++j) {
      long d1 = s.at(static_cast<std::size_t>(i + j));
      long d2 = e.compare_at(static_cast<std::size_t>(j));
      if (d1 != d2) {
        less = d1 < d2;
        break;
      }
      if (j == bound - 1) less = false;  // streams equal: not strict
    }
    if (!less) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Equivalence of the abstract representation with greedy expansions

struct EquivReport {
  int samples_checked = 0;
  std::vector<std::string> digit_mismatches;
  int intervals_checked = 0;
  std::vector<std::string> interval_mismatches;

  bool ok() const {
    return digit_mismatches.empty() && interval_mismatches.empty();
  }
};

inline EquivReport equivalence_check(const BertrandSystem& b,
                                     const std::vector<AlgNum>& samples,
                                     int n_digits, int horizon = 120,
                                     int factor_len_max = 5) {
  EquivReport rep;
  // analyze the representation automaton over the caller's field, so that
  // samples and internal values live in one arithmetic domain
  AbstractSystem sys;
  sys.dfa = minimize(b.a_prime);
  sys.tables = count_u_v(sys.dfa, horizon);
  sys.growth = growth_profile(sys.dfa, sys.tables, b.field);
  const AlgField& f = b.field;
  AlgNum itheta = f.root().inverse();

  for (const AlgNum& x : samples) {
    ++rep.samples_checked;
    if ((x - itheta).sign() < 0 || (x - f.one()).sign() > 0) {
      rep.digit_mismatches.push_back("sample outside [1/theta,1]");
      continue;
    }
    GreedyExpansion gd = greedy_theta_expansion(x, f, n_digits);
    RepResult rr = represent(sys.growth, sys.dfa, x,
                             std::max(n_digits + 8, 64));
    for (int j = 0; j < n_digits; ++j) {
      long abstract = rr.status == RepStatus::UP
                          ? rr.word.at(static_cast<std::size_t>(j))
                          : (j < static_cast<int>(rr.prefix.size())
                                 ? rr.prefix[j]
                                 : -1);
      if (abstract != gd.digits[j]) {
        rep.digit_mismatches.push_back(
            "digit " + std::to_string(j) + ": greedy " +
            std::to_string(gd.digits[j]) + " vs abstract " +
            std::to_string(abstract));
        break;
      }
    }
  }

  // closed-form interval shapes vs the general formula
  std::vector<Word> stack{{}};
  for (std::size_t h = 0; h < stack.size(); ++h) {
    Word w = stack[h];
    if (!w.empty()) {
      ++rep.intervals_checked;
      auto [clo, chi] = closed_form_interval(b, w);
      IwInterval iw = interval_of_prefix(sys.growth, sys.dfa, w);
      if (compare(clo, iw.lower) != 0 || compare(chi, iw.upper) != 0)
        rep.interval_mismatches.push_back(
            "prefix " + b.a_prime.alphabet.word_str(w));
    }
    if (static_cast<int>(w.size()) < factor_len_max) {
      int q = b.a_prime.run(b.a_prime.initial, w);
      for (int s = 0; s < b.a_prime.alphabet.size(); ++s)
        if (b.a_prime.step(q, s) != kSink) {
          Word w2 = w;
          w2.push_back(s);
          stack.push_back(std::move(w2));
        }
    }
  }
  return rep;
}

}  // namespace numera
