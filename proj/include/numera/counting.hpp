#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "numera/algnum.hpp"
#include "numera/automaton.hpp"
#include "numera/errors.hpp"

namespace numera {

/// u_q(n) = #(L_q intersect Sigma^n), v_q(n) = #(L_q intersect Sigma^{<=n}).
struct CountingTables {
  // u[q][n], v[q][n] for n in 0..horizon
  std::vector<std::vector<Int>> u, v;
  int horizon = -1;

  const Int& u_of(int q, int n) const { return u[q][n]; }
  const Int& v_of(int q, int n) const { return v[q][n]; }
};

inline CountingTables count_u_v(const Dfa& d, int n_max) {
  CountingTables t;
  const int n = d.num_states();
  t.horizon = n_max;
  t.u.assign(n, std::vector<Int>(n_max + 1, 0));
  t.v.assign(n, std::vector<Int>(n_max + 1, 0));
  for (int q = 0; q < n; ++q) {
    t.u[q][0] = d.final_states[q] ? 1 : 0;
    t.v[q][0] = t.u[q][0];
  }
  for (int k = 1; k <= n_max; ++k)
    for (int q = 0; q < n; ++q) {
      Int sum = 0;
      for (int s = 0; s < d.alphabet.size(); ++s)
        if (d.delta[q][s] != kSink) sum += t.u[d.delta[q][s]][k - 1];
      t.u[q][k] = sum;
      t.v[q][k] = t.v[q][k - 1] + sum;
    }
  return t;
}

// ---------------------------------------------------------------------------
// Genealogical ranking

/// Position of w in the genealogically ordered language, counted from zero.
/// Computed from counting tables, not by enumeration.
inline Int genealogical_val(const Dfa& d, const Word& w) {
  if (!d.accepts(w))
    throw NotInLanguageError("word not in L: " + d.alphabet.word_str(w));
  const int len = static_cast<int>(w.size());
  CountingTables t = count_u_v(d, len == 0 ? 0 : len - 1);
  Int val = 0;
  for (int i = 0; i < len; ++i) val += t.u[d.initial][i];
  int q = d.initial;
  for (int j = 0; j < len; ++j) {
    for (int s = 0; s < w[j]; ++s) {
      int tgt = d.delta[q][s];
      if (tgt != kSink) val += t.u[tgt][len - 1 - j];
    }
    q = d.delta[q][w[j]];
  }
  return val;
}

/// Inverse of genealogical_val: the (n+1)-th word of L.
inline Word genealogical_rep(const Dfa& d, const Int& n) {
  // find the length block
  int len = 0;
  Int before = 0;  // words strictly shorter than len
  {
    CountingTables t = count_u_v(d, 0);
    Int total = t.u[d.initial][0];
    int guard = 0;
    while (total <= n) {
      ++len;
      if (++guard > 100000 || (len > 1 && !language_infinite(d)))
        throw DomainError("rank exceeds a finite language");
      t = count_u_v(d, len);
      before = 0;
      for (int i = 0; i < len; ++i) before += t.u[d.initial][i];
      total = before + t.u[d.initial][len];
    }
  }
  CountingTables t = count_u_v(d, len);
  Int m = n - before;
  Word w;
  int q = d.initial;
  for (int j = 0; j < len; ++j) {
    for (int s = 0; s < d.alphabet.size(); ++s) {
      int tgt = d.delta[q][s];
      if (tgt == kSink) continue;
      const Int& c = t.u[tgt][len - 1 - j];
      if (m < c) {
        w.push_back(s);
        q = tgt;
        break;
      }
      m -= c;
    }
  }
  if (static_cast<int>(w.size()) != len)
    throw InternalError("rep descent failed");
  return w;
}

// ---------------------------------------------------------------------------
// Perron root

namespace detail {
/// Characteristic polynomial of an integer matrix (Faddeev-LeVerrier).
inline Poly char_poly(const std::vector<std::vector<long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Rat> coef(n + 1, Rat(0));
  coef[n] = 1;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A * M_{k-1} + c_{n-k+1} * I
    std::vector<std::vector<Rat>> am(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat s = (i == j) ? coef[n - k + 1] : Rat(0);
        for (int l = 0; l < n; ++l)
          if (a[i][l] != 0) s += Rat(a[i][l]) * m[l][j];
        am[i][j] = s;
      }
    m = std::move(am);
    // c_{n-k} = -tr(A*M_k)/k
    Rat tr(0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (a[i][l] != 0) tr += Rat(a[i][l]) * m[l][i];
    coef[n - k] = -tr / Rat(k);
  }
  return Poly(std::move(coef));
}

/// All rational roots of a polynomial (via the rational root theorem on the
/// primitive integer form).  Bails out (empty) when the constant term is
/// too composite to enumerate cheaply.
/// num/den as a double; canonicalizes first (mpq arithmetic requires it).
inline double ratio_d(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r.get_d();
}

inline std::vector<Rat> rational_roots(const Poly& p0) {
  Poly p = p0;
  std::vector<Rat> roots;
  while (!p.is_zero() && p.degree() >= 1 && p[0] == 0) {
    roots.push_back(Rat(0));
    p = Poly::divmod(p, Poly::x()).first;
    break;  // squarefree input: 0 occurs at most once
  }
  if (p.degree() < 1) return roots;
  auto ints = p.primitive_ints();
  Int c0 = abs(ints.front()), lead = abs(ints.back());
  if (c0 == 0 || c0 > 1000000 || lead > 1000000) return roots;
  auto divisors = [](const Int& v) {
    std::vector<long> ds;
    long n = static_cast<long>(v.get_si());
    for (long i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        ds.push_back(i);
        if (i != n / i) ds.push_back(n / i);
      }
    return ds;
  };
  for (long pn : divisors(c0))
    for (long qd : divisors(lead))
      for (int sign : {1, -1}) {
        Rat cand(sign * pn, qd);
        cand.canonicalize();
        if (p.eval(cand) == 0) {
          bool dup = false;
          for (const auto& r : roots) dup = dup || r == cand;
          if (!dup) roots.push_back(cand);
        }
      }
  return roots;
}
}  // namespace detail

/// Field descriptor whose selected root is the largest real root theta > 1
/// of the characteristic polynomial of the adjacency matrix.
inline AlgField perron_theta(const Dfa& dfa) {
  Dfa d = trim(dfa);
  Poly p = detail::char_poly(d.adjacency()).squarefree_part();
  SturmChain sturm(p);
  Rat lo(1), hi = cauchy_bound(p);
  if (sturm.count_roots(lo, hi) == 0)
    throw SubExponentialError("no eigenvalue > 1: language growth too slow");
  while (sturm.count_roots(lo, hi) > 1) {
    Rat mid = (lo + hi) / 2;
    if (sturm.count_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
    if (p.eval(lo) == 0) {
      // midpoint landed on the root itself; it is rational
      return AlgField::make(Poly({-lo, Rat(1)}), lo - Rat(1, 2),
                            lo + Rat(1, 2));
    }
  }
  // degenerate (rational) fast path
  for (const Rat& r : detail::rational_roots(p))
    if (lo < r && r <= hi)
      return AlgField::make(Poly({-r, Rat(1)}), r - Rat(1, 2), r + Rat(1, 2));
  // strip rational factors that do not carry theta
  Poly modulus = p;
  for (const Rat& r : detail::rational_roots(p))
    modulus = Poly::divmod(modulus, Poly({-r, Rat(1)})).first;
  SturmChain check(modulus);
  if (check.count_roots(lo, hi) != 1) modulus = p;
  return AlgField::make(modulus, lo, hi);
}

// ---------------------------------------------------------------------------
// Growth profile

enum class StateClass { Finite, Exponential };
enum class Exactness { Exact, NumericFallback };

struct GrowthProfile {
  AlgField field;
  std::vector<AlgNum> a;  // per state, zero for non-dominant states
  int poly_degree = 0;
  std::vector<StateClass> state_class;
  Exactness exactness = Exactness::Exact;
  std::vector<double> numeric_estimate;

  AlgNum theta() const { return field.root(); }
};

inline GrowthProfile growth_profile(const Dfa& d, const CountingTables& t,
                                    const AlgField& field,
                                    bool allow_numeric_fallback = false) {
  const int n = d.num_states();
  const int N = t.horizon;
  if (N < 16) throw DomainError("counting horizon too small");
  GrowthProfile g;
  g.field = field;

  // numeric dominance classification over a geometric ladder
  std::vector<double> est(n, 0.0);
  std::vector<bool> dominant(n, false);
  std::vector<int> ladder{N, (3 * N) / 4, N / 2, (3 * N) / 8, N / 4};
  for (int q = 0; q < n; ++q) {
    std::vector<double> vals;
    for (int m : ladder) {
      if (t.u[d.initial][m] == 0) continue;
      vals.push_back(detail::ratio_d(t.u[q][m], t.u[d.initial][m]));
    }
    est[q] = vals.empty() ? 0.0 : vals.front();
    bool vanishing = true;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] >= 1e-9) vanishing = false;
      if (i + 1 < vals.size() && vals[i] > vals[i + 1] * 1.0000001)
        vanishing = false;  // not decreasing towards the tail
    }
    dominant[q] = !vanishing;
  }
  dominant[d.initial] = true;
  g.numeric_estimate = est;

  auto live = live_states(d);
  for (int q = 0; q < n; ++q)
    g.state_class.push_back(live[q] ? StateClass::Exponential
                                    : StateClass::Finite);

  // exact eigensolve on the dominant block: (A - theta I) a = 0, a_{q0} = 1
  AlgNum theta = field.root();
  std::vector<int> dom;
  for (int q = 0; q < n; ++q)
    if (dominant[q]) dom.push_back(q);
  std::map<int, int> pos;
  for (std::size_t i = 0; i < dom.size(); ++i) pos[dom[i]] = i;
  auto adj = d.adjacency();
  const int k = static_cast<int>(dom.size());
  // columns: unknowns a_q for q in dom, q != q0; rhs from the a_{q0}=1 column
  std::vector<int> unknowns;
  for (int q : dom)
    if (q != d.initial) unknowns.push_back(q);
  const int uk = static_cast<int>(unknowns.size());
  std::vector<std::vector<AlgNum>> m(k, std::vector<AlgNum>(uk + 1));
  for (int r = 0; r < k; ++r) {
    int q = dom[r];
    for (int c = 0; c < uk; ++c) {
      int q2 = unknowns[c];
      AlgNum entry = field.from_rat(Rat(adj[q][q2]));
      if (q == q2) entry = entry - theta;
      m[r][c] = entry;
    }
    AlgNum rhs = field.from_rat(Rat(adj[q][d.initial]));
    if (q == d.initial) rhs = rhs - theta;
    m[r][uk] = -rhs;  // move the a_{q0} column to the right-hand side
  }
  // Gaussian elimination
  bool unique = true, consistent = true;
  int row = 0;
  std::vector<int> pivot_row(uk, -1);
  for (int c = 0; c < uk && row < k; ++c) {
    int pr = -1;
    for (int r = row; r < k; ++r)
      if (!m[r][c].is_zero_value()) { pr = r; break; }
    if (pr == -1) { unique = false; continue; }
    std::swap(m[pr], m[row]);
    AlgNum inv = m[row][c].inverse();
    for (int cc = c; cc <= uk; ++cc) m[row][cc] = m[row][cc] * inv;
    for (int r = 0; r < k; ++r) {
      if (r == row) continue;
      if (m[r][c].is_zero_value()) continue;
      AlgNum f = m[r][c];
      for (int cc = c; cc <= uk; ++cc)
        m[r][cc] = m[r][cc] - f * m[row][cc];
    }
    pivot_row[c] = row;
    ++row;
  }
  for (int r = row; r < k; ++r)
    if (!m[r][uk].is_zero_value()) consistent = false;

  std::vector<AlgNum> a(n, field.zero());
  a[d.initial] = field.one();
  if (consistent && unique) {
    for (int c = 0; c < uk; ++c) a[unknowns[c]] = m[pivot_row[c]][uk];
    g.exactness = Exactness::Exact;
  } else {
    if (!allow_numeric_fallback)
      throw AmbiguousGrowthError(
          "constrained eigensystem is not uniquely solvable");
    g.exactness = Exactness::NumericFallback;
    for (int q : dom) {
      Rat approx(static_cast<long>(est[q] * 1000000000L), 1000000000L);
      approx.canonicalize();
      a[q] = field.from_rat(approx);
    }
  }
  g.a = a;

  if (g.exactness == Exactness::Exact) {
    for (int q = 0; q < n; ++q) {
      if (g.a[q].sign() < 0)
        throw AmbiguousGrowthError("negative growth coefficient");
      double diff = std::abs(g.a[q].approx() - est[q]);
      if (diff > 1e-6 * (1.0 + std::abs(est[q])))
        throw AmbiguousGrowthError(
            "exact coefficient disagrees with the numeric limit at state " +
            d.state_names[q]);
    }
  }

  // fitted polynomial degree of the counting function
  {
    double th = field.root().approx();
    int half = N / 2;
    if (t.u[d.initial][half] > 0 && t.u[d.initial][N] > 0) {
      double lr = detail::ratio_d(t.u[d.initial][2 * half], t.u[d.initial][half]);
      double dd = (std::log(lr) - half * std::log(th)) / std::log(2.0);
      g.poly_degree = std::max(0, static_cast<int>(std::lround(dd)));
    }
  }
  return g;
}

/// Trim + minimize + growth analysis in one step; the common entry point.
struct AbstractSystem {
  Dfa dfa;  // trimmed minimal automaton
  CountingTables tables;
  GrowthProfile growth;
};

inline AbstractSystem make_system(const Dfa& d, int horizon = 200) {
  AbstractSystem s;
  s.dfa = minimize(d);
  if (!language_infinite(s.dfa))
    throw EmptyLanguageError("language is finite; no real representations");
  s.tables = count_u_v(s.dfa, horizon);
  AlgField f = perron_theta(s.dfa);
  s.growth = growth_profile(s.dfa, s.tables, f);
  return s;
}

// ---------------------------------------------------------------------------
// Hypothesis report

struct HypothesisReport {
  bool language_infinite = false;
  bool branching_cycle = false;  // two distinct cycles through one state
  int fitted_degree = 0;
  bool numeric_convergent = false;
  double limit_constant = 0.0;
  std::string verdict;  // "PASS" or "INCONCLUSIVE"
  std::string reason;
};

inline HypothesisReport check_hypothesis(const Dfa& d,
                                         const CountingTables& t) {
  HypothesisReport r;
  r.language_infinite = language_infinite(d);
  if (!r.language_infinite) {
    r.verdict = "INCONCLUSIVE";
    r.reason = "L finite";
    return r;
  }
  // two distinct cycles through a coaccessible state: some state of a
  // coaccessible nontrivial SCC has >= 2 internal out-edges
  auto scc = scc_decompose(d);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.nontrivial[c] || !scc.coaccessible[c]) continue;
    for (int q : scc.components[c]) {
      int internal = 0;
      for (int s = 0; s < d.alphabet.size(); ++s) {
        int tgt = d.delta[q][s];
        if (tgt != kSink && scc.comp_of[tgt] == scc.comp_of[q]) ++internal;
      }
      if (internal >= 2) r.branching_cycle = true;
    }
  }

  AlgField f;
  try {
    f = perron_theta(d);
  } catch (const SubExponentialError&) {
    r.verdict = "INCONCLUSIVE";
    r.reason = "no growth rate theta > 1";
    return r;
  }
  double th = f.root().approx();
  const int N = t.horizon;
  // fit the degree, then check u(n)/(n^d theta^n) for a shrinking error
  int half = N / 2;
  double lr = detail::ratio_d(t.u[d.initial][2 * half], t.u[d.initial][half]);
  double dd = (std::log(lr) - half * std::log(th)) / std::log(2.0);
  r.fitted_degree = std::max(0, static_cast<int>(std::lround(dd)));
  auto s_of = [&](int nn) {
    double scale = std::pow(static_cast<double>(nn), r.fitted_degree) *
                   std::pow(th, nn);
    return t.u[d.initial][nn].get_d() / scale;
  };
  r.limit_constant = s_of(N);
  bool shrinking = true;
  double prev = -1;
  for (int nn = (3 * N) / 4; nn <= N; ++nn) {
    double e = std::abs(s_of(nn) - r.limit_constant);
    if (prev >= 0 && e > prev + 1e-12) shrinking = false;
    prev = e;
  }
  r.numeric_convergent = shrinking;
  if (r.branching_cycle && r.numeric_convergent) {
    r.verdict = "PASS";
  } else {
    r.verdict = "INCONCLUSIVE";
    r.reason = r.branching_cycle ? "numeric convergence unclear"
                                 : "no branching cycle found";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Section-5 style simplification

/// Removes every state with a_q = 0 together with its edges.
inline Dfa simplify_language(const Dfa& d, const GrowthProfile& g) {
  if (g.a[d.initial].is_zero_value())
    throw InternalError("a_{q0} vanished despite normalization");
  Dfa out;
  out.alphabet = d.alphabet;
  std::vector<int> remap(d.num_states(), -1);
  for (int q = 0; q < d.num_states(); ++q)
    if (!g.a[q].is_zero_value()) {
      remap[q] = out.num_states();
      out.add_state(d.state_names[q], d.final_states[q]);
    }
  out.initial = remap[d.initial];
  for (int q = 0; q < d.num_states(); ++q) {
    if (remap[q] == -1) continue;
    for (int s = 0; s < d.alphabet.size(); ++s) {
      int t = d.delta[q][s];
      if (t != kSink && remap[t] != -1) out.delta[remap[q]][s] = remap[t];
    }
  }
  return trim(out);
}

// ---------------------------------------------------------------------------
// Beta coefficients (the transducer of the value formula)

/// Transducer label of the transition (p, sigma): component i is
/// #{tau < sigma | p.tau = q_i} plus the Kronecker term for the initial
/// state.
inline std::vector<int> transducer_label(const Dfa& d, int p, int sigma) {
  std::vector<int> label(d.num_states(), 0);
  for (int tau = 0; tau < sigma; ++tau) {
    int t = d.delta[p][tau];
    if (t != kSink) ++label[t];
  }
  ++label[d.initial];
  return label;
}

struct BetaCoeffs {
  // beta[q][j] for j in 0..J
  std::vector<std::vector<int>> beta;
  // filled for ultimately periodic input
  std::vector<int> preperiod_len, period_len;  // r_q, p_q
  int r = 0, p = 1;
  bool periodic_input = false;
};

inline BetaCoeffs beta_coefficients(const Dfa& d, const Word& prefix, int J) {
  BetaCoeffs b;
  const int n = d.num_states();
  int len = std::min<int>(J + 1, static_cast<int>(prefix.size()));
  b.beta.assign(n, std::vector<int>(len, 0));
  int q = d.initial;
  for (int j = 0; j < len; ++j) {
    auto label = transducer_label(d, q, prefix[j]);
    for (int i = 0; i < n; ++i) b.beta[i][j] = label[i];
    q = d.delta[q][prefix[j]];
    if (q == kSink)
      throw NotALeftFactorError("prefix enters the sink at position " +
                                std::to_string(j));
  }
  return b;
}

inline BetaCoeffs beta_coefficients(const Dfa& d, const UpWord& w) {
  const int n = d.num_states();
  const int vlen = static_cast<int>(w.period.size());
  const int ulen = static_cast<int>(w.preperiod.size());

  // locate the state cycle along v-blocks
  std::vector<int> block_state;  // state before v-block i
  int q = d.initial;
  for (std::size_t j = 0; j < w.preperiod.size(); ++j) {
    q = d.step(q, w.preperiod[j]);
    if (q == kSink) throw NotALeftFactorError("preperiod enters the sink");
  }
  int ci = -1, cj = -1;
  for (int i = 0; ci < 0; ++i) {
    for (std::size_t k = 0; k < block_state.size(); ++k)
      if (block_state[k] == q) { ci = static_cast<int>(k); cj = i; break; }
    if (ci >= 0) break;
    if (i > n) throw InternalError("no state repetition along the period");
    block_state.push_back(q);
    for (int l : w.period) {
      q = d.step(q, l);
      if (q == kSink) throw NotALeftFactorError("period enters the sink");
    }
  }
  const int r0 = ulen + ci * vlen;
  const int p0 = (cj - ci) * vlen;
  const int need = r0 + 2 * p0;

  BetaCoeffs b;
  b.periodic_input = true;
  b.beta.assign(n, std::vector<int>(need, 0));
  q = d.initial;
  for (int j = 0; j < need; ++j) {
    auto label = transducer_label(d, q, w.at(j));
    for (int i = 0; i < n; ++i) b.beta[i][j] = label[i];
    q = d.step(q, w.at(j));
  }
  // minimal (r_q, p_q) per state; the minimal period divides p0
  for (int i = 0; i < n; ++i) {
    const auto& s = b.beta[i];
    int p = p0;
    for (int dd = 1; dd <= p0; ++dd) {
      if (p0 % dd != 0) continue;
      bool ok = true;
      for (int j = r0; j + dd < need && ok; ++j) ok = s[j] == s[j + dd];
      if (ok) { p = dd; break; }
    }
    int r = r0;
    while (r > 0 && s[r - 1] == s[r - 1 + p]) --r;
    b.preperiod_len.push_back(r);
    b.period_len.push_back(p);
  }
  b.r = *std::max_element(b.preperiod_len.begin(), b.preperiod_len.end());
  b.p = 1;
  for (int pq : b.period_len) b.p = std::lcm(b.p, pq);
  return b;
}

}  // namespace numera
