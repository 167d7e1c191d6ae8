#pragma once

#include <utility>
#include <vector>

#include "numera/algnum.hpp"
#include "numera/counting.hpp"
#include "numera/errors.hpp"

namespace numera {

inline AlgNum alg_pow(const AlgNum& a, unsigned n) {
  AlgNum r = a.field().one();
  for (unsigned i = 0; i < n; ++i) r *= a;
  return r;
}

/// Increasing affine map x -> slope*x + offset.
struct AffineMap {
  AlgNum slope, offset;

  AlgNum apply(const AlgNum& x) const { return slope * x + offset; }

  /// this after g (apply g first).
  AffineMap after(const AffineMap& g) const {
    return {slope * g.slope, slope * g.offset + offset};
  }
  AffineMap inverse() const {
    AlgNum inv = slope.inverse();
    return {inv, -(inv * offset)};
  }
  static AffineMap identity(const AlgField& f) { return {f.one(), f.zero()}; }
  bool is_identity() const {
    return (slope - slope.field().one()).is_zero_value() &&
           offset.is_zero_value();
  }

  /// Solves f(x) = x.
  AlgNum fixed_point() const {
    AlgNum one = slope.field().one();
    if ((slope - one).is_zero_value()) {
      if (offset.is_zero_value())
        throw NoUniqueFixedPointError("identity map: every point is fixed");
      throw NoUniqueFixedPointError("translation has no fixed point");
    }
    return offset / (one - slope);
  }
};

// ---------------------------------------------------------------------------
// Intervals of prefixes

/// The set of reals whose representation can start with the given prefix.
struct IwInterval {
  Word prefix;
  AlgNum lower, upper;

  AlgNum length() const { return upper - lower; }
};

inline IwInterval interval_of_prefix(const GrowthProfile& g, const Dfa& d,
                                     const Word& w) {
  const AlgField& f = g.field;
  AlgNum theta = f.root();
  // running sum over length-|w| prefixes strictly below w, via
  // sum_{j<l} theta^(l-1-j) * sum_{sigma<w_j} a_{q0.w_<j sigma}
  AlgNum sum = f.zero();
  int q = d.initial;
  for (std::size_t j = 0; j < w.size(); ++j) {
    sum *= theta;
    for (int s = 0; s < w[j]; ++s) {
      int t = d.step(q, s);
      if (t != kSink) sum += g.a[t];
    }
    q = d.step(q, w[j]);
    if (q == kSink)
      throw NotALeftFactorError("prefix enters the sink: " +
                                d.alphabet.word_str(w));
  }
  if (g.a[q].is_zero_value())
    throw NotALeftFactorError("prefix has negligible continuation: " +
                              d.alphabet.word_str(w));
  AlgNum scale =
      (theta - f.one()) * alg_pow(theta, static_cast<unsigned>(w.size()) + 1)
          .inverse();
  IwInterval iw;
  iw.prefix = w;
  iw.lower = theta.inverse() + scale * sum;
  iw.upper = iw.lower + scale * g.a[q];
  return iw;
}

// ---------------------------------------------------------------------------
// Per-state partitions and the dynamical system

/// Partition of [0,1] induced by a state: one half-open cell per letter
/// with surviving continuation, the last cell closed.
struct PartitionRow {
  struct Cell {
    int letter;
    AlgNum lo, hi;
  };
  int state = kSink;
  std::vector<Cell> cells;
};

inline PartitionRow partition_row(const GrowthProfile& g, const Dfa& d,
                                  int q) {
  PartitionRow row;
  row.state = q;
  if (g.a[q].is_zero_value()) return row;
  AlgNum denom = (g.field.root() * g.a[q]).inverse();
  AlgNum cursor = g.field.zero();
  for (int s = 0; s < d.alphabet.size(); ++s) {
    int t = d.step(q, s);
    if (t == kSink || g.a[t].is_zero_value()) continue;
    AlgNum width = g.a[t] * denom;
    row.cells.push_back({s, cursor, cursor + width});
    cursor = row.cells.back().hi;
  }
  return row;
}

inline std::vector<PartitionRow> partition_table(const GrowthProfile& g,
                                                 const Dfa& d) {
  std::vector<PartitionRow> rows;
  for (int q = 0; q < d.num_states(); ++q)
    rows.push_back(partition_row(g, d, q));
  return rows;
}

namespace detail {
/// Index of the cell containing x.  Half-open cells keep boundary points
/// in the right cell; `from_left` flips the convention, yielding the
/// left-limit representation at boundaries.
inline int cell_of(const PartitionRow& row, const AlgNum& x,
                   bool from_left = false) {
  if (row.cells.empty()) throw DomainError("state has no surviving letters");
  if (x.sign() < 0 || (x - row.cells.back().hi).sign() > 0)
    throw DomainError("point outside [0,1]");
  if (from_left) {
    for (std::size_t i = 0; i < row.cells.size(); ++i)
      if (compare(x, row.cells[i].hi) <= 0 &&
          (i == 0 || compare(row.cells[i].lo, x) < 0))
        return static_cast<int>(i);
  } else {
    for (std::size_t i = row.cells.size(); i-- > 0;)
      if (compare(row.cells[i].lo, x) <= 0) return static_cast<int>(i);
  }
  throw InternalError("partition does not cover the point");
}
}  // namespace detail

/// One application of the dynamical system: pick the cell of x in the
/// partition of q, move to q.sigma, rescale x to the cell.
inline std::pair<int, AlgNum> h_step(const GrowthProfile& g, const Dfa& d,
                                     int q, const AlgNum& x) {
  PartitionRow row = partition_row(g, d, q);
  int i = detail::cell_of(row, x);
  const auto& c = row.cells[i];
  return {d.step(q, c.letter), (x - c.lo) / (c.hi - c.lo)};
}

// ---------------------------------------------------------------------------
// Representation of a real number

struct RepTrace {
  struct Step {
    int state;
    AlgNum y;  // relative position before emitting the letter
    int letter;
  };
  std::vector<Step> steps;
  int detect_i = -1, detect_j = -1;  // exact (state, position) repeat
};

enum class RepStatus { UP, PrefixOnly };

struct RepResult {
  RepStatus status = RepStatus::PrefixOnly;
  UpWord word;  // valid when status == UP
  Word prefix;  // emitted letters (always filled)
  RepTrace trace;
};

/// Expands x in [1/theta, 1] by iterating the dynamical system from
/// (q0, relative position of x in [1/theta, 1]); stops on the first exact
/// repeat of a (state, position) pair, or after max_steps.
inline RepResult represent(const GrowthProfile& g, const Dfa& d,
                           const AlgNum& x, int max_steps = 10000,
                           bool from_left = false) {
  const AlgField& f = g.field;
  AlgNum theta = f.root();
  if ((x - theta.inverse()).sign() < 0 || (x - f.one()).sign() > 0)
    throw DomainError("point outside [1/theta, 1]");
  AlgNum y = (theta * x - f.one()) / (theta - f.one());

  auto table = partition_table(g, d);
  RepResult res;
  int q = d.initial;
  for (int n = 0; n < max_steps; ++n) {
    // exact repeat detection on the canonical residue
    for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
      const auto& st = res.trace.steps[i];
      if (st.state == q && st.y.residue() == y.residue()) {
        res.status = RepStatus::UP;
        res.trace.detect_i = static_cast<int>(i);
        res.trace.detect_j = n;
        Word u(res.prefix.begin(), res.prefix.begin() + i);
        Word v(res.prefix.begin() + i, res.prefix.end());
        res.word = UpWord(std::move(u), std::move(v));
        return res;
      }
    }
    int ci = detail::cell_of(table[q], y, from_left);
    const auto& c = table[q].cells[ci];
    res.trace.steps.push_back({q, y, c.letter});
    res.prefix.push_back(c.letter);
    y = (y - c.lo) / (c.hi - c.lo);
    q = d.step(q, c.letter);
  }
  res.status = RepStatus::PrefixOnly;
  return res;
}

/// Letter stream computed the slow way: the relative position of x in the
/// global interval of the emitted prefix is recomputed from scratch each
/// step.  Retained as an independent cross-check of represent().
inline Word represent_by_intervals(const GrowthProfile& g, const Dfa& d,
                                   const AlgNum& x, int n_steps) {
  const AlgField& f = g.field;
  if ((x - f.root().inverse()).sign() < 0 || (x - f.one()).sign() > 0)
    throw DomainError("point outside [1/theta, 1]");
  Word w;
  int q = d.initial;
  for (int n = 0; n < n_steps; ++n) {
    IwInterval iw = interval_of_prefix(g, d, w);
    AlgNum y = (x - iw.lower) / (iw.upper - iw.lower);
    PartitionRow row = partition_row(g, d, q);
    int ci = detail::cell_of(row, y);
    w.push_back(row.cells[ci].letter);
    q = d.step(q, row.cells[ci].letter);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Exact value of an ultimately periodic word

/// Exact value of the real represented by the ultimately periodic word,
/// evaluated through the per-state coefficient sequences.
inline AlgNum value_of_up(const GrowthProfile& g, const Dfa& d,
                          const UpWord& w) {
  // membership: every prefix must remain extendable into L
  {
    auto co = detail::coaccessible_states(d);
    int q = d.initial;
    auto check = [&](int state) {
      if (state == kSink || !co[state])
        throw NotRepresentableError("word leaves the adherence of L");
    };
    check(q);
    for (int l : w.preperiod) { q = d.step(q, l); check(q); }
    std::vector<bool> seen(d.num_states(), false);
    while (!seen[q]) {
      seen[q] = true;
      for (int l : w.period) { q = d.step(q, l); check(q); }
    }
  }

  BetaCoeffs b = beta_coefficients(d, w);
  const AlgField& f = g.field;
  AlgNum theta = f.root();
  AlgNum itheta = theta.inverse();
  int need = 0;
  for (int q = 0; q < d.num_states(); ++q)
    need = std::max(need, b.preperiod_len[q] + b.period_len[q]);
  std::vector<AlgNum> ip{f.one()};  // theta^{-j}
  for (int j = 1; j < need; ++j) ip.push_back(ip.back() * itheta);

  AlgNum total = f.zero();
  for (int q = 0; q < d.num_states(); ++q) {
    if (g.a[q].is_zero_value()) continue;
    const int r = b.preperiod_len[q], p = b.period_len[q];
    AlgNum head = f.zero(), tail = f.zero();
    for (int j = 0; j < r; ++j)
      head += ip[j] * Rat(b.beta[q][j]);
    for (int j = r; j < r + p; ++j)
      tail += ip[j] * Rat(b.beta[q][j]);
    AlgNum tp = alg_pow(theta, static_cast<unsigned>(p));
    total += g.a[q] * (head + tp / (tp - f.one()) * tail);
  }
  return (theta - f.one()) * itheta * itheta * total;
}

// ---------------------------------------------------------------------------
// Densification

/// Extends a left factor into an ultimately periodic element of the
/// adherence, sharing a prefix of length at least `l` with it, by pumping
/// the shortest available cycle.
inline UpWord densify(const Dfa& d, const Word& w, int l) {
  if (static_cast<int>(w.size()) < l)
    throw DomainError("prefix shorter than the requested agreement length");
  auto co = detail::coaccessible_states(d);
  {
    int q = d.run(d.initial, w);
    if (q == kSink || !co[q])
      throw NotALeftFactorError("not a left factor: " +
                                d.alphabet.word_str(w));
  }
  auto live = live_states(d);
  // longest prefix (>= l) ending in a state with unbounded continuations
  int keep = -1, q_end = kSink;
  {
    int q = d.initial;
    if (l == 0 && live[q]) { keep = 0; q_end = q; }
    for (std::size_t j = 0; j < w.size(); ++j) {
      q = d.step(q, w[j]);
      if (q != kSink && live[q] && static_cast<int>(j) + 1 >= l) {
        keep = static_cast<int>(j) + 1;
        q_end = q;
      }
    }
  }
  if (keep < 0)
    throw NotRepresentableError("no sufficiently long live prefix");
  // shortest closed walk from q_end within the live subgraph (BFS per
  // outgoing edge; letter order breaks ties)
  Word best;
  for (int s = 0; s < d.alphabet.size(); ++s) {
    int t = d.step(q_end, s);
    if (t == kSink || !live[t]) continue;
    // BFS from t back to q_end
    std::vector<int> parent(d.num_states(), -2), via(d.num_states(), -1);
    std::vector<int> queue{t};
    parent[t] = -1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      for (int s2 = 0; s2 < d.alphabet.size(); ++s2) {
        int v = d.step(u, s2);
        if (v == kSink || !live[v] || parent[v] != -2) continue;
        parent[v] = u;
        via[v] = s2;
        queue.push_back(v);
      }
    }
    Word cyc{s};
    if (t != q_end) {
      if (parent[q_end] == -2) continue;
      Word back;
      for (int u = q_end; u != t; u = parent[u]) back.push_back(via[u]);
      cyc.insert(cyc.end(), back.rbegin(), back.rend());
    }
    if (best.empty() || cyc.size() < best.size()) best = cyc;
  }
  if (best.empty()) throw InternalError("live state without a cycle");
  return UpWord(Word(w.begin(), w.begin() + keep), best);
}

}  // namespace numera
