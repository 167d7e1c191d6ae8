#pragma once

#include <map>
#include <string>
#include <vector>

#include "numera/automaton.hpp"
#include "numera/errors.hpp"

namespace numera {

namespace detail {
inline Dfa empty_dfa(const Alphabet& a) {
  Dfa d;
  d.alphabet = a;
  d.add_state("q0", false);
  d.initial = 0;
  return d;
}

inline Dfa minimize_or_empty(const Dfa& d) {
  try {
    return minimize(d);
  } catch (const EmptyLanguageError&) {
    return empty_dfa(d.alphabet);
  }
}

inline Nfa union_nfa(const std::vector<Dfa>& parts) {
  Nfa out;
  out.alphabet = parts.front().alphabet;
  for (const auto& d : parts) {
    int base = out.num_states();
    for (int q = 0; q < d.num_states(); ++q)
      out.add_state("u" + std::to_string(base + q), d.final_states[q]);
    out.initials.insert(base + d.initial);
    for (int q = 0; q < d.num_states(); ++q)
      for (int s = 0; s < d.alphabet.size(); ++s)
        if (d.delta[q][s] != kSink)
          out.add_edge(base + q, s, base + d.delta[q][s]);
  }
  return out;
}

/// Same language minus the empty word.
inline Dfa drop_epsilon(const Dfa& d) {
  if (!d.is_final(d.initial)) return d;
  Dfa out = d;
  int fresh = out.num_states();
  out.add_state(out.state_names[out.initial] + "'", false);
  out.delta[fresh] = out.delta[out.initial];
  out.initial = fresh;
  return minimize_or_empty(out);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Maximal cycle sets

/// The maximal sets of states covered by a single closed walk and able to
/// reach acceptance: exactly the nontrivial coaccessible SCCs.
struct CycleSets {
  std::vector<std::vector<int>> sets;  // sorted state lists, disjoint
  std::vector<int> walk_start;         // state where the witness starts
  std::vector<Word> witness;           // closed walk visiting every state
};

inline CycleSets maximal_cycle_sets(const Dfa& d) {
  CycleSets out;
  auto scc = scc_decompose(d);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.nontrivial[c] || !scc.coaccessible[c]) continue;
    const auto& comp = scc.components[c];
    // closed walk through all members: chain shortest internal paths
    auto path_to = [&](int from, int to) {
      std::vector<int> parent(d.num_states(), -2), via(d.num_states(), -1);
      std::vector<int> queue{from};
      parent[from] = -1;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (int s = 0; s < d.alphabet.size(); ++s) {
          int v = d.delta[u][s];
          if (v == kSink || scc.comp_of[v] != scc.comp_of[from]) continue;
          if (parent[v] != -2) continue;
          parent[v] = u;
          via[v] = s;
          queue.push_back(v);
        }
      }
      Word w;
      for (int u = to; u != from; u = parent[u]) w.push_back(via[u]);
      std::reverse(w.begin(), w.end());
      return w;
    };
    Word walk;
    int cur = comp.front();
    for (int target : comp) {
      Word leg = path_to(cur, target);
      walk.insert(walk.end(), leg.begin(), leg.end());
      cur = target;
    }
    // close the walk; ensure it is nonempty even for singleton SCCs
    Word leg;
    if (cur != comp.front()) {
      leg = path_to(cur, comp.front());
    } else {
      for (int s = 0; s < d.alphabet.size() && leg.empty(); ++s)
        if (d.delta[cur][s] == cur) leg.push_back(s);
      if (leg.empty() && comp.size() == 1) {
        // nontrivial singleton must have a self-loop; guarded above
        throw InternalError("nontrivial SCC without internal edge");
      }
    }
    walk.insert(walk.end(), leg.begin(), leg.end());
    out.sets.push_back(comp);
    out.walk_start.push_back(comp.front());
    out.witness.push_back(std::move(walk));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The period automaton

/// Union, over every cycle set C and every start state p in C, of a copy
/// of C with transitions restricted inside C and p both initial and
/// final.  Accepts exactly the labels of closed walks inside cycle sets.
inline Nfa build_period_nfa(const Dfa& d, const CycleSets& c) {
  Nfa out;
  out.alphabet = d.alphabet;
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    const auto& set = c.sets[i];
    std::map<int, int> local;  // original id -> position in set
    for (std::size_t k = 0; k < set.size(); ++k) local[set[k]] = k;
    for (int start : set) {
      int base = out.num_states();
      for (int q : set)
        out.add_state(d.state_names[q] + "@" + d.state_names[start],
                      q == start);
      out.initials.insert(base + local[start]);
      for (int q : set)
        for (int s = 0; s < d.alphabet.size(); ++s) {
          int t = d.delta[q][s];
          if (t != kSink && local.count(t))
            out.add_edge(base + local[q], s, base + local[t]);
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-th roots

/// Recognizes { u : u^k in L(m) }, by tracking k simultaneous runs with a
/// nondeterministic guess of each run's start, then determinizing.
inline Dfa kth_root(const Nfa& m, int k, std::size_t state_cap = 1000000) {
  if (k <= 0) throw DomainError("root index must be positive");
  const int n = m.num_states();
  Nfa prod;
  prod.alphabet = m.alphabet;
  std::map<std::vector<int>, int> ids;  // guess tuple + current tuple
  std::vector<std::vector<int>> work;

  auto intern = [&](const std::vector<int>& key, bool final) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = prod.num_states();
    prod.add_state("p" + std::to_string(id), final);
    ids.emplace(key, id);
    work.push_back(key);
    return id;
  };
  auto is_final = [&](const std::vector<int>& key) {
    // key = g_1..g_{k-1}, c_1..c_k; accept when run j ends at its
    // successor's start and the last run ends in a final state
    for (int j = 0; j < k - 1; ++j)
      if (key[k - 1 + j] != key[j]) return false;
    return static_cast<bool>(m.final_states[key[2 * k - 2]]);
  };

  // initial states: every guess tuple, run 1 at an initial state of m,
  // run j at its guessed start
  std::vector<int> guess(k - 1, 0);
  for (;;) {
    for (int i0 : m.initials) {
      std::vector<int> key = guess;
      key.push_back(i0);
      for (int j = 0; j < k - 1; ++j) key.push_back(guess[j]);
      prod.initials.insert(intern(key, is_final(key)));
    }
    int j = k - 2;
    while (j >= 0 && guess[j] == n - 1) guess[j--] = 0;
    if (j < 0) break;
    ++guess[j];
  }

  for (std::size_t h = 0; h < work.size(); ++h) {
    std::vector<int> key = work[h];
    int from = ids.at(key);
    for (int s = 0; s < m.alphabet.size(); ++s) {
      // advance all k runs simultaneously over every target combination
      std::vector<std::vector<int>> cur{std::vector<int>(key.begin(),
                                                         key.begin() + k - 1)};
      for (int j = 0; j < k; ++j) {
        std::vector<std::vector<int>> nxt;
        for (const auto& partial : cur)
          for (int t : m.delta[key[k - 1 + j]][s]) {
            auto ext = partial;
            ext.push_back(t);
            nxt.push_back(std::move(ext));
          }
        cur = std::move(nxt);
        if (cur.empty()) break;
      }
      for (auto& full : cur) {
        if (ids.size() > state_cap)
          throw ExplosionError("root construction exceeded state cap");
        prod.add_edge(from, s, intern(full, is_final(full)));
      }
    }
  }
  return detail::minimize_or_empty(determinize(prod, state_cap));
}

// ---------------------------------------------------------------------------
// per / aper / uper

namespace detail {
inline Dfa roots_union(const Nfa& m, int k_max, std::size_t cap) {
  std::vector<Dfa> parts;
  for (int k = 1; k <= k_max; ++k) parts.push_back(kth_root(m, k, cap));
  return drop_epsilon(minimize_or_empty(determinize(union_nfa(parts), cap)));
}
}  // namespace detail

/// The set of periods of ultimately periodic words in the adherence of L:
/// union over k up to #Q of the k-th roots of the period automaton, minus
/// the empty word.
inline Dfa per_language(const Dfa& d, std::size_t state_cap = 1000000) {
  CycleSets c = maximal_cycle_sets(d);
  if (c.sets.empty()) return detail::empty_dfa(d.alphabet);
  Nfa m = build_period_nfa(d, c);
  return detail::roots_union(m, d.num_states(), state_cap);
}

/// The set of preperiods: words leading from the initial state into some
/// maximal cycle set.
inline Dfa aper_language(const Dfa& d) {
  CycleSets c = maximal_cycle_sets(d);
  Dfa out = d;
  out.final_states.assign(out.num_states(), false);
  for (const auto& set : c.sets)
    for (int q : set) out.final_states[q] = true;
  return detail::minimize_or_empty(out);
}

/// Finite union of prefix/period automaton pairs denoting
/// U L(W_i) (L(V_i))^omega.
struct OmegaRegExpr {
  struct Pair {
    std::string anchor;  // the state the pair is built around
    Dfa prefix, period;
  };
  std::vector<Pair> pairs;
};

inline OmegaRegExpr uper_omega(const Dfa& d, std::size_t state_cap = 1000000) {
  OmegaRegExpr out;
  CycleSets c = maximal_cycle_sets(d);
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    const auto& set = c.sets[i];
    for (int q : set) {
      OmegaRegExpr::Pair pr;
      pr.anchor = d.state_names[q];
      Dfa w = d;
      w.final_states.assign(w.num_states(), false);
      w.final_states[q] = true;
      pr.prefix = detail::minimize_or_empty(w);
      // closed walks through q inside this cycle set
      Nfa m;
      m.alphabet = d.alphabet;
      {
        std::map<int, int> local;
        for (std::size_t k = 0; k < set.size(); ++k) local[set[k]] = k;
        for (int p : set) m.add_state(d.state_names[p], p == q);
        m.initials.insert(local[q]);
        for (int p : set)
          for (int s = 0; s < d.alphabet.size(); ++s) {
            int t = d.delta[p][s];
            if (t != kSink && local.count(t))
              m.add_edge(local[p], s, local[t]);
          }
      }
      pr.period = detail::roots_union(m, d.num_states(), state_cap);
      out.pairs.push_back(std::move(pr));
    }
  }
  return out;
}

inline std::string serialize_omega(const OmegaRegExpr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.pairs.size(); ++i) {
    s += "pair " + std::to_string(i) + " (around " + e.pairs[i].anchor +
         ")\nprefix {\n" + serialize_automaton(e.pairs[i].prefix) +
         "}\nperiod {\n" + serialize_automaton(e.pairs[i].period) + "}\n";
  }
  if (e.pairs.empty()) s = "empty\n";
  return s;
}

// ---------------------------------------------------------------------------
// Direct membership

/// Is u v^omega in the adherence of L, i.e. is every finite prefix a left
/// factor of L?  Decided by cycling the period until a state repeats.
inline bool is_up_in_Linfty(const Dfa& d, const UpWord& w) {
  auto co = detail::coaccessible_states(d);
  int q = d.initial;
  auto ok = [&](int state) { return state != kSink && co[state]; };
  if (!ok(q)) return false;
  for (int l : w.preperiod) {
    q = d.step(q, l);
    if (!ok(q)) return false;
  }
  std::vector<bool> seen(d.num_states(), false);
  while (!seen[q]) {
    seen[q] = true;
    for (int l : w.period) {
      q = d.step(q, l);
      if (!ok(q)) return false;
    }
  }
  return true;
}

}  // namespace numera
