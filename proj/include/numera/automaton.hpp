#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "numera/errors.hpp"
#include "numera/upword.hpp"

namespace numera {

/// Totally ordered alphabet; declaration order is the order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters)
      : letters_(std::move(letters)) {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (!index_.emplace(letters_[i], static_cast<int>(i)).second)
        throw FormatError("duplicate letter: " + letters_[i]);
    }
  }

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& name(int i) const { return letters_[i]; }
  const std::vector<std::string>& letters() const { return letters_; }
  int index(const std::string& tok) const {
    auto it = index_.find(tok);
    if (it == index_.end()) throw FormatError("unknown letter: " + tok);
    return it->second;
  }
  bool has(const std::string& tok) const { return index_.count(tok) > 0; }

  bool single_char() const {
    for (const auto& l : letters_)
      if (l.size() != 1) return false;
    return true;
  }

  /// Parses a word: per character when all letters are single characters,
  /// otherwise whitespace-separated tokens.  "-" denotes the empty word.
  Word parse_word(const std::string& s) const {
    Word w;
    if (s == "-" || s.empty()) return w;
    if (single_char()) {
      for (char c : s) w.push_back(index(std::string(1, c)));
    } else {
      std::istringstream in(s);
      std::string tok;
      while (in >> tok) w.push_back(index(tok));
    }
    return w;
  }

  std::string word_str(const Word& w) const {
    if (w.empty()) return "-";
    std::string sep = single_char() ? "" : " ";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += sep;
      s += letters_[w[i]];
    }
    return s;
  }

  std::string upword_str(const UpWord& w) const {
    std::string sep = single_char() ? "" : " ";
    std::string s;
    for (std::size_t i = 0; i < w.preperiod.size(); ++i) {
      if (i) s += sep;
      s += letters_[w.preperiod[i]];
    }
    s += "(";
    for (std::size_t i = 0; i < w.period.size(); ++i) {
      if (i) s += sep;
      s += letters_[w.period[i]];
    }
    s += ")^w";
    return s;
  }

  /// Parses the "u(v)^w" syntax.
  UpWord parse_upword(const std::string& s) const {
    auto open = s.find('(');
    auto close = s.find(')');
    if (open == std::string::npos || close == std::string::npos ||
        close < open || s.substr(close + 1) != "^w")
      throw FormatError("expected u(v)^w syntax: " + s);
    Word u = parse_word(s.substr(0, open));
    Word v = parse_word(s.substr(open + 1, close - open - 1));
    if (v.empty()) throw FormatError("empty period in: " + s);
    return UpWord(std::move(u), std::move(v));
  }

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

 private:
  std::vector<std::string> letters_;
  std::map<std::string, int> index_;
};

constexpr int kSink = -1;

/// Deterministic automaton with a partial transition function; missing
/// transitions go to the implicit sink.
class Dfa {
 public:
  Alphabet alphabet;
  std::vector<std::string> state_names;
  int initial = 0;
  std::vector<bool> final_states;
  // delta[q][sigma] = target state or kSink
  std::vector<std::vector<int>> delta;

  int num_states() const { return static_cast<int>(state_names.size()); }
  bool is_final(int q) const { return q != kSink && final_states[q]; }

  int step(int q, int sigma) const {
    return q == kSink ? kSink : delta[q][sigma];
  }
  int run(int q, const Word& w) const {
    for (int s : w) {
      q = step(q, s);
      if (q == kSink) break;
    }
    return q;
  }
  bool accepts(const Word& w) const { return is_final(run(initial, w)); }

  void add_state(const std::string& name, bool final) {
    state_names.push_back(name);
    final_states.push_back(final);
    delta.emplace_back(alphabet.size(), kSink);
  }

  /// A_{p,q} = number of letters sending p to q.
  std::vector<std::vector<long>> adjacency() const {
    std::vector<std::vector<long>> a(
        num_states(), std::vector<long>(num_states(), 0));
    for (int q = 0; q < num_states(); ++q)
      for (int s = 0; s < alphabet.size(); ++s)
        if (delta[q][s] != kSink) ++a[q][delta[q][s]];
    return a;
  }
};

/// Nondeterministic automaton (no epsilon transitions).
class Nfa {
 public:
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::set<int> initials;
  std::vector<bool> final_states;
  // delta[q][sigma] = sorted targets
  std::vector<std::vector<std::vector<int>>> delta;

  int num_states() const { return static_cast<int>(state_names.size()); }

  void add_state(const std::string& name, bool final) {
    state_names.push_back(name);
    final_states.push_back(final);
    delta.emplace_back(alphabet.size());
  }
  void add_edge(int from, int sigma, int to) {
    auto& v = delta[from][sigma];
    auto it = std::lower_bound(v.begin(), v.end(), to);
    if (it == v.end() || *it != to) v.insert(it, to);
  }

  bool accepts(const Word& w) const {
    std::set<int> cur = initials;
    for (int s : w) {
      std::set<int> nxt;
      for (int q : cur)
        for (int t : delta[q][s]) nxt.insert(t);
      cur = std::move(nxt);
      if (cur.empty()) return false;
    }
    for (int q : cur)
      if (final_states[q]) return true;
    return false;
  }

  static Nfa from_dfa(const Dfa& d) {
    Nfa n;
    n.alphabet = d.alphabet;
    for (int q = 0; q < d.num_states(); ++q)
      n.add_state(d.state_names[q], d.final_states[q]);
    n.initials = {d.initial};
    for (int q = 0; q < d.num_states(); ++q)
      for (int s = 0; s < d.alphabet.size(); ++s)
        if (d.delta[q][s] != kSink) n.add_edge(q, s, d.delta[q][s]);
    return n;
  }
};

// ---------------------------------------------------------------------------
// Text format

inline Dfa parse_automaton(const std::string& text) {
  Dfa d;
  std::map<std::string, int> state_index;
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  std::vector<std::string> states, finals;
  std::string initial;
  bool saw_initial = false, saw_final = false, saw_alphabet = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto rest = [&ls]() {
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      return toks;
    };
    if (key == "alphabet:") {
      d.alphabet = Alphabet(rest());
      saw_alphabet = true;
    } else if (key == "states:") {
      states = rest();
    } else if (key == "initial:") {
      auto toks = rest();
      if (toks.size() != 1) throw FormatError("initial: expects one state");
      initial = toks[0];
      saw_initial = true;
    } else if (key == "final:") {
      finals = rest();
      saw_final = true;
    } else if (key == "trans:") {
      auto toks = rest();
      if (toks.size() != 3) throw FormatError("trans: expects 'from letter to'");
      trans.emplace_back(toks[0], toks[1], toks[2]);
    } else {
      throw FormatError("unknown directive: " + key);
    }
  }
  if (!saw_alphabet || states.empty()) throw FormatError("missing alphabet/states");
  if (!saw_initial) throw FormatError("no initial state declared");
  if (!saw_final || finals.empty()) throw FormatError("no final states declared");

  for (const auto& s : states) {
    if (state_index.count(s)) throw FormatError("duplicate state: " + s);
    state_index[s] = d.num_states();
    d.add_state(s, false);
  }
  auto lookup = [&state_index](const std::string& s) {
    auto it = state_index.find(s);
    if (it == state_index.end()) throw FormatError("undeclared state: " + s);
    return it->second;
  };
  d.initial = lookup(initial);
  for (const auto& f : finals) d.final_states[lookup(f)] = true;
  for (const auto& [from, letter, to] : trans) {
    int p = lookup(from), q = lookup(to), s = d.alphabet.index(letter);
    if (d.delta[p][s] != kSink)
      throw DeterminismError("duplicate transition from " + from + " on " +
                             letter);
    d.delta[p][s] = q;
  }
  return d;
}

inline std::string serialize_automaton(const Dfa& d) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& l : d.alphabet.letters()) out << " " << l;
  out << "\nstates:";
  for (const auto& s : d.state_names) out << " " << s;
  out << "\ninitial: " << d.state_names[d.initial] << "\nfinal:";
  for (int q = 0; q < d.num_states(); ++q)
    if (d.final_states[q]) out << " " << d.state_names[q];
  out << "\n";
  for (int q = 0; q < d.num_states(); ++q)
    for (int s = 0; s < d.alphabet.size(); ++s)
      if (d.delta[q][s] != kSink)
        out << "trans: " << d.state_names[q] << " " << d.alphabet.name(s)
            << " " << d.state_names[d.delta[q][s]] << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Structure

struct SccDecomposition {
  std::vector<std::vector<int>> components;  // reverse topological order
  std::vector<int> comp_of;
  std::vector<bool> nontrivial;    // has an internal edge
  std::vector<bool> coaccessible;  // some member reaches a final state
};

namespace detail {
inline std::vector<bool> coaccessible_states(const Dfa& d) {
  std::vector<std::vector<int>> rev(d.num_states());
  for (int q = 0; q < d.num_states(); ++q)
    for (int s = 0; s < d.alphabet.size(); ++s)
      if (d.delta[q][s] != kSink) rev[d.delta[q][s]].push_back(q);
  std::vector<bool> co(d.num_states(), false);
  std::vector<int> stack;
  for (int q = 0; q < d.num_states(); ++q)
    if (d.final_states[q]) { co[q] = true; stack.push_back(q); }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : rev[q])
      if (!co[p]) { co[p] = true; stack.push_back(p); }
  }
  return co;
}

inline std::vector<bool> accessible_states(const Dfa& d) {
  std::vector<bool> acc(d.num_states(), false);
  std::vector<int> stack = {d.initial};
  acc[d.initial] = true;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int s = 0; s < d.alphabet.size(); ++s) {
      int t = d.delta[q][s];
      if (t != kSink && !acc[t]) { acc[t] = true; stack.push_back(t); }
    }
  }
  return acc;
}
}  // namespace detail

/// Tarjan's algorithm (iterative).
inline SccDecomposition scc_decompose(const Dfa& d) {
  const int n = d.num_states();
  SccDecomposition out;
  out.comp_of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  int next_index = 0;

  struct Frame { int q; int edge; };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      int q = fr.q;
      if (fr.edge < d.alphabet.size()) {
        int t = d.delta[q][fr.edge++];
        if (t == kSink) continue;
        if (index[t] == -1) {
          index[t] = low[t] = next_index++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[q] = std::min(low[q], index[t]);
        }
      } else {
        if (low[q] == index[q]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            out.comp_of[w] = static_cast<int>(out.components.size());
            comp.push_back(w);
          } while (w != q);
          std::sort(comp.begin(), comp.end());
          out.components.push_back(std::move(comp));
        }
        call.pop_back();
        if (!call.empty())
          low[call.back().q] = std::min(low[call.back().q], low[q]);
      }
    }
  }

  auto co = detail::coaccessible_states(d);
  for (const auto& comp : out.components) {
    bool internal = false, coacc = false;
    for (int q : comp) {
      if (co[q]) coacc = true;
      for (int s = 0; s < d.alphabet.size(); ++s) {
        int t = d.delta[q][s];
        if (t != kSink && out.comp_of[t] == out.comp_of[q]) internal = true;
      }
    }
    out.nontrivial.push_back(internal);
    out.coaccessible.push_back(coacc);
  }
  return out;
}

/// Keeps exactly the states that are both accessible and coaccessible.
/// State ids are fresh; names are carried over from the input.
inline Dfa trim(const Dfa& d) {
  auto acc = detail::accessible_states(d);
  auto co = detail::coaccessible_states(d);
  std::vector<int> remap(d.num_states(), -1);
  Dfa out;
  out.alphabet = d.alphabet;
  for (int q = 0; q < d.num_states(); ++q)
    if (acc[q] && co[q]) {
      remap[q] = out.num_states();
      out.add_state(d.state_names[q], d.final_states[q]);
    }
  if (remap[d.initial] == -1)
    throw EmptyLanguageError("no final state is reachable");
  out.initial = remap[d.initial];
  for (int q = 0; q < d.num_states(); ++q) {
    if (remap[q] == -1) continue;
    for (int s = 0; s < d.alphabet.size(); ++s) {
      int t = d.delta[q][s];
      if (t != kSink && remap[t] != -1) out.delta[remap[q]][s] = remap[t];
    }
  }
  return out;
}

/// Moore partition refinement on the trimmed automaton, sink implicit.
inline Dfa minimize(const Dfa& input) {
  Dfa d = trim(input);
  const int n = d.num_states();
  // class 0 is reserved for the sink
  std::vector<int> cls(n);
  bool any_final = false, any_nonfinal = false;
  for (int q = 0; q < n; ++q) {
    cls[q] = d.final_states[q] ? 2 : 1;
    (d.final_states[q] ? any_final : any_nonfinal) = true;
  }
  // count only the classes that are actually populated, plus the sink
  int num_classes = 1 + (any_final ? 1 : 0) + (any_nonfinal ? 1 : 0);
  for (;;) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (int s = 0; s < d.alphabet.size(); ++s)
        sig.push_back(d.delta[q][s] == kSink ? 0 : cls[d.delta[q][s]]);
      auto [it, fresh] =
          sig_to_class.emplace(sig, static_cast<int>(sig_to_class.size()) + 1);
      (void)fresh;
      next[q] = it->second;
    }
    int count = static_cast<int>(sig_to_class.size()) + 1;
    if (count == num_classes) break;
    cls = std::move(next);
    num_classes = count;
  }
  // rebuild with one state per class, ids in order of first occurrence
  std::vector<int> rep_of_class;
  std::vector<int> new_id(num_classes + 1, -1);
  Dfa out;
  out.alphabet = d.alphabet;
  for (int q = 0; q < n; ++q) {
    if (new_id[cls[q]] == -1) {
      new_id[cls[q]] = out.num_states();
      out.add_state(d.state_names[q], d.final_states[q]);
      rep_of_class.push_back(q);
    }
  }
  out.initial = new_id[cls[d.initial]];
  for (std::size_t c = 0; c < rep_of_class.size(); ++c) {
    int q = rep_of_class[c];
    for (int s = 0; s < d.alphabet.size(); ++s) {
      int t = d.delta[q][s];
      if (t != kSink) out.delta[c][s] = new_id[cls[t]];
    }
  }
  return out;
}

/// Subset construction; throws ExplosionError past `state_cap`.
inline Dfa determinize(const Nfa& n, std::size_t state_cap = 1000000) {
  Dfa out;
  out.alphabet = n.alphabet;
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> worklist;

  auto intern = [&](std::vector<int> set) {
    auto it = seen.find(set);
    if (it != seen.end()) return it->second;
    if (seen.size() >= state_cap)
      throw ExplosionError("determinization exceeded state cap");
    int id = out.num_states();
    bool fin = false;
    for (int q : set)
      if (n.final_states[q]) fin = true;
    out.add_state("S" + std::to_string(id), fin);
    seen.emplace(set, id);
    worklist.push_back(std::move(set));
    return id;
  };

  std::vector<int> init(n.initials.begin(), n.initials.end());
  if (init.empty()) {
    out.add_state("S0", false);
    out.initial = 0;
    return out;
  }
  out.initial = intern(init);
  for (std::size_t i = 0; i < worklist.size(); ++i) {
    std::vector<int> cur = worklist[i];
    int id = seen.at(cur);
    for (int s = 0; s < n.alphabet.size(); ++s) {
      std::set<int> nxt;
      for (int q : cur)
        for (int t : n.delta[q][s]) nxt.insert(t);
      if (nxt.empty()) continue;
      out.delta[id][s] = intern(std::vector<int>(nxt.begin(), nxt.end()));
    }
  }
  return out;
}

/// Language equality of two DFAs over the same alphabet, by product walk
/// over reachable pairs (sink included).
inline bool language_equal(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet)) return false;
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> stack{{a.initial, b.initial}};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (a.is_final(p) != b.is_final(q)) return false;
    for (int s = 0; s < a.alphabet.size(); ++s) {
      std::pair<int, int> nxt{a.step(p, s), b.step(q, s)};
      if (nxt.first == kSink && nxt.second == kSink) continue;
      if (seen.insert(nxt).second) stack.push_back(nxt);
    }
  }
  return true;
}

/// Does the trimmed automaton accept infinitely many words?
inline bool language_infinite(const Dfa& d) {
  Dfa t = [&] {
    try {
      return trim(d);
    } catch (const EmptyLanguageError&) {
      return Dfa{};
    }
  }();
  if (t.num_states() == 0) return false;
  auto scc = scc_decompose(t);
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    if (scc.nontrivial[c]) return true;  // trimmed: every state useful
  return false;
}

/// States from which arbitrarily long completions into L exist, i.e. that
/// reach a coaccessible nontrivial SCC.  Computed on the given automaton.
inline std::vector<bool> live_states(const Dfa& d) {
  auto scc = scc_decompose(d);
  auto co = detail::coaccessible_states(d);
  std::vector<bool> live(d.num_states(), false);
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    if (scc.nontrivial[c] && scc.coaccessible[c])
      for (int q : scc.components[c])
        if (co[q]) live[q] = true;
  // propagate backwards
  std::vector<std::vector<int>> rev(d.num_states());
  for (int q = 0; q < d.num_states(); ++q)
    for (int s = 0; s < d.alphabet.size(); ++s)
      if (d.delta[q][s] != kSink) rev[d.delta[q][s]].push_back(q);
  std::vector<int> stack;
  for (int q = 0; q < d.num_states(); ++q)
    if (live[q]) stack.push_back(q);
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : rev[q])
      if (!live[p]) { live[p] = true; stack.push_back(p); }
  }
  return live;
}

}  // namespace numera
