#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "numera/automaton.hpp"

#ifndef NUMERA_FIXTURE_DIR
#define NUMERA_FIXTURE_DIR "fixtures"
#endif

namespace testutil {

inline numera::Dfa load_fixture(const std::string& name) {
  std::ifstream in(std::string(NUMERA_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return numera::parse_automaton(ss.str());
}

/// All words over the alphabet of d with length <= len_max, genealogically
/// ordered (shorter first, then lexicographic).
inline std::vector<numera::Word> all_words(int alphabet_size, int len_max) {
  std::vector<numera::Word> out{{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= len_max; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (int s = 0; s < alphabet_size; ++s) {
        numera::Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

/// The language of d restricted to length <= len_max, genealogically
/// ordered — the brute-force ranking oracle.
inline std::vector<numera::Word> enumerate_language(const numera::Dfa& d,
                                                    int len_max) {
  std::vector<numera::Word> out;
  for (auto& w : all_words(d.alphabet.size(), len_max))
    if (d.accepts(w)) out.push_back(w);
  return out;
}

/// Deterministic random automaton over a 2-letter alphabet.
inline numera::Nfa random_nfa(std::mt19937& rng, int n_states) {
  numera::Nfa n;
  n.alphabet = numera::Alphabet({"a", "b"});
  std::uniform_int_distribution<int> st(0, n_states - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int q = 0; q < n_states; ++q)
    n.add_state("s" + std::to_string(q), coin(rng) == 1);
  n.initials.insert(st(rng));
  // around 1.5 edges per state per letter
  for (int q = 0; q < n_states; ++q)
    for (int s = 0; s < 2; ++s) {
      int k = 1 + coin(rng);
      for (int i = 0; i < k; ++i) n.add_edge(q, s, st(rng));
    }
  // ensure at least one final state
  bool any = false;
  for (int q = 0; q < n_states; ++q) any = any || n.final_states[q];
  if (!any) n.final_states[st(rng)] = true;
  return n;
}

}  // namespace testutil
