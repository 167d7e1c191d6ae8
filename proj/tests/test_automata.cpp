#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "numera/automaton.hpp"

using namespace numera;
using testutil::load_fixture;

TEST_CASE("fixture parsing") {
  Dfa d = load_fixture("ex5.an");
  CHECK(d.num_states() == 3);
  CHECK(d.alphabet.size() == 3);
  CHECK(d.initial == 0);
  CHECK(d.final_states == std::vector<bool>{true, true, true});
  CHECK(d.accepts(d.alphabet.parse_word("aacb")));
  CHECK_FALSE(d.accepts(d.alphabet.parse_word("b")));
  CHECK(d.accepts({}));  // empty word
}

TEST_CASE("format errors") {
  CHECK_THROWS_AS(parse_automaton("states: a\ninitial: a\nfinal: a\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_automaton("alphabet: a\nstates: p\nfinal: p\n"),
                  FormatError);
  CHECK_THROWS_AS(
      parse_automaton("alphabet: a\nstates: p\ninitial: p\nfinal: p\n"
                      "trans: p a p\ntrans: p a p\n"),
      DeterminismError);
  CHECK_THROWS_AS(
      parse_automaton("alphabet: a\nstates: p\ninitial: p\nfinal: p\n"
                      "trans: p b p\n"),
      FormatError);
}

TEST_CASE("serialization round-trip") {
  Dfa d = load_fixture("ex5.an");
  Dfa d2 = parse_automaton(serialize_automaton(d));
  CHECK(language_equal(d, d2));
  CHECK(serialize_automaton(d) == serialize_automaton(d2));
}

TEST_CASE("word parsing conventions") {
  Alphabet single({"a", "b"});
  CHECK(single.parse_word("ab") == Word{0, 1});
  CHECK(single.parse_word("-").empty());
  Alphabet multi({"f_a", "id_c"});
  CHECK(multi.parse_word("f_a id_c f_a") == Word{0, 1, 0});
  UpWord w = single.parse_upword("a(ab)^w");
  CHECK(single.upword_str(w) == "a(ab)^w");
  CHECK_THROWS_AS(single.parse_upword("ab"), FormatError);
  CHECK_THROWS_AS(single.parse_upword("a()^w"), FormatError);
}

TEST_CASE("ultimately periodic canonical form") {
  UpWord w({0, 1}, {0, 1, 0, 1});  // period not primitive
  CHECK(w.period == Word{0, 1});   // preperiod fully absorbed
  CHECK(w.preperiod.empty());
  UpWord v({}, {1, 1, 1});
  CHECK(v.period == Word{1});
  CHECK(UpWord({0}, {1}).shifted() == UpWord({}, {1}));
  CHECK(UpWord({}, {0, 1}).shifted() == UpWord({}, {1, 0}));
  CHECK(w.at(0) == 0);
  CHECK(w.at(1) == 1);
  CHECK(w.at(2) == 0);
  CHECK(w.at(4) == 0);
}

TEST_CASE("strongly connected components") {
  Dfa d = load_fixture("ex5.an");
  auto scc = scc_decompose(d);
  CHECK(scc.components.size() == 1);
  CHECK(scc.components[0] == std::vector<int>{0, 1, 2});
  CHECK(scc.nontrivial[0]);
  CHECK(scc.coaccessible[0]);

  // a + chain: two trivial components
  Dfa chain = parse_automaton(
      "alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n");
  auto s2 = scc_decompose(chain);
  CHECK(s2.components.size() == 2);
  CHECK_FALSE(s2.nontrivial[0]);
  CHECK_FALSE(s2.nontrivial[1]);
}

TEST_CASE("trim removes useless states") {
  Dfa d = parse_automaton(
      "alphabet: a b\nstates: p q r\ninitial: p\nfinal: q\n"
      "trans: p a q\ntrans: p b r\ntrans: r a r\n");
  Dfa t = trim(d);
  CHECK(t.num_states() == 2);  // r unreachable to finals
  CHECK(t.accepts(Word{0}));
  Dfa empty = parse_automaton(
      "alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a p\n");
  CHECK_THROWS_AS(trim(empty), EmptyLanguageError);
}

TEST_CASE("minimization") {
  // two redundant copies of the same final state
  Dfa d = parse_automaton(
      "alphabet: a b\nstates: p q r\ninitial: p\nfinal: q r\n"
      "trans: p a q\ntrans: p b r\ntrans: q a q\ntrans: r a r\n");
  Dfa m = minimize(d);
  CHECK(m.num_states() == 2);
  CHECK(language_equal(m, d));
  Dfa ex5 = load_fixture("ex5.an");
  CHECK(minimize(ex5).num_states() == 3);  // already minimal
  CHECK(language_equal(minimize(ex5), ex5));

  // all-final automaton with distinct partial transition maps must not
  // collapse to a single state
  Dfa allf = parse_automaton(
      "alphabet: 0 1\nstates: p q\ninitial: p\nfinal: p q\n"
      "trans: p 1 q\ntrans: q 0 q\ntrans: q 1 q\n");
  Dfa ma = minimize(allf);
  CHECK(ma.num_states() == 2);
  CHECK(language_equal(ma, allf));
}

TEST_CASE("determinization agrees with NFA semantics") {
  std::mt19937 rng(4242);
  for (int t = 0; t < 20; ++t) {
    Nfa n = testutil::random_nfa(rng, 4);
    Dfa d = determinize(n);
    for (auto& w : testutil::all_words(2, 6))
      CHECK(d.accepts(w) == n.accepts(w));
  }
}

TEST_CASE("language equality and infinity") {
  Dfa ex5 = load_fixture("ex5.an");
  CHECK(language_equal(ex5, ex5));
  CHECK(language_infinite(ex5));
  Dfa fin = parse_automaton(
      "alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n");
  CHECK_FALSE(language_infinite(fin));
  CHECK_FALSE(language_equal(ex5, load_fixture("binary.an")));
}

TEST_CASE("live states") {
  Dfa d = parse_automaton(
      "alphabet: a b\nstates: p q r\ninitial: p\nfinal: p q r\n"
      "trans: p a q\ntrans: q a q\ntrans: p b r\n");
  auto live = live_states(d);
  CHECK(live[0]);
  CHECK(live[1]);
  CHECK_FALSE(live[2]);  // r is a dead end: only finitely many completions
}
