#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "numera/counting.hpp"

using namespace numera;
using testutil::load_fixture;

TEST_CASE("counting tables match enumeration") {
  Dfa ex5 = load_fixture("ex5.an");
  CountingTables t = count_u_v(ex5, 5);
  std::vector<long> expect{1, 1, 3, 5, 11, 21};
  for (int n = 0; n <= 5; ++n) CHECK(t.u[ex5.initial][n] == expect[n]);

  Dfa bin = load_fixture("binary.an");
  CountingTables tb = count_u_v(bin, 10);
  CHECK(tb.u[bin.initial][0] == 1);
  for (int n = 1; n <= 10; ++n)
    CHECK(tb.u[bin.initial][n] == Int(1) << (n - 1));

  Dfa fib = load_fixture("fib.an");
  CountingTables tf = count_u_v(fib, 5);
  std::vector<long> ef{1, 1, 1, 2, 3, 5};
  for (int n = 0; n <= 5; ++n) CHECK(tf.u[fib.initial][n] == ef[n]);

  // recurrence invariant on all fixtures
  for (const char* name : {"ex5.an", "binary.an", "evena.an", "fib.an"}) {
    Dfa d = load_fixture(name);
    CountingTables tt = count_u_v(d, 30);
    for (int q = 0; q < d.num_states(); ++q)
      for (int n = 1; n <= 30; ++n) {
        Int sum = 0;
        for (int s = 0; s < d.alphabet.size(); ++s)
          if (d.delta[q][s] != kSink) sum += tt.u[d.delta[q][s]][n - 1];
        CHECK(tt.u[q][n] == sum);
        CHECK(tt.v[q][n] == tt.v[q][n - 1] + tt.u[q][n]);
      }
  }
}

TEST_CASE("ranking agrees with brute force up to 200") {
  for (const char* name : {"ex5.an", "binary.an", "evena.an", "fib.an"}) {
    Dfa d = load_fixture(name);
    auto lang = testutil::enumerate_language(d, 12);
    REQUIRE(lang.size() >= 201);
    for (int n = 0; n <= 200; ++n) {
      CHECK(genealogical_rep(d, Int(n)) == lang[n]);
      CHECK(genealogical_val(d, lang[n]) == n);
    }
  }
}

TEST_CASE("ranking edge cases") {
  Dfa ex5 = load_fixture("ex5.an");
  CHECK(genealogical_val(ex5, ex5.alphabet.parse_word("aac")) == 5);
  CHECK(genealogical_val(ex5, Word{}) == 0);
  CHECK_THROWS_AS(genealogical_val(ex5, ex5.alphabet.parse_word("b")),
                  NotInLanguageError);
  Dfa fin = parse_automaton(
      "alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n");
  CHECK(genealogical_rep(fin, Int(0)) == Word{0});
  CHECK_THROWS_AS(genealogical_rep(fin, Int(1)), DomainError);
}

TEST_CASE("growth rate extraction") {
  Dfa ex5 = load_fixture("ex5.an");
  AlgField f = perron_theta(ex5);
  CHECK(f.degree() == 1);  // modulus reduces to x - 2
  CHECK(f.root() == f.from_rat(Rat(2)));

  Dfa bin = load_fixture("binary.an");
  CHECK(perron_theta(bin).root().approx() == doctest::Approx(2.0));

  Dfa fib = load_fixture("fib.an");
  AlgField g = perron_theta(fib);
  CHECK(g.modulus() == Poly::from_ints({-1, -1, 1}));
  CHECK(g.root().approx() == doctest::Approx(1.6180339887));

  // single self-loop: polynomial growth only
  Dfa slow = parse_automaton(
      "alphabet: a\nstates: p\ninitial: p\nfinal: p\ntrans: p a p\n");
  CHECK_THROWS_AS(perron_theta(slow), SubExponentialError);
}

TEST_CASE("growth coefficients") {
  auto profile = [](const char* name) {
    Dfa d = load_fixture(name);
    CountingTables t = count_u_v(d, 200);
    return std::tuple<Dfa, GrowthProfile>(
        d, growth_profile(d, t, perron_theta(d)));
  };
  {
    auto [d, g] = profile("ex5.an");
    CHECK(g.a[0] == g.field.from_rat(Rat(1)));
    CHECK(g.a[1] == g.field.from_rat(Rat(2)));
    CHECK(g.a[2] == g.field.from_rat(Rat(1)));
    CHECK(g.exactness == Exactness::Exact);
    CHECK(g.poly_degree == 0);
  }
  {
    auto [d, g] = profile("binary.an");
    CHECK(g.a[d.initial] == g.field.one());
    CHECK(g.a[1 - d.initial] == g.field.from_rat(Rat(2)));
  }
  {
    auto [d, g] = profile("fib.an");
    AlgNum tau = g.field.root();
    CHECK(g.a[0] == g.field.one());
    CHECK(g.a[1] == tau + Rat(1));  // tau^2
    CHECK(g.a[2] == tau);
  }
  // weight relation: sum over letters of a_{q.sigma} = theta * a_q, all fixtures
  for (const char* name : {"ex5.an", "binary.an", "evena.an", "fib.an"}) {
    auto [d, g] = profile(name);
    AlgNum theta = g.field.root();
    for (int q = 0; q < d.num_states(); ++q) {
      AlgNum sum = g.field.zero();
      for (int s = 0; s < d.alphabet.size(); ++s)
        if (d.delta[q][s] != kSink) sum += g.a[d.delta[q][s]];
      CHECK(sum == theta * g.a[q]);
    }
  }
}

TEST_CASE("hypothesis report") {
  Dfa ex5 = load_fixture("ex5.an");
  auto r = check_hypothesis(ex5, count_u_v(ex5, 200));
  CHECK(r.verdict == "PASS");
  CHECK(r.fitted_degree == 0);
  CHECK(r.branching_cycle);

  Dfa bin = load_fixture("binary.an");
  CHECK(check_hypothesis(bin, count_u_v(bin, 200)).verdict == "PASS");

  Dfa fin = parse_automaton(
      "alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n");
  auto rf = check_hypothesis(fin, count_u_v(fin, 50));
  CHECK(rf.verdict == "INCONCLUSIVE");
  CHECK(rf.reason == "L finite");
}

TEST_CASE("simplification drops negligible states") {
  Dfa ex5 = load_fixture("ex5.an");
  CountingTables t = count_u_v(ex5, 200);
  GrowthProfile g = growth_profile(ex5, t, perron_theta(ex5));
  Dfa s = simplify_language(ex5, g);
  CHECK(language_equal(minimize(s), minimize(ex5)));  // nothing to drop

  // append a polynomially growing tail: q0 --b--> t, t --b--> t
  Dfa aug = ex5;
  aug.add_state("t", true);
  aug.delta[0][1] = 3;
  aug.delta[3][1] = 3;
  CountingTables ta = count_u_v(aug, 200);
  GrowthProfile ga = growth_profile(aug, ta, perron_theta(aug));
  CHECK(ga.a[3].is_zero_value());
  Dfa sa = simplify_language(aug, ga);
  CHECK(language_equal(minimize(sa), minimize(ex5)));
  CHECK_FALSE(language_equal(minimize(aug), minimize(ex5)));
}

TEST_CASE("transducer labels on the parity fixture") {
  Dfa e = load_fixture("evena.an");
  // states: e=0 (initial), o=1; letters a=0, b=1
  CHECK(transducer_label(e, 0, 0) == std::vector<int>{1, 0});
  CHECK(transducer_label(e, 0, 1) == std::vector<int>{1, 1});
  CHECK(transducer_label(e, 1, 0) == std::vector<int>{1, 0});
  CHECK(transducer_label(e, 1, 1) == std::vector<int>{2, 0});
}

TEST_CASE("beta sequences match direct recomputation") {
  for (const char* name : {"evena.an", "ex5.an"}) {
    Dfa d = load_fixture(name);
    for (auto& w : testutil::all_words(d.alphabet.size(), 8)) {
      if (w.empty()) continue;
      if (d.run(d.initial, w) == kSink) continue;
      BetaCoeffs b = beta_coefficients(d, w, static_cast<int>(w.size()) - 1);
      // direct formula: count smaller siblings landing in each state
      int q = d.initial;
      for (std::size_t j = 0; j < w.size(); ++j) {
        for (int i = 0; i < d.num_states(); ++i) {
          int direct = (i == d.initial) ? 1 : 0;
          for (int s = 0; s < w[j]; ++s)
            if (d.delta[q][s] == i) ++direct;
          CHECK(b.beta[i][j] == direct);
        }
        q = d.delta[q][w[j]];
      }
    }
  }
}

TEST_CASE("beta coefficients of an ultimately periodic word") {
  Dfa ex5 = load_fixture("ex5.an");
  UpWord w = ex5.alphabet.parse_upword("a(acc)^w");
  BetaCoeffs b = beta_coefficients(ex5, w);
  REQUIRE(b.periodic_input);
  std::vector<int> q0_expect{1, 1, 1, 2, 1, 1, 2};
  for (int j = 0; j < 7; ++j) {
    CHECK(b.beta[0][j] == q0_expect[j]);
    CHECK(b.beta[1][j] == 0);
    CHECK(b.beta[2][j] == (j >= 3 && j % 3 == 0 ? 1 : 0));
  }
  CHECK(b.period_len[0] == 3);
  CHECK(b.period_len[2] == 3);
  CHECK(b.period_len[1] == 1);
  for (int q = 0; q < 3; ++q) CHECK(b.period_len[q] <= 3 * 3);
  CHECK_THROWS_AS(
      beta_coefficients(ex5, ex5.alphabet.parse_upword("(b)^w")),
      NotALeftFactorError);
}
