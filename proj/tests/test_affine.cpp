#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "numera/affine.hpp"
#include "numera/periodic.hpp"

using namespace numera;
using testutil::load_fixture;

namespace {

struct Sys {
  Dfa dfa;
  GrowthProfile growth;
};

Sys load(const char* name) {
  Dfa d = load_fixture(name);
  CountingTables t = count_u_v(d, 200);
  return {d, growth_profile(d, t, perron_theta(d))};
}

AlgNum q(const AlgField& f, long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return f.from_rat(r);
}

int edge_named(const FLAutomaton& fl, const std::string& name) {
  for (std::size_t i = 0; i < fl.edges.size(); ++i)
    if (fl.edges[i].name == name) return static_cast<int>(i);
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("edge maps of the weighted automaton") {
  auto [d, g] = load("ex5.an");
  const AlgField& f = g.field;
  FLAutomaton fl = build_FL(g, d);
  REQUIRE(fl.node_state.size() == 3);
  REQUIRE(fl.edges.size() == 5);
  CHECK(fl.initial_node == fl.node_of[0]);

  auto expect = [&](const char* name, long s, long o, int from, int to) {
    const auto& e = fl.edges[edge_named(fl, name)];
    CHECK(e.map.slope == f.from_rat(Rat(s)));
    CHECK(e.map.offset == f.from_rat(Rat(o)));
    CHECK(fl.node_state[e.from] == from);
    CHECK(fl.node_state[e.to] == to);
  };
  expect("id_a", 1, 0, 0, 1);
  expect("f_a", 4, 0, 1, 2);
  expect("f_b", 4, -1, 1, 0);
  expect("f_c", 2, -1, 1, 1);
  expect("id_c", 1, 0, 2, 1);

  auto [bd, bg] = load("binary.an");
  FLAutomaton bfl = build_FL(bg, bd);
  REQUIRE(bfl.edges.size() == 3);
  auto bexpect = [&](const char* name, long s, long o) {
    const auto& e = bfl.edges[edge_named(bfl, name)];
    CHECK(e.map.slope == bg.field.from_rat(Rat(s)));
    CHECK(e.map.offset == bg.field.from_rat(Rat(o)));
  };
  bexpect("id_1", 1, 0);
  bexpect("f_0", 2, 0);
  bexpect("f_1", 2, -1);
}

TEST_CASE("fixed points of cycle compositions") {
  auto [d, g] = load("ex5.an");
  const AlgField& f = g.field;
  FLAutomaton fl = build_FL(g, d);
  auto cyc = [&](const std::vector<std::string>& names) {
    std::vector<int> c;
    for (const auto& n : names) c.push_back(edge_named(fl, n));
    return compose_fixed_point(fl, c);
  };
  CHECK(cyc({"f_b", "id_a"}) == q(f, 1, 3));
  CHECK(cyc({"f_a", "id_c", "f_b", "id_a"}) == q(f, 1, 15));
  CHECK(cyc({"f_a", "id_c", "f_c"}) == q(f, 1, 7));
  CHECK(cyc({"f_c", "f_a", "id_c", "f_c"}) == q(f, 3, 5));
  CHECK(cyc({"f_c"}) == f.one());
  CHECK(cyc({"f_a", "id_c"}) == f.zero());
  // disconnected edge sequence is rejected
  CHECK_THROWS_AS(
      compose_fixed_point(fl, {edge_named(fl, "f_a"), edge_named(fl, "f_b")}),
      DomainError);
  // an identity edge between distinct nodes is not a cycle
  auto [bd, bg] = load("binary.an");
  FLAutomaton bfl = build_FL(bg, bd);
  CHECK_THROWS_AS(compose_fixed_point(bfl, {edge_named(bfl, "id_1")}),
                  DomainError);
}

TEST_CASE("enumeration of ultimately periodic values") {
  auto [d, g] = load("ex5.an");
  const AlgField& f = g.field;
  auto values = enumerate_up_values(g, d, 5, 1);
  auto has = [&](long num, long den) {
    AlgNum v = q(f, num, den);
    return std::any_of(values.begin(), values.end(),
                       [&](const UPValue& u) { return u.value == v; });
  };
  CHECK(has(2, 3));    // cycle ab
  CHECK(has(8, 15));   // cycle acba
  CHECK(has(18, 31));  // cycle accba
  CHECK(has(4, 5));    // cycle cacc
  CHECK(has(4, 7));    // cycle acc
  CHECK(has(1, 2));    // leftmost point
  CHECK(has(1, 1));    // rightmost point

  // deeper access paths reach points with longer preperiods
  auto deep = enumerate_up_values(g, d, 4, 3);
  AlgNum target = q(f, 23, 40);
  auto it = std::find_if(deep.begin(), deep.end(), [&](const UPValue& u) {
    return u.value == target;
  });
  REQUIRE(it != deep.end());
  // canonical form of aac(cacc)^w: the trailing c joins the rotated cycle
  CHECK(d.alphabet.upword_str(it->word) == "aa(ccac)^w");

  auto [bd, bg] = load("binary.an");
  auto bv = enumerate_up_values(bg, bd, 1, 0);
  REQUIRE(bv.size() == 2);  // shortest access path is always included
  CHECK(bv[0].value + bv[1].value == bg.field.from_rat(Rat(3, 2)));
}

TEST_CASE("enumerated witnesses agree with the expansion algorithm") {
  auto [d, g] = load("ex5.an");
  for (const auto& u : enumerate_up_values(g, d, 4, 2)) {
    CHECK(is_up_in_Linfty(d, u.word));
    CHECK(value_of_up(g, d, u.word) == u.value);
    if ((u.value - g.field.one()).sign() < 0) {
      RepResult r = represent(g, d, u.value);
      REQUIRE(r.status == RepStatus::UP);
      CHECK(value_of_up(g, d, r.word) == u.value);
    }
  }
}

TEST_CASE("cycle slopes are powers of the growth rate") {
  for (const char* name : {"ex5.an", "binary.an", "fib.an"}) {
    auto [d, g] = load(name);
    FLAutomaton fl = build_FL(g, d);
    AlgNum theta = g.field.root();
    for (const auto& u : enumerate_up_values(g, d, 3, 1)) {
      AffineMap m = compose_path(fl, u.cycle_edges);
      CHECK(m.slope ==
            alg_pow(theta, static_cast<unsigned>(u.cycle_edges.size())));
    }
  }
}

TEST_CASE("cycle and access languages at a state") {
  auto [d, g] = load("ex5.an");
  FLAutomaton fl = build_FL(g, d);
  auto [phi, nu] = phi_nu_automata(fl, 1);  // state q1
  const Alphabet& a = phi.alphabet;
  CHECK(phi.accepts(a.parse_word("f_c")));
  CHECK(phi.accepts(a.parse_word("f_a id_c")));
  CHECK(phi.accepts(a.parse_word("f_b id_a")));
  CHECK(phi.accepts({}));  // empty cycle stays at the state
  CHECK_FALSE(phi.accepts(a.parse_word("f_a")));
  CHECK_FALSE(nu.accepts({}));
  CHECK(nu.accepts(a.parse_word("id_a")));
  CHECK(nu.accepts(a.parse_word("id_a f_c")));
  CHECK_FALSE(nu.accepts(a.parse_word("f_c")));

  // phi is closed under concatenation
  auto words = testutil::all_words(a.size(), 3);
  std::vector<Word> in_phi;
  for (auto& w : words)
    if (phi.accepts(w)) in_phi.push_back(w);
  for (const auto& u : in_phi)
    for (const auto& v : in_phi) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(phi.accepts(uv));
    }

  // nu concatenated with phi stays in nu
  for (auto& w : words) {
    if (!nu.accepts(w)) continue;
    for (const auto& v : in_phi) {
      Word wv = w;
      wv.insert(wv.end(), v.begin(), v.end());
      CHECK(nu.accepts(wv));
    }
  }
}
