#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "numera/algnum.hpp"

using namespace numera;

static AlgField golden() {
  return AlgField::make(Poly::from_ints({-1, -1, 1}), Rat(3, 2), Rat(2));
}

TEST_CASE("polynomial arithmetic and division") {
  Poly a = Poly::from_ints({-1, 0, 1});  // x^2 - 1
  Poly b = Poly::from_ints({1, 1});      // x + 1
  auto [q, r] = Poly::divmod(a, b);
  CHECK(q == Poly::from_ints({-1, 1}));
  CHECK(r.is_zero());
  CHECK(Poly::gcd(a, b) == b.monic());
  CHECK((a * b).degree() == 3);
  CHECK(a.eval(Rat(3)) == 8);
  CHECK_THROWS_AS(Poly::divmod(a, Poly()), DivisionByZeroError);
}

TEST_CASE("squarefree part and Sturm counting") {
  Poly p = Poly::from_ints({0, 0, 1});  // x^2
  CHECK(p.squarefree_part() == Poly::x());
  Poly f = Poly::from_ints({-2, 0, 1}) * Poly::from_ints({-3, 1});
  SturmChain s(f.squarefree_part());
  CHECK(s.count_roots(Rat(0), Rat(10)) == 2);   // sqrt(2) and 3
  CHECK(s.count_roots(Rat(-10), Rat(0)) == 1);  // -sqrt(2)
  CHECK(s.count_roots(Rat(2), Rat(4)) == 1);
}

TEST_CASE("field construction guards") {
  CHECK_THROWS_AS(AlgField::make(Poly::from_ints({0, 0, 1}), Rat(-1), Rat(1)),
                  NotSquarefreeError);
  // two roots of x^2 - 1 inside the interval
  CHECK_THROWS_AS(AlgField::make(Poly::from_ints({-1, 0, 1}), Rat(-2), Rat(2)),
                  IsolationError);
  AlgField ok = AlgField::make(Poly::from_ints({-1, 0, 1}), Rat(0), Rat(2));
  CHECK(ok.degree() == 2);
}

TEST_CASE("golden field identities") {
  AlgField f = golden();
  AlgNum theta = f.root();
  CHECK(theta * theta == theta + Rat(1));
  CHECK(theta.inverse() == theta - Rat(1));  // 1/theta = theta - 1
  CHECK((theta * theta - theta - Rat(1)).is_zero_value());
  CHECK((theta * Rat(2) - Rat(3)).sign() == 1);
  CHECK(theta.to_decimal(6) == "1.618034");
  CHECK((theta - Rat(1)).to_decimal(6) == "0.618034");
  CHECK((theta * theta - theta - Rat(1)).to_decimal(6) == "0.000000");
  CHECK(theta.floor_value() == 1);
  CHECK((theta * theta).floor_value() == 2);
  CHECK((-theta).floor_value() == -2);
}

TEST_CASE("degenerate rational field") {
  AlgField f = AlgField::rationals(Rat(2));
  AlgNum a = f.from_rat(Rat(3, 7)), b = f.from_rat(Rat(1, 3));
  CHECK((a * b).rat_value() == Rat(1, 7));
  CHECK((f.from_rat(Rat(4, 7))).to_decimal(6) == "0.571429");
  CHECK(f.from_rat(Rat(-1, 7)).sign() == -1);
  CHECK_THROWS_AS(f.zero().inverse(), DivisionByZeroError);
}

TEST_CASE("division with a reducible modulus") {
  // (x-2)(x^2-x-1), select the root 2
  Poly m = Poly::from_ints({-2, 1}) * Poly::from_ints({-1, -1, 1});
  AlgField f = AlgField::make(m, Rat(19, 10), Rat(21, 10));
  AlgNum two = f.root();
  CHECK(two == f.from_rat(Rat(2)));
  // x^2 - x - 1 evaluates to 1 at the selected root but is a zero divisor
  AlgNum zd = f.element(Poly::from_ints({-1, -1, 1}));
  CHECK(zd == f.one());
  CHECK(zd.inverse() == f.one());
  // x - 2 is value-zero: division must fail
  CHECK_THROWS_AS(f.element(Poly::from_ints({-2, 1})).inverse(),
                  DivisionByZeroError);
}

TEST_CASE("field axioms on random residues") {
  AlgField f = golden();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  auto rnd = [&] {
    Rat c0(num(rng), den(rng)), c1(num(rng), den(rng));
    c0.canonicalize();
    c1.canonicalize();
    return f.element(Poly({c0, c1}));
  };
  for (int i = 0; i < 1000; ++i) {
    AlgNum a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b * c) == (a * b) * c);
    CHECK(a - a == f.zero());
    if (!a.is_zero_value()) CHECK(a * a.inverse() == f.one());
    CHECK(compare(a, b) == -compare(b, a));
    CHECK((a * a).sign() >= 0);
  }
}

TEST_CASE("sign consistency with decimal evaluation") {
  AlgField f = golden();
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int i = 0; i < 200; ++i) {
    AlgNum a = f.element(Poly({Rat(num(rng)), Rat(num(rng))}));
    double v = a.approx();
    if (a.sign() > 0) CHECK(v > -1e-12);
    if (a.sign() < 0) CHECK(v < 1e-12);
    if (a.sign() == 0) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("enclosure and serialization") {
  AlgField f = golden();
  auto [lo, hi] = f.root().enclosure(Rat(1, 1000000));
  CHECK(hi - lo <= Rat(1, 1000000));
  CHECK(lo <= Rat(1618035, 1000000));
  CHECK(hi >= Rat(1618033, 1000000));
  std::string s = f.root().serialize(6);
  CHECK(s.find("poly:[0,1]") == 0);
  CHECK(s.find("field:[-1,-1,1]") != std::string::npos);
  CHECK(s.find("~1.618034") != std::string::npos);
}

TEST_CASE("mixing fields is rejected") {
  AlgField f = golden(), g = AlgField::rationals(Rat(0));
  CHECK_THROWS_AS(f.one() + g.one(), DomainError);
}
