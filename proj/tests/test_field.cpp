#include "doctest.h"

#include "nac/field.hpp"
#include "test_util.hpp"

using namespace nac;
using nactest::Rng;

TEST_CASE("rational arithmetic is exact") {
  FieldSpec q = FieldSpec::rationals();
  Scalar third = parse_scalar(q, "1/3");
  Scalar sixth = parse_scalar(q, "1/6");
  CHECK((third + sixth) == parse_scalar(q, "1/2"));
  CHECK((third + sixth).to_string() == "1/2");

  Scalar x = parse_scalar(q, "-7/4");
  CHECK((Scalar::zero(q) * x).is_zero());
  CHECK((x * x.inv()).is_one());
  CHECK((x - x).is_zero());
}

TEST_CASE("prime field arithmetic") {
  FieldSpec f5 = FieldSpec::prime(5);
  Scalar two = Scalar::from_int(f5, 2);
  CHECK(two.inv() == Scalar::from_int(f5, 3));  // 2*3 = 6 = 1 mod 5
  CHECK((two * two.inv()).is_one());
  CHECK((Scalar::zero(f5) * two).is_zero());
  CHECK(Scalar::from_int(f5, -3) == Scalar::from_int(f5, 2));
  CHECK(parse_scalar(f5, "7") == Scalar::from_int(f5, 2));
  CHECK_THROWS_AS(Scalar::zero(f5).inv(), DivisionByZero);
}

TEST_CASE("field spec validation") {
  CHECK_THROWS_AS(FieldSpec::prime(4), ValidationError);
  CHECK_THROWS_AS(FieldSpec::prime(1), ValidationError);
  CHECK(FieldSpec::prime(2).modulus() == 2);
  CHECK(FieldSpec::prime(101).modulus() == 101);
  FieldSpec q = FieldSpec::rationals();
  FieldSpec f5 = FieldSpec::prime(5);
  CHECK_THROWS_AS(Scalar::one(q) + Scalar::one(f5), FieldMismatch);
}

TEST_CASE("field axioms on random triples") {
  Rng rng(7);
  for (const FieldSpec& spec :
       {FieldSpec::rationals(), FieldSpec::prime(5), FieldSpec::prime(2)}) {
    for (int i = 0; i < 200; ++i) {
      Scalar a = nactest::rand_scalar(rng, spec);
      Scalar b = nactest::rand_scalar(rng, spec);
      Scalar c = nactest::rand_scalar(rng, spec);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == Scalar::zero(spec));
      if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(spec));
    }
  }
}

TEST_CASE("quadratic roots over the rationals") {
  FieldSpec q = FieldSpec::rationals();
  auto S = [&](long long v) { return Scalar::from_int(q, v); };

  auto roots = solve_quadratic(S(1), S(-5), S(6));  // (x-2)(x-3)
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == S(2));
  CHECK(roots[1] == S(3));

  CHECK(solve_quadratic(S(1), S(0), S(1)).empty());  // x^2 + 1
  CHECK(solve_quadratic(S(1), S(0), S(-2)).empty()); // irrational sqrt(2)

  auto lin = solve_quadratic(S(0), S(2), S(-5));  // 2x = 5
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == parse_scalar(q, "5/2"));

  auto dbl = solve_quadratic(S(1), S(-4), S(4));  // (x-2)^2
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0] == S(2));

  // rational non-integer roots: (2x-1)(3x+5) = 6x^2 + 7x - 5
  auto rr = solve_quadratic(S(6), S(7), S(-5));
  REQUIRE(rr.size() == 2);
  CHECK(rr[0] == parse_scalar(q, "-5/3"));
  CHECK(rr[1] == parse_scalar(q, "1/2"));

  CHECK_THROWS_AS(solve_quadratic(S(0), S(0), S(3)), DegenerateEquation);
}

TEST_CASE("quadratic roots over F5 match the exhaustive oracle") {
  FieldSpec f5 = FieldSpec::prime(5);
  auto S = [&](long long v) { return Scalar::from_int(f5, v); };

  // x^2 + 1 over F5: checking residues 0..4 by hand gives {2, 3}
  auto roots = solve_quadratic(S(1), S(0), S(1));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == S(2));
  CHECK(roots[1] == S(3));

  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Scalar c2 = nactest::rand_scalar(rng, f5);
    Scalar c1 = nactest::rand_scalar(rng, f5);
    Scalar c0 = nactest::rand_scalar(rng, f5);
    if (c2.is_zero() && c1.is_zero()) continue;
    auto rs = solve_quadratic(c2, c1, c0);
    std::vector<Scalar> expect;  // independent residue-by-residue check
    for (std::uint64_t r = 0; r < 5; ++r) {
      Scalar x = Scalar::from_residue(f5, r);
      if (((c2 * x + c1) * x + c0).is_zero()) expect.push_back(x);
    }
    REQUIRE(rs.size() == expect.size());
    for (std::size_t k = 0; k < rs.size(); ++k) CHECK(rs[k] == expect[k]);
  }
}

TEST_CASE("every returned rational root satisfies the equation") {
  Rng rng(13);
  FieldSpec q = FieldSpec::rationals();
  for (int i = 0; i < 200; ++i) {
    Scalar c2 = nactest::rand_scalar(rng, q);
    Scalar c1 = nactest::rand_scalar(rng, q);
    Scalar c0 = nactest::rand_scalar(rng, q);
    if (c2.is_zero() && c1.is_zero()) continue;
    for (const Scalar& r : solve_quadratic(c2, c1, c0))
      CHECK(((c2 * r + c1) * r + c0).is_zero());
  }
}

TEST_CASE("scalar parsing rejects junk") {
  FieldSpec q = FieldSpec::rationals();
  CHECK_THROWS_AS(parse_scalar(q, "x"), ParseError);
  CHECK_THROWS_AS(parse_scalar(q, "1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar(q, ""), ParseError);
  CHECK_THROWS_AS(parse_scalar(q, "1.5"), ParseError);
  CHECK_THROWS_AS(parse_scalar(FieldSpec::prime(5), "2/3"), ParseError);
}
