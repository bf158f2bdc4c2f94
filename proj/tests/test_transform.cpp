#include "doctest.h"

#include "nac/pit.hpp"
#include "nac/transform.hpp"
#include "test_util.hpp"

using namespace nac;
using nactest::Rng;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

DensePoly expand_part(const HomogeneousParts& hp, int j) {
  if (j > hp.degree_bound() || !hp.parts[j]) return DensePoly(hp.spec);
  return expand(*hp.parts[j]);
}

// dense oracle for the whole split
DensePoly sum_of_parts(const HomogeneousParts& hp) {
  DensePoly s(hp.spec);
  for (int j = 0; j <= hp.degree_bound(); ++j) s = s + expand_part(hp, j);
  return s;
}

}  // namespace

TEST_CASE("homogenize splits (x1 x1) + x1") {
  Circuit c = parse_circuit(
      "field Q\nvars 1\ng0 = var x1\ng1 = mul g0 g0\ng2 = add g1 g0\noutput g2\n");
  HomogeneousParts hp = homogenize(c);
  CHECK(hp.constant.is_zero());
  CHECK_FALSE(hp.parts[0].has_value());
  REQUIRE(hp.degree_bound() == 2);
  CHECK(expand_part(hp, 1) ==
        DensePoly::monomial(kQ, Monomial::var(1), Scalar::one(kQ)));
  CHECK(expand_part(hp, 2) ==
        DensePoly::monomial(kQ, parse_monomial("(x1 x1)"), Scalar::one(kQ)));
  for (int j = 1; j <= 2; ++j) {
    REQUIRE(hp.parts[j]->degrees.has_value());
    CHECK(hp.parts[j]->degree() == j);
  }
}

TEST_CASE("a homogeneous input keeps only its own degree") {
  Rng rng(43);
  DensePoly g = nactest::rand_dense(rng, kQ, 2, 1, 2, false);
  DensePoly h = nactest::rand_dense(rng, kQ, 2, 2, 2, false);
  DensePoly f = g.homogeneous_part(1) * h.homogeneous_part(2);
  if (f.is_zero()) return;
  Circuit c = nactest::circuit_from_dense(f, 2);
  HomogeneousParts hp = homogenize(c);
  CHECK(expand_part(hp, 3) == f);
  for (int j = 0; j <= hp.degree_bound(); ++j)
    if (j != 3) CHECK(expand_part(hp, j).is_zero());
}

TEST_CASE("parts sum to the input polynomial") {
  Rng rng(47);
  for (int i = 0; i < 80; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(5);
    Circuit c = nactest::rand_circuit(rng, spec, 3, 6, 15);
    HomogeneousParts hp = homogenize(c);
    CHECK(sum_of_parts(hp) == expand(c));
    CHECK(hp.constant == eval_at_zero(c));
  }
}

TEST_CASE("homogenize is idempotent in effect") {
  Rng rng(53);
  for (int i = 0; i < 25; ++i) {
    Circuit c = nactest::rand_circuit(rng, kQ, 2, 5, 12);
    HomogeneousParts hp = homogenize(c);
    for (int j = 1; j <= hp.degree_bound(); ++j) {
      if (!hp.parts[j]) continue;
      HomogeneousParts again = homogenize(*hp.parts[j]);
      for (int k = 0; k <= again.degree_bound(); ++k) {
        if (k == j)
          CHECK(expand_part(again, k) == expand_part(hp, j));
        else
          CHECK(expand_part(again, k).is_zero());
      }
    }
  }
}

TEST_CASE("bracket encoding of a single monomial circuit") {
  // ((x y) y) reads as the word ( ( x y ) y )
  Circuit c = parse_circuit(
      "field Q\nvars 2\ng0 = var x1\ng1 = var x2\ng2 = mul g0 g1\n"
      "g3 = mul g2 g1\noutput g3\n");
  Circuit enc = encode_brackets(c);
  CHECK(enc.num_vars == 4);  // brackets are variables 3 and 4
  auto words = expand_words(enc);
  REQUIRE(words.size() == 1);
  const int L = 3, R = 4;
  std::vector<int> expect = {L, L, 1, 2, R, 2, R};
  CHECK(words.begin()->first == expect);
  CHECK(words.begin()->second.is_one());
}

TEST_CASE("a bare variable is left untouched by the encoding") {
  Circuit c = parse_circuit("field Q\nvars 1\ng0 = var x1\noutput g0\n");
  auto words = expand_words(encode_brackets(c));
  REQUIRE(words.size() == 1);
  CHECK(words.begin()->first == std::vector<int>{1});
}

TEST_CASE("encoded expansion equals the termwise encoded expansion") {
  Rng rng(59);
  for (int i = 0; i < 60; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(3);
    Circuit c = nactest::rand_circuit(rng, spec, 2, 5, 12);
    const int n = c.num_vars;
    auto words = expand_words(encode_brackets(c));
    DensePoly p = expand(c);
    // oracle: encode each monomial of the plain expansion
    std::map<std::vector<int>, Scalar> expect;
    for (const auto& [m, coeff] : p.terms()) {
      EncodedWord w = m.encode();
      for (int& letter : w) {
        if (letter == kLParen) letter = n + 1;
        if (letter == kRParen) letter = n + 2;
      }
      expect.emplace(w, coeff);
    }
    REQUIRE(words.size() == expect.size());
    auto it = expect.begin();
    for (const auto& [w, s] : words) {
      CHECK(w == it->first);
      CHECK(s == it->second);
      ++it;
    }
  }
}

TEST_CASE("worked prefix derivatives") {
  // f = (x (y y)): stripping x leaves (y y)
  Circuit c1 = nactest::circuit_from_dense(
      DensePoly::monomial(kQ, parse_monomial("(x1 (x2 x2))"), Scalar::one(kQ)),
      2);
  CHECK(expand(left_derivative(c1, Monomial::var(1))) ==
        DensePoly::monomial(kQ, parse_monomial("(x2 x2)"), Scalar::one(kQ)));

  // f = 3((x y) y) + 2(x (y y)): only the first term has prefix (x y)
  DensePoly f(kQ);
  f.add_term(parse_monomial("((x1 x2) x2)"), Scalar::from_int(kQ, 3));
  f.add_term(parse_monomial("(x1 (x2 x2))"), Scalar::from_int(kQ, 2));
  Circuit c2 = nactest::circuit_from_dense(f, 2);
  DensePoly d = expand(left_derivative(c2, parse_monomial("(x1 x2)")));
  CHECK(d == DensePoly::monomial(kQ, Monomial::var(2), Scalar::from_int(kQ, 3)));
}

TEST_CASE("derivative of a product splits off the coefficient") {
  Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(5);
    DensePoly g = nactest::rand_dense(rng, spec, 2, 2, 3, false)
                      .homogeneous_part(2);
    DensePoly h = nactest::rand_dense(rng, spec, 2, 2, 3, false)
                      .homogeneous_part(2);
    if (g.is_zero() || h.is_zero()) continue;
    Monomial m1 = g.terms().begin()->first;
    CircuitBuilder b(spec, 2);
    int gg = append_circuit(b, nactest::circuit_from_dense(g, 2));
    int hh = append_circuit(b, nactest::circuit_from_dense(h, 2));
    Circuit prod = b.extract(b.mul(gg, hh));
    DensePoly expect = h.scaled(g.coefficient(m1));  // c_{m1}(g) * h
    CHECK(expand(left_derivative(prod, m1)) == expect);
    Monomial m2 = h.terms().begin()->first;
    CHECK(expand(right_derivative(prod, m2)) == g.scaled(h.coefficient(m2)));
  }
}

TEST_CASE("derivatives match the dense oracle exactly") {
  Rng rng(67);
  for (int i = 0; i < 120; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(2);
    Circuit c = nactest::rand_circuit(rng, spec, 2, 5, 14);
    DensePoly p = expand(c);
    Monomial m = nactest::rand_monomial(rng, 2, nactest::rand_int(rng, 1, 3));
    CHECK(expand(left_derivative(c, m)) == p.left_deriv(m));
    CHECK(expand(right_derivative(c, m)) == p.right_deriv(m));
  }
}

TEST_CASE("derivatives are linear") {
  Rng rng(71);
  for (int i = 0; i < 40; ++i) {
    Circuit c1 = nactest::rand_circuit(rng, kQ, 2, 4, 10);
    Circuit c2 = nactest::rand_circuit(rng, kQ, 2, 4, 10);
    CircuitBuilder b(kQ, 2);
    Circuit sum = b.extract(b.add({append_circuit(b, c1), append_circuit(b, c2)}));
    Monomial m = nactest::rand_monomial(rng, 2, nactest::rand_int(rng, 1, 2));
    CHECK(expand(left_derivative(sum, m)) ==
          expand(left_derivative(c1, m)) + expand(left_derivative(c2, m)));
  }
}

TEST_CASE("derivative degree guard on homogeneous circuits") {
  DensePoly f = DensePoly::monomial(kQ, parse_monomial("(x1 x2)"),
                                    Scalar::one(kQ));
  Circuit c = nactest::circuit_from_dense(f, 2);
  REQUIRE(c.degrees.has_value());
  CHECK_THROWS_AS(left_derivative(c, parse_monomial("(x1 x2)")), DegreeError);
  CHECK_THROWS_AS(left_derivative(c, parse_monomial("((x1 x2) x1)")),
                  DegreeError);
  CHECK_NOTHROW(left_derivative(c, Monomial::var(1)));
}

TEST_CASE("coefficient extraction via the word automaton") {
  DensePoly f(kQ);
  f.add_term(parse_monomial("((x1 x2) x2)"), Scalar::from_int(kQ, 3));
  f.add_term(parse_monomial("(x1 (x2 x2))"), Scalar::from_int(kQ, 2));
  Circuit c = nactest::circuit_from_dense(f, 2);
  CHECK(coefficient(c, parse_monomial("((x1 x2) x2)")) ==
        Scalar::from_int(kQ, 3));
  CHECK(coefficient(c, parse_monomial("((x1 x1) x2)")).is_zero());
  CHECK(coefficient(c, Monomial::empty()).is_zero());
}

TEST_CASE("coefficient matches the dense expansion on random circuits") {
  Rng rng(73);
  for (int i = 0; i < 200; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(5);
    Circuit c = nactest::rand_circuit(rng, spec, 2, 4, 12);
    DensePoly p = expand(c);
    Monomial m = nactest::rand_monomial(rng, 2, nactest::rand_int(rng, 1, 3));
    CHECK(coefficient(c, m) == p.coefficient(m));
    CHECK(coefficient(c, Monomial::empty()) == p.constant_term());
    // and the per-gate vector agrees at the output gate
    CHECK(coefficients_at_gates(c, m)[c.output] == p.coefficient(m));
  }
}

TEST_CASE("top-split components of small sums") {
  // f2 = (x y) + (y x): the only split is (1,1)
  DensePoly f2(kQ);
  f2.add_term(parse_monomial("(x1 x2)"), Scalar::one(kQ));
  f2.add_term(parse_monomial("(x2 x1)"), Scalar::one(kQ));
  Circuit c2 = normalize_alternating(nactest::circuit_from_dense(f2, 2));
  CHECK(expand(top_split_component(c2, 1, 1)) == f2);

  // f3 = ((x y) y) + (x (y y)) splits into its two terms
  DensePoly f3(kQ);
  f3.add_term(parse_monomial("((x1 x2) x2)"), Scalar::one(kQ));
  f3.add_term(parse_monomial("(x1 (x2 x2))"), Scalar::one(kQ));
  Circuit c3 = normalize_alternating(nactest::circuit_from_dense(f3, 2));
  DensePoly want21(kQ);
  want21.add_term(parse_monomial("((x1 x2) x2)"), Scalar::one(kQ));
  DensePoly want12(kQ);
  want12.add_term(parse_monomial("(x1 (x2 x2))"), Scalar::one(kQ));
  CHECK(expand(top_split_component(c3, 2, 1)) == want21);
  CHECK(expand(top_split_component(c3, 1, 2)) == want12);
}

TEST_CASE("the (a,b) component of a product is the whole product") {
  Rng rng(79);
  for (int i = 0; i < 30; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(3);
    DensePoly g = nactest::rand_dense(rng, spec, 2, 2, 2, false)
                      .homogeneous_part(2);
    DensePoly h = nactest::rand_dense(rng, spec, 2, 1, 2, false)
                      .homogeneous_part(1);
    if (g.is_zero() || h.is_zero()) continue;
    DensePoly f = g * h;
    Circuit c = normalize_alternating(nactest::circuit_from_dense(f, 2));
    REQUIRE(c.degrees.has_value());
    CHECK(expand(top_split_component(c, 2, 1)) == f);
    CHECK(expand(top_split_component(c, 1, 2)).is_zero());
  }
}

TEST_CASE("components over all splits sum to the polynomial") {
  Rng rng(83);
  for (int i = 0; i < 40; ++i) {
    const FieldSpec spec = i % 2 ? kQ : FieldSpec::prime(5);
    int d = nactest::rand_int(rng, 2, 4);
    DensePoly f = nactest::rand_dense(rng, spec, 2, d, 4, false)
                      .homogeneous_part(d);
    if (f.is_zero()) continue;
    Circuit c = normalize_alternating(nactest::circuit_from_dense(f, 2));
    DensePoly sum(spec);
    for (int a = 1; a < d; ++a)
      sum = sum + expand(top_split_component(c, a, d - a));
    CHECK(sum == f);
  }
}

TEST_CASE("top-split extraction validates its preconditions") {
  Circuit inhom = parse_circuit(
      "field Q\nvars 1\ng0 = var x1\ng1 = mul g0 g0\ng2 = add g0 g1\noutput g2\n");
  CHECK_THROWS_AS(top_split_component(inhom, 1, 1), NotHomogeneous);

  DensePoly f = DensePoly::monomial(kQ, parse_monomial("(x1 x1)"),
                                    Scalar::one(kQ));
  Circuit hom = nactest::circuit_from_dense(f, 1);  // annotated, not alternating
  REQUIRE(hom.degrees.has_value());
  CHECK_THROWS_AS(top_split_component(hom, 1, 1), NotNormalized);

  Circuit norm = normalize_alternating(hom);
  CHECK_THROWS_AS(top_split_component(norm, 2, 1), ValidationError);
  CHECK_NOTHROW(top_split_component(norm, 1, 1));
}
