#ifndef NAC_DENSEPOLY_HPP
#define NAC_DENSEPOLY_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nac/circuit.hpp"
#include "nac/field.hpp"
#include "nac/monomial.hpp"

namespace nac {

// Explicit monomial-to-coefficient map: the brute-force reference
// implementation of ring arithmetic. The constant term is keyed by the
// empty monomial. Deliberately naive; exists to validate the circuit
// algorithms.
class DensePoly {
 public:
  explicit DensePoly(FieldSpec spec) : spec_(std::move(spec)) {}

  static DensePoly constant(const Scalar& c);
  static DensePoly monomial(const FieldSpec& spec, const Monomial& m,
                            const Scalar& coeff);

  const FieldSpec& spec() const { return spec_; }
  const std::map<Monomial, Scalar, MonomialLess>& terms() const {
    return terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // 0 for constants and for the zero polynomial
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const { return coefficient(Monomial::empty()); }

  // Accumulates c into the coefficient of m, dropping zeros.
  void add_term(const Monomial& m, const Scalar& c);

  DensePoly operator+(const DensePoly& o) const;
  DensePoly operator-(const DensePoly& o) const;
  // Ordered nonassociative product: monomials join as tree nodes; the empty
  // monomial acts as the unit.
  DensePoly operator*(const DensePoly& o) const;
  DensePoly scaled(const Scalar& a) const;
  bool operator==(const DensePoly& o) const;
  bool operator!=(const DensePoly& o) const { return !(*this == o); }

  // Sum of c * m2 over monomials of the form (m m2); monomials equal to m
  // itself contribute nothing.
  DensePoly left_deriv(const Monomial& m) const;
  // Mirror: sum of c * m1 over monomials (m1 m).
  DensePoly right_deriv(const Monomial& m) const;

  DensePoly homogeneous_part(int j) const;

  // One "<coeff> <monomial>" line per term in encoded-word order, the
  // constant as a final "const <coeff>" line.
  std::string to_text() const;

  // Inverse of to_text (whitespace-lenient).
  static DensePoly parse_text(const FieldSpec& spec, const std::string& text);

 private:
  FieldSpec spec_;
  std::map<Monomial, Scalar, MonomialLess> terms_;
};

// Exact dense expansion of a circuit. Throws TermBudgetExceeded when any
// intermediate polynomial exceeds max_terms terms.
DensePoly expand(const Circuit& c, std::size_t max_terms = 100000);

// Associative word expansion: variables are letters, multiplication is
// concatenation, constants live on the empty word. Oracle for the bracket
// encoding.
std::map<std::vector<int>, Scalar> expand_words(const Circuit& c,
                                                std::size_t max_terms = 100000);

// Exhaustive factorization into two nonconstant factors (g + alpha, h + beta)
// by enumerating coefficient assignments over the forced degrees. Returns
// every pair whose product equals p; an empty result means p is irreducible.
// Prime fields only, desk scale; throws BudgetExceeded beyond the bounds.
std::vector<std::pair<DensePoly, DensePoly>> brute_factor(const DensePoly& p);

}  // namespace nac

#endif
