#ifndef NAC_FACTOR_HPP
#define NAC_FACTOR_HPP

#include <optional>
#include <utility>
#include <vector>

#include "nac/pit.hpp"

namespace nac {

// Top-degree certificate monomial with its root split; the split fixes the
// candidate factor degrees.
struct SplitWitness {
  Monomial m, m1, m2;
  int d1 = 0, d2 = 0;
  Scalar cm;  // coefficient of m in f, nonzero
};

// Scalars of the constant-term recovery step. a, b, c are the coefficients
// of m1 in delta*g*h, gamma2*g and gamma1*h; gamma is the coefficient of m1
// in f; delta = c_m(f). roots are the tried values of xi = alpha * gamma2.
struct ConstantRecovery {
  Scalar a, b, c, gamma, delta;
  bool quadratic_used = false;
  std::vector<Scalar> roots;
  std::optional<Scalar> accepted_xi;
  std::optional<Scalar> accepted_eta;  // beta * gamma1
};

struct FactorOnceReport {
  std::optional<SplitWitness> witness;
  std::optional<ConstantRecovery> recovery;
};

// One factorization step: either a pair (g, h) of circuits with g * h
// exactly equal to the input polynomial, or nullopt when it is irreducible.
// Throws ConstantInput / ZeroPolynomial.
std::optional<std::pair<Circuit, Circuit>> factor_once(
    const Circuit& c, FactorOnceReport* report = nullptr);

bool is_irreducible(const Circuit& c);

// Complete factorization into irreducible factors. `shape` records the
// product bracketing as a tree whose leaf k stands for factors[k-1];
// unit * (that bracketed product) equals the input polynomial. Factors are
// normalized: the lexicographically least nonzero monomial has coefficient
// one, constants last.
struct Factorization {
  Scalar unit;
  std::vector<Circuit> factors;
  Monomial shape;  // empty for constant inputs
};

Factorization factor(const Circuit& c);

}  // namespace nac

#endif
