#ifndef NAC_TRANSFORM_HPP
#define NAC_TRANSFORM_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nac/circuit.hpp"
#include "nac/densepoly.hpp"

namespace nac {

// A polynomial represented as constant term plus a constant-free gate.
// The gate is absent when the constant-free part is (syntactically) zero.
struct PolyValue {
  Scalar c0;
  std::optional<int> gate;

  explicit PolyValue(Scalar c) : c0(std::move(c)) {}
  PolyValue(Scalar c, std::optional<int> g) : c0(std::move(c)), gate(g) {}
  bool is_const(const FieldSpec&) const { return !gate.has_value(); }
};

// Homogeneous parts of a polynomial: parts[j] computes the degree-j part,
// absent when it is syntactically zero. parts[0], when present, is a
// constant circuit; `constant` always carries the degree-0 value.
struct HomogeneousParts {
  FieldSpec spec = FieldSpec::rationals();
  int num_vars = 0;
  Scalar constant = Scalar::zero(FieldSpec::rationals());
  std::vector<std::optional<Circuit>> parts;

  int degree_bound() const { return static_cast<int>(parts.size()) - 1; }
};

// A shared arena for building circuits derived from one input circuit.
// Every gate in the arena computes a polynomial with zero constant term
// (constants are split off into PolyValue::c0 on import), which keeps
// products of subcircuits aligned with the ring's monomial structure.
// Derived circuits reference the original sub-DAG instead of copying it,
// and per-monomial DP tables are memoized across all calls.
class Workspace {
 public:
  Workspace(const FieldSpec& spec, int num_vars)
      : b_(spec, num_vars), zero_(Scalar::zero(spec)) {}

  CircuitBuilder& builder() { return b_; }
  const FieldSpec& spec() const { return b_.spec(); }

  // Splits every gate into constant term + constant-free remainder.
  PolyValue import(const Circuit& c);
  Circuit to_circuit(const PolyValue& v);

  PolyValue pv_const(const Scalar& c) { return PolyValue(c); }
  PolyValue pv_zero() { return PolyValue(zero_); }
  PolyValue pv_add(const PolyValue& a, const PolyValue& b);
  PolyValue pv_sub(const PolyValue& a, const PolyValue& b);
  PolyValue pv_mul(const PolyValue& a, const PolyValue& b);
  PolyValue pv_scale(const Scalar& s, const PolyValue& a);

  // Constant term and per-degree constant-free gates.
  struct Parts {
    Scalar c0;
    std::vector<std::optional<int>> by_degree;  // index 1..bound
    int bound() const { return static_cast<int>(by_degree.size()) - 1; }
    std::optional<int> at(int j) const {
      return (j >= 1 && j <= bound()) ? by_degree[j] : std::nullopt;
    }
  };
  Parts parts_of(const PolyValue& v);

  // Prefix (left = true) or suffix derivative with respect to a proper
  // monomial m: the sum of c * m2 over monomials (m m2) of v (left), or
  // c * m1 over monomials (m1 m) (right). Monomials equal to m contribute
  // nothing; the result never has a constant term.
  PolyValue derive(const PolyValue& v, const Monomial& m, bool left);

  // Coefficient of a nonempty monomial, by DP over the subtrees of m.
  Scalar coeff(const PolyValue& v, const Monomial& m);

 private:
  int gate_degree_bound(int g);
  int scale_gate(const Scalar& s, int g);
  std::optional<int> combine(const std::vector<int>& gs);
  Scalar coeff_gate(int g, const Monomial& m);
  std::optional<int> derive_gate(int g, const Monomial& m, bool left);
  void pin(const Monomial& m);

  CircuitBuilder b_;
  Scalar zero_;
  std::vector<int> bound_memo_;
  std::map<int, Parts> parts_memo_;
  std::map<std::tuple<int, const void*>, Scalar> coeff_memo_;
  std::map<std::tuple<int, const void*, bool>, std::optional<int>> deriv_memo_;
  std::vector<Monomial> pinned_;
  std::set<const void*> pinned_ids_;
};

// --- public passes ---------------------------------------------------------

// Gate-splitting homogenization: each part circuit is homogeneous with a
// valid degree annotation; the parts sum to the input polynomial.
HomogeneousParts homogenize(const Circuit& c);

// Rebuilds the circuit over num_vars + 2 variables, replacing every proper
// product u*v by the ordered word product '(' * u * v * ')', where the two
// bracket letters are variables n+1 and n+2. Products with a constant
// operand are scalar multiples and stay unbracketed, so the result, read as
// an associative word circuit, computes exactly the encoded monomials of
// the input.
Circuit encode_brackets(const Circuit& c);

inline EncodedWord encode_monomial(const Monomial& m) { return m.encode(); }

// Circuit for the sum of c * m2 over monomials (m m2) of c's polynomial.
// Shares the input's sub-DAG. Throws DegreeError when the input is
// homogeneous (annotated) and deg(m) >= deg(c).
Circuit left_derivative(const Circuit& c, const Monomial& m);
// Mirror: sum of c * m1 over monomials (m1 m).
Circuit right_derivative(const Circuit& c, const Monomial& m);

// Exact coefficient of m, via evaluation of the bracket-encoded circuit on
// the 0/1 transition matrices of the word automaton that accepts exactly
// the encoding of m; the answer sits in the top-right entry.
Scalar coefficient(const Circuit& c, const Monomial& m);

// For a homogeneous circuit of degree a+b in alternating form: the sum of
// those monomials whose root split is (left degree a, right degree b).
// May return a zero circuit. Throws NotHomogeneous / NotNormalized.
Circuit top_split_component(const Circuit& c, int a, int b);

}  // namespace nac

#endif
