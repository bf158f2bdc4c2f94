#ifndef NAC_CIRCUIT_HPP
#define NAC_CIRCUIT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nac/field.hpp"
#include "nac/monomial.hpp"

namespace nac {

enum class GateKind { Input, Const, Mul, Add };

// One gate of a circuit DAG. Mul is strictly binary with designated left and
// right operands; Add has unbounded fanin >= 1. Referenced ids always precede
// the gate itself.
struct Gate {
  GateKind kind;
  int var = 0;                  // Input: variable index in [1, num_vars]
  std::optional<Scalar> value;  // Const
  int lhs = -1, rhs = -1;       // Mul
  std::vector<int> args;        // Add

  static Gate input(int v) {
    Gate g{GateKind::Input};
    g.var = v;
    return g;
  }
  static Gate constant(Scalar s) {
    Gate g{GateKind::Const};
    g.value = std::move(s);
    return g;
  }
  static Gate mul(int l, int r) {
    Gate g{GateKind::Mul};
    g.lhs = l;
    g.rhs = r;
    return g;
  }
  static Gate add(std::vector<int> kids) {
    Gate g{GateKind::Add};
    g.args = std::move(kids);
    return g;
  }
};

// A circuit over the free nonassociative noncommutative ring. Gates are
// stored in topological order; ids are dense indices. Immutable by
// convention: passes build new circuits.
struct Circuit {
  FieldSpec spec = FieldSpec::rationals();
  int num_vars = 0;
  std::vector<Gate> gates;
  int output = -1;
  // Per-gate degrees, present iff every gate computes a homogeneous
  // polynomial (Input 1, Const 0, Mul = l + r, Add children all equal).
  std::optional<std::vector<int>> degrees;

  int degree() const { return degrees ? (*degrees)[output] : -1; }
};

// Throws ValidationError unless the circuit satisfies all structural
// invariants (dense topological ids, arities, variable range, one field).
void validate(const Circuit& c);

// Incremental construction with hash-consing of inputs, constants and muls,
// plus local constant folding (0*x, 1*x, const*const, constant sums).
class CircuitBuilder {
 public:
  CircuitBuilder(FieldSpec spec, int num_vars)
      : spec_(std::move(spec)), num_vars_(num_vars) {}

  int input(int var);
  int constant(const Scalar& v);
  int zero() { return constant(Scalar::zero(spec_)); }
  int one() { return constant(Scalar::one(spec_)); }

  // Folding product: const operands are combined or absorbed.
  int mul(int l, int r);
  // Folding sum: zero constants dropped, constants merged, single child
  // returned as-is. Empty (after drops) yields the zero constant.
  int add(std::vector<int> kids);
  // Always materializes an Add gate (used by normalization wrappers).
  int add_gate(std::vector<int> kids);
  int scale(const Scalar& a, int g) { return mul(constant(a), g); }
  // Appends a gate verbatim; operand ids must already be valid in this
  // builder. Bypasses folding and caches.
  int append_raw(Gate g);

  const Gate& gate(int id) const { return gates_[id]; }
  int size() const { return static_cast<int>(gates_.size()); }
  const FieldSpec& spec() const { return spec_; }
  int num_vars() const { return num_vars_; }

  // Dead gates removed, ids remapped densely, topological order kept.
  Circuit extract(int output) const;

 private:
  int push(Gate g);

  FieldSpec spec_;
  int num_vars_;
  std::vector<Gate> gates_;
  std::map<int, int> input_cache_;
  std::map<Scalar, int, ScalarLess> const_cache_;
  std::map<std::pair<int, int>, int> mul_cache_;
};

// Splices a whole circuit into a builder (with folding); returns the id of
// its output gate in the builder.
int append_circuit(CircuitBuilder& b, const Circuit& c);

// Dead-gate elimination and bottom-up constant folding.
Circuit simplify(const Circuit& c);

// The constant term of the computed polynomial (evaluation at x = 0).
Scalar eval_at_zero(const Circuit& c);

// Per-gate degrees if the circuit is homogeneous gate-by-gate, else nullopt.
std::optional<std::vector<int>> try_annotate_degrees(const Circuit& c);

// Syntactic degree upper bound per gate (Add = max over children).
std::vector<int> degree_bounds(const Circuit& c);

// Equality up to Add-child order (canonical-form structural equality).
bool structurally_equal(const Circuit& a, const Circuit& b);

// Rewrites the circuit so that sums and products alternate: the output is an
// Add gate, every Mul operand is an Add gate or a Const, and every Add child
// is a Mul, Input or Const. The computed polynomial is unchanged.
Circuit normalize_alternating(const Circuit& c);

// True iff the circuit already has the alternating shape above.
bool is_alternating(const Circuit& c);

// A square matrix of gate ids living in some CircuitBuilder.
struct GateMatrix {
  int dim = 0;
  std::vector<int> ids;  // row-major, dim*dim

  GateMatrix() = default;
  GateMatrix(int d, int fill) : dim(d), ids(d * d, fill) {}
  int& at(int i, int j) { return ids[i * dim + j]; }
  int at(int i, int j) const { return ids[i * dim + j]; }
};

// Evaluates the circuit with + as matrix addition and x as ordered matrix
// multiplication. Every variable must be assigned a dim x dim matrix of
// gates in `out`; a Const gate embeds as c * I. Returns the output matrix.
GateMatrix eval_matrices(const Circuit& c, int dim,
                         const std::map<int, GateMatrix>& assign,
                         CircuitBuilder& out);

// Scalar twin of eval_matrices: matrices of field elements, row-major.
using ScalarMatrix = std::vector<Scalar>;
ScalarMatrix eval_scalar_matrices(const Circuit& c, int dim,
                                  const std::map<int, ScalarMatrix>& assign);

// --- textual format ------------------------------------------------------

// Parses the line-oriented circuit format (see README). Throws ParseError
// for syntax and ValidationError for structural violations.
Circuit parse_circuit(const std::string& text);

// Canonical serialization: gates in topological order, Add children sorted,
// scalars normalized. parse_circuit(print_circuit(c)) is structurally equal
// to c.
std::string print_circuit(const Circuit& c);

}  // namespace nac

#endif
