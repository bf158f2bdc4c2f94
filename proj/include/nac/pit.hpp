#ifndef NAC_PIT_HPP
#define NAC_PIT_HPP

#include <memory>
#include <optional>
#include <vector>

#include "nac/circuit.hpp"
#include "nac/transform.hpp"

namespace nac {

// A monomial with provably nonzero coefficient in the tested polynomial.
// The empty monomial marks a degree-0 (constant term) certificate.
struct Certificate {
  Monomial monomial;
  Scalar coefficient;
  int degree = 0;
};

// Sparse vector of per-gate coefficients of one monomial, over the Add
// gates of one degree layer.
struct CoeffVector {
  int layer_degree = 0;
  std::map<int, Scalar> entries;  // gate id -> nonzero entry
};

// A maximal linearly independent set of monomial coefficient vectors for
// one layer, with the monomials attached.
struct Basis {
  int degree = 0;
  std::vector<std::pair<Monomial, CoeffVector>> members;
  std::shared_ptr<const Circuit> circuit;  // the normalized circuit indexed
  std::vector<int> layer_gates;            // Add gates of this layer
};

struct LayerStat {
  int degree = 0;
  int width = 0;       // number of Add gates in the layer
  int basis_size = 0;  // |B_degree|
};

struct PitTrace {
  bool keep_bases = false;
  std::vector<LayerStat> layers;
  std::vector<Basis> bases;
};

// Identity test for a homogeneous circuit in alternating normal form with a
// degree annotation. Returns nullopt iff the polynomial is identically
// zero, else a certificate. Deterministic: bases grow in lexicographic
// candidate order with first-nonzero pivoting.
std::optional<Certificate> pit_homogeneous(const Circuit& c,
                                           PitTrace* trace = nullptr);

// Identity test for any circuit: homogenizes and tests parts from the top
// degree down; the certificate of the highest nonzero degree is returned.
std::optional<Certificate> pit(const Circuit& c, PitTrace* trace = nullptr);

// True iff the directly computed coefficient vector of m lies in the span
// of the basis. deg(m) must equal b.degree.
bool spanning_check(const Basis& b, const Monomial& m);

// Per-gate coefficients of m (the vector v_m over all gates), by DP over
// the subtrees of m. Works on any circuit.
std::vector<Scalar> coefficients_at_gates(const Circuit& c, const Monomial& m);

}  // namespace nac

#endif
