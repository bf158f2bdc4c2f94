#include "nac/pit.hpp"

#include <algorithm>
#include <map>

namespace nac {

namespace {

// Incremental exact Gaussian elimination with first-nonzero pivots.
class Eliminator {
 public:
  // Reduces a copy of v against the rows; if nonzero remains, keeps it as a
  // new row and returns true (v was independent).
  bool insert(std::map<int, Scalar> v) {
    reduce(v);
    if (v.empty()) return false;
    rows_.emplace_back(v.begin()->first, std::move(v));
    return true;
  }

  bool in_span(std::map<int, Scalar> v) const {
    reduce(v);
    return v.empty();
  }

 private:
  void reduce(std::map<int, Scalar>& v) const {
    for (const auto& [pivot, row] : rows_) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      Scalar factor = it->second / row.at(pivot);
      for (const auto& [g, s] : row) {
        auto jt = v.find(g);
        if (jt == v.end()) {
          Scalar d = -(factor * s);
          if (!d.is_zero()) v.emplace(g, d);
        } else {
          jt->second = jt->second - factor * s;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
    }
  }

  std::vector<std::pair<int, std::map<int, Scalar>>> rows_;
};

struct Term {
  enum Kind { Leaf, Prod, Copy } kind;
  Scalar coeff;
  int var = 0;        // Leaf
  int lhs = -1;       // Prod: Add gate of the left operand
  int rhs = -1;       // Prod: Add gate of the right operand
  int src = -1;       // Copy: Add gate in the same layer
};

struct Layered {
  std::vector<std::vector<Term>> terms;      // per Add gate id
  std::map<int, std::vector<int>> layers;    // degree -> Add gates ascending
};

// Values of all degree-0 gates (they compute constants).
std::vector<Scalar> const_values(const Circuit& c) {
  std::vector<Scalar> val(c.gates.size(), Scalar::zero(c.spec));
  const std::vector<int>& deg = *c.degrees;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (deg[i] != 0) continue;
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        break;  // impossible: inputs have degree 1
      case GateKind::Const:
        val[i] = *g.value;
        break;
      case GateKind::Mul:
        val[i] = val[g.lhs] * val[g.rhs];
        break;
      case GateKind::Add: {
        Scalar s = Scalar::zero(c.spec);
        for (int a : g.args) s = s + val[a];
        val[i] = s;
        break;
      }
    }
  }
  return val;
}

// Flattens each Add gate into update-rule terms. Requires alternating form
// with degree annotation.
Layered flatten(const Circuit& c) {
  const std::vector<int>& deg = *c.degrees;
  std::vector<Scalar> cval = const_values(c);
  Layered out;
  out.terms.resize(c.gates.size());
  auto const_of = [&](int g) -> std::optional<Scalar> {
    if (c.gates[g].kind == GateKind::Const) return *c.gates[g].value;
    if (deg[g] == 0) return cval[g];
    return std::nullopt;
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (c.gates[i].kind != GateKind::Add) continue;
    if (deg[i] >= 1) out.layers[deg[i]].push_back(static_cast<int>(i));
    std::vector<Term>& ts = out.terms[i];
    for (int ch : c.gates[i].args) {
      const Gate& g = c.gates[ch];
      switch (g.kind) {
        case GateKind::Input:
          ts.push_back(Term{Term::Leaf, Scalar::one(c.spec), g.var});
          break;
        case GateKind::Const:
          break;  // zero inside a positive-degree sum; nothing at degree 0
        case GateKind::Mul: {
          auto cl = const_of(g.lhs);
          auto cr = const_of(g.rhs);
          if (cl && cr) break;  // constant product, necessarily zero here
          if (cl) {
            Term t{Term::Copy, *cl};
            t.src = g.rhs;
            if (!cl->is_zero()) ts.push_back(std::move(t));
          } else if (cr) {
            Term t{Term::Copy, *cr};
            t.src = g.lhs;
            if (!cr->is_zero()) ts.push_back(std::move(t));
          } else {
            if (c.gates[g.lhs].kind != GateKind::Add ||
                c.gates[g.rhs].kind != GateKind::Add)
              throw NotNormalized("product operand is not a sum gate");
            Term t{Term::Prod, Scalar::one(c.spec)};
            t.lhs = g.lhs;
            t.rhs = g.rhs;
            ts.push_back(std::move(t));
          }
          break;
        }
        case GateKind::Add:
          throw NotNormalized("sum gate feeds a sum gate");
      }
    }
  }
  return out;
}

}  // namespace

std::optional<Certificate> pit_homogeneous(const Circuit& c, PitTrace* trace) {
  if (!c.degrees)
    throw NotHomogeneous("identity test needs a degree-annotated circuit");
  const int d = c.degree();
  if (d == 0) {
    Scalar v = eval_at_zero(c);
    if (v.is_zero()) return std::nullopt;
    return Certificate{Monomial::empty(), v, 0};
  }
  if (!is_alternating(c))
    throw NotNormalized("identity test needs alternating normal form");

  Layered lay = flatten(c);
  auto circuit_ref = std::make_shared<const Circuit>(c);
  const Scalar zero = Scalar::zero(c.spec);

  // basis per degree; vectors are the true per-gate coefficient vectors
  std::map<int, Basis> bases;
  std::optional<Certificate> cert;

  auto build_vector = [&](int degree, int d1, int d2, const CoeffVector* v1,
                          const CoeffVector* v2, int leaf_var) {
    std::map<int, Scalar> vec;
    const std::vector<int>& gates = lay.layers.at(degree);
    for (int g : gates) {
      Scalar e = zero;
      for (const Term& t : lay.terms[g]) {
        switch (t.kind) {
          case Term::Leaf:
            if (leaf_var == t.var) e = e + t.coeff;
            break;
          case Term::Prod: {
            if (v1 == nullptr) break;
            if ((*c.degrees)[t.lhs] != d1 || (*c.degrees)[t.rhs] != d2) break;
            auto a = v1->entries.find(t.lhs);
            if (a == v1->entries.end()) break;
            auto b = v2->entries.find(t.rhs);
            if (b == v2->entries.end()) break;
            e = e + t.coeff * a->second * b->second;
            break;
          }
          case Term::Copy: {
            auto s = vec.find(t.src);
            if (s != vec.end()) e = e + t.coeff * s->second;
            break;
          }
        }
      }
      if (!e.is_zero()) vec.emplace(g, e);
    }
    return vec;
  };

  for (int j = 1; j <= d; ++j) {
    auto lit = lay.layers.find(j);
    if (lit == lay.layers.end()) continue;  // no sum gates at this degree
    Basis& B = bases[j];
    B.degree = j;
    B.circuit = circuit_ref;
    B.layer_gates = lit->second;
    Eliminator elim;

    // candidates in lexicographic encoded-word order
    struct Cand {
      Monomial m1, m2;  // m2 empty at degree 1
      const CoeffVector* v1 = nullptr;
      const CoeffVector* v2 = nullptr;
      int d1 = 0;
    };
    std::vector<Cand> cands;
    if (j == 1) {
      for (int v = 1; v <= c.num_vars; ++v)
        cands.push_back(Cand{Monomial::var(v), Monomial::empty()});
    } else {
      for (int d1 = 1; d1 < j; ++d1) {
        auto b1 = bases.find(d1);
        auto b2 = bases.find(j - d1);
        if (b1 == bases.end() || b2 == bases.end()) continue;
        for (const auto& [m1, vec1] : b1->second.members)
          for (const auto& [m2, vec2] : b2->second.members)
            cands.push_back(Cand{m1, m2, &vec1, &vec2, d1});
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.m1 != b.m1) return a.m1.less(b.m1);
        return a.m2.less(b.m2);
      });
    }

    for (const Cand& cd : cands) {
      Monomial m = j == 1 ? cd.m1 : Monomial::node(cd.m1, cd.m2);
      std::map<int, Scalar> vec =
          j == 1 ? build_vector(j, 0, 0, nullptr, nullptr, cd.m1.var_index())
                 : build_vector(j, cd.d1, j - cd.d1, cd.v1, cd.v2, 0);
      if (vec.empty()) continue;
      if (!elim.insert(vec)) continue;
      if (j == d && !cert) {
        auto oit = vec.find(c.output);
        if (oit != vec.end())
          cert = Certificate{m, oit->second, d};
      }
      B.members.emplace_back(m, CoeffVector{j, std::move(vec)});
    }

    if (trace) {
      trace->layers.push_back(LayerStat{
          j, static_cast<int>(B.layer_gates.size()),
          static_cast<int>(B.members.size())});
      if (trace->keep_bases) trace->bases.push_back(B);
    }
  }

  return cert;
}

std::optional<Certificate> pit(const Circuit& c, PitTrace* trace) {
  HomogeneousParts hp = homogenize(c);
  for (int j = hp.degree_bound(); j >= 1; --j) {
    if (!hp.parts[j]) continue;
    Circuit norm = normalize_alternating(*hp.parts[j]);
    if (!norm.degrees)
      throw NotHomogeneous("homogeneous part failed to annotate");
    auto cert = pit_homogeneous(norm, trace);
    if (cert) return cert;
  }
  if (!hp.constant.is_zero())
    return Certificate{Monomial::empty(), hp.constant, 0};
  return std::nullopt;
}

std::vector<Scalar> coefficients_at_gates(const Circuit& c,
                                          const Monomial& m) {
  if (m.is_empty()) throw ValidationError("coefficient vector needs a proper monomial");
  const Scalar zero = Scalar::zero(c.spec);
  // constant term of every gate
  std::vector<Scalar> c0(c.gates.size(), zero);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        break;
      case GateKind::Const:
        c0[i] = *g.value;
        break;
      case GateKind::Mul:
        c0[i] = c0[g.lhs] * c0[g.rhs];
        break;
      case GateKind::Add:
        for (int a : g.args) c0[i] = c0[i] + c0[a];
        break;
    }
  }

  // coefficient of each subtree of m at each gate, bottom-up over m
  std::map<const void*, std::vector<Scalar>> memo;
  std::function<const std::vector<Scalar>&(const Monomial&)> solve =
      [&](const Monomial& t) -> const std::vector<Scalar>& {
    auto it = memo.find(t.id());
    if (it != memo.end()) return it->second;
    std::vector<Scalar> cf(c.gates.size(), zero);
    const std::vector<Scalar>* lcf = nullptr;
    const std::vector<Scalar>* rcf = nullptr;
    if (t.is_node()) {
      lcf = &solve(t.left());
      rcf = &solve(t.right());
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      const Gate& g = c.gates[i];
      switch (g.kind) {
        case GateKind::Input:
          if (t.is_leaf() && t.var_index() == g.var)
            cf[i] = Scalar::one(c.spec);
          break;
        case GateKind::Const:
          break;
        case GateKind::Mul: {
          Scalar s = zero;
          if (t.is_node()) s = s + (*lcf)[g.lhs] * (*rcf)[g.rhs];
          s = s + c0[g.lhs] * cf[g.rhs] + c0[g.rhs] * cf[g.lhs];
          cf[i] = s;
          break;
        }
        case GateKind::Add:
          for (int a : g.args) cf[i] = cf[i] + cf[a];
          break;
      }
    }
    return memo.emplace(t.id(), std::move(cf)).first->second;
  };
  return solve(m);
}

bool spanning_check(const Basis& b, const Monomial& m) {
  if (m.degree() != b.degree)
    throw ValidationError("monomial degree does not match the basis layer");
  if (!b.circuit) throw ValidationError("basis has no attached circuit");
  std::vector<Scalar> cf = coefficients_at_gates(*b.circuit, m);
  std::map<int, Scalar> vec;
  for (int g : b.layer_gates)
    if (!cf[g].is_zero()) vec.emplace(g, cf[g]);

  Eliminator elim;
  for (const auto& [mono, cv] : b.members) elim.insert(cv.entries);
  return elim.in_span(vec);
}

}  // namespace nac
