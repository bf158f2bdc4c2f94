#include "nac/transform.hpp"

#include <algorithm>
#include <functional>

namespace nac {

PolyValue Workspace::import(const Circuit& c) {
  if (!(c.spec == spec())) throw FieldMismatch();
  if (c.num_vars > b_.num_vars())
    throw ValidationError("circuit uses more variables than the workspace");
  std::vector<PolyValue> val(c.gates.size(), pv_zero());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        val[i] = PolyValue(zero_, b_.input(g.var));
        break;
      case GateKind::Const:
        val[i] = PolyValue(*g.value);
        break;
      case GateKind::Mul:
        val[i] = pv_mul(val[g.lhs], val[g.rhs]);
        break;
      case GateKind::Add: {
        PolyValue s = pv_zero();
        for (int a : g.args) s = pv_add(s, val[a]);
        val[i] = s;
        break;
      }
    }
  }
  return val[c.output];
}

Circuit Workspace::to_circuit(const PolyValue& v) {
  int out;
  if (!v.gate)
    out = b_.constant(v.c0);
  else if (v.c0.is_zero())
    out = *v.gate;
  else
    out = b_.add({*v.gate, b_.constant(v.c0)});
  Circuit c = b_.extract(out);
  c.degrees = try_annotate_degrees(c);
  if (!c.degrees) c.degrees.reset();
  return c;
}

int Workspace::scale_gate(const Scalar& s, int g) {
  return b_.mul(b_.constant(s), g);
}

std::optional<int> Workspace::combine(const std::vector<int>& gs) {
  if (gs.empty()) return std::nullopt;
  if (gs.size() == 1) return gs[0];
  std::vector<int> copy = gs;
  return b_.add(std::move(copy));
}

PolyValue Workspace::pv_add(const PolyValue& a, const PolyValue& b) {
  std::vector<int> gs;
  if (a.gate) gs.push_back(*a.gate);
  if (b.gate) gs.push_back(*b.gate);
  return PolyValue(a.c0 + b.c0, combine(gs));
}

PolyValue Workspace::pv_sub(const PolyValue& a, const PolyValue& b) {
  return pv_add(a, pv_scale(-Scalar::one(spec()), b));
}

PolyValue Workspace::pv_mul(const PolyValue& a, const PolyValue& b) {
  std::vector<int> gs;
  if (b.gate && !a.c0.is_zero()) gs.push_back(scale_gate(a.c0, *b.gate));
  if (a.gate && !b.c0.is_zero()) gs.push_back(scale_gate(b.c0, *a.gate));
  if (a.gate && b.gate) gs.push_back(b_.mul(*a.gate, *b.gate));
  return PolyValue(a.c0 * b.c0, combine(gs));
}

PolyValue Workspace::pv_scale(const Scalar& s, const PolyValue& a) {
  if (s.is_zero()) return pv_zero();
  if (s.is_one()) return a;
  return PolyValue(s * a.c0,
                   a.gate ? std::optional<int>(scale_gate(s, *a.gate))
                          : std::nullopt);
}

int Workspace::gate_degree_bound(int g) {
  if (static_cast<int>(bound_memo_.size()) > g && bound_memo_[g] >= 0)
    return bound_memo_[g];
  if (static_cast<int>(bound_memo_.size()) <= g) bound_memo_.resize(g + 1, -1);
  const Gate& gate = b_.gate(g);
  int r = 0;
  switch (gate.kind) {
    case GateKind::Input:
      r = 1;
      break;
    case GateKind::Const:
      r = 0;
      break;
    case GateKind::Mul:
      r = gate_degree_bound(gate.lhs) + gate_degree_bound(gate.rhs);
      break;
    case GateKind::Add:
      for (int a : gate.args) r = std::max(r, gate_degree_bound(a));
      break;
  }
  bound_memo_[g] = r;
  return r;
}

Workspace::Parts Workspace::parts_of(const PolyValue& v) {
  Parts p{v.c0, {std::nullopt}};
  if (!v.gate) return p;

  // Memoized per-gate split into homogeneous components. Gates are copied
  // out of the builder before recursing: recursive calls append gates and
  // may reallocate the underlying storage.
  std::function<std::vector<std::optional<int>>(int)> split =
      [&](int g) -> std::vector<std::optional<int>> {
    auto it = parts_memo_.find(g);
    if (it != parts_memo_.end()) return it->second.by_degree;
    const Gate gate = b_.gate(g);
    std::vector<std::optional<int>> by(gate_degree_bound(g) + 1, std::nullopt);
    switch (gate.kind) {
      case GateKind::Input:
        by[1] = g;
        break;
      case GateKind::Const:
        throw ValidationError("constant gate in constant-free position");
      case GateKind::Mul: {
        const Gate lg = b_.gate(gate.lhs);
        const Gate rg = b_.gate(gate.rhs);
        if (lg.kind == GateKind::Const) {
          auto sub = split(gate.rhs);
          for (std::size_t j = 1; j < sub.size(); ++j)
            if (sub[j]) by[j] = scale_gate(*lg.value, *sub[j]);
        } else if (rg.kind == GateKind::Const) {
          auto sub = split(gate.lhs);
          for (std::size_t j = 1; j < sub.size(); ++j)
            if (sub[j]) by[j] = scale_gate(*rg.value, *sub[j]);
        } else {
          auto lp = split(gate.lhs);
          auto rp = split(gate.rhs);
          for (std::size_t j = 2; j < by.size(); ++j) {
            std::vector<int> terms;
            for (std::size_t a = 1; a < lp.size() && a < j; ++a) {
              std::size_t bdeg = j - a;
              if (bdeg < rp.size() && lp[a] && rp[bdeg])
                terms.push_back(b_.mul(*lp[a], *rp[bdeg]));
            }
            by[j] = combine(terms);
          }
        }
        break;
      }
      case GateKind::Add: {
        std::vector<std::vector<int>> terms(by.size());
        for (int a : gate.args) {
          auto sub = split(a);
          for (std::size_t j = 1; j < sub.size(); ++j)
            if (sub[j]) terms[j].push_back(*sub[j]);
        }
        for (std::size_t j = 1; j < by.size(); ++j) by[j] = combine(terms[j]);
        break;
      }
    }
    parts_memo_.emplace(g, Parts{zero_, by});
    return by;
  };

  p.by_degree = split(*v.gate);
  return p;
}

void Workspace::pin(const Monomial& m) {
  if (m.is_empty()) return;
  if (pinned_ids_.insert(m.id()).second) pinned_.push_back(m);
}

Scalar Workspace::coeff_gate(int g, const Monomial& m) {
  auto key = std::make_tuple(g, m.id());
  auto it = coeff_memo_.find(key);
  if (it != coeff_memo_.end()) return it->second;
  const Gate& gate = b_.gate(g);
  Scalar r = zero_;
  switch (gate.kind) {
    case GateKind::Input:
      if (m.is_leaf() && m.var_index() == gate.var) r = Scalar::one(spec());
      break;
    case GateKind::Const:
      break;
    case GateKind::Mul: {
      const Gate& lg = b_.gate(gate.lhs);
      const Gate& rg = b_.gate(gate.rhs);
      if (lg.kind == GateKind::Const)
        r = *lg.value * coeff_gate(gate.rhs, m);
      else if (rg.kind == GateKind::Const)
        r = *rg.value * coeff_gate(gate.lhs, m);
      else if (m.is_node())
        r = coeff_gate(gate.lhs, m.left()) * coeff_gate(gate.rhs, m.right());
      break;
    }
    case GateKind::Add:
      for (int a : gate.args) r = r + coeff_gate(a, m);
      break;
  }
  coeff_memo_.emplace(key, r);
  return r;
}

Scalar Workspace::coeff(const PolyValue& v, const Monomial& m) {
  if (m.is_empty()) return v.c0;
  if (!v.gate) return zero_;
  pin(m);
  return coeff_gate(*v.gate, m);
}

std::optional<int> Workspace::derive_gate(int g, const Monomial& m,
                                          bool left) {
  auto key = std::make_tuple(g, m.id(), left);
  auto it = deriv_memo_.find(key);
  if (it != deriv_memo_.end()) return it->second;
  // copy: recursive calls append gates and may reallocate builder storage
  const Gate gate = b_.gate(g);
  std::optional<int> r;
  switch (gate.kind) {
    case GateKind::Input:
    case GateKind::Const:
      break;  // a lone variable has no product structure to strip
    case GateKind::Mul: {
      const Gate lg = b_.gate(gate.lhs);
      const Gate rg = b_.gate(gate.rhs);
      if (lg.kind == GateKind::Const) {
        auto sub = derive_gate(gate.rhs, m, left);
        if (sub) r = scale_gate(*lg.value, *sub);
      } else if (rg.kind == GateKind::Const) {
        auto sub = derive_gate(gate.lhs, m, left);
        if (sub) r = scale_gate(*rg.value, *sub);
      } else {
        Scalar s = coeff_gate(left ? gate.lhs : gate.rhs, m);
        if (!s.is_zero()) r = scale_gate(s, left ? gate.rhs : gate.lhs);
      }
      break;
    }
    case GateKind::Add: {
      std::vector<int> terms;
      for (int a : gate.args) {
        auto sub = derive_gate(a, m, left);
        if (sub) terms.push_back(*sub);
      }
      r = combine(terms);
      break;
    }
  }
  deriv_memo_.emplace(key, r);
  return r;
}

PolyValue Workspace::derive(const PolyValue& v, const Monomial& m, bool left) {
  if (m.is_empty())
    throw ValidationError("derivative requires a nonempty monomial");
  if (!v.gate) return pv_zero();
  pin(m);
  return PolyValue(zero_, derive_gate(*v.gate, m, left));
}

// --- public passes ---------------------------------------------------------

HomogeneousParts homogenize(const Circuit& c) {
  Workspace ws(c.spec, c.num_vars);
  PolyValue v = ws.import(c);
  Workspace::Parts parts = ws.parts_of(v);

  HomogeneousParts hp;
  hp.spec = c.spec;
  hp.num_vars = c.num_vars;
  hp.constant = parts.c0;
  hp.parts.resize(parts.bound() + 1);
  if (!parts.c0.is_zero()) {
    CircuitBuilder cb(c.spec, c.num_vars);
    hp.parts[0] = cb.extract(cb.constant(parts.c0));
    hp.parts[0]->degrees = try_annotate_degrees(*hp.parts[0]);
  }
  for (int j = 1; j <= parts.bound(); ++j)
    if (parts.at(j))
      hp.parts[j] = ws.to_circuit(PolyValue(Scalar::zero(c.spec), parts.at(j)));
  while (hp.parts.size() > 1 && !hp.parts.back()) hp.parts.pop_back();
  return hp;
}

Circuit encode_brackets(const Circuit& c) {
  const int n = c.num_vars;
  CircuitBuilder b(c.spec, n + 2);
  const int lparen = b.input(n + 1);
  const int rparen = b.input(n + 2);
  const Scalar zero = Scalar::zero(c.spec);

  struct Val {
    Scalar c0;
    std::optional<int> gate;
  };
  std::vector<Val> val(c.gates.size(), Val{zero, std::nullopt});
  auto combine = [&](std::vector<int> gs) -> std::optional<int> {
    if (gs.empty()) return std::nullopt;
    if (gs.size() == 1) return gs[0];
    return b.add(std::move(gs));
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        val[i] = {zero, b.input(g.var)};
        break;
      case GateKind::Const:
        val[i] = {*g.value, std::nullopt};
        break;
      case GateKind::Add: {
        Scalar acc = zero;
        std::vector<int> gs;
        for (int a : g.args) {
          acc = acc + val[a].c0;
          if (val[a].gate) gs.push_back(*val[a].gate);
        }
        val[i] = {acc, combine(std::move(gs))};
        break;
      }
      case GateKind::Mul: {
        const Val& u = val[g.lhs];
        const Val& v = val[g.rhs];
        std::vector<int> gs;
        if (v.gate && !u.c0.is_zero()) gs.push_back(b.scale(u.c0, *v.gate));
        if (u.gate && !v.c0.is_zero()) gs.push_back(b.scale(v.c0, *u.gate));
        if (u.gate && v.gate)
          gs.push_back(b.mul(b.mul(lparen, *u.gate), b.mul(*v.gate, rparen)));
        val[i] = {u.c0 * v.c0, combine(std::move(gs))};
        break;
      }
    }
  }
  const Val& out = val[c.output];
  int og;
  if (!out.gate)
    og = b.constant(out.c0);
  else if (out.c0.is_zero())
    og = *out.gate;
  else
    og = b.add({*out.gate, b.constant(out.c0)});
  return b.extract(og);
}

namespace {

Circuit derivative_impl(const Circuit& c, const Monomial& m, bool left) {
  if (m.is_empty())
    throw ValidationError("derivative requires a nonempty monomial");
  if (c.degrees && m.degree() >= c.degree())
    throw DegreeError("monomial degree " + std::to_string(m.degree()) +
                      " not below homogeneous circuit degree " +
                      std::to_string(c.degree()));
  Workspace ws(c.spec, c.num_vars);
  PolyValue v = ws.import(c);
  return ws.to_circuit(ws.derive(v, m, left));
}

}  // namespace

Circuit left_derivative(const Circuit& c, const Monomial& m) {
  return derivative_impl(c, m, true);
}

Circuit right_derivative(const Circuit& c, const Monomial& m) {
  return derivative_impl(c, m, false);
}

Scalar coefficient(const Circuit& c, const Monomial& m) {
  if (m.is_empty()) return eval_at_zero(c);
  Circuit enc = encode_brackets(c);
  EncodedWord w = m.encode();
  const int n = c.num_vars;
  for (int& letter : w) {
    if (letter == kLParen)
      letter = n + 1;
    else if (letter == kRParen)
      letter = n + 2;
    else if (letter > n)
      return Scalar::zero(c.spec);  // variable absent from the circuit
  }
  const int k = static_cast<int>(w.size());
  const int dim = k + 1;
  const Scalar zero = Scalar::zero(c.spec);
  const Scalar one = Scalar::one(c.spec);
  std::map<int, ScalarMatrix> assign;
  for (int a = 1; a <= n + 2; ++a) assign.emplace(a, ScalarMatrix(dim * dim, zero));
  for (int i = 0; i < k; ++i) assign.at(w[i])[i * dim + (i + 1)] = one;
  ScalarMatrix out = eval_scalar_matrices(enc, dim, assign);
  return out[0 * dim + k];
}

Circuit top_split_component(const Circuit& c, int a, int b) {
  if (!c.degrees)
    throw NotHomogeneous("top-split extraction needs a homogeneous circuit");
  if (a < 1 || b < 1 || a + b != c.degree())
    throw ValidationError("split degrees must be positive and sum to " +
                          std::to_string(c.degree()));
  if (!is_alternating(c))
    throw NotNormalized("top-split extraction needs alternating form");
  const std::vector<int>& deg = *c.degrees;

  CircuitBuilder bld(c.spec, c.num_vars);
  for (const Gate& g : c.gates) bld.append_raw(g);

  std::map<int, int> memo;
  std::function<int(int)> filter = [&](int add_id) -> int {
    auto it = memo.find(add_id);
    if (it != memo.end()) return it->second;
    std::vector<int> keep;
    for (int ch : c.gates[add_id].args) {
      const Gate& g = c.gates[ch];
      if (g.kind != GateKind::Mul) continue;  // zero constants only
      GateKind lk = c.gates[g.lhs].kind;
      GateKind rk = c.gates[g.rhs].kind;
      if (lk == GateKind::Const && rk == GateKind::Add) {
        int f = filter(g.rhs);
        keep.push_back(bld.mul(g.lhs, f));
      } else if (lk == GateKind::Add && rk == GateKind::Const) {
        int f = filter(g.lhs);
        keep.push_back(bld.mul(f, g.rhs));
      } else if (lk == GateKind::Add && rk == GateKind::Add) {
        if (deg[g.lhs] == a && deg[g.rhs] == b) keep.push_back(ch);
      } else if (lk == GateKind::Const && rk == GateKind::Const) {
        // constant product inside a positive-degree sum: must be zero
      } else {
        throw NotNormalized("mul operand is neither a sum nor a constant");
      }
    }
    int out = keep.empty() ? bld.zero() : bld.add(std::move(keep));
    memo[add_id] = out;
    return out;
  };

  Circuit r = bld.extract(filter(c.output));
  r.degrees = try_annotate_degrees(r);
  if (!r.degrees) r.degrees.reset();
  return r;
}

}  // namespace nac
