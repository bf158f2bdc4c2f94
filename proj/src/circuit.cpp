#include "nac/circuit.hpp"

#include <algorithm>

namespace nac {

void validate(const Circuit& c) {
  if (c.num_vars < 0) throw ValidationError("negative variable count");
  const int n = static_cast<int>(c.gates.size());
  if (c.output < 0 || c.output >= n)
    throw ValidationError("output gate id out of range");
  for (int i = 0; i < n; ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        if (g.var < 1 || g.var > c.num_vars)
          throw ValidationError("variable x" + std::to_string(g.var) +
                                " out of declared range");
        break;
      case GateKind::Const:
        if (!g.value) throw ValidationError("const gate without a value");
        if (!(g.value->spec() == c.spec))
          throw ValidationError("const gate from a different field");
        break;
      case GateKind::Mul:
        if (g.lhs < 0 || g.lhs >= i || g.rhs < 0 || g.rhs >= i)
          throw ValidationError("mul operand does not precede gate " +
                                std::to_string(i));
        break;
      case GateKind::Add:
        if (g.args.empty()) throw ValidationError("add gate with no children");
        for (int a : g.args)
          if (a < 0 || a >= i)
            throw ValidationError("add child does not precede gate " +
                                  std::to_string(i));
        break;
    }
  }
  if (c.degrees) {
    if (c.degrees->size() != c.gates.size())
      throw ValidationError("degree annotation has wrong length");
    auto recomputed = try_annotate_degrees(c);
    if (!recomputed || *recomputed != *c.degrees)
      throw ValidationError("degree annotation inconsistent with gates");
  }
}

int CircuitBuilder::push(Gate g) {
  gates_.push_back(std::move(g));
  return static_cast<int>(gates_.size()) - 1;
}

int CircuitBuilder::input(int var) {
  if (var < 1 || var > num_vars_)
    throw ValidationError("variable x" + std::to_string(var) +
                          " out of declared range");
  auto it = input_cache_.find(var);
  if (it != input_cache_.end()) return it->second;
  int id = push(Gate::input(var));
  input_cache_[var] = id;
  return id;
}

int CircuitBuilder::constant(const Scalar& v) {
  if (!(v.spec() == spec_)) throw FieldMismatch();
  auto it = const_cache_.find(v);
  if (it != const_cache_.end()) return it->second;
  int id = push(Gate::constant(v));
  const_cache_.emplace(v, id);
  return id;
}

int CircuitBuilder::mul(int l, int r) {
  const Gate& gl = gates_[l];
  const Gate& gr = gates_[r];
  if (gl.kind == GateKind::Const && gr.kind == GateKind::Const)
    return constant(*gl.value * *gr.value);
  if (gl.kind == GateKind::Const) {
    if (gl.value->is_zero()) return zero();
    if (gl.value->is_one()) return r;
  }
  if (gr.kind == GateKind::Const) {
    if (gr.value->is_zero()) return zero();
    if (gr.value->is_one()) return l;
  }
  auto key = std::make_pair(l, r);
  auto it = mul_cache_.find(key);
  if (it != mul_cache_.end()) return it->second;
  int id = push(Gate::mul(l, r));
  mul_cache_[key] = id;
  return id;
}

int CircuitBuilder::add(std::vector<int> kids) {
  std::vector<int> keep;
  Scalar acc = Scalar::zero(spec_);
  for (int k : kids) {
    const Gate& g = gates_[k];
    if (g.kind == GateKind::Const)
      acc = acc + *g.value;
    else
      keep.push_back(k);
  }
  if (!acc.is_zero() || keep.empty()) keep.push_back(constant(acc));
  if (keep.size() == 1) return keep[0];
  return push(Gate::add(std::move(keep)));
}

int CircuitBuilder::add_gate(std::vector<int> kids) {
  if (kids.empty()) kids.push_back(zero());
  return push(Gate::add(std::move(kids)));
}

int CircuitBuilder::append_raw(Gate g) { return push(std::move(g)); }

Circuit CircuitBuilder::extract(int output) const {
  std::vector<char> live(gates_.size(), 0);
  std::vector<int> stack = {output};
  live[output] = 1;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Gate& g = gates_[id];
    auto visit = [&](int child) {
      if (!live[child]) {
        live[child] = 1;
        stack.push_back(child);
      }
    };
    if (g.kind == GateKind::Mul) {
      visit(g.lhs);
      visit(g.rhs);
    } else if (g.kind == GateKind::Add) {
      for (int a : g.args) visit(a);
    }
  }
  std::vector<int> remap(gates_.size(), -1);
  Circuit c;
  c.spec = spec_;
  c.num_vars = num_vars_;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!live[i]) continue;
    Gate g = gates_[i];
    if (g.kind == GateKind::Mul) {
      g.lhs = remap[g.lhs];
      g.rhs = remap[g.rhs];
    } else if (g.kind == GateKind::Add) {
      for (int& a : g.args) a = remap[a];
    }
    remap[i] = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(g));
  }
  c.output = remap[output];
  return c;
}

int append_circuit(CircuitBuilder& b, const Circuit& c) {
  if (!(c.spec == b.spec())) throw FieldMismatch();
  std::vector<int> map(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        map[i] = b.input(g.var);
        break;
      case GateKind::Const:
        map[i] = b.constant(*g.value);
        break;
      case GateKind::Mul:
        map[i] = b.mul(map[g.lhs], map[g.rhs]);
        break;
      case GateKind::Add: {
        std::vector<int> kids;
        kids.reserve(g.args.size());
        for (int a : g.args) kids.push_back(map[a]);
        map[i] = b.add(std::move(kids));
        break;
      }
    }
  }
  return map[c.output];
}

Circuit simplify(const Circuit& c) {
  CircuitBuilder b(c.spec, c.num_vars);
  Circuit out = b.extract(append_circuit(b, c));
  out.degrees = try_annotate_degrees(out);
  if (!out.degrees) out.degrees.reset();
  return out;
}

Scalar eval_at_zero(const Circuit& c) {
  std::vector<Scalar> val;
  val.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Input:
        val.push_back(Scalar::zero(c.spec));
        break;
      case GateKind::Const:
        val.push_back(*g.value);
        break;
      case GateKind::Mul:
        val.push_back(val[g.lhs] * val[g.rhs]);
        break;
      case GateKind::Add: {
        Scalar s = Scalar::zero(c.spec);
        for (int a : g.args) s = s + val[a];
        val.push_back(s);
        break;
      }
    }
  }
  return val[c.output];
}

std::optional<std::vector<int>> try_annotate_degrees(const Circuit& c) {
  std::vector<int> deg(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        deg[i] = 1;
        break;
      case GateKind::Const:
        deg[i] = 0;
        break;
      case GateKind::Mul:
        deg[i] = deg[g.lhs] + deg[g.rhs];
        break;
      case GateKind::Add: {
        int d = deg[g.args[0]];
        for (int a : g.args)
          if (deg[a] != d) return std::nullopt;
        deg[i] = d;
        break;
      }
    }
  }
  return deg;
}

std::vector<int> degree_bounds(const Circuit& c) {
  std::vector<int> deg(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        deg[i] = 1;
        break;
      case GateKind::Const:
        deg[i] = 0;
        break;
      case GateKind::Mul:
        deg[i] = deg[g.lhs] + deg[g.rhs];
        break;
      case GateKind::Add: {
        int d = 0;
        for (int a : g.args) d = std::max(d, deg[a]);
        deg[i] = d;
        break;
      }
    }
  }
  return deg;
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (!(a.spec == b.spec) || a.num_vars != b.num_vars ||
      a.gates.size() != b.gates.size() || a.output != b.output)
    return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    const Gate& ga = a.gates[i];
    const Gate& gb = b.gates[i];
    if (ga.kind != gb.kind) return false;
    switch (ga.kind) {
      case GateKind::Input:
        if (ga.var != gb.var) return false;
        break;
      case GateKind::Const:
        if (!(*ga.value == *gb.value)) return false;
        break;
      case GateKind::Mul:
        if (ga.lhs != gb.lhs || ga.rhs != gb.rhs) return false;
        break;
      case GateKind::Add: {
        std::vector<int> xs = ga.args, ys = gb.args;
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (xs != ys) return false;
        break;
      }
    }
  }
  return true;
}

Circuit normalize_alternating(const Circuit& c) {
  CircuitBuilder b(c.spec, c.num_vars);
  std::vector<int> map(c.gates.size());
  auto wrap_for_mul = [&](int id) {
    GateKind k = b.gate(id).kind;
    if (k == GateKind::Input || k == GateKind::Mul)
      return b.add_gate({id});
    return id;  // Add or Const
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        map[i] = b.input(g.var);
        break;
      case GateKind::Const:
        map[i] = b.constant(*g.value);
        break;
      case GateKind::Mul:
        map[i] = b.mul(wrap_for_mul(map[g.lhs]), wrap_for_mul(map[g.rhs]));
        break;
      case GateKind::Add: {
        // splice nested sums, merge constants, keep an Add gate
        std::vector<int> kids;
        Scalar acc = Scalar::zero(c.spec);
        for (int a : g.args) {
          int id = map[a];
          const Gate& ch = b.gate(id);
          if (ch.kind == GateKind::Add) {
            for (int k : ch.args) {
              if (b.gate(k).kind == GateKind::Const)
                acc = acc + *b.gate(k).value;
              else
                kids.push_back(k);
            }
          } else if (ch.kind == GateKind::Const) {
            acc = acc + *ch.value;
          } else {
            kids.push_back(id);
          }
        }
        if (!acc.is_zero() || kids.empty()) kids.push_back(b.constant(acc));
        map[i] = b.add_gate(std::move(kids));
        break;
      }
    }
  }
  int out = map[c.output];
  if (b.gate(out).kind != GateKind::Add) out = b.add_gate({out});
  Circuit r = b.extract(out);
  r.degrees = try_annotate_degrees(r);
  if (!r.degrees) r.degrees.reset();
  return r;
}

bool is_alternating(const Circuit& c) {
  if (c.gates[c.output].kind != GateKind::Add) return false;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Mul) {
      for (int o : {g.lhs, g.rhs}) {
        GateKind k = c.gates[o].kind;
        if (k != GateKind::Add && k != GateKind::Const) return false;
      }
    } else if (g.kind == GateKind::Add) {
      for (int a : g.args)
        if (c.gates[a].kind == GateKind::Add) return false;
    }
  }
  return true;
}

GateMatrix eval_matrices(const Circuit& c, int dim,
                         const std::map<int, GateMatrix>& assign,
                         CircuitBuilder& out) {
  if (!(c.spec == out.spec())) throw FieldMismatch();
  std::vector<GateMatrix> val(c.gates.size());
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    GateMatrix m(dim, out.zero());
    switch (g.kind) {
      case GateKind::Input: {
        auto it = assign.find(g.var);
        if (it == assign.end() || it->second.dim != dim)
          throw ValidationError("missing or mis-sized matrix for x" +
                                std::to_string(g.var));
        m = it->second;
        break;
      }
      case GateKind::Const: {
        int cg = out.constant(*g.value);
        for (int i = 0; i < dim; ++i) m.at(i, i) = cg;
        break;
      }
      case GateKind::Mul: {
        const GateMatrix& a = val[g.lhs];
        const GateMatrix& bm = val[g.rhs];
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            std::vector<int> terms;
            for (int k = 0; k < dim; ++k)
              terms.push_back(out.mul(a.at(i, k), bm.at(k, j)));
            m.at(i, j) = out.add(std::move(terms));
          }
        break;
      }
      case GateKind::Add: {
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            std::vector<int> terms;
            for (int a : g.args) terms.push_back(val[a].at(i, j));
            m.at(i, j) = out.add(std::move(terms));
          }
        break;
      }
    }
    val[gi] = std::move(m);
  }
  return val[c.output];
}

ScalarMatrix eval_scalar_matrices(const Circuit& c, int dim,
                                  const std::map<int, ScalarMatrix>& assign) {
  const Scalar z = Scalar::zero(c.spec);
  auto at = [dim](ScalarMatrix& m, int i, int j) -> Scalar& {
    return m[i * dim + j];
  };
  std::vector<ScalarMatrix> val(c.gates.size());
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    ScalarMatrix m(dim * dim, z);
    switch (g.kind) {
      case GateKind::Input: {
        auto it = assign.find(g.var);
        if (it == assign.end() ||
            it->second.size() != static_cast<std::size_t>(dim) * dim)
          throw ValidationError("missing or mis-sized matrix for x" +
                                std::to_string(g.var));
        m = it->second;
        break;
      }
      case GateKind::Const:
        for (int i = 0; i < dim; ++i) at(m, i, i) = *g.value;
        break;
      case GateKind::Mul: {
        ScalarMatrix& a = val[g.lhs];
        ScalarMatrix& bm = val[g.rhs];
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < dim; ++k) {
            const Scalar& aik = a[i * dim + k];
            if (aik.is_zero()) continue;
            for (int j = 0; j < dim; ++j) {
              const Scalar& bkj = bm[k * dim + j];
              if (bkj.is_zero()) continue;
              at(m, i, j) = at(m, i, j) + aik * bkj;
            }
          }
        break;
      }
      case GateKind::Add:
        for (int a : g.args)
          for (int i = 0; i < dim * dim; ++i) m[i] = m[i] + val[a][i];
        break;
    }
    val[gi] = std::move(m);
  }
  return val[c.output];
}

}  // namespace nac
