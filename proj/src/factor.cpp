#include "nac/factor.hpp"

#include <algorithm>
#include <functional>

#include "nac/densepoly.hpp"

namespace nac {

namespace {

// --- univariate helpers for the constant-recovery corner cases ------------

Scalar poly_eval(const std::vector<Scalar>& coef, const Scalar& x) {
  Scalar r = Scalar::zero(x.spec());
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) r = r * x + *it;
  return r;
}

// Exact Newton interpolation through (xs[i], ys[i]); coef[k] multiplies x^k.
std::vector<Scalar> interpolate(const std::vector<Scalar>& xs,
                                const std::vector<Scalar>& ys) {
  const FieldSpec spec = xs[0].spec();
  const int n = static_cast<int>(xs.size());
  std::vector<Scalar> dd = ys;
  for (int k = 1; k < n; ++k)
    for (int i = n - 1; i >= k; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  std::vector<Scalar> coef = {dd[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    coef.insert(coef.begin(), Scalar::zero(spec));
    for (std::size_t j = 0; j + 1 < coef.size(); ++j)
      coef[j] = coef[j] - xs[i] * coef[j + 1];
    coef[0] = coef[0] + dd[i];
  }
  return coef;
}

// Divisors of n > 0 from trial division up to a fixed bound; a remaining
// cofactor is treated as one more prime. The list may be incomplete for
// adversarially large coefficients, which only shrinks the candidate set.
std::vector<mpz_class> bounded_divisors(mpz_class n) {
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class d = 2; d * d <= n && d < 1000000; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    fac.emplace_back(d, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> divs = {1};
  for (const auto& [p, e] : fac) {
    std::size_t sz = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > 4096) return divs;  // bounded search
      }
    }
  }
  return divs;
}

std::vector<Scalar> dedupe_sorted(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end(), ScalarLess{});
  v.erase(std::unique(v.begin(), v.end(),
                      [](const Scalar& a, const Scalar& b) { return a == b; }),
          v.end());
  return v;
}

std::vector<Scalar> rational_roots(std::vector<Scalar> coef) {
  const FieldSpec spec = FieldSpec::rationals();
  while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
  if (coef.size() <= 1) return {};
  std::vector<Scalar> roots;
  std::size_t low = 0;
  while (low < coef.size() && coef[low].is_zero()) ++low;
  if (low > 0) roots.push_back(Scalar::zero(spec));
  std::vector<Scalar> red(coef.begin() + low, coef.end());
  if (red.size() == 2) {
    roots.push_back(-red[0] / red[1]);
    return dedupe_sorted(std::move(roots));
  }
  if (red.size() == 3) {
    for (const Scalar& r : solve_quadratic(red[2], red[1], red[0]))
      roots.push_back(r);
    return dedupe_sorted(std::move(roots));
  }
  mpz_class den_lcm = 1;
  for (const Scalar& s : red)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            s.rational().get_den().get_mpz_t());
  std::vector<mpz_class> ic;
  for (const Scalar& s : red) {
    mpq_class v = s.rational() * den_lcm;
    ic.push_back(v.get_num());
  }
  mpz_class content = 0;
  for (const mpz_class& z : ic)
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
  for (mpz_class& z : ic) z /= content;
  std::vector<mpz_class> ps = bounded_divisors(abs(ic.front()));
  std::vector<mpz_class> qs = bounded_divisors(abs(ic.back()));
  for (const mpz_class& p : ps)
    for (const mpz_class& q : qs) {
      mpq_class cand(p, q);
      cand.canonicalize();
      for (int sign = 0; sign < 2; ++sign) {
        Scalar x = Scalar::from_mpq(sign ? -cand : cand);
        if (poly_eval(red, x).is_zero()) roots.push_back(x);
      }
    }
  return dedupe_sorted(std::move(roots));
}

// All field roots of the polynomial with the given coefficients. Returns
// an empty list for the identically zero polynomial (the caller supplies
// fallback candidates).
std::vector<Scalar> poly_roots(std::vector<Scalar> coef,
                               const FieldSpec& spec) {
  while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
  if (coef.size() <= 1) return {};
  if (spec.is_prime_field()) {
    std::vector<Scalar> roots;
    for (std::uint64_t r = 0; r < spec.modulus(); ++r) {
      Scalar x = Scalar::from_residue(spec, r);
      if (poly_eval(coef, x).is_zero()) roots.push_back(x);
    }
    return roots;
  }
  return rational_roots(std::move(coef));
}

// --- factorization pipeline ------------------------------------------------

struct Ctx {
  Workspace& ws;
  PolyValue f;
  Workspace::Parts fparts;
  std::vector<std::optional<Circuit>> norm_parts;
  SplitWitness w{Monomial(), Monomial(), Monomial(), 0, 0,
                 Scalar::zero(FieldSpec::rationals())};
  Scalar delta = Scalar::zero(FieldSpec::rationals());
  FactorOnceReport* rep = nullptr;

  const FieldSpec& spec() const { return ws.spec(); }
  Scalar f0() const { return f.c0; }

  PolyValue part_pv(int k) {
    if (k == 0) return ws.pv_const(fparts.c0);
    auto g = fparts.at(k);
    return g ? PolyValue(Scalar::zero(spec()), g) : ws.pv_zero();
  }

  const Circuit& norm_part(int k) {
    if (!norm_parts[k]) {
      Circuit part = ws.to_circuit(part_pv(k));
      norm_parts[k] = normalize_alternating(part);
      if (!norm_parts[k]->degrees)
        throw NotHomogeneous("homogeneous part failed to annotate");
    }
    return *norm_parts[k];
  }
};

bool residual_zero(Ctx& ctx, const PolyValue& a, const PolyValue& b) {
  PolyValue res = ctx.ws.pv_sub(ctx.ws.pv_mul(a, b),
                                ctx.ws.pv_scale(ctx.delta, ctx.f));
  return !pit(ctx.ws.to_circuit(res)).has_value();
}

// Constant recovery over candidate factor bodies: Gleft computes gamma2*g,
// Hright computes gamma1*h (both constant-free). Enumerates the candidate
// constant pairs (xi, eta) = (alpha*gamma2, beta*gamma1), verifies each by
// an identity test, and returns the first verified factor pair, rescaled so
// that the pair multiplies exactly to f.
std::optional<std::pair<PolyValue, PolyValue>> try_constants(
    Ctx& ctx, const PolyValue& Gleft, const PolyValue& Hright,
    const std::optional<Scalar>& fixed_xi,
    const std::optional<Scalar>& fixed_eta) {
  Workspace& ws = ctx.ws;
  const Scalar delta = ctx.delta;
  const Scalar f0 = ctx.f0();
  const Scalar zero = Scalar::zero(ctx.spec());

  PolyValue prod = ws.pv_mul(Gleft, Hright);  // delta * g * h
  const Monomial& m1 = ctx.w.m1;
  const Monomial& m2 = ctx.w.m2;
  Scalar gamma = ws.coeff(ctx.f, m1);
  Scalar a = ws.coeff(prod, m1);
  Scalar b = ws.coeff(Gleft, m1);   // equals delta for a true factorization
  Scalar c = ws.coeff(Hright, m1);
  Scalar gamma_m = ws.coeff(ctx.f, m2);
  Scalar a_m = ws.coeff(prod, m2);
  Scalar b_m = ws.coeff(Hright, m2);  // mirror of b
  Scalar c_m = ws.coeff(Gleft, m2);

  ConstantRecovery rec{a, b, c, gamma, delta};
  std::vector<std::pair<Scalar, Scalar>> cands;
  auto push = [&](const Scalar& xi, const Scalar& eta) {
    for (const auto& [x, e] : cands)
      if (x == xi && e == eta) return;
    cands.emplace_back(xi, eta);
  };

  // Coefficient identities at m1 and m2:
  //   gamma * delta  = a   + eta * b  + xi * c
  //   gamma'* delta  = a'  + eta * c' + xi * b'
  // plus xi * eta = f0 * delta.
  if (fixed_eta) {
    const Scalar& eta = *fixed_eta;
    if (!b_m.is_zero()) push((gamma_m * delta - a_m - eta * c_m) / b_m, eta);
    if (!f0.is_zero() && !eta.is_zero()) push(f0 * delta / eta, eta);
    if (f0.is_zero()) push(zero, eta);
  } else if (fixed_xi) {
    const Scalar& xi = *fixed_xi;
    if (!b.is_zero()) push(xi, (gamma * delta - a - xi * c) / b);
    if (!f0.is_zero() && !xi.is_zero()) push(xi, f0 * delta / xi);
    if (f0.is_zero()) push(xi, zero);
  } else if (!f0.is_zero()) {
    // Substituting eta = f0*delta/xi into the m1 identity gives the
    // quadratic  c*xi^2 + (a - gamma*delta)*xi + f0*b*delta = 0.
    rec.quadratic_used = true;
    try {
      rec.roots = solve_quadratic(c, a - gamma * delta, f0 * b * delta);
    } catch (const DegenerateEquation&) {
      // no admissible constants; fall through with no candidates
    }
    for (const Scalar& xi : rec.roots)
      if (!xi.is_zero()) push(xi, f0 * delta / xi);
  } else {
    push(zero, zero);
    if (!b.is_zero()) push(zero, (gamma * delta - a) / b);
    if (!b_m.is_zero()) push((gamma_m * delta - a_m) / b_m, zero);
  }

  for (const auto& [xi, eta] : cands) {
    PolyValue G(xi, Gleft.gate);
    PolyValue H(eta, Hright.gate);
    if (residual_zero(ctx, G, H)) {
      rec.accepted_xi = xi;
      rec.accepted_eta = eta;
      if (ctx.rep) ctx.rep->recovery = rec;
      return std::make_pair(ws.pv_scale(delta.inv(), G), H);
    }
  }
  if (ctx.rep) ctx.rep->recovery = rec;
  return std::nullopt;
}

// Equal-degree split: both factor bodies come from one derivative each.
std::optional<std::pair<PolyValue, PolyValue>> case_equal(Ctx& ctx) {
  Workspace& ws = ctx.ws;
  PolyValue Hright = ws.derive(ctx.f, ctx.w.m1, true);    // gamma1 * h
  PolyValue Gleft = ws.derive(ctx.f, ctx.w.m2, false);    // gamma2 * g
  return try_constants(ctx, Gleft, Hright, std::nullopt, std::nullopt);
}

// Unequal degrees. The short factor is recovered whole by one derivative;
// the long factor is rebuilt part by part: top parts through top-split
// filtering, lower parts by peeling known products off the corresponding
// homogeneous part of f, which needs the short factor's scaled constant
// term u = (const of short factor) * gamma_long first.
struct LongState {
  bool left_long;           // true: the left factor has the larger degree
  int dl, ds;               // factor degrees
  Monomial ml, ms;          // certificate parts on the long / short side
  PolyValue hs;             // gammaL * (short factor body)
  Workspace::Parts sparts;  // its homogeneous parts
  std::map<int, PolyValue> upper;  // gammaS * (long part i), top range

  LongState(bool ll, int dl_, int ds_, Monomial ml_, Monomial ms_,
            PolyValue hs_, Workspace::Parts sp)
      : left_long(ll), dl(dl_), ds(ds_), ml(std::move(ml_)),
        ms(std::move(ms_)), hs(std::move(hs_)), sparts(std::move(sp)) {}
};

std::map<int, PolyValue> run_peel(Ctx& ctx, const LongState& st,
                                  const Scalar& u, int floor) {
  Workspace& ws = ctx.ws;
  std::map<int, PolyValue> parts = st.upper;
  for (int i = st.dl - st.ds; i >= floor; --i) {
    PolyValue D = ws.pv_scale(ctx.delta, ctx.part_pv(st.ds + i));
    for (int j = 1; j <= st.ds - 1; ++j) {
      auto pt = parts.find(st.ds + i - j);
      auto sj = st.sparts.at(j);
      if (pt == parts.end() || !sj) continue;
      PolyValue sp(Scalar::zero(ctx.spec()), sj);
      PolyValue term = st.left_long ? ws.pv_mul(pt->second, sp)
                                    : ws.pv_mul(sp, pt->second);
      D = ws.pv_sub(D, term);
    }
    auto top = parts.find(st.ds + i);
    if (top != parts.end()) D = ws.pv_sub(D, ws.pv_scale(u, top->second));
    PolyValue der = ws.derive(D, st.ms, !st.left_long);
    parts.insert_or_assign(i, ws.pv_scale(ctx.delta.inv(), der));
  }
  return parts;
}

std::optional<std::pair<PolyValue, PolyValue>> case_long(Ctx& ctx,
                                                         bool left_long) {
  Workspace& ws = ctx.ws;
  const int dl = left_long ? ctx.w.d1 : ctx.w.d2;
  const int ds = left_long ? ctx.w.d2 : ctx.w.d1;
  const Monomial ml = left_long ? ctx.w.m1 : ctx.w.m2;
  const Monomial ms = left_long ? ctx.w.m2 : ctx.w.m1;
  PolyValue hs = ws.derive(ctx.f, ml, left_long);  // gammaL * short body
  LongState st(left_long, dl, ds, ml, ms, hs, ws.parts_of(hs));

  for (int i = st.dl - st.ds + 1; i <= st.dl; ++i) {
    int k = i + st.ds;
    if (!ctx.fparts.at(k)) {
      st.upper.insert_or_assign(i, ws.pv_zero());
      continue;
    }
    Circuit comp = top_split_component(ctx.norm_part(k),
                                       left_long ? i : st.ds,
                                       left_long ? st.ds : i);
    PolyValue cpv = ws.import(comp);
    st.upper.insert_or_assign(i, ws.derive(cpv, st.ms, !left_long));
  }

  // Scaled constant of the short factor, from the coefficient identity of
  // f at ml:  coeff(f, ml) = coeff(long, outer)*coeff(short, inner) + u.
  Monomial outer = left_long ? st.ml.left() : st.ml.right();
  Monomial inner = left_long ? st.ml.right() : st.ml.left();
  Scalar P = ws.coeff(ctx.f, st.ml);
  Scalar Yp = ws.coeff(st.hs, inner);
  std::vector<Scalar> ucands;
  if (Yp.is_zero()) {
    ucands.push_back(P);
  } else if (outer.degree() >= st.dl - st.ds + 1) {
    Scalar Xp = ws.coeff(st.upper.at(outer.degree()), outer);
    ucands.push_back(P - Xp * Yp / ctx.delta);
  } else {
    // The long part holding `outer` is itself u-dependent, so the identity
    // becomes a polynomial equation phi(u) = 0; recover u as one of its
    // roots (by interpolation), or by exhausting a tiny field.
    const int e = outer.degree();
    const int dmax = st.dl + 2;
    const FieldSpec& spec = ctx.spec();
    if (spec.is_prime_field() &&
        spec.modulus() <= static_cast<std::uint64_t>(dmax) + 1) {
      for (std::uint64_t r = 0; r < spec.modulus(); ++r)
        ucands.push_back(Scalar::from_residue(spec, r));
    } else {
      std::vector<Scalar> xs, ys;
      for (int t = 0; t <= dmax; ++t) {
        Scalar x = Scalar::from_int(spec, t);
        auto parts = run_peel(ctx, st, x, e);
        Scalar phi = x + ws.coeff(parts.at(e), outer) * Yp / ctx.delta - P;
        xs.push_back(x);
        ys.push_back(phi);
      }
      ucands = poly_roots(interpolate(xs, ys), spec);
      ucands.push_back(Scalar::zero(spec));
      ucands.push_back(P);
      ucands = dedupe_sorted(std::move(ucands));
    }
  }

  for (const Scalar& u : ucands) {
    std::map<int, PolyValue> parts = run_peel(ctx, st, u, 1);
    PolyValue lsum = ws.pv_zero();
    for (int i = 1; i <= st.dl; ++i) {
      auto it = parts.find(i);
      if (it != parts.end()) lsum = ws.pv_add(lsum, it->second);
    }
    PolyValue Gleft = left_long ? lsum : st.hs;
    PolyValue Hright = left_long ? st.hs : lsum;
    std::optional<Scalar> fx, fe;
    if (left_long)
      fe = u;
    else
      fx = u;
    auto r = try_constants(ctx, Gleft, Hright, fx, fe);
    if (r) return r;
  }
  return std::nullopt;
}

std::optional<std::pair<PolyValue, PolyValue>> factor_once_ws(
    Workspace& ws, const PolyValue& f, FactorOnceReport* rep) {
  Ctx ctx{ws, f, ws.parts_of(f), {}};
  ctx.rep = rep;
  ctx.norm_parts.resize(ctx.fparts.bound() + 1);

  std::optional<Certificate> top;
  int d = 0;
  for (int j = ctx.fparts.bound(); j >= 1; --j) {
    if (!ctx.fparts.at(j)) continue;
    top = pit_homogeneous(ctx.norm_part(j));
    if (top) {
      d = j;
      break;
    }
  }
  if (!top) {
    if (f.c0.is_zero()) throw ZeroPolynomial();
    throw ConstantInput();
  }
  if (d == 1) return std::nullopt;  // linear polynomials are irreducible

  auto [m1, m2] = top->monomial.top_split();
  ctx.w = SplitWitness{top->monomial, m1,          m2,
                       m1.degree(),   m2.degree(), top->coefficient};
  ctx.delta = top->coefficient;
  if (rep) rep->witness = ctx.w;

  if (ctx.w.d1 == ctx.w.d2) return case_equal(ctx);
  return case_long(ctx, ctx.w.d1 > ctx.w.d2);
}

Monomial shift_leaves(const Monomial& m, int offset) {
  if (m.is_leaf()) return Monomial::var(m.var_index() + offset);
  auto [l, r] = m.top_split();
  return Monomial::node(shift_leaves(l, offset), shift_leaves(r, offset));
}

// Coefficient that normalizes a (nonconstant, nonzero) factor: the
// coefficient of its lexicographically least nonzero monomial. Falls back
// to the identity-test certificate when the factor is too large to expand.
Scalar normalization_coefficient(const Circuit& c) {
  try {
    DensePoly dp = expand(c, 100000);
    return dp.terms().begin()->second;
  } catch (const TermBudgetExceeded&) {
    return pit(c)->coefficient;
  }
}

}  // namespace

std::optional<std::pair<Circuit, Circuit>> factor_once(
    const Circuit& c, FactorOnceReport* report) {
  Workspace ws(c.spec, c.num_vars);
  PolyValue f = ws.import(c);
  auto r = factor_once_ws(ws, f, report);
  if (!r) return std::nullopt;
  return std::make_pair(simplify(ws.to_circuit(r->first)),
                        simplify(ws.to_circuit(r->second)));
}

bool is_irreducible(const Circuit& c) { return !factor_once(c).has_value(); }

Factorization factor(const Circuit& c) {
  Workspace ws(c.spec, c.num_vars);
  PolyValue f = ws.import(c);

  std::function<std::pair<std::vector<PolyValue>, Monomial>(const PolyValue&)>
      rec = [&](const PolyValue& v)
      -> std::pair<std::vector<PolyValue>, Monomial> {
    auto split = factor_once_ws(ws, v, nullptr);
    if (!split) return {{v}, Monomial::var(1)};
    auto [lf, ls] = rec(split->first);
    auto [rf, rs] = rec(split->second);
    Monomial shape =
        Monomial::node(ls, shift_leaves(rs, static_cast<int>(lf.size())));
    lf.insert(lf.end(), rf.begin(), rf.end());
    return {std::move(lf), shape};
  };

  try {
    auto [pvs, shape] = rec(f);
    Factorization out{Scalar::one(c.spec), {}, shape};
    for (const PolyValue& pv : pvs) {
      Circuit fc = simplify(ws.to_circuit(pv));
      Scalar lambda = normalization_coefficient(fc);
      out.unit = out.unit * lambda;
      if (!lambda.is_one())
        fc = simplify(ws.to_circuit(ws.pv_scale(lambda.inv(), pv)));
      out.factors.push_back(std::move(fc));
    }
    return out;
  } catch (const ConstantInput&) {
    return Factorization{f.c0, {}, Monomial::empty()};
  }
}

}  // namespace nac
