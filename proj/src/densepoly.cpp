#include "nac/densepoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nac {

DensePoly DensePoly::constant(const Scalar& c) {
  DensePoly p(c.spec());
  p.add_term(Monomial::empty(), c);
  return p;
}

DensePoly DensePoly::monomial(const FieldSpec& spec, const Monomial& m,
                              const Scalar& coeff) {
  DensePoly p(spec);
  p.add_term(m, coeff);
  return p;
}

int DensePoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Scalar DensePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(spec_) : it->second;
}

void DensePoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
  if (!(spec_ == o.spec_)) throw FieldMismatch();
  DensePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
  if (!(spec_ == o.spec_)) throw FieldMismatch();
  DensePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
  if (!(spec_ == o.spec_)) throw FieldMismatch();
  DensePoly r(spec_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma.is_empty() ? mb
                 : mb.is_empty() ? ma
                                 : Monomial::node(ma, mb);
      r.add_term(m, ca * cb);
    }
  return r;
}

DensePoly DensePoly::scaled(const Scalar& a) const {
  DensePoly r(spec_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * a);
  return r;
}

bool DensePoly::operator==(const DensePoly& o) const {
  if (!(spec_ == o.spec_)) throw FieldMismatch();
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (!(m == it->first) || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

DensePoly DensePoly::left_deriv(const Monomial& m) const {
  DensePoly r(spec_);
  for (const auto& [mm, c] : terms_)
    if (mm.is_node() && mm.left() == m) r.add_term(mm.right(), c);
  return r;
}

DensePoly DensePoly::right_deriv(const Monomial& m) const {
  DensePoly r(spec_);
  for (const auto& [mm, c] : terms_)
    if (mm.is_node() && mm.right() == m) r.add_term(mm.left(), c);
  return r;
}

DensePoly DensePoly::homogeneous_part(int j) const {
  DensePoly r(spec_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == j) r.add_term(m, c);
  return r;
}

std::string DensePoly::to_text() const {
  std::ostringstream out;
  for (const auto& [m, c] : terms_) {
    if (m.is_empty())
      out << "const " << c.to_string() << "\n";  // empty key sorts last
    else
      out << c.to_string() << " " << print_monomial(m) << "\n";
  }
  return out.str();
}

DensePoly DensePoly::parse_text(const FieldSpec& spec,
                                const std::string& text) {
  DensePoly p(spec);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (first == "const") {
      p.add_term(Monomial::empty(), parse_scalar(spec, rest.substr(rest.find_first_not_of(' '))));
    } else {
      Scalar c = parse_scalar(spec, first);
      p.add_term(parse_monomial(rest), c);
    }
  }
  return p;
}

DensePoly expand(const Circuit& c, std::size_t max_terms) {
  std::vector<DensePoly> val;
  val.reserve(c.gates.size());
  auto guard = [&](const DensePoly& p) {
    if (p.size() > max_terms)
      throw TermBudgetExceeded("expansion exceeds " +
                               std::to_string(max_terms) + " terms");
    return p;
  };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Input:
        val.push_back(DensePoly::monomial(c.spec, Monomial::var(g.var),
                                          Scalar::one(c.spec)));
        break;
      case GateKind::Const:
        val.push_back(DensePoly::constant(*g.value));
        break;
      case GateKind::Mul:
        val.push_back(guard(val[g.lhs] * val[g.rhs]));
        break;
      case GateKind::Add: {
        DensePoly s(c.spec);
        for (int a : g.args) s = s + val[a];
        val.push_back(guard(s));
        break;
      }
    }
  }
  return val[c.output];
}

std::map<std::vector<int>, Scalar> expand_words(const Circuit& c,
                                                std::size_t max_terms) {
  using WordPoly = std::map<std::vector<int>, Scalar>;
  auto add_into = [](WordPoly& p, const std::vector<int>& w, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = p.find(w);
    if (it == p.end()) {
      p.emplace(w, s);
      return;
    }
    it->second = it->second + s;
    if (it->second.is_zero()) p.erase(it);
  };
  std::vector<WordPoly> val;
  val.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    WordPoly p;
    switch (g.kind) {
      case GateKind::Input:
        p.emplace(std::vector<int>{g.var}, Scalar::one(c.spec));
        break;
      case GateKind::Const:
        add_into(p, {}, *g.value);
        break;
      case GateKind::Mul:
        for (const auto& [wa, ca] : val[g.lhs])
          for (const auto& [wb, cb] : val[g.rhs]) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            add_into(p, w, ca * cb);
          }
        break;
      case GateKind::Add:
        for (int a : g.args)
          for (const auto& [w, s] : val[a]) add_into(p, w, s);
        break;
    }
    if (p.size() > max_terms)
      throw TermBudgetExceeded("word expansion exceeds " +
                               std::to_string(max_terms) + " terms");
    val.push_back(std::move(p));
  }
  return val[c.output];
}

namespace {

// All monomials over variables [1, n] of degree exactly k.
std::vector<Monomial> monomials_of_degree(int n, int k) {
  std::vector<Monomial> out;
  if (k == 1) {
    for (int v = 1; v <= n; ++v) out.push_back(Monomial::var(v));
    return out;
  }
  for (int dl = 1; dl < k; ++dl)
    for (const Monomial& l : monomials_of_degree(n, dl))
      for (const Monomial& r : monomials_of_degree(n, k - dl))
        out.push_back(Monomial::node(l, r));
  return out;
}

std::vector<Monomial> monomials_up_to(int n, int k) {
  std::vector<Monomial> out;
  for (int d = 1; d <= k; ++d) {
    auto v = monomials_of_degree(n, d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace

std::vector<std::pair<DensePoly, DensePoly>> brute_factor(const DensePoly& p) {
  const FieldSpec& spec = p.spec();
  if (!spec.is_prime_field())
    throw BudgetExceeded("brute factorization requires a small prime field");
  const std::uint64_t q = spec.modulus();
  const int d = p.degree();
  const int n = [&] {
    int m = 0;
    for (const auto& [mo, co] : p.terms()) m = std::max(m, mo.max_var());
    return m;
  }();
  if (q > 3 || d > 4 || n > 3)
    throw BudgetExceeded("brute factorization bounds exceeded");

  std::vector<std::pair<DensePoly, DensePoly>> found;
  if (d < 2) return found;  // constants and degree-1 polynomials

  // The split of any top-degree monomial forces both factor degrees.
  Monomial top = Monomial::empty();
  for (const auto& [m, c] : p.terms())
    if (m.degree() == d) {
      top = m;
      break;
    }
  auto [tl, tr] = top.top_split();
  const int d1 = tl.degree(), d2 = tr.degree();

  // Top-degree support of a factor is forced to the split parts of the
  // top-degree support of p; lower parts are unconstrained.
  auto collect_support = [&](bool left_side, int dk) {
    std::vector<Monomial> supp = monomials_up_to(n, dk - 1);
    std::vector<Monomial> tops;
    for (const auto& [m, c] : p.terms())
      if (m.degree() == d) {
        Monomial part = left_side ? m.left() : m.right();
        if (part.degree() == dk) {
          bool seen = false;
          for (const Monomial& t : tops) seen = seen || t == part;
          if (!seen) tops.push_back(part);
        }
      }
    std::sort(tops.begin(), tops.end(), MonomialLess{});
    supp.insert(supp.end(), tops.begin(), tops.end());
    return std::make_pair(supp, tops.size());
  };

  auto [supp1, ntop1] = collect_support(true, d1);
  auto [supp2, ntop2] = collect_support(false, d2);

  double work = 1.0;
  for (std::size_t i = 0; i < supp1.size() + supp2.size() + 2; ++i) work *= q;
  if (work > 5e6) throw BudgetExceeded("brute factorization bounds exceeded");

  // Enumerate coefficient assignments (constant term included) over the
  // support, requiring at least one nonzero top-degree coefficient.
  auto enumerate = [&](const std::vector<Monomial>& supp, std::size_t ntop) {
    std::vector<DensePoly> out;
    std::vector<std::uint64_t> coef(supp.size() + 1, 0);
    for (;;) {
      bool top_nonzero = false;
      for (std::size_t i = supp.size() - ntop; i < supp.size(); ++i)
        top_nonzero = top_nonzero || coef[i] != 0;
      if (top_nonzero) {
        DensePoly g(spec);
        for (std::size_t i = 0; i < supp.size(); ++i)
          g.add_term(supp[i], Scalar::from_residue(spec, coef[i]));
        g.add_term(Monomial::empty(), Scalar::from_residue(spec, coef.back()));
        out.push_back(std::move(g));
      }
      std::size_t i = 0;
      while (i < coef.size() && ++coef[i] == q) coef[i++] = 0;
      if (i == coef.size()) break;
    }
    return out;
  };

  std::vector<DensePoly> lefts = enumerate(supp1, ntop1);
  std::vector<DensePoly> rights = enumerate(supp2, ntop2);
  for (const DensePoly& g : lefts)
    for (const DensePoly& h : rights)
      if (g * h == p) found.emplace_back(g, h);
  return found;
}

}  // namespace nac
