#include "nac/field.hpp"

#include <algorithm>

namespace nac {

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p < 2) throw ValidationError("field modulus must be at least 2");
  if (p >= (1ull << 31))
    throw ValidationError("field modulus too large (must fit in 31 bits)");
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      throw ValidationError("field modulus " + std::to_string(p) +
                            " is not prime");
  return FieldSpec(FieldKind::PrimeField, p);
}

std::string FieldSpec::to_string() const {
  return is_rational() ? "Q" : "Fp " + std::to_string(modulus_);
}

Scalar Scalar::zero(const FieldSpec& spec) {
  if (spec.is_rational()) return Scalar(spec, mpq_class(0));
  return Scalar(spec, std::uint64_t{0});
}

Scalar Scalar::one(const FieldSpec& spec) {
  if (spec.is_rational()) return Scalar(spec, mpq_class(1));
  return Scalar(spec, std::uint64_t{1});
}

Scalar Scalar::from_int(const FieldSpec& spec, long long v) {
  if (spec.is_rational()) {
    mpq_class q;
    q = static_cast<long>(v);
    return Scalar(spec, q);
  }
  const auto p = static_cast<long long>(spec.modulus());
  long long r = v % p;
  if (r < 0) r += p;
  return Scalar(spec, static_cast<std::uint64_t>(r));
}

Scalar Scalar::from_mpq(mpq_class q) {
  q.canonicalize();
  return Scalar(FieldSpec::rationals(), std::move(q));
}

Scalar Scalar::from_residue(const FieldSpec& spec, std::uint64_t r) {
  if (!spec.is_prime_field())
    throw FieldMismatch("residue scalar requires a prime field");
  return Scalar(spec, r % spec.modulus());
}

bool Scalar::is_zero() const {
  if (spec_.is_rational()) return rational() == 0;
  return residue() == 0;
}

bool Scalar::is_one() const {
  if (spec_.is_rational()) return rational() == 1;
  return residue() == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (spec_.is_rational()) return Scalar(spec_, mpq_class(rational() + o.rational()));
  std::uint64_t r = residue() + o.residue();
  const auto p = spec_.modulus();
  if (r >= p) r -= p;
  return Scalar(spec_, r);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (spec_.is_rational()) return Scalar(spec_, mpq_class(rational() - o.rational()));
  const auto p = spec_.modulus();
  std::uint64_t r = residue() + p - o.residue();
  if (r >= p) r -= p;
  return Scalar(spec_, r);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (spec_.is_rational()) return Scalar(spec_, mpq_class(rational() * o.rational()));
  return Scalar(spec_, (residue() * o.residue()) % spec_.modulus());
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  if (spec_.is_rational()) return Scalar(spec_, mpq_class(-rational()));
  const auto p = spec_.modulus();
  return Scalar(spec_, residue() == 0 ? 0 : p - residue());
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (spec_.is_rational()) return Scalar(spec_, mpq_class(1 / rational()));
  // extended Euclid on (r, p)
  const auto p = static_cast<long long>(spec_.modulus());
  long long a = static_cast<long long>(residue()), b = p;
  long long x0 = 1, x1 = 0;
  while (b != 0) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  long long r = x0 % p;
  if (r < 0) r += p;
  return Scalar(spec_, static_cast<std::uint64_t>(r));
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  if (spec_.is_rational()) return rational() == o.rational();
  return residue() == o.residue();
}

bool Scalar::less(const Scalar& o) const {
  check_same(o);
  if (spec_.is_rational()) return rational() < o.rational();
  return residue() < o.residue();
}

std::string Scalar::to_string() const {
  if (spec_.is_rational()) return rational().get_str();
  return std::to_string(residue());
}

Scalar parse_scalar(const FieldSpec& spec, const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar");
  auto check_digits = [&](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (spec.is_rational()) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      if (!check_digits(text)) throw ParseError("bad rational '" + text + "'");
      return Scalar::from_mpq(mpq_class(text));
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!check_digits(num) || !check_digits(den) || den == "0")
      throw ParseError("bad rational '" + text + "'");
    return Scalar::from_mpq(mpq_class(num + "/" + den));
  }
  if (!check_digits(text))
    throw ParseError("bad residue '" + text + "'");
  mpz_class z(text);
  mpz_class p(static_cast<unsigned long>(spec.modulus()));
  mpz_class r = z % p;
  if (r < 0) r += p;
  return Scalar::from_residue(spec, r.get_ui());
}

namespace {

// Exact square root of a nonnegative rational in lowest terms, if one exists.
bool exact_sqrt(const mpq_class& q, mpq_class* out) {
  if (q < 0) return false;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) ||
      !mpz_perfect_square_p(d.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  *out = mpq_class(rn) / mpq_class(rd);
  return true;
}

}  // namespace

std::vector<Scalar> solve_quadratic(const Scalar& c2, const Scalar& c1,
                                    const Scalar& c0) {
  const FieldSpec& spec = c2.spec();
  if (!(c1.spec() == spec) || !(c0.spec() == spec)) throw FieldMismatch();
  if (c2.is_zero() && c1.is_zero()) throw DegenerateEquation();

  std::vector<Scalar> roots;
  if (spec.is_prime_field()) {
    const auto p = spec.modulus();
    for (std::uint64_t r = 0; r < p; ++r) {
      Scalar x = Scalar::from_residue(spec, r);
      if (((c2 * x + c1) * x + c0).is_zero()) roots.push_back(x);
    }
    return roots;  // ascending by construction
  }

  if (c2.is_zero()) {
    roots.push_back(-c0 / c1);
    return roots;
  }
  mpq_class a = c2.rational(), b = c1.rational(), c = c0.rational();
  mpq_class disc = b * b - 4 * a * c;
  mpq_class s;
  if (!exact_sqrt(disc, &s)) return roots;
  mpq_class r1 = (-b - s) / (2 * a);
  mpq_class r2 = (-b + s) / (2 * a);
  roots.push_back(Scalar::from_mpq(r1));
  if (r1 != r2) roots.push_back(Scalar::from_mpq(r2));
  std::sort(roots.begin(), roots.end(), ScalarLess{});
  return roots;
}

}  // namespace nac
