#ifndef NAC_FIELD_HPP
#define NAC_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nac/errors.hpp"

namespace nac {

enum class FieldKind { Rationals, PrimeField };

// Identifies the coefficient field: the rationals, or Z/pZ for a prime p.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  // Verifies primality by trial division; p must fit comfortably so that
  // residue products never overflow 64 bits.
  static FieldSpec prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rationals; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
  std::uint64_t modulus() const { return modulus_; }

  bool operator==(const FieldSpec&) const = default;

  std::string to_string() const;

 private:
  FieldSpec(FieldKind k, std::uint64_t m) : kind_(k), modulus_(m) {}
  FieldKind kind_;
  std::uint64_t modulus_;
};

// An exact field element: an arbitrary-precision rational in lowest terms,
// or a residue in [0, p). All operations are pure; values are immutable.
class Scalar {
 public:
  static Scalar zero(const FieldSpec& spec);
  static Scalar one(const FieldSpec& spec);
  static Scalar from_int(const FieldSpec& spec, long long v);
  static Scalar from_mpq(mpq_class q);                       // rationals only
  static Scalar from_residue(const FieldSpec& spec, std::uint64_t r);

  const FieldSpec& spec() const { return spec_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;   // throws DivisionByZero
  Scalar operator-() const;
  Scalar inv() const;                        // throws DivisionByZero

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Canonical ordering: rationals by value, residues by representative.
  // Only meaningful within one field; used for deterministic choices.
  bool less(const Scalar& o) const;

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }

  std::string to_string() const;

 private:
  Scalar(FieldSpec spec, mpq_class q) : spec_(spec), v_(std::move(q)) {}
  Scalar(FieldSpec spec, std::uint64_t r) : spec_(spec), v_(r) {}

  void check_same(const Scalar& o) const {
    if (!(spec_ == o.spec_)) throw FieldMismatch();
  }

  FieldSpec spec_;
  std::variant<mpq_class, std::uint64_t> v_;
};

struct ScalarLess {
  bool operator()(const Scalar& a, const Scalar& b) const { return a.less(b); }
};

// Parses "-3", "3/2" over the rationals, or a (possibly negative) decimal
// integer over a prime field, reduced mod p.
Scalar parse_scalar(const FieldSpec& spec, const std::string& text);

// All roots of c2*x^2 + c1*x + c0 = 0 in the field, in ascending canonical
// order. Over the rationals this uses an exact integer square-root test on
// the discriminant; over F_p it searches all residues. Throws
// DegenerateEquation when c2 = c1 = 0.
std::vector<Scalar> solve_quadratic(const Scalar& c2, const Scalar& c1,
                                    const Scalar& c0);

}  // namespace nac

#endif
