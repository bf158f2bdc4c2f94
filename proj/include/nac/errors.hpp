#ifndef NAC_ERRORS_HPP
#define NAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nac {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
  FieldMismatch() : Error("operands belong to different fields") {}
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct DegenerateEquation : Error {
  DegenerateEquation() : Error("both leading coefficients are zero") {}
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
  explicit ParseError(const std::string& msg) : Error(msg), line(0) {}
};

struct ValidationError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

struct SplitOfLeaf : Error {
  SplitOfLeaf() : Error("cannot split a monomial of degree < 2") {}
};

struct DegreeError : Error {
  using Error::Error;
};

struct NotHomogeneous : Error {
  using Error::Error;
};

struct NotNormalized : Error {
  using Error::Error;
};

struct TermBudgetExceeded : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct ConstantInput : Error {
  ConstantInput() : Error("input computes a constant polynomial") {}
};

struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("input computes the zero polynomial") {}
};

}  // namespace nac

#endif
