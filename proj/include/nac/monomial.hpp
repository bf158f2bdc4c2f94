#ifndef NAC_MONOMIAL_HPP
#define NAC_MONOMIAL_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nac/errors.hpp"

namespace nac {

// Letters of an encoded word: positive integers are variable indices, the
// two sentinels are the bracket letters.
inline constexpr int kLParen = -1;
inline constexpr int kRParen = -2;

using EncodedWord = std::vector<int>;

// A monomial of the free nonassociative ring: a full binary tree with
// variable-labeled leaves. Two monomials are equal iff their trees are
// identical. The empty monomial (degree 0) marks a constant term.
// Immutable; copies share structure.
class Monomial {
 public:
  Monomial() = default;  // the empty monomial

  static Monomial empty() { return Monomial(); }
  static Monomial var(int index);
  static Monomial node(const Monomial& left, const Monomial& right);

  bool is_empty() const { return rep_ == nullptr; }
  bool is_leaf() const { return rep_ && rep_->var > 0; }
  bool is_node() const { return rep_ && rep_->var == 0; }
  int degree() const { return rep_ ? rep_->degree : 0; }

  int var_index() const;                        // leaf only
  std::pair<Monomial, Monomial> top_split() const;  // throws SplitOfLeaf
  Monomial left() const;
  Monomial right() const;

  bool operator==(const Monomial& o) const;
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  // Bracket encoding: a leaf encodes to its own letter, a node to
  // '(' enc(left) enc(right) ')'. A degree-k monomial encodes to 3k-2
  // letters.
  EncodedWord encode() const;

  // Lexicographic order on encoded words with x1 < x2 < ... < '(' < ')';
  // the empty monomial sorts after every proper monomial.
  bool less(const Monomial& o) const;

  // Stable identity of the root node, usable as a memo key.
  const void* id() const { return rep_.get(); }

  // Largest variable index appearing; 0 for the empty monomial.
  int max_var() const;

 private:
  struct Rep {
    int var;  // > 0 for a leaf; 0 for an internal node
    int degree;
    std::shared_ptr<const Rep> left, right;
  };
  explicit Monomial(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  std::shared_ptr<const Rep> rep_;
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.less(b);
  }
};

Monomial parse_monomial(const std::string& text);
std::string print_monomial(const Monomial& m);

// Inverse of Monomial::encode. Throws DecodeError on malformed words.
Monomial decode_word(const EncodedWord& w);

}  // namespace nac

#endif
