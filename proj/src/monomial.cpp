#include "nac/monomial.hpp"

#include <cctype>
#include <climits>

namespace nac {

Monomial Monomial::var(int index) {
  if (index < 1) throw ValidationError("variable index must be >= 1");
  auto rep = std::make_shared<Rep>();
  rep->var = index;
  rep->degree = 1;
  return Monomial(std::move(rep));
}

Monomial Monomial::node(const Monomial& left, const Monomial& right) {
  if (left.is_empty() || right.is_empty())
    throw ValidationError("monomial children must be nonempty");
  auto rep = std::make_shared<Rep>();
  rep->var = 0;
  rep->degree = left.degree() + right.degree();
  rep->left = left.rep_;
  rep->right = right.rep_;
  return Monomial(std::move(rep));
}

int Monomial::var_index() const {
  if (!is_leaf()) throw ValidationError("not a leaf monomial");
  return rep_->var;
}

std::pair<Monomial, Monomial> Monomial::top_split() const {
  if (!is_node()) throw SplitOfLeaf();
  return {Monomial(rep_->left), Monomial(rep_->right)};
}

Monomial Monomial::left() const { return top_split().first; }
Monomial Monomial::right() const { return top_split().second; }

bool Monomial::operator==(const Monomial& o) const {
  if (rep_ == o.rep_) return true;
  if (!rep_ || !o.rep_) return false;
  if (rep_->var != o.rep_->var || rep_->degree != o.rep_->degree) return false;
  if (rep_->var > 0) return true;
  return Monomial(rep_->left) == Monomial(o.rep_->left) &&
         Monomial(rep_->right) == Monomial(o.rep_->right);
}

namespace {

void encode_into(const Monomial& m, EncodedWord& out) {
  if (m.is_empty()) return;
  if (m.is_leaf()) {
    out.push_back(m.var_index());
    return;
  }
  auto [l, r] = m.top_split();
  out.push_back(kLParen);
  encode_into(l, out);
  encode_into(r, out);
  out.push_back(kRParen);
}

int letter_rank(int letter) {
  if (letter == kLParen) return INT_MAX - 1;
  if (letter == kRParen) return INT_MAX;
  return letter;
}

}  // namespace

EncodedWord Monomial::encode() const {
  EncodedWord w;
  w.reserve(degree() > 0 ? 3 * degree() - 2 : 0);
  encode_into(*this, w);
  return w;
}

bool Monomial::less(const Monomial& o) const {
  if (is_empty()) return false;     // empty sorts last
  if (o.is_empty()) return true;
  EncodedWord a = encode(), b = o.encode();
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

int Monomial::max_var() const {
  if (is_empty()) return 0;
  if (is_leaf()) return var_index();
  auto [l, r] = top_split();
  return std::max(l.max_var(), r.max_var());
}

namespace {

struct Tokens {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    if (done()) throw ParseError("unexpected end of monomial");
    return toks[pos];
  }
  std::string next() {
    auto t = peek();
    ++pos;
    return t;
  }
};

Tokens tokenize(const std::string& text) {
  Tokens t;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      t.toks.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '(' && text[j] != ')')
        ++j;
      t.toks.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  return t;
}

int parse_var_token(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'x')
    throw ParseError("expected variable, got '" + tok + "'");
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("bad variable '" + tok + "'");
  int idx = std::stoi(tok.substr(1));
  if (idx < 1) throw ParseError("variable index must be >= 1");
  return idx;
}

Monomial parse_rec(Tokens& t) {
  const std::string tok = t.next();
  if (tok == "(") {
    Monomial l = parse_rec(t);
    Monomial r = parse_rec(t);
    if (t.next() != ")") throw ParseError("expected ')'");
    return Monomial::node(l, r);
  }
  if (tok == ")") throw ParseError("unexpected ')'");
  return Monomial::var(parse_var_token(tok));
}

}  // namespace

Monomial parse_monomial(const std::string& text) {
  Tokens t = tokenize(text);
  if (t.done()) throw ParseError("empty monomial");
  if (t.toks.size() == 1 && t.toks[0] == "1") return Monomial::empty();
  Monomial m = parse_rec(t);
  if (!t.done()) throw ParseError("trailing input after monomial");
  return m;
}

std::string print_monomial(const Monomial& m) {
  if (m.is_empty()) return "1";
  if (m.is_leaf()) return "x" + std::to_string(m.var_index());
  auto [l, r] = m.top_split();
  return "(" + print_monomial(l) + " " + print_monomial(r) + ")";
}

namespace {

Monomial decode_rec(const EncodedWord& w, std::size_t& pos) {
  if (pos >= w.size()) throw DecodeError("unexpected end of word");
  int letter = w[pos++];
  if (letter > 0) return Monomial::var(letter);
  if (letter != kLParen) throw DecodeError("unexpected ')' in word");
  Monomial l = decode_rec(w, pos);
  Monomial r = decode_rec(w, pos);
  if (pos >= w.size() || w[pos] != kRParen)
    throw DecodeError("missing ')' in word");
  ++pos;
  return Monomial::node(l, r);
}

}  // namespace

Monomial decode_word(const EncodedWord& w) {
  if (w.empty()) return Monomial::empty();
  std::size_t pos = 0;
  Monomial m = decode_rec(w, pos);
  if (pos != w.size()) throw DecodeError("trailing letters in word");
  return m;
}

}  // namespace nac
