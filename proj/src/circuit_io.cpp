#include <algorithm>
#include <sstream>

#include "nac/circuit.hpp"

namespace nac {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_var_ref(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'x')
    throw ParseError(line, "expected variable, got '" + tok + "'");
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError(line, "bad variable '" + tok + "'");
  return std::stoi(tok.substr(1));
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  std::optional<FieldSpec> spec;
  std::optional<int> num_vars;
  Circuit c;
  std::map<std::string, int> ids;
  bool have_output = false;

  auto resolve = [&](const std::string& tok, int line) {
    auto it = ids.find(tok);
    if (it == ids.end())
      throw ValidationError("line " + std::to_string(line) +
                            ": reference to undefined gate '" + tok + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;

    if (toks[0] == "field") {
      if (spec) throw ParseError(lineno, "duplicate field line");
      if (toks.size() == 2 && toks[1] == "Q") {
        spec = FieldSpec::rationals();
      } else if (toks.size() == 3 && toks[1] == "Fp") {
        try {
          spec = FieldSpec::prime(std::stoull(toks[2]));
        } catch (const std::logic_error&) {
          throw ParseError(lineno, "bad modulus '" + toks[2] + "'");
        }
      } else {
        throw ParseError(lineno, "expected 'field Q' or 'field Fp <p>'");
      }
      continue;
    }
    if (toks[0] == "vars") {
      if (!spec) throw ParseError(lineno, "'vars' before 'field'");
      if (num_vars) throw ParseError(lineno, "duplicate vars line");
      if (toks.size() != 2) throw ParseError(lineno, "expected 'vars <n>'");
      try {
        num_vars = std::stoi(toks[1]);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad variable count '" + toks[1] + "'");
      }
      if (*num_vars < 0) throw ParseError(lineno, "negative variable count");
      continue;
    }
    if (toks[0] == "output") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'output <id>'");
      if (have_output) throw ParseError(lineno, "duplicate output line");
      c.output = resolve(toks[1], lineno);
      have_output = true;
      continue;
    }

    // gate definition: <id> = <op> ...
    if (!spec || !num_vars)
      throw ParseError(lineno, "gate before 'field'/'vars' header");
    if (toks.size() < 3 || toks[1] != "=")
      throw ParseError(lineno, "expected '<id> = <op> ...'");
    const std::string& name = toks[0];
    if (ids.count(name))
      throw ValidationError("line " + std::to_string(lineno) +
                            ": gate '" + name + "' redefined");
    const std::string& op = toks[2];
    Gate g{GateKind::Input};
    if (op == "var") {
      if (toks.size() != 4) throw ParseError(lineno, "expected 'var x<i>'");
      int v = parse_var_ref(toks[3], lineno);
      if (v < 1 || v > *num_vars)
        throw ValidationError("line " + std::to_string(lineno) +
                              ": variable x" + std::to_string(v) +
                              " out of range");
      g = Gate::input(v);
    } else if (op == "const") {
      if (toks.size() != 4) throw ParseError(lineno, "expected 'const <c>'");
      try {
        g = Gate::constant(parse_scalar(*spec, toks[3]));
      } catch (const ParseError& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (op == "mul") {
      if (toks.size() != 5)
        throw ParseError(lineno, "expected 'mul <id> <id>'");
      g = Gate::mul(resolve(toks[3], lineno), resolve(toks[4], lineno));
    } else if (op == "add") {
      if (toks.size() < 4)
        throw ParseError(lineno, "expected 'add <id> ...'");
      std::vector<int> kids;
      for (std::size_t i = 3; i < toks.size(); ++i)
        kids.push_back(resolve(toks[i], lineno));
      g = Gate::add(std::move(kids));
    } else {
      throw ParseError(lineno, "unknown op '" + op + "'");
    }
    ids[name] = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(g));
  }

  if (!spec) throw ParseError(lineno, "missing 'field' line");
  if (!num_vars) throw ParseError(lineno, "missing 'vars' line");
  if (!have_output) throw ParseError(lineno, "missing 'output' line");
  c.spec = *spec;
  c.num_vars = *num_vars;
  validate(c);
  c.degrees = try_annotate_degrees(c);
  if (!c.degrees) c.degrees.reset();
  return c;
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "field " << c.spec.to_string() << "\n";
  out << "vars " << c.num_vars << "\n";
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    out << "g" << i << " = ";
    switch (g.kind) {
      case GateKind::Input:
        out << "var x" << g.var;
        break;
      case GateKind::Const:
        out << "const " << g.value->to_string();
        break;
      case GateKind::Mul:
        out << "mul g" << g.lhs << " g" << g.rhs;
        break;
      case GateKind::Add: {
        std::vector<int> kids = g.args;
        std::sort(kids.begin(), kids.end());
        out << "add";
        for (int k : kids) out << " g" << k;
        break;
      }
    }
    out << "\n";
  }
  out << "output g" << c.output << "\n";
  return out.str();
}

}  // namespace nac
