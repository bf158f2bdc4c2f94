#include "nac/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "nac/densepoly.hpp"
#include "nac/factor.hpp"
#include "nac/pit.hpp"

namespace nac {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
}

std::string part_name(int degree) {
  std::ostringstream ss;
  ss << "part_" << std::setw(3) << std::setfill('0') << degree << ".circ";
  return ss.str();
}

std::string factor_name(int index) {
  std::ostringstream ss;
  ss << "factor_" << std::setw(3) << std::setfill('0') << index << ".circ";
  return ss.str();
}

// Bracketed product of the factors per the shape tree, as a circuit gate.
int build_product(CircuitBuilder& b, const Monomial& shape,
                  const std::vector<int>& factor_gates) {
  if (shape.is_leaf()) return factor_gates[shape.var_index() - 1];
  auto [l, r] = shape.top_split();
  return b.mul(build_product(b, l, factor_gates),
               build_product(b, r, factor_gates));
}

void cmd_pit(const std::string& file, std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  auto cert = pit(c);
  if (!cert) {
    out << "ZERO\n";
    return;
  }
  out << "NONZERO " << print_monomial(cert->monomial) << " "
      << cert->coefficient.to_string() << "\n";
}

void cmd_factor(const std::string& file, const std::string& dir,
                std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  Factorization fz = factor(c);

  // self-check: unit * (bracketed product of factors) - input must vanish
  CircuitBuilder b(c.spec, c.num_vars);
  int residual;
  if (fz.factors.empty()) {
    residual = b.add({b.constant(fz.unit),
                      b.scale(-Scalar::one(c.spec), append_circuit(b, c))});
  } else {
    std::vector<int> fgates;
    for (const Circuit& f : fz.factors) fgates.push_back(append_circuit(b, f));
    int prod = build_product(b, fz.shape, fgates);
    residual = b.add({b.scale(fz.unit, prod),
                      b.scale(-Scalar::one(c.spec), append_circuit(b, c))});
  }
  if (pit(b.extract(residual)))
    throw ValidationError("factorization self-check failed");

  std::filesystem::path outdir(dir);
  std::filesystem::create_directories(outdir);
  out << "FACTORS " << fz.factors.size() << "\n";
  out << "unit " << fz.unit.to_string() << "\n";
  out << "product " << print_monomial(fz.shape) << "\n";
  for (std::size_t i = 0; i < fz.factors.size(); ++i) {
    std::string name = factor_name(static_cast<int>(i) + 1);
    write_file(outdir / name, print_circuit(fz.factors[i]));
    out << name << "\n";
  }
}

void cmd_coeff(const std::string& file, const std::string& mono,
               std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  Monomial m = parse_monomial(mono);
  out << coefficient(c, m).to_string() << "\n";
}

void cmd_deriv(const std::string& side, const std::string& file,
               const std::string& mono, const std::string& outfile,
               std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  Monomial m = parse_monomial(mono);
  Circuit d = side == "left" ? left_derivative(c, m) : right_derivative(c, m);
  d = simplify(d);
  std::string text = print_circuit(d);
  if (outfile.empty())
    out << text;
  else
    write_file(outfile, text);
}

void cmd_homogenize(const std::string& file, const std::string& dir,
                    std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  HomogeneousParts hp = homogenize(c);
  std::filesystem::path outdir(dir);
  std::filesystem::create_directories(outdir);
  int count = 0;
  for (int j = 0; j <= hp.degree_bound(); ++j)
    if (hp.parts[j]) ++count;
  out << "PARTS " << count << "\n";
  for (int j = 0; j <= hp.degree_bound(); ++j) {
    if (!hp.parts[j]) continue;
    std::string name = part_name(j);
    write_file(outdir / name, print_circuit(simplify(*hp.parts[j])));
    out << name << "\n";
  }
}

void cmd_expand(const std::string& file, std::size_t max_terms,
                std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  out << expand(c, max_terms).to_text();
}

void cmd_irreducible(const std::string& file, std::ostream& out) {
  Circuit c = parse_circuit(read_file(file));
  out << (is_irreducible(c) ? "IRREDUCIBLE" : "REDUCIBLE") << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"identity testing and factorization for nonassociative "
               "noncommutative polynomial circuits"};
  app.require_subcommand(1);

  std::string file, mono, side, outdir = ".", outfile;
  std::size_t max_terms = 100000;

  auto* pit_cmd = app.add_subcommand("pit", "identity test");
  pit_cmd->add_option("file", file)->required();

  auto* factor_cmd = app.add_subcommand("factor", "factor into irreducibles");
  factor_cmd->add_option("file", file)->required();
  factor_cmd->add_option("-o,--output", outdir, "output directory");

  auto* coeff_cmd = app.add_subcommand("coeff", "coefficient of a monomial");
  coeff_cmd->add_option("file", file)->required();
  coeff_cmd->add_option("monomial", mono)->required();

  auto* deriv_cmd = app.add_subcommand("deriv", "prefix/suffix derivative");
  deriv_cmd->add_option("--side", side)
      ->required()
      ->check(CLI::IsMember({"left", "right"}));
  deriv_cmd->add_option("file", file)->required();
  deriv_cmd->add_option("monomial", mono)->required();
  deriv_cmd->add_option("-o,--output", outfile, "output circuit file");

  auto* hom_cmd = app.add_subcommand("homogenize", "split into parts");
  hom_cmd->add_option("file", file)->required();
  hom_cmd->add_option("-o,--output", outdir, "output directory")->required();

  auto* expand_cmd = app.add_subcommand("expand", "dense expansion");
  expand_cmd->add_option("file", file)->required();
  expand_cmd->add_option("--max-terms", max_terms, "term budget");

  auto* irr_cmd = app.add_subcommand("irreducible", "irreducibility test");
  irr_cmd->add_option("file", file)->required();

  std::vector<const char*> argv;
  argv.push_back("nac");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (pit_cmd->parsed())
      cmd_pit(file, out);
    else if (factor_cmd->parsed())
      cmd_factor(file, outdir, out);
    else if (coeff_cmd->parsed())
      cmd_coeff(file, mono, out);
    else if (deriv_cmd->parsed())
      cmd_deriv(side, file, mono, outfile, out);
    else if (hom_cmd->parsed())
      cmd_homogenize(file, outdir, out);
    else if (expand_cmd->parsed())
      cmd_expand(file, max_terms, out);
    else if (irr_cmd->parsed())
      cmd_irreducible(file, out);
  } catch (const TermBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace nac
