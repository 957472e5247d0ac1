#include "spinpa/cli.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "spinpa/basis.hpp"
#include "spinpa/dsl.hpp"
#include "spinpa/evalfun.hpp"
#include "spinpa/spinmodel.hpp"
#include "spinpa/verify.hpp"

namespace spinpa {

namespace {

struct Options {
  int n = 0;
  int max_k = 4;
  std::uint64_t seed = 0;
  std::string channel_constant;
  std::string expr;
  int k = 0;
  std::string sign;
  std::string check;
};

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  throw ValidationError("sign must be + or -, got '" + s + "'");
}

Scalar parse_scalar(const std::string& text, int n) {
  const Value v = eval_text(text, n);
  if (!std::holds_alternative<Scalar>(v)) throw ValidationError("'" + text + "' is not a scalar");
  return std::get<Scalar>(v);
}

int cmd_dims(const Options& o, std::ostream& out) {
  out << "k dim(k,+) dim(k,-)\n";
  for (int k = 0; k <= o.max_k; ++k) {
    out << k << ' ' << enumerate_basis(o.n, k, Sign::Plus).size() << ' ' << enumerate_basis(o.n, k, Sign::Minus).size()
        << '\n';
  }
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  out << to_text(eval_text(o.expr, o.n));
  return 0;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  const Value v = eval_text(o.expr, o.n);
  if (const auto* s = std::get_if<Scalar>(&v)) {
    out << s->to_string() << '\n';
    return 0;
  }
  const Element& x = std::get<Element>(v);
  const Coordinates c = to_basis(x);
  out << "basis " << to_string(x.colour()) << " nonzero " << c.size() << '\n';
  for (const auto& [idx, coeff] : c) out << to_text(idx) << ' ' << coeff << " [" << to_text(loop_encode(idx)) << "]\n";
  return 0;
}

int cmd_gram(const Options& o, std::ostream& out) {
  const Sign s = parse_sign(o.sign);
  const auto basis = enumerate_basis(o.n, o.k, s);
  std::vector<Element> e;
  std::vector<Element> star;
  for (const auto& idx : basis) {
    e.push_back(basis_diagram(o.n, idx));
    star.push_back(involute(e.back()));
  }
  long offdiag = 0;
  long positive = 0;
  out << "gram " << to_string(Colour{o.k, s}) << " size " << basis.size() << '\n';
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = 0; b < e.size(); ++b) {
      const Scalar g = tau(stack(star[b], e[a]));
      if (g.is_zero()) continue;
      out << to_text(basis[a]) << ' ' << to_text(basis[b]) << ' ' << g << '\n';
      if (a != b) ++offdiag;
      if (a == b && g.sign() > 0) ++positive;
    }
  }
  out << "nonzero off-diagonal entries " << offdiag << "\npositive diagonal entries " << positive << " of "
      << basis.size() << '\n';
  return 0;
}

int cmd_multtable(const Options& o, std::ostream& out) {
  const Sign s = parse_sign(o.sign);
  const auto basis = enumerate_basis(o.n, o.k, s);
  std::vector<Element> e;
  for (const auto& idx : basis) e.push_back(basis_diagram(o.n, idx));
  long nonzero = 0;
  long disagreements = 0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = 0; b < e.size(); ++b) {
      const Coordinates c = to_basis(stack(e[a], e[b]));
      const UnitProduct up = unit_product(basis[a], basis[b]);
      Coordinates want;
      if (up.index) want.emplace(*up.index, up.coeff);
      if (c != want) ++disagreements;
      if (c.empty()) continue;
      ++nonzero;
      out << to_text(basis[a]) << " * " << to_text(basis[b]) << " =";
      for (const auto& [idx, coeff] : c) out << ' ' << coeff << ' ' << to_text(idx);
      out << '\n';
    }
  }
  out << "nonzero products " << nonzero << " of " << basis.size() * basis.size() << '\n'
      << "disagreements with the matrix-unit rules " << disagreements << '\n';
  return disagreements == 0 ? 0 : 1;
}

VerifyConfig config_of(const Options& o) {
  VerifyConfig cfg;
  cfg.n = o.n;
  cfg.max_k = o.max_k;
  cfg.seed = o.seed;
  if (!o.channel_constant.empty()) cfg.channel_constant = parse_scalar(o.channel_constant, o.n);
  return cfg;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const VerifyConfig cfg = config_of(o);
  std::vector<std::string> names;
  if (o.check == "all") {
    names = check_names();
  } else if (is_check_name(o.check)) {
    names.push_back(o.check);
  } else {
    throw ValidationError("unknown check '" + o.check + "'");
  }
  int failed = 0;
  for (const auto& name : names) {
    const CheckResult r = run_check(name, cfg);
    out << render(r);
    if (!r.passed) ++failed;
  }
  out << "verify: " << names.size() - static_cast<std::size_t>(failed) << " of " << names.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_iso_check(const Options& o, std::ostream& out) {
  const VerifyConfig cfg = config_of(o);
  bool ok = true;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const Colour c{o.k, s};
    out << "basis " << to_string(c) << '\n';
    for (const auto& idx : enumerate_basis(o.n, o.k, s)) out << to_text(idx) << " -> " << to_text(loop_encode(idx)) << '\n';
    const CheckResult r = check_iso_colour(cfg, c);
    out << render(r);
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the spin planar algebra", "spinpa"};
  Options o;
  app.add_option("--n", o.n, "number of spins")->required()->check(CLI::Range(1, 64));
  app.add_option("--max-k", o.max_k, "largest box size for tables and checks")->check(CLI::Range(0, 8));
  app.add_option("--seed", o.seed, "seed for the randomized suites");
  app.add_option("--channel-constant", o.channel_constant, "override the black channel constant (testing)");
  app.require_subcommand(1);

  auto* dims = app.add_subcommand("dims", "dimension table");
  auto* eval = app.add_subcommand("eval", "evaluate an expression");
  eval->add_option("-e,--expr", o.expr, "expression")->required();
  auto* normalize = app.add_subcommand("normalize", "basis coordinates of an expression");
  normalize->add_option("-e,--expr", o.expr, "expression")->required();
  auto* gram = app.add_subcommand("gram", "Gram matrix of a basis");
  gram->add_option("k", o.k, "box size")->required()->check(CLI::NonNegativeNumber);
  gram->add_option("sign", o.sign, "+ or -")->required();
  auto* multtable = app.add_subcommand("multtable", "products of basis elements");
  multtable->add_option("k", o.k, "box size")->required()->check(CLI::NonNegativeNumber);
  multtable->add_option("sign", o.sign, "+ or -")->required();
  auto* verify = app.add_subcommand("verify", "run a check suite");
  verify->add_option("name", o.check, "check name or 'all'")->required();
  auto* iso = app.add_subcommand("iso-check", "isomorphism with the loop model");
  iso->add_option("k", o.k, "box size")->required()->check(CLI::NonNegativeNumber);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (dims->parsed()) return cmd_dims(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (normalize->parsed()) return cmd_normalize(o, out);
    if (gram->parsed()) return cmd_gram(o, out);
    if (multtable->parsed()) return cmd_multtable(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (iso->parsed()) return cmd_iso_check(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DivisionByZero& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace spinpa
