// wittlab command-line tool.
//
//   wittlab polys --spec Z2 --kind sum --n 2
//   wittlab eval --spec 'Z2[pi]' --instance F2 --op add --x '[1,0]' --y '[1,0]'
//   wittlab verify fv-identities
//   wittlab drinfeld polys|eval|verify ...
//   wittlab greenberg eval|verify ...
//
// Exit codes: 0 ok, 1 property failure, 2 input error, 3 solver failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "wittlab/catalog.hpp"
#include "wittlab/drinfeld.hpp"
#include "wittlab/greenberg.hpp"
#include "wittlab/instance.hpp"
#include "wittlab/verify.hpp"

using namespace wittlab;
using nlohmann::json;

namespace {

struct Global {
  std::string format = "text";
  std::string cache_dir;
  bool timing = false;
};

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw InputError(what + " is not valid JSON: " + text);
  }
}

void print_list(const Global& g, const json& as_json, const std::string& as_text) {
  if (g.format == "json")
    std::cout << json{{"result", as_json}}.dump(2) << "\n";
  else
    std::cout << as_text << "\n";
}

// ---------------------------------------------------------------------------
// polys

struct PolysArgs {
  std::string spec = "Z2";
  std::string ext;
  std::string kind;
  int n = 2;
  std::string lambda;
  std::string unit;
  bool reverse = false;
};

int cmd_polys(const Global& g, const PolysArgs& a) {
  if (a.n < 1) throw InputError("--n must be positive");
  auto& cache = FamilyCache::global();
  std::function<GhostProblem(int)> problem;
  SpecPtr spec;
  json params = json::object();
  if (a.kind == "drinfeld_u" || a.kind == "drinfeld_u_ra") {
    if (a.ext.empty()) throw InputError("--kind " + a.kind + " needs --ext");
    const auto ext = load_ext(a.ext);
    spec = ext->top();
    params = ext->family_params();
    const bool ra = a.kind == "drinfeld_u_ra";
    problem = [ext, ra](int len) { return ra ? drinfeld_ra_problem(*ext, len) : drinfeld_problem(*ext, len); };
  } else if (a.kind == "greenberg_r") {
    spec = load_spec(a.spec);
    problem = [spec](int len) { return greenberg_problem(spec, len); };
  } else {
    spec = load_spec(a.spec);
    if (a.kind == "scalar") {
      if (a.lambda.empty()) throw InputError("--kind scalar needs --lambda");
      params["lambda"] = local_param(spec, parse_json(a.lambda, "--lambda"), spec->default_precision()).signed_coords();
    } else if (a.kind == "uniformizer_change") {
      if (a.unit.empty()) throw InputError("--kind uniformizer_change needs --unit");
      params["unit"] = local_param(spec, parse_json(a.unit, "--unit"), spec->default_precision()).signed_coords();
      params["reverse"] = a.reverse;
    }
    problem = [spec, kind = a.kind, params](int len) { return witt_problem(kind, spec, params, len); };
  }
  auto fam = cache.get(*spec, a.kind, params, a.n, [&](int len) { return solve_family(problem(len)); });
  // A longer cached family carries other variables and precisions; output must not depend on cache state.
  if (fam->n != a.n) fam = std::make_shared<const PolyFamily>(solve_family(problem(a.n)));
  if (g.format == "json") {
    json out = fam->to_json();
    out["content_hash"] = fam->content_hash();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << fam->format();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string spec = "Z2";
  std::string instance = "F2";
  std::string op;
  std::string x, y, lambda;
  int n = 0;
};

template <class F>
void with_eval_ring(const SpecPtr& spec, const std::string& arg, F&& f) {
  if (arg == "lift") return f(TorsionFreeLift::parse(spec, json::object()));
  if (!arg.empty() && arg.front() == '{') {
    const auto j = parse_json(arg, "--instance");
    if (j.value("kind", "") == "torsion_free_lift") return f(TorsionFreeLift::parse(spec, j));
  }
  std::visit(f, parse_instance(arg));
}

template <class R>
int eval_on(const Global& g, const SpecPtr& spec, const R& ring, const EvalArgs& a) {
  WittRing<R> W(spec, ring);
  auto vec = [&](const std::string& s, const char* flag) {
    if (s.empty()) throw InputError(std::string("--op ") + a.op + " needs " + flag);
    return W.from_json(parse_json(s, flag));
  };
  auto out_vec = [&](const WittVector<typename R::Elem>& v) { print_list(g, W.to_json(v), W.format(v)); };
  auto out_elems = [&](const std::vector<typename R::Elem>& v) {
    json j = json::array();
    std::string t = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      j.push_back(ring.to_json(v[i]));
      t += (i ? ", " : "") + ring.format(v[i]);
    }
    print_list(g, j, t + ")");
  };
  const std::string& op = a.op;
  if (op == "add") return out_vec(W.add(vec(a.x, "--x"), vec(a.y, "--y"))), 0;
  if (op == "sub") return out_vec(W.sub(vec(a.x, "--x"), vec(a.y, "--y"))), 0;
  if (op == "mul") return out_vec(W.mul(vec(a.x, "--x"), vec(a.y, "--y"))), 0;
  if (op == "neg") return out_vec(W.neg(vec(a.x, "--x"))), 0;
  if (op == "frobenius") return out_vec(W.frobenius(vec(a.x, "--x"))), 0;
  if (op == "verschiebung") return out_vec(W.verschiebung(vec(a.x, "--x"))), 0;
  if (op == "ghost") return out_elems(W.ghost(vec(a.x, "--x"))), 0;
  if (op == "scalar") {
    if (a.lambda.empty()) throw InputError("--op scalar needs --lambda");
    const auto lam = local_param(spec, parse_json(a.lambda, "--lambda"), spec->default_precision());
    return out_vec(W.scalar(lam, vec(a.x, "--x"))), 0;
  }
  if (op == "teichmuller") {
    if (a.n < 1) throw InputError("--op teichmuller needs --n");
    if (a.x.empty()) throw InputError("--op teichmuller needs --x");
    return out_vec(W.teichmuller(ring.from_json(parse_json(a.x, "--x")), a.n)), 0;
  }
  if (op == "pi_series") {
    const auto j = parse_json(a.x, "--x");
    if (!j.is_array() || j.empty()) throw InputError("--op pi_series needs --x as a non-empty array of digits");
    std::vector<typename R::Elem> digits;
    for (const auto& d : j) digits.push_back(ring.from_json(d));
    return out_vec(W.pi_series(digits)), 0;
  }
  if (op == "pi_series_inverse") {
    if constexpr (KAlgebra<R> && HasQRoot<R>)
      return out_elems(W.pi_series_inverse(vec(a.x, "--x"))), 0;
    else
      throw UnsupportedError("pi_series_inverse needs an algebra over the residue field");
  }
  throw InputError("unknown --op \"" + op +
                   "\" (add, sub, mul, neg, frobenius, verschiebung, ghost, scalar, teichmuller, pi_series, "
                   "pi_series_inverse)");
}

int cmd_eval(const Global& g, const EvalArgs& a) {
  const auto spec = load_spec(a.spec);
  int rc = 0;
  with_eval_ring(spec, a.instance, [&](const auto& ring) { rc = eval_on(g, spec, ring, a); });
  return rc;
}

// ---------------------------------------------------------------------------
// drinfeld eval / greenberg eval

struct MapArgs {
  std::string spec = "Z2[pi]";
  std::string ext = "unram-r2";
  std::string instance = "F4";
  std::string x, y;
  std::string op = "r";
  int n = 0;
  int m = 0;
  bool ra = false;
  bool factorized = false;
};

int cmd_drinfeld_eval(const Global& g, const MapArgs& a) {
  const auto ext = load_ext(a.ext);
  if (a.x.empty()) throw InputError("drinfeld eval needs --x");
  const auto xj = parse_json(a.x, "--x");
  std::visit(
      [&](const auto& ring) {
        DrinfeldMap u(ext, ring);
        WittVector<typename std::decay_t<decltype(ring)>::Elem> y;
        if (a.ra) {
          if (!xj.is_array()) throw InputError("--ra expects --x as an array of component vectors");
          std::vector<decltype(y)> t;
          for (const auto& c : xj) t.push_back(u.source().from_json(c));
          const int n = a.n > 0 ? a.n : static_cast<int>(t.at(0).length()) * ext->e();
          y = u.apply_ra(t, n);
        } else {
          const auto x = u.source().from_json(xj);
          y = u.apply(x, a.n > 0 ? a.n : x.length());
        }
        print_list(g, u.target().to_json(y), u.target().format(y));
      },
      parse_instance(a.instance));
  return 0;
}

int cmd_greenberg_eval(const Global& g, const MapArgs& a) {
  const auto spec = load_spec(a.spec);
  if (a.x.empty()) throw InputError("greenberg eval needs --x");
  const auto xj = parse_json(a.x, "--x");
  if (!xj.is_array() || xj.empty() || !xj.at(0).is_array())
    throw InputError("--x must be an array of e Witt vectors of length m");
  const int m = a.m > 0 ? a.m : static_cast<int>(xj.at(0).size());
  std::visit(
      [&](const auto& ring) {
        GreenbergAlgebra R(spec, ring, m);
        const auto x = R.from_json(xj);
        if (a.op == "r") {
          const int n = a.n > 0 ? a.n : matched_length(*spec, m);
          const auto y = a.factorized ? R.r_factorized(x, n) : R.r(x, n);
          print_list(g, R.target().to_json(y), R.target().format(y));
          return;
        }
        if (a.op != "add" && a.op != "mul") throw InputError("unknown --op \"" + a.op + "\" (r, add, mul)");
        if (a.y.empty()) throw InputError("--op " + a.op + " needs --y");
        const auto y = R.from_json(parse_json(a.y, "--y"));
        const auto z = a.op == "add" ? R.add(x, y) : R.mul(x, y);
        print_list(g, R.to_json(z), R.format(z));
      },
      parse_instance(a.instance));
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::vector<std::string> specs, exts, instances;
  int n = 0, m = 0, e = 2, s_max = 4, samples = 0;
  std::uint64_t seed = 1;
};

int cmd_verify(const Global& g, const VerifyArgs& a, const std::string& prefix) {
  std::string suite = a.suite;
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end() && !prefix.empty() &&
      std::find(names.begin(), names.end(), prefix + suite) != names.end())
    suite = prefix + suite;
  VerifyOptions o;
  o.specs = a.specs;
  o.exts = a.exts;
  o.instances = a.instances;
  o.n = a.n;
  o.m = a.m;
  o.e = a.e;
  o.s_max = a.s_max;
  o.samples = a.samples;
  o.seed = a.seed;
  const auto report = run_suite(suite, o);
  if (g.format == "json")
    std::cout << report.to_json(g.timing).dump(2) << "\n";
  else
    std::cout << report.format();
  return report.passed() ? 0 : 1;
}

void add_verify_options(CLI::App* c, VerifyArgs& a) {
  c->add_option("suite", a.suite, "suite id")->required();
  c->add_option("--spec", a.specs, "local ring (catalog name, JSON or file); repeatable");
  c->add_option("--ext", a.exts, "extension (catalog name, JSON or file); repeatable");
  c->add_option("--instance,--A", a.instances, "coefficient ring (F4, F2[x]/(x^2), F2[x], JSON); repeatable");
  c->add_option("--n", a.n, "truncation length");
  c->add_option("--m", a.m, "Greenberg truncation m");
  c->add_option("--e", a.e, "ramification index for drinfeld-kernel-ram");
  c->add_option("--s-max", a.s_max, "largest step for drinfeld-kernel-ram");
  c->add_option("--samples", a.samples, "sample budget for randomized checks");
  c->add_option("--seed", a.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittlab: truncated ramified Witt vectors, Drinfeld morphisms and the Greenberg comparison map"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", g.cache_dir, "family cache directory (default: $WITTLAB_CACHE)");
  app.add_flag("--timing", g.timing, "include wall-clock time in JSON reports");

  PolysArgs pa;
  auto* polys = app.add_subcommand("polys", "print a structure polynomial family");
  polys->add_option("--spec", pa.spec, "local ring");
  polys->add_option("--ext", pa.ext, "extension, for drinfeld_u and drinfeld_u_ra");
  polys->add_option("--kind", pa.kind, "sum, prod, neg, frobenius, scalar, uniformizer_change, drinfeld_u, "
                                       "drinfeld_u_ra, greenberg_r")
      ->required();
  polys->add_option("--n", pa.n, "number of polynomials");
  polys->add_option("--lambda", pa.lambda, "scalar for --kind scalar (integer or {\"coords\": ...})");
  polys->add_option("--unit", pa.unit, "unit for --kind uniformizer_change");
  polys->add_flag("--reverse", pa.reverse, "inverse uniformizer change");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a Witt vector operation");
  eval->add_option("--spec", ea.spec, "local ring");
  eval->add_option("--instance", ea.instance, "coefficient ring, or \"lift\" for the torsion-free lift");
  eval->add_option("--op", ea.op, "operation")->required();
  eval->add_option("--x", ea.x, "first operand (JSON)");
  eval->add_option("--y", ea.y, "second operand (JSON)");
  eval->add_option("--lambda", ea.lambda, "scalar in O for --op scalar");
  eval->add_option("--n", ea.n, "length for --op teichmuller");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_verify_options(verify, va);

  MapArgs da;
  PolysArgs dpa;
  dpa.kind = "drinfeld_u";
  bool dra = false;
  VerifyArgs dva;
  auto* dr = app.add_subcommand("drinfeld", "Drinfeld morphism u : W_O -> W_O'");
  dr->require_subcommand(1);
  auto* dpolys = dr->add_subcommand("polys", "print the polynomials u_0..u_{n-1}");
  dpolys->add_option("--ext", dpa.ext, "extension")->required();
  dpolys->add_option("--n", dpa.n, "number of polynomials");
  dpolys->add_flag("--ra", dra, "the family of u^ra");
  auto* deval = dr->add_subcommand("eval", "apply u (or u^ra) to a vector");
  deval->add_option("--ext", da.ext, "extension");
  deval->add_option("--instance", da.instance, "coefficient ring");
  deval->add_option("--x", da.x, "input vector, or with --ra an array of e vectors")->required();
  deval->add_option("--n", da.n, "output length");
  deval->add_flag("--ra", da.ra, "apply u^ra to sum_i x_i (x) varpi^i");
  auto* dverify = dr->add_subcommand("verify", "run a Drinfeld verification suite");
  add_verify_options(dverify, dva);

  MapArgs ga;
  VerifyArgs gva;
  auto* gr = app.add_subcommand("greenberg", "Greenberg algebra R_O(A) and r : R_O(A) -> W_O(A)");
  gr->require_subcommand(1);
  auto* geval = gr->add_subcommand("eval", "apply r, or add/multiply in R_O(A)");
  geval->add_option("--spec", ga.spec, "local ring");
  geval->add_option("--instance", ga.instance, "coefficient ring A");
  geval->add_option("--x", ga.x, "element as an array of e vectors of length m")->required();
  geval->add_option("--y", ga.y, "second element for add and mul");
  geval->add_option("--op", ga.op, "r, add or mul");
  geval->add_option("--m", ga.m, "truncation m (default: length of --x)");
  geval->add_option("--n", ga.n, "output length (default: m e)");
  geval->add_flag("--factorized", ga.factorized, "evaluate r as u^ra o (u^un (x) id)");
  auto* gverify = gr->add_subcommand("verify", "run a Greenberg verification suite");
  add_verify_options(gverify, gva);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!g.cache_dir.empty()) FamilyCache::global().set_directory(std::filesystem::path(g.cache_dir));
    if (*polys) return cmd_polys(g, pa);
    if (*eval) return cmd_eval(g, ea);
    if (*verify) return cmd_verify(g, va, "");
    if (*dpolys) {
      dpa.kind = dra ? "drinfeld_u_ra" : "drinfeld_u";
      return cmd_polys(g, dpa);
    }
    if (*deval) return cmd_drinfeld_eval(g, da);
    if (*dverify) return cmd_verify(g, dva, "drinfeld-");
    if (*geval) return cmd_greenberg_eval(g, ga);
    if (*gverify) {
      if (gva.suite == "ring") gva.suite = "greenberg-ring";
      return cmd_verify(g, gva, "r-");
    }
  } catch (const IntegralityError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
