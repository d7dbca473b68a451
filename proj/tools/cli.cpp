#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>

#include "eulerp/errors.hpp"
#include "eulerp/eulerfun.hpp"
#include "eulerp/feynper.hpp"
#include "eulerp/g2.hpp"
#include "eulerp/mzv.hpp"
#include "eulerp/symbolic.hpp"

namespace eulerp::cli {

namespace {

using Json = nlohmann::ordered_json;

/// A requested check did not hold.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int prec = 15;
  std::string registry_path;
  std::uint64_t seed = 42;
  bool json = false;
};

/// Lines for plain output; the same strings are embedded in the JSON document.
struct Report {
  std::vector<std::string> lines;
  Json fields = Json::object();
  bool ok = true;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

/// Shortest scientific rendering with `sig` significant digits: 1e-7, 2.8e-13.
std::string sci(double x, int sig = 2) {
  if (x == 0.0) {
    return "0";
  }
  if (!std::isfinite(x)) {
    return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", sig - 1, x);
  std::string s(buf);
  const auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  int exp = std::stoi(s.substr(epos + 1));
  if (mant.find('.') != std::string::npos) {
    while (mant.back() == '0') {
      mant.pop_back();
    }
    if (mant.back() == '.') {
      mant.pop_back();
    }
  }
  return exp == 0 ? mant : mant + "e" + std::to_string(exp);
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string bound_of(int prec) { return "1e-" + std::to_string(prec); }

/// "value ± bound" for a certified value.
void emit_value(Report& r, const BigReal& v) {
  const std::string value = v.str();
  const std::string bound = bound_of(v.prec);
  r.fields["value"] = value;
  r.fields["bound"] = bound;
  r.line(value + " ± " + bound);
}

/// Estimate with its standard error, the estimate shown to the standard error's second digit.
std::pair<std::string, std::string> estimate_text(double estimate, double std_error) {
  int decimals = 6;
  if (std_error > 0.0) {
    decimals = std::clamp(1 - static_cast<int>(std::floor(std::log10(std_error))), 0, 17);
  }
  return {fixed(estimate, decimals), sci(std_error)};
}

Real parse_number(const std::string& text, int prec) { return Real::parse(text, working_bits(prec + 5)); }

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  return i < s.size() && s.find_first_not_of("0123456789", i) == std::string::npos;
}

std::vector<Measurement> registry_for(const RunConfig& cfg) {
  std::string path = cfg.registry_path;
  if (path.empty()) {
    if (const char* env = std::getenv("EULER_PERIODS_REGISTRY"); env != nullptr && *env != '\0') {
      path = env;
    }
  }
  return path.empty() ? builtin_registry() : load_registry(path);
}

IdentityKind identity_kind(const std::string& name) {
  if (name == "dilog-reflection") {
    return IdentityKind::DilogReflection;
  }
  if (name == "cotangent") {
    return IdentityKind::Cotangent;
  }
  if (name == "euler-product") {
    return IdentityKind::EulerProduct;
  }
  if (name == "phi-funceq") {
    return IdentityKind::PhiFuncEq;
  }
  throw InputError("unknown identity '" + name + "' (dilog-reflection, cotangent, euler-product, phi-funceq)");
}

Real snap_base(const std::string& name) {
  if (name == "1") {
    return Real(1L, 64);
  }
  if (name == "zeta3" || name == "zeta5" || name == "zeta7") {
    return zeta(static_cast<long>(name.back() - '0'), 17).value;
  }
  throw InputError("unknown snap base '" + name + "' (1, zeta3, zeta5, zeta7)");
}

/// Every subcommand adds its options here and fills a Report when run.
struct Command {
  CLI::App* app;
  std::function<void(Report&)> run;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler sums, multiple zeta values, Feynman periods and the electron g-2 series", "eulerp"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--prec", cfg.prec, "decimal digits (1..100)")->check(CLI::Range(1, 100));
  app.add_option("--registry", cfg.registry_path, "measurement registry JSON");
  app.add_option("--seed", cfg.seed, "Monte-Carlo seed");
  app.add_flag("--json", cfg.json, "JSON output");

  std::vector<Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->positionals_at_end(false);
    return sub;
  };

  // special functions
  std::string s_arg;
  {
    CLI::App* c = add("zeta", "Riemann zeta at real s > 1");
    c->add_option("s", s_arg)->required();
    commands.push_back({c, [&](Report& r) {
                          emit_value(r, is_integer_text(s_arg) ? zeta(std::stol(s_arg), cfg.prec)
                                                               : zeta(parse_number(s_arg, cfg.prec), cfg.prec));
                        }});
  }
  {
    CLI::App* c = add("phi", "alternating zeta at real s > 0");
    c->add_option("s", s_arg)->required();
    commands.push_back({c, [&](Report& r) {
                          emit_value(r, is_integer_text(s_arg) ? phi(std::stol(s_arg), cfg.prec)
                                                               : phi(parse_number(s_arg, cfg.prec), cfg.prec));
                        }});
  }
  unsigned poly_n = 2;
  std::string poly_z;
  {
    CLI::App* c = add("polylog", "Li_n(z) for real z");
    c->add_option("n", poly_n)->required();
    c->add_option("z", poly_z)->required();
    commands.push_back(
        {c, [&](Report& r) { emit_value(r, polylog(poly_n, parse_number(poly_z, cfg.prec), cfg.prec)); }});
  }
  std::string gamma_method = "em";
  {
    CLI::App* c = add("gamma", "Euler-Mascheroni constant");
    c->add_option("--method", gamma_method, "em | zeta")->check(CLI::IsMember({"em", "zeta"}));
    commands.push_back({c, [&](Report& r) {
                          emit_value(r, gamma_const(cfg.prec, gamma_method == "em" ? GammaMethod::EulerMaclaurin
                                                                                   : GammaMethod::ZetaSeries));
                        }});
  }
  unsigned bern_n = 0;
  {
    CLI::App* c = add("bernoulli", "Bernoulli number B_n (B_1 = -1/2)");
    c->add_option("n", bern_n)->required();
    commands.push_back({c, [&](Report& r) {
                          const std::string v = bernoulli(bern_n).str();
                          r.fields["value"] = v;
                          r.fields["bound"] = "0";
                          r.line(v + " ± 0");
                        }});
  }

  // multiple zeta values
  std::string mzv_index;
  long brute_cutoff = 0;
  {
    CLI::App* c = add("mzv", "multiple zeta value, e.g. mzv 3,5");
    c->add_option("index", mzv_index)->required();
    c->add_option("--brute-force", brute_cutoff, "nested partial sums up to this cutoff instead");
    commands.push_back({c, [&](Report& r) {
                          const MzvIndex idx = MzvIndex::parse(mzv_index);
                          r.fields["index"] = idx.str();
                          if (brute_cutoff > 0) {
                            const BigReal v = mzv_bruteforce(idx, brute_cutoff);
                            const std::string value = v.str();
                            const std::string bound = sci(v.err);
                            r.fields["value"] = value;
                            r.fields["bound"] = bound;
                            r.line(value + " ± " + bound);
                          } else {
                            emit_value(r, mzv(idx, cfg.prec));
                          }
                        }});
  }
  int mp_m = 1;
  int mp_n = 1;
  double cutoff_scale = 1.0;
  {
    CLI::App* c = add("multiphi", "alternating double sum phi(m,n)");
    c->add_option("m", mp_m)->required();
    c->add_option("n", mp_n)->required();
    c->add_option("--cutoff-scale", cutoff_scale, "scale of the internal series cutoff");
    commands.push_back(
        {c, [&](Report& r) { emit_value(r, multiphi({mp_m, mp_n}, cfg.prec, cutoff_scale)); }});
  }
  {
    CLI::App* c = add("stuffle-check", "zeta(m) zeta(n) = zeta(m,n) + zeta(n,m) + zeta(m+n)");
    c->add_option("m", mp_m)->required();
    c->add_option("n", mp_n)->required();
    commands.push_back({c, [&](Report& r) {
                          const BigReal res = stuffle_residual(mp_m, mp_n, cfg.prec);
                          r.ok = res.value.to_double() <= res.err;
                          const std::string residual = sci(res.value.to_double());
                          const std::string bound = sci(res.err);
                          r.fields["residual"] = residual;
                          r.fields["bound"] = bound;
                          r.fields["pass"] = r.ok;
                          r.line("residual " + residual + " ± " + bound + (r.ok ? " ok" : " FAIL"));
                        }});
  }
  std::string id_kind;
  std::string id_point;
  long id_truncation = 20;
  long id_primes = 100000;
  std::optional<double> id_tolerance;
  {
    CLI::App* c = add("identity-check", "residual of a classical identity");
    c->add_option("kind", id_kind, "dilog-reflection | cotangent | euler-product | phi-funceq")->required();
    c->add_option("point", id_point, "x or s")->required();
    c->add_option("--truncation", id_truncation, "even-zeta terms in the cotangent expansion");
    c->add_option("--prime-bound", id_primes, "largest prime in the Euler product");
    c->add_option("--tolerance", id_tolerance, "pass threshold (default 1e-12, 1e-4 for the Euler product)");
    commands.push_back({c, [&](Report& r) {
                          const IdentityKind kind = identity_kind(id_kind);
                          IdentityParams p;
                          p.point = parse_number(id_point, cfg.prec);
                          p.truncation = id_truncation;
                          p.prime_bound = id_primes;
                          const BigReal res = identity_residual(kind, p, cfg.prec);
                          const double tol =
                              id_tolerance.value_or(kind == IdentityKind::EulerProduct ? 1e-4 : 1e-12);
                          const double mag = std::fabs(res.value.to_double());
                          r.ok = mag <= tol;
                          const std::string residual = sci(res.value.to_double());
                          r.fields["kind"] = id_kind;
                          r.fields["residual"] = residual;
                          r.fields["bound"] = sci(res.err);
                          r.fields["tolerance"] = sci(tol);
                          r.fields["pass"] = r.ok;
                          r.line("residual " + residual + " ± " + sci(res.err) + (r.ok ? " ok" : " FAIL"));
                        }});
  }

  // motivic layer
  std::string expr_text;
  {
    CLI::App* c = add("coact", "coaction of a motivic expression");
    c->add_option("expr", expr_text)->required();
    commands.push_back({c, [&](Report& r) {
                          const std::string s = coact(parse_expr(expr_text)).str();
                          r.fields["coaction"] = s;
                          r.line(s);
                        }});
  }
  {
    CLI::App* c = add("conjugates", "Galois conjugates and the dimension of their span");
    c->add_option("expr", expr_text)->required();
    commands.push_back({c, [&](Report& r) {
                          const Conjugates cj = galois_conjugates(parse_expr(expr_text));
                          Json list = Json::array();
                          for (const Expr& e : cj.elements) {
                            list.push_back(e.str());
                            r.line(e.str());
                          }
                          r.fields["conjugates"] = list;
                          r.fields["dimension"] = cj.dimension;
                          r.line("dimension " + std::to_string(cj.dimension));
                        }});
  }
  {
    CLI::App* c = add("per", "numerical value of a motivic expression");
    c->add_option("expr", expr_text)->required();
    commands.push_back({c, [&](Report& r) { emit_value(r, period_map(parse_expr(expr_text), cfg.prec)); }});
  }

  // Feynman periods
  std::string graph_file;
  std::string graph_name;
  long samples = 1'000'000;
  std::string sampler = "hepp";
  unsigned threads = 0;
  std::string snap;
  {
    CLI::App* c = add("period", "Monte-Carlo period of a primitive log-divergent graph");
    auto* file_opt = c->add_option("--graph", graph_file, "graph JSON {vertices, edges}");
    c->add_option("--builtin", graph_name, "bubble | k4 | w3 | w4 | w5")->excludes(file_opt);
    c->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
    c->add_option("--sampler", sampler, "hepp | plain")->check(CLI::IsMember({"hepp", "plain"}));
    c->add_option("--threads", threads, "worker threads (0 = all cores); results do not depend on it");
    c->add_option("--snap", snap, "report the nearest multiple of 1 | zeta3 | zeta5 | zeta7");
    commands.push_back({c, [&](Report& r) {
                          if (graph_file.empty() && graph_name.empty()) {
                            throw InputError("period needs --graph FILE or --builtin NAME");
                          }
                          const MultiGraph g =
                              graph_file.empty() ? graphs::by_name(graph_name) : MultiGraph::load(graph_file);
                          McOptions o;
                          o.samples = samples;
                          o.seed = cfg.seed;
                          o.sampler = sampler == "hepp" ? Sampler::Hepp : Sampler::Plain;
                          o.threads = threads;
                          const PeriodEstimate e = period_mc(g, o);
                          const auto [est, se] = estimate_text(e.estimate, e.std_error);
                          r.fields["value"] = est;
                          r.fields["stderr"] = se;
                          r.fields["samples"] = e.samples;
                          r.fields["seed"] = e.seed;
                          r.line(est + " ± " + se);
                          if (!snap.empty()) {
                            const Snap sn = snap_to_multiple(e, snap_base(snap).to_double());
                            r.ok = sn.sigmas <= 3.0;
                            const std::string sig = fixed(sn.sigmas, 2);
                            r.fields["multiple"] = sn.multiple;
                            r.fields["sigmas"] = sig;
                            r.line(std::to_string(sn.multiple) + " * " + snap + " (" + sig + " sigma)" +
                                   (r.ok ? "" : " FAIL"));
                          }
                        }});
  }
  long selftest_samples = 100'000;
  {
    CLI::App* c = add("selftest", "integrator self-test on k^(1/n) and pi");
    c->add_option("--samples", selftest_samples, "samples per integral");
    commands.push_back({c, [&](Report& r) {
                          Json list = Json::array();
                          for (const SelfTestEntry& e : integrator_selftest(selftest_samples, cfg.seed)) {
                            const auto [est, se] = estimate_text(e.estimate, e.std_error);
                            const std::string truth = fixed(e.truth, 6);
                            r.ok = r.ok && e.pass;
                            list.push_back(
                                {{"name", e.name}, {"value", est}, {"stderr", se}, {"truth", truth}, {"pass", e.pass}});
                            r.line(e.name + " " + est + " ± " + se + " (truth " + truth + ")" +
                                   (e.pass ? " ok" : " FAIL"));
                          }
                          r.fields["entries"] = list;
                        }});
  }

  // g-2
  std::string alpha_inv_text = "137.0359991727";
  int order = 4;
  std::string a2_form = "bracket";
  std::string a3_form = "consistent";
  std::string a4_source = "analytic";
  auto coeff_options = [&](CLI::App* c) {
    c->add_option("--order", order, "series order 1..4")->check(CLI::Range(1, 4));
    c->add_option("--a2", a2_form, "bracket | without-phi2")->check(CLI::IsMember({"bracket", "without-phi2"}));
    c->add_option("--a3", a3_form, "consistent | as-printed")->check(CLI::IsMember({"consistent", "as-printed"}));
    c->add_option("--a4", a4_source, "analytic | numerical")->check(CLI::IsMember({"analytic", "numerical"}));
  };
  auto coeff_set = [&] {
    return CoefficientSet{a2_form == "bracket" ? A2Form::Bracket : A2Form::WithoutPhi2,
                          a3_form == "consistent" ? A3Form::Consistent : A3Form::AsPrinted,
                          a4_source == "analytic" ? A4Source::Analytic : A4Source::Numerical};
  };
  {
    CLI::App* c = add("g2-assemble", "a_e = sum a_n (alpha/pi)^n");
    c->add_option("--alpha-inv", alpha_inv_text, "inverse fine-structure constant");
    coeff_options(c);
    commands.push_back({c, [&](Report& r) {
                          const BigReal ae =
                              assemble(parse_number(alpha_inv_text, cfg.prec), coeff_set(), order, cfg.prec);
                          emit_value(r, ae);
                          r.fields["g"] = g_factor(ae).str();
                          r.line("g = " + g_factor(ae).str());
                        }});
  }
  std::string target;
  {
    CLI::App* c = add("g2-invert-alpha", "alpha^-1 from a measured a_e (value or registry label)");
    c->add_option("target", target)->required();
    coeff_options(c);
    commands.push_back({c, [&](Report& r) {
                          Real t = is_integer_text(target) || target.find_first_of(":") == std::string::npos
                                       ? parse_number(target, cfg.prec)
                                       : find_measurement(registry_for(cfg), target).value_at(working_bits(cfg.prec + 5));
                          const AlphaInversion inv = invert_alpha(t, coeff_set(), order, cfg.prec);
                          emit_value(r, inv.alpha_inv);
                          r.fields["iterations"] = inv.iterations;
                          r.line("iterations " + std::to_string(inv.iterations));
                        }});
  }
  std::string label_a;
  std::string label_b;
  {
    CLI::App* c = add("g2-compare", "difference of two registry entries with combined uncertainty");
    c->add_option("a", label_a)->required();
    c->add_option("b", label_b)->required();
    commands.push_back({c, [&](Report& r) {
                          const auto reg = registry_for(cfg);
                          const Comparison cmp = compare(find_measurement(reg, label_a), find_measurement(reg, label_b));
                          const std::string s = cmp.str();
                          r.fields["comparison"] = s;
                          r.fields["pull"] = fixed(cmp.pull, 2);
                          r.line(s);
                        }});
  }
  {
    CLI::App* c = add("registry-list", "list the measurement registry");
    commands.push_back({c, [&](Report& r) {
                          Json list = Json::array();
                          for (const Measurement& m : registry_for(cfg)) {
                            std::string unc;
                            for (const auto& u : m.uncertainty_components) {
                              unc += "(" + u + ")";
                            }
                            const std::string row = m.label + "  " + m.value + (unc.empty() ? "" : " " + unc) +
                                                    "  " + std::to_string(m.year) + "  " + m.source;
                            r.line(row);
                            list.push_back({{"label", m.label},
                                            {"value", m.value},
                                            {"uncertainty_components", m.uncertainty_components},
                                            {"year", m.year},
                                            {"source_eq", m.source}});
                          }
                          r.fields["entries"] = list;
                        }});
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  for (const Command& cmd : commands) {
    if (!cmd.app->parsed()) {
      continue;
    }
    Report r;
    int code = kOk;
    try {
      cmd.run(r);
      if (!r.ok) {
        code = kCheckFailed;
      }
    } catch (const PrecisionNotMet& e) {
      err << "error: " << e.what() << "\n";
      return kPrecisionNotMet;
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kCheckFailed;
    }
    if (cfg.json) {
      Json doc = Json::object();
      doc["command"] = cmd.app->get_name();
      doc["prec"] = cfg.prec;
      for (auto& [k, v] : r.fields.items()) {
        doc[k] = v;
      }
      doc["ok"] = r.ok;
      doc["text"] = r.lines;
      out << doc.dump(2) << "\n";
    } else {
      for (const auto& l : r.lines) {
        out << l << "\n";
      }
    }
    return code;
  }
  return kInputError;
}

}  // namespace eulerp::cli
