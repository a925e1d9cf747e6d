#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "minred/criticality.hpp"
#include "minred/generators.hpp"
#include "minred/invariants.hpp"
#include "minred/io.hpp"
#include "minred/minimise.hpp"
#include "minred/reduction.hpp"
#include "minred/weights.hpp"

namespace minred::cli {

namespace {

constexpr uint64_t kDefaultSeed = 0x5eed5eedULL;

struct Options {
  uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string out_path;
  std::vector<std::string> inputs;
  // minimise
  std::string prime;
  std::string primes;
  unsigned long factor_budget = 1000000;
  bool step_mode = false;
  int max_iterations = 20;
  std::string emit_transformation;
  // reduce
  int precision = 128;
  std::string hint_path;
  bool gram_only = false;
  bool minimise_first = false;
  // verify-weights
  int table = 29;
  // make
  std::vector<std::string> ainvs;
  // scramble
  long bound = 1000;
  std::string hesse;
  std::string inflate_prime;
  long inflate_k = 0;
  std::string emit_hint;
};

Int parse_int_arg(const std::string& s, const char* what) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'", 0, 0);
  return v;
}

Int parse_prime(const std::string& s) {
  Int p = parse_int_arg(s, "--prime");
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw ParseError("not a prime: " + s, 0, 0);
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// Sends `text` to --out when given, else to the report stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty())
    out << text;
  else
    write_file(o.out_path, text);
}

// Runs fn over every input, up to `jobs` at a time, and prints the results in
// input order.
void for_each_input(const Options& o, std::ostream& out, const std::function<std::string(const std::string&)>& fn) {
  const size_t n = o.inputs.size();
  std::vector<std::string> results(n);
  std::vector<std::exception_ptr> errors(n);
  size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= n) return;
        i = next++;
      }
      try {
        results[i] = fn(o.inputs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(o.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (n > 1) out << "file = " << o.inputs[i] << "\n";
    out << results[i];
    if (n > 1 && i + 1 < n) out << "\n";
  }
}

std::string invariants_report(const Model5& m, const Options& o) {
  InvariantOptions io;
  io.seed = o.seed;
  const InvariantTriple t = invariants(m, io);
  std::ostringstream os;
  os << "c4 = " << to_string(t.c4) << "\nc6 = " << to_string(t.c6) << "\ndisc = " << to_string(t.disc) << "\n";
  return os.str();
}

std::string jacobian_report(const Model5& m, const Options& o) {
  InvariantOptions io;
  io.seed = o.seed;
  const JacobianResult j = jacobian(m, io);
  std::ostringstream os;
  os << "a1 = " << j.w.a1 << "\na2 = " << j.w.a2 << "\na3 = " << j.w.a3 << "\na4 = " << j.w.a4 << "\na6 = " << j.w.a6
     << "\nfallback = " << (j.fallback ? "yes" : "no") << "\n";
  return os.str();
}

std::vector<Int> prime_list(const Options& o) {
  std::vector<Int> ps;
  if (!o.prime.empty()) ps.push_back(parse_prime(o.prime));
  std::stringstream ss(o.primes);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ps.push_back(parse_prime(tok));
  return ps;
}

std::string minimise_report(const Model5& m, const Options& o, Transformation* g_out) {
  MinimiseOptions mo;
  mo.invariants.seed = o.seed;
  std::ostringstream os;
  if (o.step_mode) {
    const auto ps = prime_list(o);
    if (ps.size() != 1) throw ParseError("--step-mode needs exactly one --prime", 0, 0);
    const StepModeReport rep = step_mode(m, ps[0], o.max_iterations, mo);
    os << "prime = " << ps[0] << "\n";
    for (size_t i = 0; i < rep.steps.size(); ++i) {
      const auto& s = rep.steps[i];
      os << "iteration = " << i + 1 << " span_forms = " << s.span_forms << " v_det = " << s.v_det << " e = " << s.e
         << "\n";
    }
    os << "iterations = " << rep.iterations() << "\n";
    os << "reached_non_saturated = " << (rep.reached_non_saturated ? "yes" : "no") << "\n";
    if (!rep.steps.empty()) os << "\n" << format_model(rep.steps.back().model);
    return os.str();
  }
  const GlobalMinimisation gm = minimise_global(m, prime_list(o), o.factor_budget, mo);
  for (const auto& pr : gm.primes)
    os << "prime = " << pr.p << "\nlevel = " << pr.level_before << " -> " << pr.level_after
       << "\niterations = " << pr.iterations << "\n";
  if (gm.unfactored != 1) os << "unfactored = " << gm.unfactored << "\n";
  os << "disc = " << to_string(gm.invariants.disc) << "\n\n" << format_model(gm.model);
  if (g_out) *g_out = gm.g;
  return os.str();
}

std::string critical_report(const Model5& m, const Options& o) {
  const auto ps = prime_list(o);
  if (ps.size() != 1) throw ParseError("critical-check needs exactly one --prime", 0, 0);
  const Int& p = ps[0];
  std::ostringstream os;
  os << "prime = " << p << "\n";
  if (!is_integral(m)) throw MathError("critical-check needs an integral model");
  const auto viol = critical_pattern_violations(m, p);
  os << "pattern = " << (viol.empty() ? "critical" : "not critical") << "\n";
  for (const auto& v : viol)
    os << "violation = entry (" << v.i << "," << v.j << ") x" << v.k << ": " << v.reason << "\n";
  if (!viol.empty()) return os.str();
  InvariantOptions io;
  io.seed = o.seed;
  const CriticalLevel lv = critical_level_check(m, p, io);
  os << "level = " << lv.level << "\nv_c4 = " << lv.v_c4 << "\nv_c6 = " << lv.v_c6 << "\nv_disc = " << lv.v_disc << "\n";
  if (p != 5) os << "level_one_certified = " << (lv.level_one_certified ? "yes" : "no") << "\n";
  const CycleReport cyc = detect_critical_cycle(m, p);
  os << "cycle_period = " << (cyc.detected ? std::to_string(cyc.period) : std::string("none")) << "\n";
  const InsolubilityCertificate cert = insolubility_certificate(m, p);
  for (const auto& s : cert.steps)
    os << "cascade = pfaffian " << s.pfaffian << " forces v(x" << s.variable << ") >= " << s.exponent << "\n";
  return os.str();
}

std::string real_str(const Real& x) { return x.str(25, std::ios_base::scientific); }

int run_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.inputs.size() != 1) throw ParseError("reduce takes one model file", 0, 0);
  Model5 m = read_model_file(o.inputs[0]).model;
  HessianHandle h;
  if (!o.hint_path.empty()) h = parse_hessian_hint(read_file(o.hint_path));
  Transformation g_pre = Transformation::identity();
  if (o.minimise_first) {
    MinimiseOptions mo;
    mo.invariants.seed = o.seed;
    const GlobalMinimisation gm = minimise_global(m, {}, o.factor_budget, mo);
    m = gm.model;
    g_pre = gm.g;
    h = transport_handle(h, gm.g);
  }
  ReductionOptions ro;
  ro.numeric.bits = o.precision;
  ro.numeric.seed = o.seed;
  if (o.gram_only) {
    const GramReport gr = compute_gram(m, h, ro.numeric, ro.max_bits);
    std::ostringstream os;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) os << real_str(gr.gram(i, j)) << (j == 4 ? "\n" : " ");
    emit(o, out, os.str());
    return kOk;
  }
  const ReductionResult r = reduce(m, h, ro);
  out << "reduced = " << (r.reduced ? "yes" : "no") << "\n";
  out << "sup_norm_before = " << to_string(sup_norm(m)) << "\n";
  out << "sup_norm_after = " << to_string(sup_norm(r.model)) << "\n";
  if (r.reduced && r.gram.points > 0) {
    out << "precision = " << r.gram.bits << "\n";
    out << "points = " << r.gram.points << "\n";
    out << "real_tuples = " << r.gram.real_tuples << "\n";
    out << "max_residual = " << r.gram.max_residual.str(3, std::ios_base::scientific) << "\n";
  }
  for (const auto& w : r.warnings) {
    out << "warning = " << w << "\n";
    err << "warning: " << w << "\n";
  }
  out << "\n";
  emit(o, out, format_model(r.model));
  if (!o.emit_transformation.empty()) write_file(o.emit_transformation, format_transformation(compose(r.g, g_pre)));
  const bool numeric_failure = !r.reduced && h.kind != HessianHandle::Kind::None;
  return numeric_failure ? kInconclusive : kOk;
}

int run_verify(const Options& o, std::ostream& out) {
  if (o.table != 7 && o.table != 29) throw ParseError("--table must be 7 or 29", 0, 0);
  VerifyOptions vo;
  vo.jobs = o.jobs;
  const VerificationCertificate c =
      o.table == 7 ? verify_domination_table(seven_weight_table(), seven_weight_side_conditions(), vo)
                   : verify_domination_table(twenty_nine_weight_table(), {}, vo);
  out << "table = " << o.table << "\n";
  out << "result = " << (c.pass ? "PASS" : "FAIL") << "\n";
  out << "remaining =";
  for (int r : c.remaining) out << " " << r;
  out << "\n";
  if (o.out_path.empty())
    out << "\n" << c.to_text();
  else
    write_file(o.out_path, c.to_text());
  return c.pass ? kOk : kMathError;
}

int run_make(const Options& o, std::ostream& out) {
  if (o.ainvs.size() != 5) throw ParseError("make needs five a-invariants a1 a2 a3 a4 a6", 0, 0);
  WeierstrassCoefficients w;
  w.a1 = parse_int_arg(o.ainvs[0], "a1");
  w.a2 = parse_int_arg(o.ainvs[1], "a2");
  w.a3 = parse_int_arg(o.ainvs[2], "a3");
  w.a4 = parse_int_arg(o.ainvs[3], "a4");
  w.a6 = parse_int_arg(o.ainvs[4], "a6");
  emit(o, out, format_model(make_model(w)));
  return kOk;
}

int run_scramble(const Options& o, std::ostream& out) {
  Model5 m;
  Rat a = 0, b = 0;
  if (!o.hesse.empty()) {
    const auto comma = o.hesse.find(',');
    if (comma == std::string::npos) throw ParseError("--hesse expects a,b", 0, 0);
    a = Rat(parse_int_arg(o.hesse.substr(0, comma), "a"));
    b = Rat(parse_int_arg(o.hesse.substr(comma + 1), "b"));
    m = hesse_model(a, b);
  } else {
    if (o.inputs.size() != 1) throw ParseError("scramble takes one model file or --hesse a,b", 0, 0);
    m = read_model_file(o.inputs[0]).model;
  }
  std::optional<Inflation> inf;
  if (!o.inflate_prime.empty()) inf = Inflation{parse_prime(o.inflate_prime), o.inflate_k};
  const Scramble s = scramble(m, o.seed, o.bound, inf);
  emit(o, out, format_model(s.model));
  if (!o.emit_transformation.empty()) write_file(o.emit_transformation, format_transformation(s.g));
  if (!o.emit_hint.empty()) {
    if (o.hesse.empty()) throw ParseError("--emit-hint needs --hesse", 0, 0);
    write_file(o.emit_hint, format_hessian_hint(HessianHandle::transported(s.g, a, b)));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimisation and reduction of genus one models of degree 5"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Seed for all randomised steps")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* inv = app.add_subcommand("invariants", "c4, c6 and the discriminant");
  inv->add_option("models", o.inputs, "Model files")->required();
  auto* jac = app.add_subcommand("jacobian", "Weierstrass equation of the Jacobian");
  jac->add_option("models", o.inputs, "Model files")->required();

  auto* mini = app.add_subcommand("minimise", "Minimise at the given or all bad primes");
  mini->add_option("models", o.inputs, "Model files")->required();
  mini->add_option("--prime", o.prime, "Single prime");
  mini->add_option("--primes", o.primes, "Comma separated primes");
  mini->add_option("--factor-budget", o.factor_budget, "Trial division bound for the discriminant");
  mini->add_flag("--step-mode", o.step_mode, "Iterate Step 1 and print each iteration");
  mini->add_option("--iterations", o.max_iterations, "Iteration cap for --step-mode");
  mini->add_option("--emit-transformation", o.emit_transformation, "Write the transformation to this file");
  mini->add_option("--out", o.out_path, "Write the report here");

  auto* red = app.add_subcommand("reduce", "LLL reduction against the invariant inner product");
  red->add_option("model", o.inputs, "Integral minimal model")->required();
  red->add_option("--precision", o.precision, "Starting precision in bits")->check(CLI::Range(64, 1024));
  red->add_option("--hessian-hint", o.hint_path, "Hessian or coordinate hint file");
  red->add_flag("--gram-only", o.gram_only, "Print the Gram matrix only");
  red->add_flag("--minimise", o.minimise_first, "Minimise globally first and transport the hint");
  red->add_option("--emit-transformation", o.emit_transformation, "Write the transformation to this file");
  red->add_option("--out", o.out_path, "Write the output model here");

  auto* crit = app.add_subcommand("critical-check", "Critical pattern, level, cycle and cascade");
  crit->add_option("model", o.inputs, "Model file")->required();
  crit->add_option("--prime", o.prime, "Prime")->required();

  auto* ver = app.add_subcommand("verify-weights", "Certify a weight domination table");
  ver->add_option("--table", o.table, "7 or 29")->required();
  ver->add_option("--out", o.out_path, "Certificate file");

  auto* mk = app.add_subcommand("make", "Degree 5 model of (E, 5.O) from a1 a2 a3 a4 a6");
  mk->add_option("ainvs", o.ainvs, "a1 a2 a3 a4 a6")->expected(5)->required()->allow_extra_args(false);
  mk->add_option("--out", o.out_path, "Write the model here");

  auto* scr = app.add_subcommand("scramble", "Apply a seeded unimodular [U, V]");
  scr->add_option("model", o.inputs, "Model file");
  scr->add_option("--hesse", o.hesse, "Start from Hesse(a,b) instead of a file");
  scr->add_option("--bound", o.bound, "Entry bound for U and V")->check(CLI::NonNegativeNumber);
  scr->add_option("--inflate-prime", o.inflate_prime, "Insert a level-raising diagonal pair at this prime");
  scr->add_option("--inflate-k", o.inflate_k, "Level increase for --inflate-prime")->check(CLI::NonNegativeNumber);
  scr->add_option("--emit-transformation", o.emit_transformation, "Write the transformation to this file");
  scr->add_option("--emit-hint", o.emit_hint, "Write a transport hint (with --hesse)");
  scr->add_option("--out", o.out_path, "Write the model here");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (inv->parsed()) {
      for_each_input(o, out, [&](const std::string& f) { return invariants_report(read_model_file(f).model, o); });
      return kOk;
    }
    if (jac->parsed()) {
      for_each_input(o, out, [&](const std::string& f) { return jacobian_report(read_model_file(f).model, o); });
      return kOk;
    }
    if (mini->parsed()) {
      if (o.inputs.size() == 1) {
        Transformation g;
        const std::string rep = minimise_report(read_model_file(o.inputs[0]).model, o, &g);
        emit(o, out, rep);
        if (!o.emit_transformation.empty() && !o.step_mode) write_file(o.emit_transformation, format_transformation(g));
        return kOk;
      }
      if (!o.emit_transformation.empty() || !o.out_path.empty())
        throw ParseError("--emit-transformation and --out need a single model", 0, 0);
      for_each_input(o, out,
                     [&](const std::string& f) { return minimise_report(read_model_file(f).model, o, nullptr); });
      return kOk;
    }
    if (red->parsed()) return run_reduce(o, out, err);
    if (crit->parsed()) {
      out << critical_report(read_model_file(o.inputs[0]).model, o);
      return kOk;
    }
    if (ver->parsed()) return run_verify(o, out);
    if (mk->parsed()) return run_make(o, out);
    if (scr->parsed()) return run_scramble(o, out);
  } catch (const ParseError& e) {
    err << "error: ";
    if (e.line > 0) err << "line " << e.line << ", column " << e.column << ": ";
    err << e.what() << "\n";
    return kParseError;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << "\n";
    return kMathError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

}  // namespace minred::cli
