#include "qinv/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qinv/error.hpp"
#include "qinv/growth.hpp"
#include "qinv/kernels/kernels.hpp"
#include "qinv/modular.hpp"
#include "qinv/quantum.hpp"
#include "qinv/rt.hpp"
#include "qinv/seifert.hpp"
#include "qinv/triangulation.hpp"
#include "qinv/tv.hpp"

namespace qinv::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string format = "json";
  unsigned threads = 1;
  bool deterministic = true;
  std::string kernel = "auto";
};

struct Context {
  Json payload = Json::object();
  std::vector<std::string> diagnostics;
  std::string csv;  // set by tabular subcommands when --format csv
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return kMalformedInput;
    case ErrorCode::kInvalidFiber: return kInvalidFiber;
    case ErrorCode::kNotInvertible: return kNotInvertible;
    case ErrorCode::kDomain: return kDomainError;
    case ErrorCode::kPrecondition: return kPreconditionViolated;
    case ErrorCode::kUnsupported: return kUnsupportedInput;
    case ErrorCode::kNumericInconsistency: return kNumericInconsistency;
    case ErrorCode::kOverflow: return kOverflow;
  }
  return kInternal;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SeifertSymbol load_symbol(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorCode::kParse, "--symbol is required");
  return symbol_from_json(arg.front() == '@' ? read_file(arg.substr(1)) : arg);
}

Json symbol_json(const SeifertSymbol& s) { return Json::parse(to_json(s)); }

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

/// "1,3,5" or an inclusive odd range "1:9".
std::vector<int> parse_odd_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad " + what + " value '" + s + "'");
    }
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = to_int(text.substr(0, colon));
    const int hi = to_int(text.substr(colon + 1));
    for (int v = lo; v <= hi; ++v) {
      if (v % 2 != 0) out.push_back(v);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "empty " + what + " list");
  for (int v : out) {
    if (v < 1 || v % 2 == 0) throw Error(ErrorCode::kPrecondition, what + " values must be odd and positive");
  }
  return out;
}

Json certificate_json(const CongruenceCertificate& cert) { return Json::parse(to_json(cert)); }

Json sample_json(const LtvSample& s) {
  Json j{{"r", s.r}, {"tv_abs", s.tv_abs}, {"ltv_term", s.ltv_term}};
  j["bound"] = s.bound ? Json(*s.bound) : Json(nullptr);
  j["bound_satisfied"] = s.bound_satisfied ? Json(*s.bound_satisfied) : Json(nullptr);
  return j;
}

std::string format_double(double v) {
  return Json(v).dump();
}

}  // namespace

CommandResult run(const std::vector<std::string>& argv) {
  CLI::App app{"Quantum invariants of Seifert fibered 3-manifolds", "qinv"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads")->capture_default_str();
  app.add_flag("--deterministic,!--no-deterministic", common.deterministic,
               "Byte-identical output (omits wall time); on by default");
  app.add_option("--kernel", common.kernel, "Inner-loop variant")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();

  std::string symbol_arg, tri_path, method = "direct", k_arg, r_list_arg, faces = "absorbed";
  std::string summary_path;
  int r = 0;
  std::int64_t ded_b = 0, ded_a = 0;
  std::vector<int> colors;

  Context ctx;
  std::function<void()> action;

  auto* rt = app.add_subcommand("rt", "SU(2) WRT invariant RT_r(M, e^{i pi/r})");
  rt->add_option("--symbol", symbol_arg, "Seifert symbol as inline JSON or @file")->required();
  rt->add_option("--r", r, "Odd level r >= 3")->required();
  rt->add_option("--method", method, "Z evaluation route")
      ->check(CLI::IsMember({"direct", "simplified"}))
      ->capture_default_str();
  rt->footer(
      "Closed symbol: RT_r(M). Bounded symbol: RT_r(D(M)).\n"
      "payload: {symbol, manifold: \"M\"|\"D(M)\", r, method, value: {re, im}, abs,\n"
      "          term_count, term_magnitude_sum, degenerate[, wall_ms]}");
  rt->callback([&] {
    action = [&] {
      const SeifertSymbol s = load_symbol(symbol_arg);
      const auto start = std::chrono::steady_clock::now();
      const SumOptions opts{common.threads};
      InvariantValue v;
      if (s.has_boundary) {
        v = rt_double(s, r, method == "direct" ? Method::kDirect : Method::kSimplified, opts);
      } else {
        if (method != "direct") {
          throw Error(ErrorCode::kPrecondition,
                      "the simplified route evaluates doubles; pass the bounded symbol M");
        }
        v = rt_closed(s, r, opts);
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      auto& p = ctx.payload;
      p["symbol"] = symbol_json(s);
      p["manifold"] = s.has_boundary ? "D(M)" : "M";
      p["r"] = r;
      p["method"] = std::string(to_string(v.method));
      p["value"] = complex_json(v.value);
      p["abs"] = std::abs(v.value);
      p["term_count"] = v.term_count;
      p["term_magnitude_sum"] = v.term_magnitude_sum;
      p["degenerate"] = v.degenerate;
      if (!common.deterministic) p["wall_ms"] = ms;
      if (v.degenerate) ctx.diagnostics.push_back("degenerate: no exceptional fibers (n = 0)");
    };
  });

  auto* tv = app.add_subcommand("tv", "SO(3) Turaev-Viro invariant TV_r at q = e^{2 pi i/r}");
  auto* tv_symbol = tv->add_option("--symbol", symbol_arg, "Seifert symbol (bridge route)");
  auto* tv_tri = tv->add_option("--tri", tri_path, "Closed triangulation file (state sum)");
  tv_symbol->excludes(tv_tri);
  tv->add_option("--r", r, "Odd level r >= 3")->required();
  tv->add_option("--method", method, "Route for --symbol")
      ->check(CLI::IsMember({"bridge", "direct", "simplified"}))
      ->capture_default_str();
  tv->add_option("--faces", faces, "Face weighting for --tri")
      ->check(CLI::IsMember({"absorbed", "divided"}))
      ->capture_default_str();
  tv->footer(
      "--symbol: closed -> |RT_r(M)|^2, bounded -> Re RT_r(D(M)) (chi(M) = 0).\n"
      "--tri:    6j state sum over admissible colorings.\n"
      "payload: {source, r, method, value, imaginary_residue, term_count,\n"
      "          term_magnitude_sum[, vertices, edges, faces, tetrahedra][, wall_ms]}");
  tv->callback([&] {
    action = [&] {
      const auto start = std::chrono::steady_clock::now();
      auto& p = ctx.payload;
      TvValue v;
      if (!tri_path.empty()) {
        const Triangulation tri = Triangulation::load(tri_path);
        const RootContext root(r);
        StateSumOptions opts;
        opts.threads = common.threads;
        opts.faces = faces == "absorbed" ? FaceWeighting::kAbsorbed : FaceWeighting::kDividedByDelta;
        v = tv_statesum(tri, root, opts);
        if (opts.faces == FaceWeighting::kDividedByDelta) {
          ctx.diagnostics.push_back("face-divided weighting is diagnostic only; the value is not an invariant");
        }
        p["source"] = "triangulation";
        p["vertices"] = tri.num_vertices();
        p["edges"] = tri.num_edges();
        p["faces"] = tri.num_faces();
        p["tetrahedra"] = tri.num_tetrahedra();
      } else if (!symbol_arg.empty()) {
        const SeifertSymbol s = load_symbol(symbol_arg);
        const SumOptions opts{common.threads};
        if (s.has_boundary) {
          v = tv_bounded(s, r, opts, method == "simplified" ? Method::kSimplified : Method::kDirect);
        } else {
          v = tv_closed(s, r, opts);
        }
        p["source"] = "symbol";
        p["symbol"] = symbol_json(s);
      } else {
        throw Error(ErrorCode::kParse, "tv needs --symbol or --tri");
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      p["r"] = r;
      p["method"] = std::string(to_string(v.method));
      p["value"] = v.value;
      p["imaginary_residue"] = v.imaginary_residue;
      p["term_count"] = v.term_count;
      p["term_magnitude_sum"] = v.term_magnitude_sum;
      if (!common.deterministic) p["wall_ms"] = ms;
    };
  });

  auto* dbl = app.add_subcommand("double", "Symbol of the double D(M) of a bounded symbol");
  dbl->add_option("--symbol", symbol_arg, "Bounded Seifert symbol")->required();
  dbl->footer("payload: {symbol, euler_number}");
  dbl->callback([&] {
    action = [&] {
      const SeifertSymbol d = double_symbol(load_symbol(symbol_arg));
      ctx.payload["symbol"] = symbol_json(d);
      ctx.payload["euler_number"] = euler_number(d).str();
    };
  });

  auto* norm = app.add_subcommand("normalize", "Canonical form under the Seifert moves");
  norm->add_option("--symbol", symbol_arg, "Seifert symbol")->required();
  norm->footer("payload: {symbol, euler_number, orbifold_euler_characteristic}");
  norm->callback([&] {
    action = [&] {
      const SeifertSymbol n = normalize(load_symbol(symbol_arg));
      ctx.payload["symbol"] = symbol_json(n);
      const bool finite = std::all_of(n.fibers.begin(), n.fibers.end(), [](const Fiber& f) { return f.a > 0; });
      if (finite) {
        ctx.payload["euler_number"] = euler_number(n).str();
        ctx.payload["orbifold_euler_characteristic"] = orbifold_euler_characteristic(n).str();
      }
    };
  });

  auto* certify = app.add_subcommand("certify", "Check the congruence hypothesis and classify it");
  certify->add_option("--symbol", symbol_arg, "Seifert symbol")->required();
  certify->footer(
      "case: a = pairwise coprime a_j, b = equal a_j, c = pairwise gcd criterion, d = no solution\n"
      "payload: {symbol, case, hypothesis_holds, modulus, cardinality, certificate|null}");
  certify->callback([&] {
    action = [&] {
      const SeifertSymbol s = load_symbol(symbol_arg);
      const HypothesisReport report = classify_hypothesis(s);
      auto& p = ctx.payload;
      p["symbol"] = symbol_json(s);
      p["case"] = std::string(to_string(report.which));
      p["hypothesis_holds"] = report.certificate.has_value();
      p["modulus"] = fiber_lcm(s.fibers);
      p["cardinality"] = report.certificate ? report.certificate->cardinality() : 0;
      p["certificate"] = report.certificate ? certificate_json(*report.certificate) : Json(nullptr);
      for (const auto& w : report.warnings) ctx.diagnostics.push_back(w);
    };
  });

  auto* ded = app.add_subcommand("dedekind", "Exact Dedekind sum s(b, a)");
  ded->add_option("b", ded_b, "b, coprime to a")->required();
  ded->add_option("a", ded_a, "a >= 1")->required();
  ded->footer("payload: {b, a, value: \"p/q\", numerator, denominator, approx}");
  ded->callback([&] {
    action = [&] {
      const Rational s = dedekind_sum(ded_b, ded_a);
      auto& p = ctx.payload;
      p["b"] = ded_b;
      p["a"] = ded_a;
      p["value"] = s.str();
      p["numerator"] = s.num();
      p["denominator"] = s.den();
      p["approx"] = s.to_double();
    };
  });

  auto* sixj = app.add_subcommand("sixj", "Quantum 6j symbol |i j k; l m n| at level r");
  sixj->add_option("colors", colors, "Six even colors i j k l m n")->required()->expected(6);
  sixj->add_option("--r", r, "Odd level r >= 3")->required();
  sixj->footer("payload: {colors, r, re, im}");
  sixj->callback([&] {
    action = [&] {
      const RootContext root(r);
      const SixTuple t{colors[0], colors[1], colors[2], colors[3], colors[4], colors[5]};
      const Complex v = six_j(t, root);
      ctx.payload["colors"] = colors;
      ctx.payload["r"] = r;
      ctx.payload["re"] = v.real();
      ctx.payload["im"] = v.imag();
    };
  });

  auto* scan = app.add_subcommand("scan", "Growth-rate samples (2 pi/r) log|TV_r| over odd r");
  scan->add_option("--symbol", symbol_arg, "Seifert symbol")->required();
  auto* scan_r = scan->add_option("--r", r_list_arg, "Levels: list \"15,45\" or odd range \"3:51\"");
  auto* scan_k = scan->add_option("--k", k_arg, "Multipliers k (r = kA): list or odd range");
  scan_r->excludes(scan_k);
  scan->add_option("--summary", summary_path, "With --format csv, also write the JSON summary here");
  scan->footer(
      "csv columns: r,tv_abs,ltv_term,bound,bound_satisfied\n"
      "payload: {symbol, samples: [{r, tv_abs, ltv_term, bound, bound_satisfied}],\n"
      "          summary: {growth_exponent, growth_intercept, trend_constant, all_positive,\n"
      "                    strictly_decreasing, tail_bounded, verdict, certificate}}");
  scan->callback([&] {
    action = [&] {
      const SeifertSymbol s = load_symbol(symbol_arg);
      std::vector<int> levels;
      if (!k_arg.empty()) {
        const std::int64_t a = fiber_lcm(s.fibers);
        for (int k : parse_odd_list(k_arg, "k")) levels.push_back(static_cast<int>(k * a));
      } else if (!r_list_arg.empty()) {
        levels = parse_odd_list(r_list_arg, "r");
      } else {
        throw Error(ErrorCode::kParse, "scan needs --r or --k");
      }
      const ScanResult res = ltv_scan(s, levels, SumOptions{common.threads});
      Json summary;
      summary["growth_exponent"] = res.growth_exponent;
      summary["growth_intercept"] = res.growth_intercept;
      summary["trend_constant"] = res.trend_constant;
      summary["all_positive"] = res.all_positive;
      summary["strictly_decreasing"] = res.strictly_decreasing;
      summary["tail_bounded"] = res.tail_bounded;
      summary["verdict"] = res.consistent_with_zero_growth() ? "consistent_with_ltv_zero" : "inconclusive";
      summary["certificate"] = res.certificate ? certificate_json(*res.certificate) : Json(nullptr);
      for (const auto& w : res.warnings) ctx.diagnostics.push_back(w);

      auto& p = ctx.payload;
      p["symbol"] = symbol_json(s);
      p["samples"] = Json::array();
      for (const auto& smp : res.samples) p["samples"].push_back(sample_json(smp));
      p["summary"] = summary;

      std::ostringstream csv;
      csv << "r,tv_abs,ltv_term,bound,bound_satisfied\n";
      for (const auto& smp : res.samples) {
        csv << smp.r << ',' << format_double(smp.tv_abs) << ',' << format_double(smp.ltv_term) << ','
            << (smp.bound ? format_double(*smp.bound) : "") << ','
            << (smp.bound_satisfied ? (*smp.bound_satisfied ? "true" : "false") : "") << '\n';
      }
      ctx.csv = csv.str();
      if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        if (!out) throw Error(ErrorCode::kParse, "cannot write " + summary_path);
        Json doc{{"schema", 1}, {"command", "scan"}, {"summary", summary}};
        out << doc.dump(2) << '\n';
      }
    };
  });

  auto* bound = app.add_subcommand("bound", "Lower bounds for |TV_{kA}(M)| and |TV_{kA}(D(M))|");
  bound->add_option("--symbol", symbol_arg, "Bounded Seifert symbol")->required();
  bound->add_option("--k", k_arg, "Odd multipliers: list or odd range")->required();
  bound->footer("payload: {symbol, modulus, cardinality, bounds: [{k, r, manifold, double}]}");
  bound->callback([&] {
    action = [&] {
      const SeifertSymbol s = load_symbol(symbol_arg);
      if (!s.has_boundary) throw Error(ErrorCode::kDomain, "bound needs a bounded symbol");
      const HypothesisReport report = classify_hypothesis(s);
      for (const auto& w : report.warnings) ctx.diagnostics.push_back(w);
      if (!report.certificate) {
        throw Error(ErrorCode::kPrecondition, "hypothesis fails: empty solution set B");
      }
      auto& p = ctx.payload;
      p["symbol"] = symbol_json(s);
      p["modulus"] = report.certificate->modulus;
      p["cardinality"] = report.certificate->cardinality();
      p["bounds"] = Json::array();
      for (int k : parse_odd_list(k_arg, "k")) {
        p["bounds"].push_back({{"k", k},
                               {"r", k * report.certificate->modulus},
                               {"manifold", lower_bound(s, k, *report.certificate, BoundTarget::kManifold)},
                               {"double", lower_bound(s, k, *report.certificate, BoundTarget::kDouble)}});
      }
    };
  });

  auto* verify = app.add_subcommand("verify", "Evaluate TV at r = kA against the lower bounds");
  verify->add_option("--symbol", symbol_arg, "Bounded Seifert symbol")->required();
  verify->add_option("--k", k_arg, "Odd multipliers: list or odd range")->required();
  verify->footer(
      "payload: {symbol, certificate, smallest_k, checks: [{k, r, both_exceed_one,\n"
      "          manifold: sample, double: sample}]}");
  verify->callback([&] {
    action = [&] {
      const SeifertSymbol s = load_symbol(symbol_arg);
      const auto ks = parse_odd_list(k_arg, "k");
      const LemmaReport rep = verify_lemma(s, ks, SumOptions{common.threads});
      auto& p = ctx.payload;
      p["symbol"] = symbol_json(s);
      p["certificate"] = certificate_json(rep.certificate);
      p["smallest_k"] = rep.smallest_k ? Json(*rep.smallest_k) : Json(nullptr);
      p["checks"] = Json::array();
      for (const auto& c : rep.checks) {
        p["checks"].push_back({{"k", c.k},
                               {"r", c.r},
                               {"both_exceed_one", c.both_exceed_one},
                               {"manifold", sample_json(c.manifold)},
                               {"double", sample_json(c.doubled)}});
      }
    };
  });

  CommandResult result;
  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kOk : kUsage;
    return result;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  Json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (common.kernel == "scalar") {
      kernels::set_active_isa(kernels::Isa::kScalar);
    } else if (common.kernel == "avx2") {
      if (kernels::set_active_isa(kernels::Isa::kAvx2) != kernels::Isa::kAvx2) {
        ctx.diagnostics.push_back("avx2 kernels unavailable on this CPU; using scalar");
      }
    } else {
      kernels::set_active_isa(kernels::detect_isa());
    }
    action();
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    result.exit_code = exit_code_for(e.code());
    result.out = doc.dump(2) + "\n";
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  } catch (const std::exception& e) {
    doc["status"] = "error";
    doc["error"] = {{"code", "internal"}, {"message", e.what()}};
    result.exit_code = kInternal;
    result.out = doc.dump(2) + "\n";
    result.err = std::string("internal error: ") + e.what() + "\n";
    return result;
  }

  if (common.format == "csv" && !ctx.csv.empty()) {
    result.out = ctx.csv;
  } else {
    doc["status"] = "ok";
    doc["kernel"] = std::string(kernels::to_string(kernels::active_isa()));
    doc["payload"] = ctx.payload;
    doc["diagnostics"] = ctx.diagnostics;
    if (!common.deterministic) {
      doc["timing_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    result.out = doc.dump(2) + "\n";
  }
  for (const auto& d : ctx.diagnostics) result.err += "warning: " + d + "\n";
  return result;
}

}  // namespace qinv::cli
