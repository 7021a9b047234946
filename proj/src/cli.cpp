#include "ivx/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivx/distributions.hpp"
#include "ivx/errors.hpp"
#include "ivx/estimators.hpp"
#include "ivx/io.hpp"
#include "ivx/montecarlo.hpp"
#include "ivx/realdata.hpp"
#include "ivx/rng.hpp"
#include "ivx/truncated_measures.hpp"
#include "ivx/uniformity.hpp"

namespace ivx {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int default_workers() {
  if (const char* env = std::getenv("IV_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

double parse_real(const std::string& token, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw ParseError("expected a number for " + what + ", got '" + token + "'");
  }
  return v;
}

int parse_count(const std::string& token, const std::string& what) {
  double v = parse_real(token, what);
  if (v < 1.0 || v != static_cast<int>(v)) {
    throw ParseError(what + " must be a positive integer, got '" + token + "'");
  }
  return static_cast<int>(v);
}

// "1,7;1,13;2,10" -> windows
std::vector<Window> parse_windows(const std::string& text) {
  std::vector<Window> ws;
  for (const auto& piece : split(text, ';')) {
    auto ends = split(piece, ',');
    if (ends.size() != 2) {
      throw ParseError("window '" + piece + "' must be t1,t2");
    }
    ws.push_back({parse_real(ends[0], "t1"), parse_real(ends[1], "t2")});
  }
  if (ws.empty()) throw ParseError("no windows given");
  return ws;
}

SampleData load_sample(const std::string& path,
                       const std::optional<std::string>& column, double jitter,
                       std::uint64_t seed) {
  auto values = read_values_file(path, column);
  if (values.empty()) throw ParseError("no observations parsed from '" + path + "'");
  if (jitter > 0.0) {
    auto rng = RandomStream::derive(seed, stream_tag::jitter, values.size(), 0);
    for (double& v : values) v += (2.0 * rng.next_uniform() - 1.0) * jitter;
  }
  return SampleData(std::move(values));
}

struct ClosedFormArgs {
  std::string dist;
  double t1 = 0, t2 = 0;
  std::string measure = "both";
  bool bounds = false;
  bool as_json = false;
};

int cmd_closed_form(const ClosedFormArgs& a, std::ostream& out) {
  auto model = parse_distribution(a.dist);
  Window w{a.t1, a.t2};
  bool want_iv = a.measure == "iv" || a.measure == "both";
  bool want_ij = a.measure == "ij" || a.measure == "both";
  if (!want_iv && !want_ij) {
    throw ParseError("--measure must be iv, ij or both");
  }

  // Closed form when the catalogue has one, quadrature oracle otherwise.
  auto compute = [&](bool iv) -> std::pair<double, const char*> {
    try {
      return {iv ? interval_varextropy_closed(model, w)
                 : interval_extropy_closed(model, w),
              "closed"};
    } catch (const NoClosedFormError&) {
      return {iv ? interval_varextropy_numeric(model, w)
                 : interval_extropy_numeric(model, w),
              "quadrature"};
    }
  };

  std::optional<std::pair<double, const char*>> iv, ij;
  if (want_iv) iv = compute(true);
  if (want_ij) ij = compute(false);

  std::optional<double> lower, upper;
  if (a.bounds) {
    lower = variance_weight_lower_bound(model, w);
    if (auto spec = exp_family_spec_for(model)) {
      upper = exp_family_upper_bound(*spec, model, w);
    }
  }

  if (a.as_json) {
    json doc;
    doc["dist"] = model.describe();
    doc["t1"] = a.t1;
    doc["t2"] = a.t2;
    if (iv) doc["iv"] = {{"value", iv->first}, {"method", iv->second}};
    if (ij) doc["ij"] = {{"value", ij->first}, {"method", ij->second}};
    if (a.bounds) {
      doc["bounds"]["lower"] = *lower;
      doc["bounds"]["upper"] = upper ? json(*upper) : json(nullptr);
    }
    out << doc.dump() << "\n";
    return 0;
  }

  if (a.measure == "both") {
    if (iv) out << "iv " << fmt(iv->first) << "\n";
    if (ij) out << "ij " << fmt(ij->first) << "\n";
  } else {
    out << fmt(iv ? iv->first : ij->first) << "\n";
  }
  if (a.bounds) {
    out << "lower_bound " << fmt(*lower) << "\n";
    if (upper) out << "upper_bound " << fmt(*upper) << "\n";
  }
  return 0;
}

struct ScanArgs {
  std::string dist;
  std::string fix;
  std::string range;
  std::string measure = "iv";
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  auto model = parse_distribution(a.dist);
  auto eq = a.fix.find('=');
  if (eq == std::string::npos) {
    throw ParseError("--fix must be t1=<value> or t2=<value>");
  }
  std::string which = a.fix.substr(0, eq);
  double fixed = parse_real(a.fix.substr(eq + 1), "--fix");
  if (which != "t1" && which != "t2") {
    throw ParseError("--fix must name t1 or t2");
  }
  auto parts = split(a.range, ':');
  if (parts.size() != 3) throw ParseError("--range must be lo:hi:count");
  double lo = parse_real(parts[0], "range lo");
  double hi = parse_real(parts[1], "range hi");
  int count = parse_count(parts[2], "range count");
  if (!(lo < hi) || count < 2) {
    throw ParseError("--range needs lo < hi and count >= 2");
  }
  bool iv = a.measure == "iv";
  if (!iv && a.measure != "ij") throw ParseError("--measure must be iv or ij");

  out << "t,value\n";
  for (int i = 0; i < count; ++i) {
    double t = lo + (hi - lo) * i / (count - 1);
    Window w = which == "t1" ? Window{fixed, t} : Window{t, fixed};
    double v = iv ? interval_varextropy_numeric(model, w)
                  : interval_extropy_numeric(model, w);
    out << fmt(t) << "," << fmt(v) << "\n";
  }
  return 0;
}

struct EstimateArgs {
  std::string estimator;
  double t1 = 0, t2 = 0;
  std::string input;
  std::optional<std::string> column;
  std::optional<int> m;
  std::optional<double> h;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  bool as_json = false;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  EstimatorConfig cfg;
  cfg.kind = parse_estimator(a.estimator);
  if (a.m) cfg.m_override = *a.m;
  if (a.h) cfg.kde = KdeConfig::fixed(*a.h);
  SampleData s = load_sample(a.input, a.column, a.jitter, a.seed);
  Window w{a.t1, a.t2};
  double value = estimate(s, w, cfg);

  if (a.as_json) {
    json doc;
    doc["estimator"] = a.estimator;
    doc["t1"] = a.t1;
    doc["t2"] = a.t2;
    doc["n"] = s.size();
    if (cfg.kind == EstimatorKind::spacing) {
      doc["m"] = cfg.m_override.value_or(m_rule(s.size()));
    } else {
      doc["h"] = bandwidth(s, cfg.kde);
    }
    doc["value"] = value;
    out << doc.dump() << "\n";
  } else {
    out << fmt(value) << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::string dist;
  double t1 = 0, t2 = 0;
  std::string sizes = "10,20,30,40,50,100";
  int reps = 10000;
  std::uint64_t seed = 0;
  std::string estimators = "spacing,kde-integral,kde-plugin";
  bool as_json = false;
  int workers = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  SimulationPlan plan{parse_distribution(a.dist), Window{a.t1, a.t2}, {},
                      a.reps, {}, a.seed, 0.0};
  for (const auto& tok : split(a.sizes, ',')) {
    plan.sizes.push_back(parse_count(tok, "--sizes"));
  }
  for (const auto& tok : split(a.estimators, ',')) {
    EstimatorConfig cfg;
    cfg.kind = parse_estimator(tok);
    plan.estimators.push_back(cfg);
  }
  plan.true_value = true_iv(plan.model, plan.window);
  int workers = a.workers > 0 ? a.workers : default_workers();
  StudyReport report = run_study(plan, workers);

  if (a.as_json) {
    json doc;
    doc["dist"] = plan.model.describe();
    doc["t1"] = a.t1;
    doc["t2"] = a.t2;
    doc["seed"] = a.seed;
    doc["reps"] = a.reps;
    doc["true_value"] = plan.true_value;
    doc["rows"] = json::array();
    for (const auto& r : report.rows) {
      doc["rows"].push_back({{"n", r.n},
                             {"estimator", estimator_name(r.estimator)},
                             {"bias", r.bias},
                             {"mse", r.mse},
                             {"failures", r.failures}});
    }
    out << doc.dump() << "\n";
  } else {
    out << "n,estimator,bias,mse,failures\n";
    for (const auto& r : report.rows) {
      out << r.n << "," << estimator_name(r.estimator) << "," << fmt(r.bias)
          << "," << fmt(r.mse) << "," << r.failures << "\n";
    }
  }
  return 0;
}

struct CritvalsArgs {
  std::string stats = "GV,GD,GB,KS";
  std::string ns = "10,20,30,40,50,75,100";
  double alpha = 0.05;
  int reps = 100000;
  std::uint64_t seed = 0;
  bool as_json = false;
  int workers = 0;
};

int cmd_critvals(const CritvalsArgs& a, std::ostream& out) {
  int workers = a.workers > 0 ? a.workers : default_workers();
  Calibration cal;
  for (const auto& stok : split(a.stats, ',')) {
    StatKind kind = parse_stat(stok);
    for (const auto& ntok : split(a.ns, ',')) {
      int n = parse_count(ntok, "--n");
      double crit = critical_value(kind, n, a.alpha, a.reps, a.seed, workers);
      cal.add({kind, n, a.alpha, crit});
    }
  }
  if (a.as_json) {
    json doc;
    doc["alpha"] = a.alpha;
    doc["reps"] = a.reps;
    doc["seed"] = a.seed;
    doc["rows"] = json::array();
    for (const auto& r : cal.rows()) {
      doc["rows"].push_back({{"stat", stat_name(r.stat)},
                             {"n", r.n},
                             {"critical", r.critical}});
    }
    out << doc.dump() << "\n";
  } else {
    out << cal.to_csv();
  }
  return 0;
}

struct PowerArgs {
  std::string alts = "A1.5,A2,B1.5,B2,B3,C1.5,C2";
  std::string ns = "10,20,30";
  double alpha = 0.05;
  int reps = 100000;
  std::uint64_t seed = 0;
  std::string calibration;
  std::string stats = "GV,GD,GB,KS";
  bool as_json = false;
  int workers = 0;
};

int cmd_power(const PowerArgs& a, std::ostream& out) {
  int workers = a.workers > 0 ? a.workers : default_workers();
  Calibration cal = Calibration::from_csv_file(a.calibration);
  std::vector<StatKind> stats;
  for (const auto& tok : split(a.stats, ',')) stats.push_back(parse_stat(tok));
  std::vector<AlternativeLaw> laws;
  bool include_null = false;
  for (const auto& tok : split(a.alts, ',')) {
    if (tok == "uniform") {
      include_null = true;
    } else {
      laws.push_back(parse_alternative(tok));
    }
  }

  std::vector<PowerRow> rows;
  for (const auto& ntok : split(a.ns, ',')) {
    int n = parse_count(ntok, "--n");
    auto report = power_study(stats, laws, n, a.alpha, a.reps, a.seed, cal,
                              workers);
    rows.insert(rows.end(), report.rows.begin(), report.rows.end());
    if (include_null) {
      for (StatKind kind : stats) {
        double rate =
            null_rejection_rate(kind, n, a.alpha, a.reps, a.seed, cal, workers);
        rows.push_back({kind, "uniform", n, a.alpha, rate, 0});
      }
    }
  }

  if (a.as_json) {
    json doc;
    doc["alpha"] = a.alpha;
    doc["reps"] = a.reps;
    doc["seed"] = a.seed;
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"stat", stat_name(r.stat)},
                             {"alt", r.alternative},
                             {"n", r.n},
                             {"power", r.power},
                             {"failures", r.failures}});
    }
    out << doc.dump() << "\n";
  } else {
    out << "stat,alt,n,alpha,power,failures\n";
    for (const auto& r : rows) {
      out << stat_name(r.stat) << "," << r.alternative << "," << r.n << ","
          << fmt(r.alpha) << "," << fmt(r.power) << "," << r.failures << "\n";
    }
  }
  return 0;
}

struct TestArgs {
  std::string stat;
  double alpha = 0.05;
  std::string input;
  std::optional<std::string> column;
  std::string calibration;
  bool as_json = false;
};

int cmd_test(const TestArgs& a, std::ostream& out) {
  StatKind kind = parse_stat(a.stat);
  Calibration cal = Calibration::from_csv_file(a.calibration);
  SampleData s = load_sample(a.input, a.column, 0.0, 0);
  TestDecision d = test_uniformity(kind, s, a.alpha, cal);

  if (a.as_json) {
    json doc;
    doc["statistic"] = a.stat;
    doc["n"] = s.size();
    doc["alpha"] = d.alpha;
    doc["value"] = d.statistic_value;
    doc["critical"] = d.critical_value;
    doc["reject"] = d.reject;
    out << doc.dump() << "\n";
  } else {
    out << (d.reject ? "reject" : "accept") << " uniformity: " << a.stat
        << " = " << fmt(d.statistic_value) << " vs critical "
        << fmt(d.critical_value) << " at alpha " << fmt(d.alpha) << "\n";
  }
  return 0;
}

struct AnalyzeArgs {
  std::optional<std::string> input;
  std::optional<std::string> column;
  std::string embedded;
  std::string windows = "1,7;1,13;2,10";
  double lambda = 0.106773;
  bool as_json = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (a.input.has_value() == !a.embedded.empty()) {
    throw ParseError("give exactly one of --input or --embedded cancer");
  }
  if (!a.embedded.empty() && a.embedded != "cancer") {
    throw ParseError("unknown embedded dataset '" + a.embedded + "'");
  }
  SampleData s = a.input ? load_sample(*a.input, a.column, 0.0, 0)
                         : load_cancer_dataset();
  auto rows = analyze(s, parse_windows(a.windows), a.lambda);

  if (a.as_json) {
    json doc;
    doc["lambda"] = a.lambda;
    doc["n"] = s.size();
    doc["m"] = rows.front().m;
    doc["h"] = rows.front().h;
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"t1", r.window.t1},
                             {"t2", r.window.t2},
                             {"spacing", r.spacing},
                             {"kde_integral", r.kde_integral},
                             {"kde_plugin", r.kde_plugin},
                             {"model_iv_constant", r.model_iv_constant},
                             {"model_iv_quadrature", r.model_iv_quadrature}});
    }
    out << doc.dump() << "\n";
  } else {
    out << "window,spacing,kde-integral,kde-plugin,model_iv_constant,"
           "model_iv_quadrature\n";
    for (const auto& r : rows) {
      out << "(" << fmt(r.window.t1) << "," << fmt(r.window.t2) << "),"
          << fmt(r.spacing) << "," << fmt(r.kde_integral) << ","
          << fmt(r.kde_plugin) << "," << fmt(r.model_iv_constant) << ","
          << fmt(r.model_iv_quadrature) << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"interval varextropy toolkit", "ivx"};
  app.require_subcommand(1);

  ClosedFormArgs cf;
  auto* cf_cmd = app.add_subcommand(
      "closed-form", "interval extropy/varextropy of a catalogue law");
  cf_cmd->add_option("--dist", cf.dist, "distribution spec, e.g. exp:rate=1")->required();
  cf_cmd->add_option("--t1", cf.t1, "lower truncation point")->required();
  cf_cmd->add_option("--t2", cf.t2, "upper truncation point")->required();
  cf_cmd->add_option("--measure", cf.measure, "iv, ij or both (default both)");
  cf_cmd->add_flag("--bounds", cf.bounds, "also print the IV bounds");
  cf_cmd->add_flag("--json", cf.as_json, "emit a JSON document");

  ScanArgs sc;
  auto* sc_cmd = app.add_subcommand(
      "scan", "sweep one window endpoint, emit CSV t,value");
  sc_cmd->add_option("--dist", sc.dist, "distribution spec")->required();
  sc_cmd->add_option("--fix", sc.fix, "fixed endpoint, t1=<r> or t2=<r>")->required();
  sc_cmd->add_option("--range", sc.range, "swept endpoint grid lo:hi:count")->required();
  sc_cmd->add_option("--measure", sc.measure, "iv or ij (default iv)");

  EstimateArgs es;
  auto* es_cmd =
      app.add_subcommand("estimate", "estimate IV(t1,t2) from a sample file");
  es_cmd->set_help_flag("--help", "print help");  // frees -h for the bandwidth
  es_cmd->add_option("--estimator", es.estimator, "spacing, kde-integral or kde-plugin")->required();
  es_cmd->add_option("--t1", es.t1, "lower truncation point")->required();
  es_cmd->add_option("--t2", es.t2, "upper truncation point")->required();
  es_cmd->add_option("--input", es.input, "sample file (text or CSV)")->required();
  es_cmd->add_option("--column", es.column, "CSV column name or 1-based index");
  es_cmd->add_option("--m", es.m, "spacing order (default: floor(sqrt(n)+0.5))");
  es_cmd->add_option("--h", es.h, "fixed bandwidth for the kde estimators");
  es_cmd->add_option("--jitter", es.jitter, "break ties with uniform noise in [-eps,eps]");
  es_cmd->add_option("--seed", es.seed, "seed for --jitter");
  es_cmd->add_flag("--json", es.as_json, "emit a JSON document");

  SimulateArgs si;
  auto* si_cmd =
      app.add_subcommand("simulate", "bias/MSE study of the estimators");
  si_cmd->add_option("--dist", si.dist, "distribution spec")->required();
  si_cmd->add_option("--t1", si.t1, "lower truncation point")->required();
  si_cmd->add_option("--t2", si.t2, "upper truncation point")->required();
  si_cmd->add_option("--sizes", si.sizes, "comma-separated sample sizes");
  si_cmd->add_option("--reps", si.reps, "replications per size (default 10000)");
  si_cmd->add_option("--seed", si.seed, "study seed");
  si_cmd->add_option("--estimators", si.estimators, "comma-separated estimator kinds");
  si_cmd->add_option("--workers", si.workers, "thread count (default IV_WORKERS)");
  si_cmd->add_flag("--json", si.as_json, "emit a JSON document instead of CSV");

  CritvalsArgs cv;
  auto* cv_cmd = app.add_subcommand(
      "critvals", "Monte Carlo critical values for the uniformity tests");
  cv_cmd->add_option("--stat", cv.stats, "comma-separated statistics (GV,GD,GB,KS)");
  cv_cmd->add_option("--n", cv.ns, "comma-separated sample sizes");
  cv_cmd->add_option("--alpha", cv.alpha, "significance level (default 0.05)");
  cv_cmd->add_option("--reps", cv.reps, "null replications (default 100000)");
  cv_cmd->add_option("--seed", cv.seed, "calibration seed");
  cv_cmd->add_option("--workers", cv.workers, "thread count (default IV_WORKERS)");
  cv_cmd->add_flag("--json", cv.as_json, "emit a JSON document instead of CSV");

  PowerArgs pw;
  auto* pw_cmd =
      app.add_subcommand("power", "power study against the A/B/C alternatives");
  pw_cmd->add_option("--alt", pw.alts, "alternatives, e.g. A2,B3,C1.5 (uniform = size check)");
  pw_cmd->add_option("--n", pw.ns, "comma-separated sample sizes");
  pw_cmd->add_option("--alpha", pw.alpha, "significance level (default 0.05)");
  pw_cmd->add_option("--reps", pw.reps, "replications per cell (default 100000)");
  pw_cmd->add_option("--seed", pw.seed, "power-study seed");
  pw_cmd->add_option("--calibration", pw.calibration, "critical-value CSV from critvals")->required();
  pw_cmd->add_option("--stat", pw.stats, "comma-separated statistics");
  pw_cmd->add_option("--workers", pw.workers, "thread count (default IV_WORKERS)");
  pw_cmd->add_flag("--json", pw.as_json, "emit a JSON document instead of CSV");

  TestArgs te;
  auto* te_cmd =
      app.add_subcommand("test", "uniformity decision for a sample file");
  te_cmd->add_option("--stat", te.stat, "GV, GD, GB or KS")->required();
  te_cmd->add_option("--alpha", te.alpha, "significance level (default 0.05)");
  te_cmd->add_option("--input", te.input, "sample file with values in [0,1]")->required();
  te_cmd->add_option("--column", te.column, "CSV column name or 1-based index");
  te_cmd->add_option("--calibration", te.calibration, "critical-value CSV from critvals")->required();
  te_cmd->add_flag("--json", te.as_json, "emit a JSON document");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand(
      "analyze", "windowed estimates for a dataset vs a fitted exponential");
  an_cmd->add_option("--input", an.input, "sample file (or use --embedded)");
  an_cmd->add_option("--column", an.column, "CSV column name or 1-based index");
  an_cmd->add_option("--embedded", an.embedded, "built-in dataset name: cancer");
  an_cmd->add_option("--windows", an.windows, "semicolon-separated t1,t2 pairs");
  an_cmd->add_option("--lambda", an.lambda, "rate of the fitted exponential");
  an_cmd->add_flag("--json", an.as_json, "emit a JSON document");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(cf_cmd)) return cmd_closed_form(cf, out);
    if (app.got_subcommand(sc_cmd)) return cmd_scan(sc, out);
    if (app.got_subcommand(es_cmd)) return cmd_estimate(es, out);
    if (app.got_subcommand(si_cmd)) return cmd_simulate(si, out);
    if (app.got_subcommand(cv_cmd)) return cmd_critvals(cv, out);
    if (app.got_subcommand(pw_cmd)) return cmd_power(pw, out);
    if (app.got_subcommand(te_cmd)) return cmd_test(te, out);
    if (app.got_subcommand(an_cmd)) return cmd_analyze(an, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CalibrationRequiredError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no subcommand\n";
  return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace ivx
