#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "soliton/barriers.hpp"
#include "soliton/errors.hpp"
#include "soliton/picard.hpp"
#include "soliton/profile_io.hpp"
#include "soliton/report_io.hpp"
#include "soliton/verifier.hpp"
#include "svg.hpp"

namespace soliton::tools {

namespace fs = std::filesystem;

namespace {

// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

// "auto" or a positive number.
std::optional<double> auto_or_number(const std::string& text, const char* flag) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(flag) + " must be 'auto' or a number, got '" + text + "'");
}

struct Common {
  std::string outdir = ".";
  fs::path resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() || outdir == "." ? path : fs::path(outdir) / path;
  }
};

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string speed;
  int n = 0;
  int k = 0;
  std::optional<double> rmax;
  double eps = 1e-4;
  double rtol = 1e-10;
  double blowup_threshold = 1e8;
  std::string equation = "published";
  std::string out;
  std::string sweep;
};

SpeedSpec profile_speed(const std::string& speed, int n, int k) {
  if (speed == "sigma-k") {
    if (k < 2 || k > n) throw UsageError("sigma-k profiles need 2 <= k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    return SpeedSpec::sigma_k(n, k);
  }
  if (n < 3 || n > 6) throw UsageError("harmonic profiles need 3 <= n <= 6");
  return SpeedSpec::harmonic(n);
}

ProfileSolution solve_one(const SolveArgs& a, int n) {
  const SpeedSpec speed = profile_speed(a.speed, n, a.k);
  ProfileOptions o;
  o.startup_radius = a.eps;
  o.tolerances.rtol = a.rtol;
  o.tolerances.blowup_threshold = a.blowup_threshold;
  o.harmonic_equation = a.equation == "geometric" ? HarmonicEquation::geometric : HarmonicEquation::published;
  o.r_max = a.rmax.value_or(a.speed == "harmonic" ? 1.5 * harmonic_blowup_prediction(n) : 3.0);
  return integrate_profile(speed, o);
}

std::pair<int, int> parse_sweep(const std::string& text) {
  // n=A..B
  const auto eq = text.find('=');
  const auto dots = text.find("..");
  if (eq == std::string::npos || dots == std::string::npos || text.substr(0, eq) != "n")
    throw UsageError("--sweep expects n=A..B, got '" + text + "'");
  try {
    const int lo = std::stoi(text.substr(eq + 1, dots - eq - 1));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw UsageError("--sweep: empty range");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--sweep expects n=A..B, got '" + text + "'");
  }
}

int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out) {
  std::vector<int> dims;
  if (!a.sweep.empty()) {
    const auto [lo, hi] = parse_sweep(a.sweep);
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
  } else {
    if (a.n <= 0) throw UsageError("--n is required without --sweep");
    dims.push_back(a.n);
  }
  for (int n : dims) profile_speed(a.speed, n, a.k);

  const fs::path base = c.resolve(a.out);
  auto path_for = [&](int n) {
    if (a.sweep.empty()) return base;
    fs::path p = base;
    p.replace_filename(base.stem().string() + "_n" + std::to_string(n) + base.extension().string());
    return p;
  };
  std::vector<std::future<ProfileSolution>> jobs;
  for (int n : dims) jobs.push_back(std::async(std::launch::async, [&a, n] { return solve_one(a, n); }));

  int code = kExitPass;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const ProfileSolution p = jobs[i].get();
    const fs::path path = path_for(dims[i]);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_profile(p, path);
    out << "wrote " << path.string() << " (" << p.samples.size() << " samples, status " << to_string(p.status) << ")\n";
    if (p.blowup_radius)
      out << "  blow-up radius " << fmt(*p.blowup_radius) << " (bracket " << fmt(p.blowup_bracket) << ")\n";
    else if (a.speed == "harmonic")
      out << "  no blow-up detected up to r = " << fmt(p.r_max) << " (predicted "
          << fmt(harmonic_blowup_prediction(dims[i])) << ")\n";
    if (p.status == ProfileStatus::step_failure) {
      out << "  " << p.diagnostics << '\n';
      code = kExitFail;
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string profile;
  double tol = 1e-8;
  std::string alpha = "auto";
  double delta = 0.05;
  std::string beta = "auto";
  double zmin = -0.5;
  double zmax = 3.0;
  int count = 100;
  double a = 0.0;
  double cyl_tol = 1e-9;
  std::string out;
};

int emit_report(const VerificationReport& report, const std::string& out_path, const Common& c, std::ostream& out) {
  const std::string json = to_json(report);
  if (out_path.empty()) {
    out << json;
  } else {
    write_file(c.resolve(out_path), json);
    for (const auto& check : report.checks)
      out << std::left << std::setw(26) << check.name << ' ' << std::setw(8) << to_string(check.status)
          << " worst " << fmt(check.worst_violation) << " (tol " << fmt(check.tolerance) << ")\n";
    out << "wrote " << c.resolve(out_path).string() << '\n';
  }
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& which, const VerifyArgs& a, const Common& c, std::ostream& out) {
  VerificationReport report;
  if (which == "cylinder") {
    if (a.count < 1) throw UsageError("--count must be >= 1");
    std::vector<double> z;
    for (int i = 0; i < a.count; ++i)
      z.push_back(a.count == 1 ? a.zmin : a.zmin + (a.zmax - a.zmin) * i / (a.count - 1));
    report.context = {{"surface", "cylindrical sqrt(S_2) translator"},
                      {"parametrisation", "z = integral from 1 to r(z) of sqrt(exp(s^2 - 2a) - 1) ds, r(0) = 1"},
                      {"orientation", "H and K use the outward normal; gamma is evaluated on -lambda against |<nu,e3>|"},
                      {"a", fmt(a.a)}};
    report.add(check_sigma2_cylinder(z, a.a, a.cyl_tol));
    return emit_report(report, a.out, c, out);
  }
  if (a.profile.empty()) throw UsageError("--profile is required");
  const ProfileSolution p = load_profile(c.resolve(a.profile));
  report.profile = metadata_of(p);
  if (which == "soliton") {
    report.add(check_soliton(p, a.tol));
  } else if (which == "convexity") {
    if (!(a.delta > 0.0)) throw UsageError("--delta must be > 0");
    ConvexityParams params{0.0, a.delta, 0.0};
    const auto alpha = auto_or_number(a.alpha, "--alpha");
    const auto beta = auto_or_number(a.beta, "--beta");
    if (!alpha || !beta) {
      const ConvexityParams fitted = fit_convexity_params(p, a.delta);
      params.alpha = fitted.alpha;
      params.beta = fitted.beta;
    }
    if (alpha) params.alpha = *alpha;
    if (beta) params.beta = *beta;
    report.context = {{"alpha", alpha ? "given" : "fitted: 1.05 * sup (delta+1)H/gamma"},
                      {"beta", beta ? "given" : "fitted: 0.9 * inf min pair sum / H"}};
    report.add(check_convexity_estimate(p, params));
  } else {
    report.add(check_barriers(p));
  }
  return emit_report(report, a.out, c, out);
}

// ---------------------------------------------------------------------------
// props

struct PropsArgs {
  std::string speed;
  int n = 0;
  int k = 2;
  int l = 1;
  std::string factors;
  std::string weights;
  int samples = 1000;
  std::uint64_t seed = 42;
  std::string out;
};

SpeedSpec parse_factor(const std::string& text, int n) {
  // sigma-k:K | harmonic | quotient:K:L
  const auto parts = split(text, ':');
  if (parts.empty()) throw UsageError("empty factor");
  try {
    if (parts[0] == "sigma-k" && parts.size() == 2) return SpeedSpec::sigma_k(n, std::stoi(parts[1]));
    if (parts[0] == "harmonic" && parts.size() == 1) return SpeedSpec::harmonic(n);
    if (parts[0] == "quotient" && parts.size() == 3)
      return SpeedSpec::quotient(n, std::stoi(parts[1]), std::stoi(parts[2]));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ParameterError*>(&e) != nullptr) throw;
  }
  throw UsageError("bad factor '" + text + "' (use sigma-k:K, harmonic or quotient:K:L)");
}

int cmd_props(const PropsArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (a.n < 1) throw UsageError("--n is required");
  std::optional<SpeedSpec> spec;
  if (a.speed == "sigma-k") {
    spec = SpeedSpec::sigma_k(a.n, a.k);
  } else if (a.speed == "harmonic") {
    spec = SpeedSpec::harmonic(a.n);
  } else if (a.speed == "quotient") {
    spec = SpeedSpec::quotient(a.n, a.k, a.l);
  } else {
    std::vector<SpeedSpec> factors;
    for (const auto& f : split(a.factors, ',')) factors.push_back(parse_factor(f, a.n));
    std::vector<double> weights;
    for (const auto& w : split(a.weights, ',')) weights.push_back(std::stod(w));
    if (factors.empty()) throw UsageError("--factors is required for a product speed");
    spec = SpeedSpec::product(std::move(factors), std::move(weights));
  }
  const PropertyReport report = check_properties(*spec, a.samples, a.seed);
  const std::string json = to_json(report);
  if (a.out.empty()) {
    out << json;
  } else {
    write_file(c.resolve(a.out), json);
    for (const auto& o : report.outcomes)
      out << std::left << std::setw(22) << to_string(o.property) << ' ' << (o.failures == 0 ? "ok  " : "FAIL")
          << " failures " << o.failures << "/" << (o.passes + o.failures) << '\n';
    out << "wrote " << c.resolve(a.out).string() << '\n';
  }
  int code = kExitPass;
  for (const auto& o : report.outcomes) {
    if (o.failures == 0) continue;
    if (o.property == Property::boundary_vanishing && spec->is<Quotient>()) {
      err << "warning: boundary vanishing does not hold for " << spec->name()
          << " (quotients vanish only where the numerator does)\n";
      continue;
    }
    code = kExitFail;
  }
  return code;
}

// ---------------------------------------------------------------------------
// barriers

struct BarriersArgs {
  int n = 0;
  int k = 0;
  std::string names;
  std::optional<double> rmax;
  int count = 201;
  std::string out;
};

int cmd_barriers(const BarriersArgs& a, const Common& c, std::ostream& out) {
  std::vector<Barrier> list;
  for (const auto& name : split(a.names, ',')) list.push_back(Barrier::make(parse_barrier(name), a.n, a.k));
  if (list.empty()) throw UsageError("--names is required");
  if (a.count < 2) throw UsageError("--count must be >= 2");
  double rmax = 0.0;
  if (a.rmax) {
    rmax = *a.rmax;
  } else {
    for (const auto& b : list) rmax = std::max(rmax, std::isfinite(b.domain().hi) ? b.domain().hi : 2.0);
  }
  std::ostringstream csv;
  csv << 'r';
  for (const auto& b : list) csv << ',' << to_string(b.name());
  csv << '\n';
  for (int i = 0; i < a.count; ++i) {
    const double r = rmax * i / (a.count - 1);
    csv << format_double(r);
    for (const auto& b : list) csv << ',' << (b.in_domain(r) ? format_double(b(r)) : std::string("nan"));
    csv << '\n';
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_file(c.resolve(a.out), csv.str());
    for (const auto& b : list) {
      out << b.label() << ": " << to_string(b.role()) << ", slope " << fmt(b.coefficient());
      if (auto s = b.asymptote()) out << ", asymptote at r = " << fmt(*s);
      out << '\n';
    }
    out << "wrote " << c.resolve(a.out).string() << '\n';
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// picard

struct PicardArgs {
  int n = 3;
  std::optional<double> R;
  int grid = 2048;
  double tol = 1e-12;
  int max_iter = 2000;
  std::optional<double> relaxation;
  std::string out;
  std::string fixed_point;
};

int cmd_picard(const PicardArgs& a, const Common& c, std::ostream& out) {
  PicardOptions o;
  o.R = a.R.value_or(0.0);
  o.m = a.grid;
  o.tol = a.tol;
  o.max_iter = a.max_iter;
  o.relaxation = a.relaxation;
  const PicardResult res = picard_solve(a.n, o);

  const fs::path log_path = c.resolve(a.out.empty() ? "picard_n" + std::to_string(a.n) + ".json" : a.out);
  fs::path fp_path;
  if (a.fixed_point.empty()) {
    fp_path = log_path;
    fp_path.replace_filename(log_path.stem().string() + "_fixed_point.csv");
  } else {
    fp_path = c.resolve(a.fixed_point);
  }
  std::ostringstream csv;
  write_grid_csv(csv, res.fixed_point);
  write_file(fp_path, csv.str());
  write_file(log_path, to_json(res, fp_path.filename().string()));

  out << "n = " << a.n << ", R = " << fmt(res.fixed_point.R) << ", m = " << res.fixed_point.m() << ", relaxation "
      << fmt(res.relaxation) << '\n';
  out << (res.converged ? "converged" : "not converged") << " after " << res.iterations.size()
      << " iterations; max contraction ratio " << fmt(res.max_contraction_ratio()) << '\n';
  out << "wrote " << log_path.string() << " and " << fp_path.string() << '\n';
  return res.converged ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
  std::string in;
  std::string barriers;
  bool revolve = false;
  int n = 0;
  int k = 0;
  std::string title;
  std::string out;
};

int cmd_plot(const PlotArgs& a, const Common& c, std::ostream& out) {
  const fs::path in_path = c.resolve(a.in);
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + in_path.string());
  const auto rows = read_profile_csv(in);

  std::optional<ProfileMetadata> meta;
  if (std::ifstream side(sidecar_path(in_path), std::ios::binary); side) {
    std::stringstream text;
    text << side.rdbuf();
    meta = parse_metadata_json(text.str());
  }
  const int n = a.n > 0 ? a.n : meta ? meta->n : 0;
  const int k = a.k > 0 ? a.k : meta && meta->k ? *meta->k : 0;

  Plot plot;
  plot.title = a.title;
  if (a.revolve) {
    plot.x_label = "x";
    plot.y_label = "u";
    plot.equal_aspect = true;
    Series right{"profile u(|x|)", {}, false, 0, true};
    Series left{"", {}, false, 0, false};
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) left.points.push_back({-it->r, it->u});
    for (const auto& r : rows) right.points.push_back({r.r, r.u});
    plot.series = {left, right};
  } else {
    plot.x_label = "r";
    plot.y_label = "du/dr";
    Series profile{"profile du", {}, false, 0, true};
    double ymax = 0.0;
    for (const auto& r : rows) {
      profile.points.push_back({r.r, r.du});
      ymax = std::max(ymax, r.du);
    }
    plot.series.push_back(profile);
    const double r_end = rows.back().r;
    const double cap = 1.5 * ymax;
    int colour = 1;
    for (const auto& name : split(a.barriers, ',')) {
      if (n == 0) throw UsageError("--barriers needs n (from the metadata sidecar or --n)");
      const Barrier b = Barrier::make(parse_barrier(name), n, k);
      Series s{to_string(b.name()) + " (" + to_string(b.role()) + ")", {}, true, colour++, true};
      const double hi = std::min(r_end, b.domain().hi);
      constexpr int kPoints = 400;
      for (int i = 0; i <= kPoints; ++i) {
        double r = hi * i / kPoints;
        if (!b.in_domain(r)) r = std::nextafter(b.domain().hi, 0.0);
        const double v = b(r);
        if (v > cap) break;
        s.points.push_back({r, v});
      }
      plot.series.push_back(std::move(s));
    }
  }
  const fs::path out_path = c.resolve(a.out);
  write_file(out_path, render_svg(plot));
  out << "wrote " << out_path.string() << '\n';
  return kExitPass;
}

// ---------------------------------------------------------------------------

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

}  // namespace

std::vector<std::string> apply_config(const std::vector<std::string>& args, const std::string& json_text) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw ParseError("config: top level must be a JSON object");

  std::vector<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i] == "--outdir") {
      ++i;
      continue;
    }
    if (args[i].rfind("-", 0) == 0) continue;
    path.push_back(args[i]);
    if (path.size() == 2 || path[0] != "verify") break;
  }

  std::map<std::string, nlohmann::json> values;
  auto collect = [&](const nlohmann::json& obj) {
    for (const auto& [key, v] : obj.items())
      if (!v.is_object() && key != "config") values[key] = v;
  };
  collect(cfg);
  const nlohmann::json* level = &cfg;
  for (const auto& p : path) {
    if (!level->contains(p) || !(*level)[p].is_object()) break;
    level = &(*level)[p];
    collect(*level);
  }

  std::vector<std::string> out = args;
  for (const auto& [key, v] : values) {
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back(flag);
      continue;
    }
    if (v.is_null()) continue;
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_array()) {
      for (const auto& item : v) text += (text.empty() ? "" : ",") + (item.is_string() ? item.get<std::string>() : item.dump());
    } else {
      text = v.dump();
    }
    out.push_back(flag);
    out.push_back(text);
  }
  return out;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  for (std::size_t i = 0; i + 1 < raw_args.size(); ++i) {
    if (raw_args[i] != "--config") continue;
    std::ifstream in(raw_args[i + 1], std::ios::binary);
    if (!in) {
      err << "error: cannot open config " << raw_args[i + 1] << '\n';
      return kExitUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
      args = apply_config(raw_args, text.str());
    } catch (const ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    break;
  }

  CLI::App app{"Rotational translating solitons of concave curvature flows: profiles, barriers, verification"};
  app.name("soliton");
  app.require_subcommand(1);
  Common common;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file mirroring flag names; explicit flags take precedence");
  app.add_option("--outdir", common.outdir, "Directory for relative output paths")->capture_default_str();

  const std::vector<std::string> speeds{"sigma-k", "harmonic"};

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Integrate a rotational translator profile and write CSV + JSON metadata");
  s->add_option("--speed", solve.speed, "sigma-k or harmonic")->required()->check(CLI::IsMember(speeds));
  s->add_option("--n", solve.n, "Dimension");
  s->add_option("--k", solve.k, "Order of S_k (sigma-k only)");
  s->add_option("--rmax", solve.rmax, "End radius (default 3 for sigma-k, 1.5 * 8/(n^2+n+2) for harmonic)");
  s->add_option("--eps", solve.eps, "Startup radius")->capture_default_str();
  s->add_option("--rtol", solve.rtol, "Integrator relative tolerance")->capture_default_str();
  s->add_option("--blowup-threshold", solve.blowup_threshold, "Slope treated as blow-up")->capture_default_str();
  s->add_option("--equation", solve.equation, "Harmonic right-hand side: published or geometric")
      ->check(CLI::IsMember({"published", "geometric"}))
      ->capture_default_str();
  s->add_option("--out", solve.out, "Output CSV; metadata goes to the .json sidecar")->required();
  s->add_option("--sweep", solve.sweep, "Solve for a range of dimensions, e.g. n=3..6 (files get an _nN suffix)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Verification reports; exit 0 pass, 1 fail, 2 input error");
  v->require_subcommand(1);
  auto add_report = [&](CLI::App* cmd) { cmd->add_option("--out", verify.out, "JSON report path (default stdout)"); };
  auto* v_sol = v->add_subcommand("soliton", "Soliton residual along a profile");
  v_sol->add_option("--profile", verify.profile, "Profile CSV")->required();
  v_sol->add_option("--tol", verify.tol, "Residual tolerance")->capture_default_str();
  add_report(v_sol);
  auto* v_conv = v->add_subcommand("convexity", "Convexity estimate on hypothesis-satisfying samples");
  v_conv->add_option("--profile", verify.profile, "Profile CSV")->required();
  v_conv->add_option("--alpha", verify.alpha, "alpha or 'auto' (1.05 * sup (delta+1)H/gamma)")->capture_default_str();
  v_conv->add_option("--delta", verify.delta, "delta > 0")->capture_default_str();
  v_conv->add_option("--beta", verify.beta, "beta or 'auto' (0.9 * inf min pair sum / H)")->capture_default_str();
  add_report(v_conv);
  auto* v_bar = v->add_subcommand("barriers", "Barrier orderings along a profile");
  v_bar->add_option("--profile", verify.profile, "Profile CSV")->required();
  add_report(v_bar);
  auto* v_cyl = v->add_subcommand("cylinder", "Sign conditions and residual of the cylindrical translator");
  v_cyl->add_option("--zmin", verify.zmin, "First height")->capture_default_str();
  v_cyl->add_option("--zmax", verify.zmax, "Last height")->capture_default_str();
  v_cyl->add_option("--count", verify.count, "Number of heights")->capture_default_str();
  v_cyl->add_option("--a", verify.a, "Translation parameter a (2a < 1)")->capture_default_str();
  v_cyl->add_option("--tol", verify.cyl_tol, "Residual tolerance")->capture_default_str();
  add_report(v_cyl);

  PropsArgs props;
  auto* p = app.add_subcommand("props", "Sampled structural properties of a speed");
  p->add_option("--speed", props.speed, "sigma-k, harmonic, quotient or product")
      ->required()
      ->check(CLI::IsMember({"sigma-k", "harmonic", "quotient", "product"}));
  p->add_option("--n", props.n, "Dimension")->required();
  p->add_option("--k", props.k, "k for sigma-k and quotient")->capture_default_str();
  p->add_option("--l", props.l, "l for quotient")->capture_default_str();
  p->add_option("--factors", props.factors, "Product factors, e.g. sigma-k:2,harmonic");
  p->add_option("--weights", props.weights, "Product weights, e.g. 0.5,0.5");
  p->add_option("--samples", props.samples, "Samples")->capture_default_str();
  p->add_option("--seed", props.seed, "Seed")->capture_default_str();
  p->add_option("--out", props.out, "JSON report path (default stdout)");

  BarriersArgs barriers;
  auto* b = app.add_subcommand("barriers", "Tabulate barrier functions");
  b->add_option("--n", barriers.n, "Dimension")->required();
  b->add_option("--k", barriers.k, "k for v1..v3");
  b->add_option("--names", barriers.names, "Comma-separated names from v1,v2,v3,w1..w5")->required();
  b->add_option("--rmax", barriers.rmax, "Largest radius (default: the widest finite domain, else 2)");
  b->add_option("--count", barriers.count, "Number of radii")->capture_default_str();
  b->add_option("--out", barriers.out, "CSV path (default stdout)");

  PicardArgs picard;
  auto* pc = app.add_subcommand("picard", "Barrier-clamped Picard iteration for the harmonic profile");
  pc->add_option("--n", picard.n, "Dimension, 3..6")->capture_default_str();
  pc->add_option("--R", picard.R, "Right endpoint (default min(R1, R2))");
  pc->add_option("--grid", picard.grid, "Number of nodes m >= 64")->capture_default_str();
  pc->add_option("--tol", picard.tol, "Stop when the sup change drops below this")->capture_default_str();
  pc->add_option("--max-iter", picard.max_iter, "Iteration cap")->capture_default_str();
  pc->add_option("--relaxation", picard.relaxation, "Damping in (0,1] (default 2/(2+|g'(c)|))");
  pc->add_option("--out", picard.out, "Iteration log JSON (default picard_nN.json)");
  pc->add_option("--fixed-point", picard.fixed_point, "Fixed point CSV (default <log stem>_fixed_point.csv)");

  PlotArgs plot;
  auto* pl = app.add_subcommand("plot", "SVG figure from a profile CSV");
  pl->add_option("--in", plot.in, "Profile CSV")->required();
  pl->add_option("--barriers", plot.barriers, "Barriers to overlay, e.g. w3,w5");
  pl->add_flag("--revolve", plot.revolve, "Draw the silhouette u(|x|) of the rotational graph");
  pl->add_option("--n", plot.n, "Dimension (default: from the metadata sidecar)");
  pl->add_option("--k", plot.k, "k (default: from the metadata sidecar)");
  pl->add_option("--title", plot.title, "Figure title");
  pl->add_option("--out", plot.out, "SVG path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, common, out);
    if (v->parsed()) {
      for (auto* sub : {v_sol, v_conv, v_bar, v_cyl})
        if (sub->parsed()) return cmd_verify(sub->get_name(), verify, common, out);
    }
    if (p->parsed()) return cmd_props(props, common, out, err);
    if (b->parsed()) return cmd_barriers(barriers, common, out);
    if (pc->parsed()) return cmd_picard(picard, common, out);
    if (pl->parsed()) return cmd_plot(plot, common, out);
  } catch (const ContractionFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace soliton::tools
