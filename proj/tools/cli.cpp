#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "heatlevel/acceptance.hpp"
#include "heatlevel/counterexample.hpp"
#include "heatlevel/errors.hpp"
#include "heatlevel/profiles.hpp"
#include "heatlevel/special_functions.hpp"
#include "heatlevel/symmetry_analysis.hpp"
#include "table.hpp"

namespace heatlevel::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string target;  // scenario or shape
  double a = 1.0;
  std::optional<double> R;
  double b = 2.0;
  std::optional<std::string> t;
  int N = 3;
  std::string k = "0..6";
  std::string L = "0.5,1,2";
  std::optional<double> tol;
  std::uint64_t seed = 0x5eedULL;
  std::string format = "csv";
  std::string out;
  double margin = 0.0;
  double eps = 1e-2;
  std::string axes;
  double noise = 0.0;
  int points = 200;
  bool list = false;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

double tol_or(const RunConfig& c, double fallback) {
  const double v = c.tol.value_or(fallback);
  require(v > 0.0, "--tol must be positive");
  return v;
}

void emit(const Table& table, const RunConfig& c, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (c.format == "json") write_json(table, os);
    else write_csv(table, os);
  };
  if (c.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw UsageError("cannot open output file " + c.out);
  write(file);
}

int cmd_counterexample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(c.a > 0.0, "--a must be positive");
  require(c.margin >= 0.0, "--margin must be non-negative");
  const double tol = tol_or(c, 1e-12);
  const auto times = parse_time_grid(c.t.value_or("10,100,1000,10000"));
  for (double t : times) require(t > 0.8 * c.a * c.a, "every t must exceed 4 a^2 / 5");

  const Counterexample u(c.a, c.margin);
  Table table{{"t", "r2", "r3", "r4", "r", "lower", "upper", "f_residual", "sphere_spread", "nonradial_gap",
               "heat_residual", "roots_found", "pass"},
              {}};
  bool structural = false;
  bool all_pass = true;
  for (double t : times) {
    const std::vector<double> one{t};
    try {
      const auto rec = counterexample_sweep(u, one, tol).front();
      if (rec.roots_found > 1)
        err << "note: f has " << rec.roots_found << " sign changes in (r3, r4) at t = " << t
            << "; the largest root is reported\n";
      all_pass = all_pass && rec.passes();
      table.add({rec.t, rec.r2, rec.r3, rec.r4, rec.r, rec.lower, rec.upper, rec.f_residual, rec.sphere_spread,
                 rec.nonradial_gap, rec.heat_residual, static_cast<long long>(rec.roots_found), rec.passes()});
    } catch (const StructureError& e) {
      structural = true;
      err << "structure error: " << e.what() << "\n  " << e.trace() << '\n';
      table.add({t, {}, {}, {}, {}, std::sqrt(5.0 * t) - c.a, c.a + std::sqrt(12.0 * t), {}, {}, {}, {},
                 0LL, false});
    }
  }
  emit(table, c, out);
  if (structural) return kStructural;
  return all_pass ? kPass : kFail;
}

int cmd_funk_hecke(const RunConfig& c, std::ostream& out, std::ostream&) {
  require(c.N == 2 || c.N == 3, "--N must be 2 or 3");
  const double tol = tol_or(c, 1e-8);
  const auto ks = parse_degrees(c.k);
  const auto Ls = parse_list(c.L);
  for (int k : ks) require(c.N == 2 || k <= 6, "for N = 3 the harmonic catalog covers k <= 6");
  for (double L : Ls) require(L != 0.0, "--L must be non-zero");

  Table table{{"k", "N", "L", "lambda_closed", "lambda_direct", "rel_diff", "eigen_residual", "pass"}, {}};
  bool all_pass = true;
  for (int k : ks)
    for (double L : Ls) {
      const auto rec = funk_hecke_record(k, c.N, L);
      const double rel = std::abs(rec.lambda_direct - rec.lambda_closed) / std::abs(rec.lambda_closed);
      const bool pass = rel <= 1e-10 && rec.eigen_residual <= tol;
      all_pass = all_pass && pass;
      table.add({static_cast<long long>(k), static_cast<long long>(c.N), L, rec.lambda_closed, rec.lambda_direct,
                 rel, rec.eigen_residual, pass});
    }
  emit(table, c, out);
  return all_pass ? kPass : kFail;
}

Table symmetry_table() {
  return {{"kind", "t", "rotation", "radius", "u_plus", "u_minus", "difference", "moment", "moment_error",
           "laplace_moment", "mean", "spread", "scale", "max_direct", "max_moment", "eps", "ratio", "detected",
           "pass"},
          {}};
}

int symmetry_1d(const RunConfig& c, bool symmetric_expected, std::ostream& out, std::ostream& err) {
  require(c.a > 0.0 && c.b > 0.0, "--a and --b must be positive");
  require(c.a < c.b, "the support [-a, a] must lie inside (-b, b)");
  const double tol = tol_or(c, 1e-12);
  const auto times = parse_time_grid(c.t.value_or("2:1024:10"));
  const auto g = symmetric_expected ? profiles::even_bump_1d(c.a) : profiles::shifted_bump_1d(0.5 * c.a, 0.5 * c.a);
  const auto v0 = profiles::odd_part(g);

  Table table = symmetry_table();
  bool detected = false;
  bool constant = true;
  for (double t : times) {
    const double up = solve_1d(g, t * c.b, t);
    const double um = solve_1d(g, -t * c.b, t);
    const double diff = std::abs(up - um);
    const auto m = moment_1d(v0, c.b, t);
    const auto lm = laplace_moment_1d(v0, c.b, 1.0 / (4.0 * t));
    const bool fires = m.value != 0.0 && std::abs(m.value) > 100.0 * m.error;
    const bool pass = diff <= tol * g.sup_bound;
    detected = detected || fires;
    constant = constant && pass;
    table.add({std::string("moment"), t, {}, {}, up, um, diff, m.value, m.error, lm.value, {}, {}, g.sup_bound, {},
               {}, {}, {}, fires, pass});
  }
  emit(table, c, out);
  const bool symmetric_verdict = !detected && constant;
  err << "verdict: " << (symmetric_verdict ? "symmetric" : "asymmetric") << " (expected "
      << (symmetric_expected ? "symmetric" : "asymmetric") << ")\n";
  if (symmetric_expected) return symmetric_verdict ? kPass : kFail;
  return detected ? kPass : kFail;
}

double max_detection(const InitialDataND& g, std::span<const Matrix> rotations, std::span<const double> radii,
                     Table* table, double eps) {
  double worst = 0.0;
  for (const auto& d : rotation_detector(g, rotations, radii)) {
    worst = std::max(worst, d.max_moment);
    if (table)
      table->add({std::string("harmonic"), {}, static_cast<long long>(d.rotation), d.radius, {}, {}, {}, {}, {}, {},
                  {}, {}, g.sup_bound, d.max_direct, d.max_moment, eps, {}, d.max_moment >= 1e-4 * g.sup_bound,
                  {}});
  }
  return worst;
}

int symmetry_3d(const RunConfig& c, bool symmetric_expected, std::ostream& out, std::ostream& err) {
  const double R = c.R.value_or(1.0);
  require(R > 0.0, "--R must be positive");
  require(symmetric_expected || c.eps != 0.0, "--eps must be non-zero");
  const double tol = tol_or(c, 1e-11);
  const auto times = TimeSequence::from_list(parse_time_grid(c.t.value_or("0.5:8:5")));
  const auto g = symmetric_expected ? profiles::radial_bump_nd(3, R) : profiles::perturbed_bump_nd(3, R, c.eps, 0.4 * R, 0.4 * R);
  const HeatSolverND solver(g);
  const auto boundary = sphere_boundary(3, R, c.points);
  const auto reports = check_condition_C([&](std::span<const double> x, double t) { return solver.evaluate(x, t); },
                                         boundary, times, tol, g.sup_bound);

  Table table = symmetry_table();
  bool constant = true;
  for (const auto& r : reports) {
    constant = constant && r.pass;
    table.add({std::string("constancy"), r.t, {}, R, {}, {}, {}, {}, {}, {}, r.mean, r.spread, r.scale, {}, {},
               symmetric_expected ? Cell{} : Cell{c.eps}, {}, !r.pass, r.pass});
  }
  const auto rotations = rotation_catalog(3, c.seed);
  const std::vector<double> radii{0.3 * R, 0.5 * R, 0.7 * R};
  const double worst = max_detection(g, rotations, radii, &table, symmetric_expected ? 0.0 : c.eps);
  bool verdict_ok;
  if (symmetric_expected) {
    verdict_ok = constant && worst <= 1e-10 * g.sup_bound;
    err << "verdict: " << (verdict_ok ? "symmetric" : "asymmetric") << " (expected symmetric)\n";
  } else {
    const double eps2 = 0.1 * c.eps;
    const auto g2 = profiles::perturbed_bump_nd(3, R, eps2, 0.4 * R, 0.4 * R);
    const double worst2 = max_detection(g2, rotations, radii, nullptr, eps2);
    const double ratio = worst / worst2;
    const bool linear = std::abs(ratio / 10.0 - 1.0) <= 0.1;
    const bool fires = worst >= 1e-4 * g.sup_bound;
    table.add({std::string("linearity"), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, g.sup_bound, {}, worst2, eps2,
               ratio, fires, linear});
    verdict_ok = fires && linear;
    err << "verdict: " << (fires ? "asymmetric" : "symmetric") << " (expected asymmetric); coefficient ratio for eps/"
        << "(eps/10) = " << ratio << '\n';
  }
  emit(table, c, out);
  return verdict_ok ? kPass : kFail;
}

int cmd_symmetry(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.target == "radial-1d") return symmetry_1d(c, true, out, err);
  if (c.target == "asymmetric-1d") return symmetry_1d(c, false, out, err);
  if (c.target == "radial-3d") return symmetry_3d(c, true, out, err);
  if (c.target == "perturbed-3d") return symmetry_3d(c, false, out, err);
  throw UsageError("unknown scenario '" + c.target + "' (radial-1d, asymmetric-1d, radial-3d, perturbed-3d)");
}

int cmd_geometry(const RunConfig& c, std::ostream& out, std::ostream&) {
  require(c.points >= 3, "--points must be at least 3");
  require(c.noise >= 0.0, "--noise must be non-negative");
  const double tol = tol_or(c, 1e-6);
  std::vector<BoundarySample> boundary;
  bool sphere_expected;
  if (c.target == "circle" || c.target == "sphere") {
    const double R = c.R.value_or(c.target == "circle" ? 2.0 : 1.5);
    require(R > 0.0, "--R must be positive");
    boundary = sphere_boundary(c.target == "circle" ? 2 : 3, R, c.points);
    sphere_expected = true;
  } else if (c.target == "ellipse" || c.target == "ellipsoid") {
    const bool plane = c.target == "ellipse";
    auto axes = parse_list(c.axes.empty() ? (plane ? "2,1" : "2,1.5,1") : c.axes);
    require(axes.size() == (plane ? 2u : 3u), plane ? "--axes needs two semi-axes" : "--axes needs three semi-axes");
    for (double v : axes) require(v > 0.0, "semi-axes must be positive");
    boundary = plane ? ellipse_boundary(axes[0], axes[1], c.points)
                     : ellipsoid_boundary(axes[0], axes[1], axes[2], c.points);
    sphere_expected = std::adjacent_find(axes.begin(), axes.end(), std::not_equal_to<>()) == axes.end();
  } else {
    throw UsageError("unknown shape '" + c.target + "' (circle, ellipse, sphere, ellipsoid)");
  }
  if (c.noise > 0.0) boundary = perturb_normals(boundary, c.noise, c.seed);

  const auto rep = normal_alignment_test(boundary, tol);
  double rmax = 0.0;
  for (const auto& s : boundary) rmax = std::max(rmax, norm(s.point));
  // Alignment of p with the normal everywhere forces |p| to be constant.
  const bool consistent = !rep.aligned || rep.radius_spread <= tol * rmax;
  const bool pass = rep.aligned == sphere_expected && consistent;
  Table table{{"shape", "points", "noise", "max_misalignment", "radius_spread", "aligned", "sphere_expected", "pass"},
              {}};
  table.add({c.target, static_cast<long long>(boundary.size()), c.noise, rep.max_misalignment, rep.radius_spread,
             rep.aligned, sphere_expected, pass});
  emit(table, c, out);
  return pass ? kPass : kFail;
}

int cmd_verify_all(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.list) {
    Table table{{"id", "name", "runtime_limit"}, {}};
    for (const auto& info : acceptance::catalog())
      table.add({static_cast<long long>(info.id), info.name, info.runtime_limit});
    emit(table, c, out);
    return kPass;
  }
  acceptance::Options opt;
  opt.tol_scale = tol_or(c, 1.0);
  opt.seed = c.seed;
  Table table{{"id", "name", "pass", "seconds", "runtime_limit", "detail"}, {}};
  bool all_pass = true;
  for (const auto& info : acceptance::catalog()) {
    const auto r = acceptance::run(info.id, opt);
    err << acceptance::format_line(r) << '\n';
    all_pass = all_pass && r.pass;
    table.add({static_cast<long long>(info.id), info.name, r.pass, r.seconds, info.runtime_limit, r.detail});
  }
  emit(table, c, out);
  return all_pass ? kPass : kFail;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol", c.tol, "Tolerance (meaning depends on the command)");
  sub->add_option("--seed", c.seed, "Seed for random rotations and perturbations");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Write the table to this file instead of stdout");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw InputError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::vector<double> parse_time_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ':', ',');
    const auto parts = parse_list(s);
    if (parts.size() != 3) throw InputError("time grid 'min:max:steps' needs three fields");
    const double lo = parts[0];
    const double hi = parts[1];
    const double steps = parts[2];
    if (steps != std::floor(steps) || steps < 2) throw InputError("time grid steps must be an integer >= 2");
    if (!(lo > 0.0) || !(hi > lo)) throw InputError("time grid needs 0 < min < max");
    const int n = static_cast<int>(steps);
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    out.back() = hi;
  } else {
    out = parse_list(text);
  }
  return TimeSequence::from_list(out).values;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  auto to_int = [](const std::string& s) {
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw InputError("cannot parse degree '" + s + "'");
    }
    if (used != s.size() || v < 0) throw InputError("degrees must be non-negative integers");
    return v;
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw InputError("degree range must be increasing");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw InputError("empty degree list");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Level sets of heat flows: counterexample sweeps, symmetry detectors and checks"};
  app.require_subcommand(1);

  auto* cx = app.add_subcommand("counterexample", "Level-sphere records of the non-radial 3-D solution");
  cx->add_option("--a", c.a, "Half-width of the 1-D mollifier support");
  cx->add_option("--t", c.t, "Times: comma list or min:max:steps (geometric)");
  cx->add_option("--margin", c.margin, "Radial bump margin beyond a (0 selects a)");
  add_common(cx, c);

  auto* fh = app.add_subcommand("funk-hecke", "Eigenvalues of the exponential zonal operator");
  fh->add_option("--N", c.N, "Dimension (2 or 3)");
  fh->add_option("--k", c.k, "Degrees: 0..6, 2 or 0,2,4");
  fh->add_option("--L", c.L, "Comma list of non-zero L");
  add_common(fh, c);

  auto* sy = app.add_subcommand("symmetry", "Symmetry scenarios");
  sy->add_option("scenario", c.target, "radial-1d, asymmetric-1d, radial-3d or perturbed-3d")->required();
  sy->add_option("--a", c.a, "Support half-width of the 1-D data");
  sy->add_option("--b", c.b, "Moment parameter b (1-D)");
  sy->add_option("--R", c.R, "Support radius and boundary radius (3-D)");
  sy->add_option("--t", c.t, "Times: comma list or min:max:steps (geometric)");
  sy->add_option("--eps", c.eps, "Size of the non-radial perturbation (perturbed-3d)");
  sy->add_option("--points", c.points, "Boundary sample count");
  add_common(sy, c);

  auto* ge = app.add_subcommand("geometry", "Sphericity test from normal alignment");
  ge->add_option("shape", c.target, "circle, ellipse, sphere or ellipsoid")->required();
  ge->add_option("--R", c.R, "Radius (circle, sphere)");
  ge->add_option("--axes", c.axes, "Semi-axes, comma separated (ellipse, ellipsoid)");
  ge->add_option("--noise", c.noise, "Tilt every normal by this much");
  ge->add_option("--points", c.points, "Boundary sample count");
  add_common(ge, c);

  auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
  va->add_flag("--list", c.list, "List the criteria without running them");
  add_common(va, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (cx->parsed()) return cmd_counterexample(c, out, err);
    if (fh->parsed()) return cmd_funk_hecke(c, out, err);
    if (sy->parsed()) return cmd_symmetry(c, out, err);
    if (ge->parsed()) return cmd_geometry(c, out, err);
    return cmd_verify_all(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // InputError and UnsupportedDimension: the configuration asked for something invalid.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << "\n  " << e.trace() << '\n';
    return kStructural;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kStructural;
  }
}

}  // namespace heatlevel::cli
