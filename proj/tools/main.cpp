#include "cli_io.hpp"

#include "mdisc/ball_eigen.hpp"
#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"
#include "mdisc/nufft.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace mdisc;
using mdisc::cli::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string out = "-";
  unsigned long long seed = 1;
  int threads = 1;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open output file " + path);
  f << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("precondition violated: " + what);
}

// ---- coeffs -----------------------------------------------------------------

struct CoeffsArgs {
  std::string manifold = "sphere";
  int d = 3;
  double p = 1.0;
  int M = 8;
  double s = 1.0;
  bool kernel = false;
};

void run_coeffs(const CoeffsArgs& a, const Common& c) {
  require(a.M >= 0, "--max >= 0");
  const Manifold mf = cli::manifold_from_name(a.manifold, a.d, a.s);
  SpectralTable t{mf, a.p, a.M, {}};
  switch (mf.kind) {
  case Manifold::sphere:
    require(a.d >= 2, "d >= 2");
    if (a.kernel) {
      t = kernel_table(mf, a.M);
      break;
    }
    require(a.p > -(a.d - 1), "p > -(d-1) for the sphere");
    for (int m = 0; m <= a.M; ++m) t.entries.push_back({{m}, sphere_coeff(a.d, a.p, m)});
    break;
  case Manifold::so3:
    if (a.kernel) {
      t = kernel_table(mf, a.M);
      break;
    }
    require(a.p > -3, "p > -3 for so3");
    for (int m = 0; m <= a.M; ++m) t.entries.push_back({{m}, so3_coeff(a.p, m)});
    break;
  case Manifold::g24:
    if (a.kernel) {
      t = kernel_table(mf, a.M);
      break;
    }
    require(a.p > -4, "p > -4 for g24");
    for (const auto& lam : g24_partitions(a.M)) t.entries.push_back({{lam.l1, lam.l2}, g24_coeff(a.p, lam)});
    break;
  default:
    require(a.s > 0, "s > 0");
    t = kernel_table(mf, a.M);
    break;
  }
  write_json(c.out, cli::table_to_json(t));
}

// ---- kernel -----------------------------------------------------------------

struct KernelArgs {
  std::string kind = "sphere_dist";
  int d = 3;
  double s = 1.0, r = 1.0;
  std::vector<double> x, y;
};

void run_kernel(const KernelArgs& a, const Common& c) {
  KernelId id = KernelId::sphere_dist(a.d);
  if (a.kind == "brownian") id = KernelId::brownian(a.s);
  else if (a.kind == "interval") id = KernelId::interval(a.s);
  else if (a.kind == "askey") id = KernelId::askey(a.d);
  else if (a.kind == "sphere_dist") id = KernelId::sphere_dist(a.d);
  else if (a.kind == "ball_dist") id = KernelId::ball_dist(a.d, a.s);
  else if (a.kind == "ball_lens") id = KernelId::ball_lens(a.r);
  else throw DomainError("unknown kernel '" + a.kind + "'");
  require(int(a.x.size()) == id.point_dim() && int(a.y.size()) == id.point_dim(),
          "--x and --y need " + std::to_string(id.point_dim()) + " coordinates");
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.x.data(), a.x.size());
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(a.y.data(), a.y.size());
  write_json(c.out, {{"kernel", id.name()}, {"x", a.x}, {"y", a.y}, {"value", eval_kernel(id, x, y)}});
}

// ---- ball-eigs --------------------------------------------------------------

struct BallArgs {
  int d = 3, p = 1, m = 0, count = 5;
};

void run_ball(const BallArgs& a, const Common& c) {
  require(a.count >= 1, "--count >= 1");
  const BallProblem prob(a.d, a.p, a.m);
  json pairs = json::array();
  for (const auto& e : find_eigs(prob, a.count)) {
    pairs.push_back({{"omega", e.omega},
                     {"lambda", e.lambda},
                     {"branch", e.branch},
                     {"residual", eigen_residual(e, prob)},
                     {"det_residual", e.det_residual}});
  }
  write_json(c.out, {{"d", a.d}, {"p", a.p}, {"m", a.m}, {"eigenpairs", pairs}});
}

// ---- nufft-bench ------------------------------------------------------------

struct BenchArgs {
  int M = 8;
  std::vector<int> n{1000, 10000};
  std::vector<double> eps{1e-4, 1e-8};
};

void run_bench(const BenchArgs& a, const Common& c) {
  require(a.M >= 0, "--M >= 0");
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  std::ostringstream os;
  os.precision(10);
  os << "mode,n,M,epsilon,seconds,max_err\n";
  auto now = [] { return std::chrono::steady_clock::now(); };
  auto secs = [](auto t0, auto t1) { return std::chrono::duration<double>(t1 - t0).count(); };
  for (int n : a.n) {
    require(n >= 1, "--n entries >= 1");
    std::vector<SpherePair> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(haar_sample(rng));
    std::vector<cplx> f(coeff_count(NuManifold::s2xs2, a.M));
    double norm1 = 0.0;
    for (auto& z : f) {
      z = cplx(g(rng), g(rng));
      norm1 += std::abs(z);
    }
    auto direct = NuPlan::s2xs2(a.M, nodes, NuMode::direct);
    direct.set_threads(c.threads);
    auto t0 = now();
    const auto ref = direct.forward(f);
    os << "direct," << n << ',' << a.M << ",0," << secs(t0, now()) << ",0\n";
    for (double eps : a.eps) {
      auto t1 = now();
      auto fast = NuPlan::s2xs2(a.M, nodes, NuMode::fast, eps);
      fast.set_threads(c.threads);
      const auto val = fast.forward(f);
      const double dt = secs(t1, now());
      double err = 0.0;
      for (std::size_t i = 0; i < val.size(); ++i) err = std::max(err, std::abs(val[i] - ref[i]));
      os << "fast," << n << ',' << a.M << ',' << eps << ',' << dt << ',' << err / norm1 << '\n';
    }
  }
  write_text(c.out, os.str());
}

// ---- minimize ---------------------------------------------------------------

struct MinArgs {
  std::string config;
  std::string manifold, target;
  int M = -1, n = -1, max_iters = -1, restarts = -1;
  std::string points_out, trace_out;
};

void run_minimize(const MinArgs& a, const Common& c, bool seed_given) {
  json j = json::object();
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw DomainError("cannot read config file " + a.config);
    j = json::parse(f);
  }
  if (!a.manifold.empty()) j["manifold"] = a.manifold;
  if (!a.target.empty()) j["target"] = {{"type", a.target}};
  if (a.M >= 0) j["M"] = a.M;
  if (a.n >= 0) j["n"] = a.n;
  if (a.max_iters >= 0) j["max_iters"] = a.max_iters;
  if (a.restarts >= 0) j["restarts"] = a.restarts;
  if (seed_given || !j.contains("seed")) j["seed"] = c.seed;
  const auto cfg = cli::parse_run_config(j);
  const auto table = kernel_table(cfg.manifold, cfg.M);
  const auto target = cli::build_target(cfg);
  const auto res = minimize(table, target, cfg.n, cfg.opts);

  json summary = {{"manifold", cli::points_to_json(res.points)["manifold"]},
                  {"n", cfg.n},
                  {"M", cfg.M},
                  {"seed", cfg.opts.seed},
                  {"objective", res.objective},
                  {"converged", res.converged},
                  {"iterations", int(res.trace.size()) - 1},
                  {"best_restart", res.best_restart}};
  if (cfg.manifold.kind == Manifold::sphere) {
    const int up = count_upper(res.points);
    summary["split"] = {{"upper", up}, {"lower", cfg.n - up}};
  } else if (cfg.manifold.kind == Manifold::so3) {
    const int t = count_near_torus(res.points);
    summary["split"] = {{"torus", t}, {"circle", cfg.n - t}};
  } else {
    summary["kernel_discrepancy"] = kernel_discrepancy_uniform(res.points);
  }
  summary["points"] = cli::points_to_json(res.points)["points"];
  if (!a.points_out.empty()) write_json(a.points_out, cli::points_to_json(res.points));
  if (!a.trace_out.empty()) write_text(a.trace_out, cli::trace_csv(res.trace));
  write_json(c.out, summary);
}

// ---- convergence ------------------------------------------------------------

struct StudyArgs {
  std::vector<int> n{16, 81, 256};
  int restarts = 3, max_iters = 2000;
};

void run_study(const StudyArgs& a, const Common& c) {
  for (int n : a.n) require(n >= 1, "--n entries >= 1");
  MinimizeOptions o;
  o.seed = c.seed;
  o.restarts = a.restarts;
  o.max_iters = a.max_iters;
  const auto rows = convergence_study(a.n, o);
  write_text(c.out, cli::study_csv(rows));
  if (rows.size() >= 2) std::cerr << "slope " << loglog_slope(rows) << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral discrepancy kernels, nonuniform transforms and point-set minimization"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", common.out, "Output path, '-' for stdout");
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--threads", common.threads, "Worker threads (1 for bit-determinism)")->check(CLI::PositiveNumber);
  };

  CoeffsArgs ca;
  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficient table as JSON");
  coeffs->add_option("--manifold", ca.manifold, "sphere, so3, g24, interval or brownian");
  coeffs->add_option("--d", ca.d, "Sphere S^{d-1} dimension parameter");
  coeffs->add_option("--p", ca.p, "Exponent of 2^{-p/2} |x - y|^p");
  coeffs->add_option("--max", ca.M, "Largest degree (or |lambda|, or eigenvalue count - 1)");
  coeffs->add_option("--s", ca.s, "Interval parameter");
  coeffs->add_flag("--kernel", ca.kernel, "Coefficients of the distance discrepancy kernel instead");
  add_common(coeffs);

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Evaluate a discrepancy kernel");
  kernel->add_option("--kind", ka.kind, "brownian, interval, askey, sphere_dist, ball_dist, ball_lens");
  kernel->add_option("--d", ka.d, "Ambient dimension");
  kernel->add_option("--s", ka.s, "Radius / interval parameter");
  kernel->add_option("--r", ka.r, "Ball diameter of the lens kernel");
  kernel->add_option("--x", ka.x, "First point, comma separated")->delimiter(',')->required();
  kernel->add_option("--y", ka.y, "Second point, comma separated")->delimiter(',')->required();
  add_common(kernel);

  BallArgs ba;
  auto* ball = app.add_subcommand("ball-eigs", "Radial eigenpairs of |x - y|^p on the unit ball");
  ball->add_option("--d", ba.d, "Odd dimension >= 3");
  ball->add_option("--p", ba.p, "Odd exponent > 1 - d");
  ball->add_option("--m", ba.m, "Angular degree");
  ball->add_option("--count", ba.count, "Number of eigenpairs");
  add_common(ball);

  BenchArgs na;
  auto* bench = app.add_subcommand("nufft-bench", "Fast vs direct S^2 x S^2 transforms, CSV");
  bench->add_option("--M", na.M, "Degree");
  bench->add_option("--n", na.n, "Node counts, comma separated")->delimiter(',');
  bench->add_option("--eps", na.eps, "Target accuracies, comma separated")->delimiter(',');
  add_common(bench);

  MinArgs ma;
  auto* mini = app.add_subcommand("minimize", "Minimize the discrepancy of an n-point set");
  mini->add_option("--config", ma.config, "Run configuration JSON");
  mini->add_option("--manifold", ma.manifold, "sphere, so3 or g24");
  mini->add_option("--target", ma.target, "uniform, two_circles or torus_circle");
  mini->add_option("--M", ma.M, "Truncation degree");
  mini->add_option("--n", ma.n, "Number of points");
  mini->add_option("--max-iters", ma.max_iters, "Iteration cap per restart");
  mini->add_option("--restarts", ma.restarts, "Number of restarts");
  mini->add_option("--points", ma.points_out, "Write the points JSON here");
  mini->add_option("--trace", ma.trace_out, "Write the objective trace CSV here");
  add_common(mini);

  StudyArgs sa;
  auto* study = app.add_subcommand("convergence", "Discrepancy decay on G(2,4) with M = n^{1/4}, CSV");
  study->add_option("--n", sa.n, "Point counts, comma separated")->delimiter(',');
  study->add_option("--restarts", sa.restarts, "Restarts per run");
  study->add_option("--max-iters", sa.max_iters, "Iteration cap per restart");
  add_common(study);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*coeffs) run_coeffs(ca, common);
    else if (*kernel) run_kernel(ka, common);
    else if (*ball) run_ball(ba, common);
    else if (*bench) run_bench(na, common);
    else if (*mini) run_minimize(ma, common, mini->count("--seed") > 0);
    else if (*study) run_study(sa, common);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::logic_error& e) {
    // DomainError, IndexError, PoleError
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
