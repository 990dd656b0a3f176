#include "cli_io.hpp"

#include "mdisc/errors.hpp"

#include <cstdio>
#include <sstream>

namespace mdisc::cli {

Manifold manifold_from_name(const std::string& name, int d, double s) {
  if (name == "sphere") return Manifold::sphere_of(d);
  if (name == "so3") return Manifold::so3_group();
  if (name == "g24") return Manifold::g24_space();
  if (name == "interval") return Manifold::interval_of(s);
  if (name == "brownian") return Manifold::brownian_of(s);
  throw DomainError("unknown manifold '" + name + "' (expected sphere, so3, g24, interval or brownian)");
}

namespace {

std::string short_name(const Manifold& mf) {
  switch (mf.kind) {
  case Manifold::sphere: return "sphere";
  case Manifold::so3: return "so3";
  case Manifold::g24: return "g24";
  case Manifold::interval: return "interval";
  default: return "brownian";
  }
}

template <class T> T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

Eigen::Vector3d vec3(const json& j) {
  auto v = j.get<std::vector<double>>();
  if (v.size() != 3) throw DomainError("expected a 3-vector");
  return {v[0], v[1], v[2]};
}

} // namespace

json table_to_json(const SpectralTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back({{"index", e.index}, {"value", e.value}});
  json out = {{"manifold", short_name(t.manifold)}, {"p", t.p}, {"M", t.M}, {"entries", entries}};
  if (t.manifold.kind == Manifold::sphere) out["d"] = t.manifold.d;
  if (t.manifold.kind == Manifold::interval || t.manifold.kind == Manifold::brownian) out["s"] = t.manifold.s;
  return out;
}

json points_to_json(const PointSet& ps) {
  json pts = json::array();
  for (int j = 0; j < ps.size(); ++j) {
    std::vector<double> v(ps.coords.col(j).data(), ps.coords.col(j).data() + ps.coords.rows());
    pts.push_back(v);
  }
  return {{"manifold", short_name(ps.manifold)}, {"points", pts}};
}

PointSet points_from_json(const json& j) {
  const Manifold mf = manifold_from_name(j.at("manifold").get<std::string>());
  const auto& pts = j.at("points");
  PointSet ps{mf, Eigen::MatrixXd(point_dim(mf), pts.size())};
  for (std::size_t c = 0; c < pts.size(); ++c) {
    auto v = pts[c].get<std::vector<double>>();
    if (int(v.size()) != point_dim(mf)) throw DomainError("points: wrong coordinate count");
    for (std::size_t r = 0; r < v.size(); ++r) ps.coords(r, c) = v[r];
  }
  ps.validate();
  return ps;
}

RunConfig parse_run_config(const json& j) {
  RunConfig c;
  c.manifold = manifold_from_name(get_or<std::string>(j, "manifold", "sphere"), get_or(j, "d", 3));
  if (c.manifold.kind == Manifold::interval || c.manifold.kind == Manifold::brownian)
    throw DomainError("minimize: manifold must be sphere, so3 or g24");
  if (c.manifold.kind == Manifold::sphere && c.manifold.d != 3) throw DomainError("minimize: sphere runs require d = 3");
  c.M = get_or(j, "M", c.M);
  c.n = get_or(j, "n", c.n);
  c.p = get_or(j, "p", c.p);
  if (j.contains("target")) c.target = j.at("target");
  c.opts.seed = get_or<unsigned long long>(j, "seed", c.opts.seed);
  c.opts.max_iters = get_or(j, "max_iters", c.opts.max_iters);
  c.opts.tol = get_or(j, "tol", c.opts.tol);
  c.opts.restarts = get_or(j, "restarts", c.opts.restarts);
  c.opts.memory = get_or(j, "memory", c.opts.memory);
  if (c.M < 0) throw DomainError("precondition violated: M >= 0");
  if (c.n < 1) throw DomainError("precondition violated: n >= 1");
  if (c.p != 1.0) throw DomainError("precondition violated: p = 1 (distance kernel tables)");
  if (c.opts.max_iters < 0) throw DomainError("precondition violated: max_iters >= 0");
  if (!(c.opts.tol >= 0)) throw DomainError("precondition violated: tol >= 0");
  if (c.opts.restarts < 1) throw DomainError("precondition violated: restarts >= 1");
  if (c.opts.memory < 0) throw DomainError("precondition violated: memory >= 0");
  return c;
}

TargetMeasure build_target(const RunConfig& cfg) {
  const std::string type = get_or<std::string>(cfg.target, "type", "uniform");
  if (type == "uniform") return target_uniform(cfg.manifold, cfg.M);
  if (type == "two_circles") {
    if (cfg.manifold.kind != Manifold::sphere) throw DomainError("target two_circles requires the sphere");
    return two_circle_target(cfg.M);
  }
  if (type == "torus_circle") {
    if (cfg.manifold.kind != Manifold::so3) throw DomainError("target torus_circle requires so3");
    return torus_circle_target(cfg.M);
  }
  if (type == "circles") {
    if (cfg.manifold.kind != Manifold::sphere) throw DomainError("target circles requires the sphere");
    auto t = target_empty(cfg.manifold, cfg.M);
    for (const auto& c : cfg.target.at("circles"))
      add_circle_s2(t, vec3(c.at("axis")), c.at("polar").get<double>(), c.at("weight").get<double>());
    check_probability(t);
    return t;
  }
  if (type == "discrete") {
    json pj = {{"manifold", short_name(cfg.manifold)}, {"points", cfg.target.at("points")}};
    return target_discrete(points_from_json(pj), cfg.target.at("weights").get<std::vector<double>>(), cfg.M);
  }
  throw DomainError("unknown target type '" + type + "' (uniform, two_circles, torus_circle, circles, discrete)");
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "iter,objective,grad_norm\n";
  for (const auto& r : trace) os << r.iter << ',' << r.objective << ',' << r.grad_norm << '\n';
  return os.str();
}

std::string study_csv(const std::vector<StudyRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "n,M,discrepancy\n";
  for (const auto& r : rows) os << r.n << ',' << r.M << ',' << r.discrepancy << '\n';
  return os.str();
}

} // namespace mdisc::cli
