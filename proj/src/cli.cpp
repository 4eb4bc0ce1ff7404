#include "sjk/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sjk/error.hpp"
#include "sjk/fuzz.hpp"
#include "sjk/groups.hpp"
#include "sjk/json_io.hpp"
#include "sjk/kernels.hpp"
#include "sjk/laplacian.hpp"
#include "sjk/metric.hpp"

namespace sjk::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json error_json(const std::string& kind, const std::string& detail) {
  return {{"error", {{"kind", kind}, {"detail", detail}}}};
}

json read_json_file(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    src = &in;
  }
  try {
    return json::parse(*src);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

JacobiBallPoint load_ball_point(const std::string& arg, int n) {
  if (arg == "origin") return JacobiBallPoint::origin(n);
  JacobiBallPoint pt = io::jacobi_ball_from(read_json_file(arg));
  if (pt.n() != n) throw Error(ErrorKind::DimensionMismatch, "point has n = " + std::to_string(pt.n()) + ", expected " + std::to_string(n));
  validate_ball_point(pt.W);
  return pt;
}

struct Common {
  int n = 1;
  double k = 2.0;
  double mu = 1.0;
  std::string format = "json";
};

void add_params(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "dimension")->check(CLI::PositiveNumber);
  app->add_option("--k", c.k, "weight k > 0");
  app->add_option("--mu", c.mu, "weight mu > 0");
}

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json | pretty")->check(CLI::IsMember({"json", "pretty"}));
}

// Negative zeros print as "-0.0"; they carry no information in a report.
void clear_negative_zeros(json& j) {
  if (j.is_number_float()) {
    if (j.get<double>() == 0.0) j = 0.0;
  } else if (j.is_structured()) {
    for (auto& v : j) clear_negative_zeros(v);
  }
}

void emit(std::ostream& out, json j, const Common& c) {
  clear_negative_zeros(j);
  out << (c.format == "pretty" ? j.dump(2) : j.dump()) << '\n';
}

json eval_quantity(const std::string& what, const MetricParams& p, const std::string& point, const std::string& point2,
                   const std::string& field) {
  p.validate();
  const JacobiBallPoint pt = load_ball_point(point, p.n);
  if (what == "potential") return {{"potential", kahler_potential(p, pt)}};
  if (what == "metric") {
    json j = io::to_json(metric_blocks(p, pt));
    j["weight_warning"] = p.weight_warning();
    return j;
  }
  if (what == "inverse") return io::to_json(metric_inverse(p, pt));
  if (what == "det") return io::to_json(metric_det(p, pt));
  if (what == "curvature") return io::to_json(curvature(p, pt));
  if (what == "kernel") {
    const JacobiBallPoint pt2 = point2.empty() ? pt : load_ball_point(point2, p.n);
    const KernelEval ke = two_point_kernel(p, pt, pt2);
    const NormalizedKernels nk = normalized_kernels(p, pt, pt2);
    return {{"F", io::to_json(ke.F)},
            {"K", io::to_json(ke.K)},
            {"kappa", io::to_json(nk.kappa)},
            {"berezin", nk.berezin},
            {"diastasis", nk.diastasis},
            {"epsilon", epsilon_function(p, pt)}};
  }
  if (what == "laplacian") {
    const FdConfig cfg{field == "lnG" ? 1e-3 : 1e-4, FdScheme::richardson};
    const cplx v = apply_laplacian_jacobi(p, builtin_field(field, p), pt, cfg);
    json j = {{"field", field}, {"value", io::to_json(v)}};
    if (field == "lnG") j["expected"] = -scalar_curvature_closed_form(p);
    return j;
  }
  throw UsageError("unknown quantity '" + what + "'");
}

json transform(const std::string& kind, const std::string& point) {
  const json in = read_json_file(point);
  if (kind == "cayley") {
    const JacobiUpperPoint up = io::jacobi_upper_from(in);
    validate_upper_point(up.V);
    return io::to_json(partial_cayley(up));
  }
  if (kind == "inv-cayley") {
    const JacobiBallPoint b = io::jacobi_ball_from(in);
    validate_ball_point(b.W);
    return io::to_json(partial_cayley_inverse(b));
  }
  if (kind == "fc") {
    const JacobiBallPoint b = io::jacobi_ball_from(in);
    validate_ball_point(b.W);
    return io::to_json(fc_transform(b));
  }
  if (kind == "inv-fc") {
    const FcPoint fc = io::fc_from(in);
    validate_ball_point(fc.W);
    return io::to_json(fc_transform_inverse(fc));
  }
  throw UsageError("unknown transform '" + kind + "'");
}

json sample(const std::string& what, const std::string& domain, int n, std::uint64_t seed, double radius) {
  const Domain d = parse_domain(domain);
  Rng rng(seed);
  if (what == "point") return io::to_json(sample_point(d, n, rng, radius));
  if (what == "group") {
    if (d == Domain::ball || d == Domain::jacobi_ball) return io::to_json(random_jacobi_c(n, rng));
    return io::to_json(random_jacobi_r(n, rng));
  }
  throw UsageError("unknown sample kind '" + what + "'");
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects PROPERTY=VALUE, got '" + s + "'");
    const std::string name = s.substr(0, eq);
    const auto known = fuzz_property_names("all");
    if (std::find(known.begin(), known.end(), name) == known.end()) throw UsageError("unknown property '" + name + "'");
    try {
      out[name] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad tolerance value in '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel-Jacobi ball geometry engine"};
  app.require_subcommand(1);

  Common c;
  std::string what, point, point2, field = "lnG";
  auto* eval = app.add_subcommand("eval", "evaluate a quantity at a point");
  eval->add_option("quantity", what, "potential|metric|inverse|det|curvature|kernel|laplacian")->required();
  add_params(eval, c);
  eval->add_option("--point", point, "point JSON file, '-' for stdin, or 'origin'")->required();
  eval->add_option("--point2", point2, "second point for two-point kernels");
  eval->add_option("--field", field, "laplacian test field");
  add_format(eval, c);

  std::string tkind;
  auto* tr = app.add_subcommand("transform", "coordinate transforms");
  tr->add_option("kind", tkind, "cayley|inv-cayley|fc|inv-fc")->required();
  tr->add_option("--point", point, "point JSON file or '-'")->required();
  add_format(tr, c);

  std::string skind, domain = "jacobi_ball";
  std::uint64_t seed = 0;
  double radius = 0.9;
  auto* sm = app.add_subcommand("sample", "sample points or group elements");
  sm->add_option("kind", skind, "point|group")->required();
  sm->add_option("--domain", domain, "ball|jacobi_ball|upper|jacobi_upper");
  sm->add_option("--n", c.n, "dimension")->check(CLI::PositiveNumber);
  sm->add_option("--seed", seed, "RNG seed");
  sm->add_option("--radius", radius, "ball radius in [0,1)");
  add_format(sm, c);

  std::string category;
  int trials = 50, threads = 0;
  std::vector<std::string> tols;
  auto* vf = app.add_subcommand("verify", "run the property suite");
  vf->add_option("category", category, "all|metric|inverse|curvature|laplacian|invariance|cayley|volume|kernels|parseval")
      ->required();
  add_params(vf, c);
  vf->add_option("--trials", trials, "trials per property")->check(CLI::NonNegativeNumber);
  vf->add_option("--seed", seed, "master seed");
  vf->add_option("--tol", tols, "override: PROPERTY=VALUE (repeatable)");
  vf->add_option("--threads", threads, "worker threads (default: SJK_THREADS or hardware)");
  vf->add_option("--radius", radius, "sampling radius");
  add_format(vf, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("UsageError", e.what()).dump() << '\n';
    return 2;
  }

  try {
    const MetricParams p{c.n, c.k, c.mu};
    if (eval->parsed()) {
      emit(out, eval_quantity(what, p, point, point2, field), c);
      return 0;
    }
    if (tr->parsed()) {
      emit(out, transform(tkind, point), c);
      return 0;
    }
    if (sm->parsed()) {
      emit(out, sample(skind, domain, c.n, seed, radius), c);
      return 0;
    }
    if (vf->parsed()) {
      if (!is_fuzz_category(category)) throw UsageError("unknown category '" + category + "'");
      FuzzOptions o;
      o.n = c.n;
      o.k = c.k;
      o.mu = c.mu;
      o.trials = trials;
      o.seed = seed;
      o.category = category;
      o.tol_overrides = parse_tols(tols);
      o.threads = threads;
      o.radius = radius;
      const FuzzReport r = fuzz_all(o);
      json j = {{"n", c.n},       {"k", c.k},         {"mu", c.mu},       {"trials", trials},
                {"seed", seed},   {"category", category}, {"pass", r.pass()}, {"properties", r.to_json()}};
      emit(out, j, c);
      return r.pass() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << error_json("UsageError", e.what()).dump() << '\n';
    return 2;
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.kind())), e.detail()).dump() << '\n';
    const bool usage = e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::DimensionMismatch;
    return usage ? 2 : 3;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()).dump() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace sjk::cli
