// kshape command line tool.
//
// Exit codes: 0 success or pass, 1 verification failure, 2 usage or input
// error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kshape/kshape.hpp"

namespace fs = std::filesystem;
using namespace kshape;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> kappa;
  std::vector<double> kappas;
  std::optional<double> tolerance;
  bool quiet = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void emit(const Globals& g, const std::string& text) {
  if (!g.quiet) std::cout << text;
}

std::vector<double> kappa_list(const Globals& g, std::vector<double> fallback) {
  std::vector<double> ks = g.kappas;
  if (g.kappa) ks.insert(ks.begin(), *g.kappa);
  if (ks.empty()) ks = std::move(fallback);
  if (ks.empty()) throw UsageError("kappa: give --kappa or --kappas");
  for (double k : ks) {
    if (!(k > 0.0) || !std::isfinite(k)) throw UsageError("kappa: must be positive and finite, got " + format_double(k));
  }
  return ks;
}

std::string kappa_tag(double k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", k);
  return buf;
}

fs::path strip_extension(const fs::path& p, std::initializer_list<const char*> exts) {
  for (const char* e : exts) {
    if (p.extension() == e) return p.parent_path() / p.stem();
  }
  return p;
}

/// "fig_kappa0.5.csv" -> "kappa = 0.5"; otherwise the file stem.
std::string label_from_filename(const fs::path& p) {
  const std::string stem = p.stem().string();
  const auto pos = stem.rfind("kappa");
  if (pos != std::string::npos && pos + 5 < stem.size()) {
    const std::string v = stem.substr(pos + 5);
    char* end = nullptr;
    std::strtod(v.c_str(), &end);
    if (end == v.c_str() + v.size()) return "κ = " + v;
  }
  return stem;
}

void write_or_print(const Globals& g, const std::string& content) {
  if (g.out.empty() || g.out == "-") {
    std::cout << content;
  } else {
    write_text_file(g.out, content);
  }
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::string spec_file;
  std::optional<double> p, q, n, dim, mu, y0, sigma, rho, beta, delta;
  std::vector<double> init, points;
  bool closed = false;
};

int run_generate(const Globals& g, const GenerateArgs& a) {
  GeneratorSpec spec;
  if (!a.spec_file.empty()) {
    try {
      spec = generator_spec_from_json(Json::parse(read_text_file(a.spec_file)));
    } catch (const Json::parse_error& e) {
      throw FormatError(a.spec_file + ": not valid JSON (" + e.what() + ")");
    }
    if (!a.kind.empty() && generator_kind_from_string(a.kind) != spec.kind) {
      throw UsageError("kind: conflicts with the spec file");
    }
  } else {
    if (a.kind.empty()) throw UsageError("kind: give a generator kind or --spec");
    spec.kind = generator_kind_from_string(a.kind);
  }
  auto set = [&](const char* key, const std::optional<double>& v) {
    if (v) spec.params[key] = {*v};
  };
  set("p", a.p);
  set("q", a.q);
  set("n", a.n);
  set("dim", a.dim);
  set("mu", a.mu);
  set("y0", a.y0);
  set("sigma", a.sigma);
  set("rho", a.rho);
  set("beta", a.beta);
  set("delta", a.delta);
  if (!a.init.empty()) spec.params["init"] = a.init;
  if (!a.points.empty()) spec.params["points"] = a.points;
  if (a.closed) spec.params["closed"] = {1.0};
  if (g.seed) spec.seed = g.seed;

  const LandmarkSet lm = make_landmarks(spec);
  write_or_print(g, landmark_file_text(lm, generator_metadata(spec)));
  if (!g.out.empty() && g.out != "-" && !g.quiet) {
    std::cerr << "wrote " << lm.size() << " landmarks (dim " << lm.dim() << ", " << to_string(lm.topology())
              << ") to " << g.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string landmarks;
  std::vector<double> range;
};

int run_eval(const Globals& g, const EvalArgs& a) {
  const KappaFamily fam(read_landmarks(a.landmarks).landmarks);
  const std::vector<double> ks = kappa_list(g, {});
  auto [t0, t1] = fam.canonical_range();
  if (!a.range.empty()) {
    t0 = a.range[0];
    t1 = a.range[1];
  }
  const std::size_t count = g.samples.value_or(fam.default_sample_count());
  if (ks.size() == 1 && g.kappas.empty()) {
    write_or_print(g, curve_csv(sample(fam, ks[0], t0, t1, count)));
    return kExitOk;
  }
  if (g.out.empty()) throw UsageError("out: --kappas needs --out to name the output files");
  const fs::path stem = strip_extension(g.out, {".csv"});
  for (double k : ks) {
    fs::path path = stem;
    path += "_kappa" + kappa_tag(k) + ".csv";
    write_curve(path, sample(fam, k, t0, t1, count));
    emit(g, path.string() + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
  std::vector<std::string> curves;
  std::string layout = "panels";
  std::string landmarks;
  std::vector<std::string> labels;
  std::string title;
  bool hull = false;
  bool axes = false;
  bool projection = false;
  bool no_color_by_z = false;
  int columns = 3;
};

int run_render(const Globals& g, const RenderArgs& a) {
  if (!a.labels.empty() && a.labels.size() != a.curves.size()) {
    throw UsageError("labels: need one label per curve file");
  }
  SvgOptions opts;
  if (a.layout == "panels") {
    opts.layout = SvgLayout::Panels;
  } else if (a.layout == "overlay") {
    opts.layout = SvgLayout::Overlay;
  } else {
    throw UsageError("layout: must be panels or overlay");
  }
  opts.axes = a.axes;
  opts.hull = a.hull;
  opts.projection = a.projection;
  opts.color_by_z = !a.no_color_by_z;
  opts.title = a.title;
  opts.columns = a.columns;
  if (!a.landmarks.empty()) opts.landmarks = read_landmarks(a.landmarks).landmarks;
  if (opts.hull && !opts.landmarks) throw UsageError("hull: needs --landmarks");
  std::vector<SvgCurve> curves;
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    curves.push_back({a.labels.empty() ? label_from_filename(a.curves[i]) : a.labels[i], read_curve(a.curves[i])});
  }
  write_or_print(g, render_svg(curves, opts));
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_check_hull(const Globals& g, const std::string& landmarks, const std::string& mode) {
  const KappaFamily fam(read_landmarks(landmarks).landmarks);
  const std::vector<double> ks = kappa_list(g, {0.01, 0.1, 0.5, 1, 5, 10});
  const double tol = g.tolerance.value_or(1e-9);
  std::optional<ContainmentMode> m;
  if (mode == "hull") {
    m = ContainmentMode::Hull;
  } else if (mode == "certificate") {
    m = ContainmentMode::Certificate;
  } else if (mode != "auto") {
    throw UsageError("mode: must be auto, hull or certificate");
  }
  const ContainmentReport rep = check_containment(fam, ks, g.samples.value_or(1000), tol, m);
  const std::string text = report_text(rep);
  if (!g.out.empty()) write_report(strip_extension(g.out, {".txt", ".json"}), text, report_json(rep));
  emit(g, text);
  return rep.pass() ? kExitOk : kExitFail;
}

int run_crossings(const Globals& g, const std::string& landmarks, double resolution) {
  const KappaFamily fam(read_landmarks(landmarks).landmarks);
  const std::vector<double> ks = kappa_list(g, {0.01, 0.1, 0.3, 0.5, 0.7});
  if (!(resolution > 0.0)) throw UsageError("resolution: must be positive");
  const CrossingSweep sw = crossing_sweep(fam, ks, g.samples.value_or(2000), resolution);
  const std::string text = report_text(sw);
  if (!g.out.empty()) write_report(strip_extension(g.out, {".txt", ".json"}), text, report_json(sw));
  emit(g, text);
  return kExitOk;
}

int run_scene_eval(const Globals& g, const std::string& scene_path, double q, double eta,
                   const std::vector<double>& range) {
  const SceneFile sf = read_scene(scene_path);
  auto [t0, t1] = sf.t_range;
  if (!range.empty()) {
    t0 = range[0];
    t1 = range[1];
  }
  write_or_print(g, curve_csv(sample_scene(*sf.scene, q, eta, t0, t1, g.samples.value_or(501))));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kappa-families of shapes from ordered landmarks"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("-o,--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--seed", g.seed, "Seed for the random generator");
  app.add_option("--samples", g.samples, "Number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  app.add_option("--kappa", g.kappa, "Smoothing parameter");
  app.add_option("--kappas", g.kappas, "Comma-separated kappa sweep")->delimiter(',');
  app.add_option("--tolerance", g.tolerance, "Verification tolerance")->check(CLI::PositiveNumber);
  app.add_flag("-q,--quiet", g.quiet, "Suppress progress output");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated landmark file");
  generate->add_option("kind", gen.kind, "Generator kind");
  generate->add_option("--spec", gen.spec_file, "Generator spec JSON file");
  generate->add_option("--p", gen.p, "Polygon/star order");
  generate->add_option("--q", gen.q, "Hilbert iterations");
  generate->add_option("--n", gen.n, "Landmark count");
  generate->add_option("--dim", gen.dim, "Dimension");
  generate->add_option("--mu", gen.mu, "Logistic map parameter");
  generate->add_option("--y0", gen.y0, "Logistic map start value");
  generate->add_option("--sigma", gen.sigma, "Lorenz sigma");
  generate->add_option("--rho", gen.rho, "Lorenz rho");
  generate->add_option("--beta", gen.beta, "Lorenz beta");
  generate->add_option("--delta", gen.delta, "Lorenz time step");
  generate->add_option("--init", gen.init, "Lorenz initial point x,y,z")->delimiter(',')->expected(3);
  generate->add_option("--points", gen.points, "Explicit coordinates, row-major")->delimiter(',');
  generate->add_flag("--closed", gen.closed, "Explicit set is closed");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Sample a family to CSV");
  eval->add_option("landmarks", ev.landmarks, "Landmark file")->required();
  eval->add_option("--range", ev.range, "t range start,end")->delimiter(',')->expected(2);

  RenderArgs rd;
  auto* render = app.add_subcommand("render", "Render curve files to SVG");
  render->add_option("curves", rd.curves, "Curve CSV files")->required();
  render->add_option("--layout", rd.layout, "panels or overlay");
  render->add_option("--landmarks", rd.landmarks, "Landmark file to mark");
  render->add_option("--labels", rd.labels, "Comma-separated panel labels")->delimiter(',');
  render->add_option("--title", rd.title, "Figure title");
  render->add_option("--columns", rd.columns, "Panels per row")->check(CLI::PositiveNumber);
  render->add_flag("--hull", rd.hull, "Draw the landmark hull");
  render->add_flag("--axes", rd.axes, "Draw axes");
  render->add_flag("--projection", rd.projection, "Project mixed dimensions to the xy plane");
  render->add_flag("--no-color-by-z", rd.no_color_by_z, "Plain colors for 3D curves");

  std::string hull_landmarks, hull_mode = "auto";
  auto* check_hull = app.add_subcommand("check-hull", "Verify hull containment over a kappa sweep");
  check_hull->add_option("landmarks", hull_landmarks, "Landmark file")->required();
  check_hull->add_option("--mode", hull_mode, "auto, hull or certificate");

  std::string cross_landmarks;
  double resolution = 1e-3;
  auto* crossings = app.add_subcommand("crossings", "Projected crossing counts over a kappa sweep");
  crossings->add_option("landmarks", cross_landmarks, "3D closed landmark file")->required();
  crossings->add_option("--resolution", resolution, "Bisection resolution for thresholds");

  std::string scene_path;
  double scene_q = 0.0, scene_eta = 1e-3;
  std::vector<double> scene_range;
  auto* scene_eval = app.add_subcommand("scene-eval", "Sample a scene at fixed q and eta");
  scene_eval->add_option("scene", scene_path, "Scene JSON file")->required();
  scene_eval->add_option("--q", scene_q, "Member coordinate");
  scene_eval->add_option("--eta", scene_eta, "Scene smoothing parameter")->check(CLI::PositiveNumber);
  scene_eval->add_option("--range", scene_range, "t range start,end")->delimiter(',')->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return run_generate(g, gen);
    if (*eval) return run_eval(g, ev);
    if (*render) return run_render(g, rd);
    if (*check_hull) return run_check_hull(g, hull_landmarks, hull_mode);
    if (*crossings) return run_crossings(g, cross_landmarks, resolution);
    if (*scene_eval) return run_scene_eval(g, scene_path, scene_q, scene_eta, scene_range);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
