// Command-line front end: constructs generator pairs, runs the grid checks,
// and round-trips the sample transform. Exit codes: 0 all checks pass,
// 2 usage or configuration error, 3 a requested check failed, 4 I/O error.
#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "framelet/dilation.hpp"
#include "framelet/directional.hpp"
#include "framelet/filterbank.hpp"
#include "framelet/generators.hpp"
#include "framelet/io.hpp"
#include "framelet/parallel.hpp"
#include "framelet/transform.hpp"
#include "framelet/verify.hpp"

namespace fl = framelet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailedCheck = 3;
constexpr int kExitIo = 4;

struct LevelRange {
  int from = 0;
  int to = 1;
};

LevelRange parse_levels(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    fl::fail(fl::Errc::BadConfig, "levels must be 'from:to', got '" + text + "'");
  LevelRange r;
  try {
    r.from = std::stoi(text.substr(0, colon));
    r.to = std::stoi(text.substr(colon + 1));
  } catch (...) {
    fl::fail(fl::Errc::BadConfig, "levels must be 'from:to', got '" + text + "'");
  }
  if (r.from >= r.to) fl::fail(fl::Errc::BadConfig, "levels range is empty: " + text);
  return r;
}

std::vector<int> expand_levels(const LevelRange& r) {
  std::vector<int> out;
  for (int j = r.from; j <= r.to; ++j) out.push_back(j);
  return out;
}

// Everything `construct` knows, written as the manifest and read back by the
// check subcommands. Unknown keys are rejected so stale or foreign files
// cannot silently change what gets verified.
struct Experiment {
  std::string matrix_text;
  double lambda0 = 0.8;
  double eps = -1.0;  // < 0: pick automatically
  std::size_t grid = 512;
  fl::DilationMatrix dilation;
  fl::Generator phi;
  fl::Generator psi;
};

Experiment build_experiment(const std::string& matrix_text, double lambda0, double eps) {
  Experiment e;
  e.matrix_text = matrix_text;
  e.lambda0 = lambda0;
  e.eps = eps;
  e.dilation = fl::analyze_dilation(fl::parse_matrix(matrix_text));
  if (!e.dilation.expansive)
    fl::fail(fl::Errc::NotExpansive, "matrix '" + matrix_text + "' is not expansive");
  e.phi = eps < 0.0 ? fl::construct_phi(e.dilation, lambda0)
                    : fl::construct_phi(e.dilation, lambda0, eps);
  e.psi = fl::construct_psi(e.phi);
  return e;
}

Experiment load_experiment(const std::string& manifest_path) {
  const fl::Manifest m = fl::read_manifest(manifest_path);
  static const char* known[] = {"matrix", "lambda0", "eps", "dim", "grid",
                                "c",      "lambda",  "phi", "psi"};
  for (const auto& [key, value] : m) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fl::fail(fl::Errc::BadConfig, "unknown manifest key '" + key + "'");
  }
  const std::string* matrix = fl::manifest_find(m, "matrix");
  const std::string* lambda0 = fl::manifest_find(m, "lambda0");
  if (!matrix || !lambda0)
    fl::fail(fl::Errc::BadConfig, "manifest needs at least 'matrix' and 'lambda0'");
  const std::string* eps = fl::manifest_find(m, "eps");
  Experiment e = build_experiment(*matrix, std::stod(*lambda0), eps ? std::stod(*eps) : -1.0);
  if (const std::string* grid = fl::manifest_find(m, "grid")) {
    const long g = std::stol(*grid);
    if (g < 2) fl::fail(fl::Errc::BadConfig, "manifest grid resolution must be at least 2");
    e.grid = std::size_t(g);
  }
  return e;
}

fl::GridData sample_generator(const fl::Generator& g, const fl::FrequencyGrid& grid) {
  fl::GridData out;
  out.axes = grid.axes();
  out.complex_valued = false;
  out.values.resize(grid.total_points());
  fl::for_blocks(grid.total_points(), 4096, [&](std::size_t, std::size_t b, std::size_t e) {
    std::vector<double> xi(static_cast<std::size_t>(grid.dim()));
    for (std::size_t i = b; i < e; ++i) {
      grid.point(i, xi.data());
      out.values[i] = g(xi.data());
    }
  });
  return out;
}

void write_report(const std::string& path, const std::vector<fl::ConditionReport>& rows) {
  std::string text = fl::condition_csv_header() + "\n";
  for (const auto& r : rows) text += r.csv_row() + "\n";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fl::fail(fl::Errc::IoError, "cannot open " + path + " for writing");
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

int finish_report(const std::string& path, const std::vector<fl::ConditionReport>& rows) {
  write_report(path, rows);
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.passed) ++failed;
  std::printf("%zu checks, %zu failed, report: %s\n", rows.size(), failed, path.c_str());
  return failed ? kExitFailedCheck : kExitOk;
}

int run_construct(const std::string& matrix, double lambda0, double eps, std::size_t grid,
                  const std::string& out_dir) {
  Experiment e = build_experiment(matrix, lambda0, eps);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base(out_dir);
  const fl::FrequencyGrid torus = fl::FrequencyGrid::standard_torus(e.dilation.dim, grid);
  fl::write_frmg((base / "phi.frmg").string(), sample_generator(e.phi, torus));
  fl::write_frmg((base / "psi.frmg").string(), sample_generator(e.psi, torus));
  const auto& pair = *e.phi.pair;
  fl::write_manifest((base / "manifest").string(),
                     {{"matrix", e.matrix_text},
                      {"lambda0", fl::format_double(e.lambda0)},
                      {"eps", fl::format_double(pair.norm.epsilon)},
                      {"dim", std::to_string(e.dilation.dim)},
                      {"grid", std::to_string(grid)},
                      {"c", fl::format_double(pair.c)},
                      {"lambda", fl::format_double(pair.lambda)},
                      {"phi", "phi.frmg"},
                      {"psi", "psi.frmg"}});
  std::printf("wrote %s: dim %d, plateau c = %.6g, contraction lambda = %.6g\n",
              (base / "manifest").string().c_str(), e.dilation.dim, pair.c, pair.lambda);
  return kExitOk;
}

int run_lattice(const std::string& matrix, int coarsest, double radius, int jmax) {
  const fl::DilationMatrix m = fl::analyze_dilation(fl::parse_matrix(matrix));
  if (!m.expansive) fl::fail(fl::Errc::NotExpansive, "matrix '" + matrix + "' is not expansive");
  const fl::LatticeSample s = fl::certify_lattice_conditions(m, coarsest, radius, jmax);
  std::printf("%zu lattice points within radius %.6g, min separation %.6g\n", s.points.size(),
              radius, s.min_separation);
  std::printf("contraction %s, factor %.6g per level\n",
              s.contraction_certified ? "certified" : "NOT certified", s.contraction_factor);
  return s.contraction_certified ? kExitOk : kExitFailedCheck;
}

int run_directional(int m, double rho, int levels, double eps_angular, std::size_t grid,
                    const std::string& report_path, double tol) {
  const fl::FrequencySystem sys = fl::directional_system(m, rho, eps_angular);
  const fl::FrequencyGrid box = fl::FrequencyGrid::standard_torus(2, grid);
  LevelRange r{0, levels};
  std::vector<fl::ConditionReport> rows =
      fl::dual_frame_condition_residuals(sys, sys, box, expand_levels(r),
                                         fl::DualMode::tight_simple, tol);
  for (int j = 0; j < levels; ++j) {
    const int expected = m * (1 << fl::angular_resolution_exponent(rho, j));
    const std::size_t members = sys.wavelets_at(j).size();
    fl::ConditionReport count;
    count.condition_id = "member-count:level=" + std::to_string(j);
    count.max_residual = std::abs(double(members) - double(expected));
    count.mean_residual = count.max_residual;
    count.points = 1;
    count.tolerance = 0.5;
    count.passed = count.max_residual < 0.5;
    rows.push_back(count);
  }
  return finish_report(report_path, rows);
}

int run_filterbank(const std::string& manifest_path, std::size_t grid_override,
                   const std::string& report_path, double tol, bool haar) {
  std::vector<fl::ConditionReport> rows;
  if (haar) {
    const fl::FilterBank bank = fl::haar_bank();
    fl::ConditionReport r;
    r.condition_id = "polyphase-unitarity";
    r.max_residual = fl::polyphase_unitarity_residual(bank, 4096);
    r.mean_residual = r.max_residual;
    r.points = 4096;
    r.tolerance = tol;
    r.passed = r.max_residual < tol;
    rows.push_back(r);
    return finish_report(report_path, rows);
  }
  if (manifest_path.empty())
    fl::fail(fl::Errc::BadConfig, "filterbank needs --manifest (or --haar)");
  Experiment e = load_experiment(manifest_path);
  const std::size_t n = grid_override ? grid_override : e.grid;
  const fl::FrequencyGrid torus = fl::FrequencyGrid::standard_torus(e.dilation.dim, n);
  const fl::FilterBank bank = fl::derive_masks(e.phi, e.psi, e.lambda0);
  rows.push_back(fl::refinement_residual(bank.lowpass, e.phi, e.phi, torus, tol));
  rows.push_back(fl::refinement_residual(bank.highpass.at(0), e.phi, e.psi, torus, tol));
  const fl::Mask theta = fl::constant_mask(e.dilation.dim, e.dilation.mt, 1.0, "theta");
  const fl::SupportIndicator sigma = fl::support_indicator(e.phi);
  const fl::OepReport oep = fl::oep_residuals(bank, theta, sigma, torus, tol);
  rows.push_back(oep.diagonal);
  for (const auto& a : oep.alias) rows.push_back(a);
  return finish_report(report_path, rows);
}

int run_verify_tight(const std::string& manifest_path, const std::string& levels_text,
                     std::size_t grid_override, const std::string& report_path, double tol) {
  Experiment e = load_experiment(manifest_path);
  const LevelRange levels = parse_levels(levels_text);
  const std::size_t n = grid_override ? grid_override : e.grid;
  const fl::FrequencyGrid torus = fl::FrequencyGrid::standard_torus(e.dilation.dim, n);
  std::vector<fl::ConditionReport> rows;
  rows.push_back(fl::calderon_residual(e.phi, e.psi, torus, levels.from, levels.to, tol));
  for (int j = levels.from; j < levels.to; ++j)
    rows.push_back(fl::calderon_residual(e.phi, e.psi, torus, j, j + 1, tol));
  return finish_report(report_path, rows);
}

int run_verify_dual(const std::string& manifest_path, const std::string& levels_text,
                    std::size_t grid_override, const std::string& report_path, double tol) {
  Experiment e = load_experiment(manifest_path);
  const std::size_t n = grid_override ? grid_override : e.grid;
  const fl::FrequencyGrid torus = fl::FrequencyGrid::standard_torus(e.dilation.dim, n);
  const fl::FrequencySystem sys = fl::stationary_system(e.phi, e.psi);
  const std::vector<int> levels = expand_levels(parse_levels(levels_text));
  return finish_report(report_path, fl::dual_frame_condition_residuals(
                                        sys, sys, torus, levels, fl::DualMode::stationary, tol));
}

int run_verify_oracle(const std::string& manifest_path, std::size_t grid_override, int k_max,
                      const std::string& report_path, double tol) {
  Experiment e = load_experiment(manifest_path);
  if (e.dilation.dim != 2)
    fl::fail(fl::Errc::BadConfig, "the oracle suite probes two-dimensional pairs");
  const std::size_t n = grid_override ? grid_override : 1024;
  return finish_report(report_path, fl::bracket_oracle_suite(e.psi, n, k_max, tol));
}

int run_verify_mra(const std::string& manifest_path, std::size_t grid_override,
                   const std::string& report_path, double tol) {
  Experiment e = load_experiment(manifest_path);
  const std::size_t n = grid_override ? grid_override : e.grid;
  const fl::FrequencyGrid torus = fl::FrequencyGrid::standard_torus(e.dilation.dim, n);
  std::vector<fl::ConditionReport> rows;
  rows.push_back(fl::mra_consistency_residual({e.phi}, {e.psi}, {e.phi}, e.dilation, torus, tol));
  return finish_report(report_path, rows);
}

std::shared_ptr<const fl::TransformPlan> plan_for(const std::string& family, int dim,
                                                  std::size_t n, int levels, int m, double rho) {
  if (family == "isotropic") return fl::make_plan_isotropic(dim, n, levels);
  if (family == "directional") {
    if (dim != 2)
      fl::fail(fl::Errc::BadConfig, "the directional family needs two-dimensional input");
    return fl::make_plan_directional(n, levels, m, rho);
  }
  fl::fail(fl::Errc::BadConfig, "unknown family '" + family + "' (isotropic | directional)");
}

std::string band_file_name(const std::string& label) {
  std::string name = "band_";
  for (char c : label) name += (c == ':' || c == '=') ? '_' : c;
  return name + ".frmg";
}

// Deterministic two-dimensional test pattern for --size runs: a few plane
// waves plus a centered blob, nothing special about it beyond being neither
// sparse nor band-limited to one octave.
std::vector<std::complex<double>> synthetic_pattern(std::size_t n) {
  std::vector<std::complex<double>> out(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double x = double(c) / double(n), y = double(r) / double(n);
      const double v = std::sin(2 * M_PI * 3 * x) + 0.5 * std::cos(2 * M_PI * 17 * (x + 2 * y)) +
                       std::exp(-40.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
      out[r * n + c] = v;
    }
  return out;
}

struct TransformInput {
  std::vector<std::complex<double>> samples;
  int dim = 2;
  std::size_t n = 0;
  std::vector<fl::GridAxis> axes;
};

TransformInput load_transform_input(const std::string& image_path, const std::string& grid_path,
                                    std::size_t size) {
  TransformInput in;
  if (!image_path.empty()) {
    const fl::PgmImage img = fl::read_pgm(image_path);
    if (img.rows != img.cols)
      fl::fail(fl::Errc::BadConfig, "transform input must be square, got " +
                                        std::to_string(img.rows) + "x" + std::to_string(img.cols));
    in.n = img.rows;
    in.samples.assign(img.values.begin(), img.values.end());
    in.axes = {{0.0, 1.0, img.rows}, {0.0, 1.0, img.cols}};
  } else if (!grid_path.empty()) {
    fl::GridData g = fl::read_frmg(grid_path);
    if (g.axes.size() != 1 && g.axes.size() != 2)
      fl::fail(fl::Errc::BadConfig, "transform input must be 1- or 2-dimensional");
    in.dim = int(g.axes.size());
    in.n = g.axes[0].count;
    for (const auto& ax : g.axes)
      if (ax.count != in.n) fl::fail(fl::Errc::BadConfig, "transform input must be square");
    in.samples = std::move(g.values);
    in.axes = std::move(g.axes);
  } else {
    in.n = size;
    in.samples = synthetic_pattern(size);
    in.axes = {{0.0, 1.0, size}, {0.0, 1.0, size}};
  }
  return in;
}

int run_transform_analyze(const std::string& image, const std::string& grid_path,
                          std::size_t size, const std::string& family, int levels, int m,
                          double rho, const std::string& out_dir) {
  const TransformInput in = load_transform_input(image, grid_path, size);
  const auto plan = plan_for(family, in.dim, in.n, levels, m, rho);
  const fl::CoefficientPyramid pyr = fl::analyze(in.samples, plan);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base(out_dir);
  fl::Manifest manifest{{"family", family},
                        {"n", std::to_string(in.n)},
                        {"dim", std::to_string(in.dim)},
                        {"levels", std::to_string(levels)},
                        {"m", std::to_string(m)},
                        {"rho", fl::format_double(rho)},
                        {"bands", std::to_string(plan->bands())}};
  for (std::size_t b = 0; b < plan->bands(); ++b) {
    fl::GridData g;
    g.axes = in.axes;
    g.complex_valued = true;
    g.values = pyr.bands[b];
    const std::string file = band_file_name(plan->band_labels[b]);
    fl::write_frmg((base / file).string(), g);
    // keyed by index: labels contain '=' and would not survive the key=value format
    manifest.emplace_back("band:" + std::to_string(b), file);
  }
  fl::write_manifest((base / "bands").string(), manifest);
  std::printf("%zu bands at n = %zu, tightness residual %.3g, wrote %s\n", plan->bands(), in.n,
              plan->tightness_residual, (base / "bands").string().c_str());
  return kExitOk;
}

int run_transform_synthesize(const std::string& bands_path, const std::string& out_path) {
  const fl::Manifest manifest = fl::read_manifest(bands_path);
  auto get = [&](const char* key) -> const std::string& {
    const std::string* v = fl::manifest_find(manifest, key);
    if (!v) fl::fail(fl::Errc::BadConfig, std::string("band manifest misses '") + key + "'");
    return *v;
  };
  const std::string family = get("family");
  const std::size_t n = std::stoul(get("n"));
  const int dim = std::stoi(get("dim"));
  const int levels = std::stoi(get("levels"));
  const int m = std::stoi(get("m"));
  const double rho = std::stod(get("rho"));
  const auto plan = plan_for(family, dim, n, levels, m, rho);
  if (std::stoul(get("bands")) != plan->bands())
    fl::fail(fl::Errc::BadConfig, "band manifest does not match the reconstructed plan");

  const std::filesystem::path base = std::filesystem::path(bands_path).parent_path();
  fl::CoefficientPyramid pyr;
  pyr.plan = plan;
  std::vector<fl::GridAxis> axes;
  for (std::size_t b = 0; b < plan->bands(); ++b) {
    const std::string* file = fl::manifest_find(manifest, "band:" + std::to_string(b));
    if (!file)
      fl::fail(fl::Errc::BadConfig, "band manifest misses band '" + plan->band_labels[b] + "'");
    fl::GridData g = fl::read_frmg((base / *file).string());
    if (g.values.size() != plan->total_bins())
      fl::fail(fl::Errc::SizeMismatch, "band '" + plan->band_labels[b] + "' has the wrong size");
    axes = g.axes;
    pyr.bands.push_back(std::move(g.values));
  }
  const std::vector<std::complex<double>> samples = fl::synthesize(pyr);
  fl::GridData out;
  out.axes = axes;
  out.complex_valued = true;
  out.values = samples;
  fl::write_frmg(out_path, out);
  std::printf("wrote %s (%zu samples)\n", out_path.c_str(), samples.size());
  return kExitOk;
}

int run_transform_roundtrip(const std::string& image, const std::string& grid_path,
                            std::size_t size, const std::string& family, int levels, int m,
                            double rho, double tol) {
  const TransformInput in = load_transform_input(image, grid_path, size);
  const auto plan = plan_for(family, in.dim, in.n, levels, m, rho);
  const double residual = fl::pr_residual(in.samples, plan);
  std::printf("PR residual %.17g over %zu bands (tolerance %.3g)\n", residual, plan->bands(),
              tol);
  return residual < tol ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-domain tight frame construction and verification"};
  app.require_subcommand(1);

  std::string matrix = "2,0;0,2";
  double lambda0 = 0.8;
  double eps = -1.0;
  std::size_t grid = 512;
  std::size_t grid_override = 0;
  std::string out_dir = "out";
  std::string manifest_path;
  std::string report_path = "report.csv";
  std::string levels_text = "0:4";
  double tol_dir = 1e-12, tol_fb = 1e-12, tol_tight = 1e-12, tol_dual = 1e-12;
  double tol_oracle = 1e-8, tol_mra = 1e-12, tol_rt = 1e-10;
  int m = 4;
  double rho = 0.5;
  double eps_angular = -1.0;
  int levels = 4;
  int coarsest = 0;
  int jmax = 12;
  double radius = 64.0;
  int k_max = 128;
  bool haar = false;
  std::string image, grid_path, bands_path, out_path = "synthesized.frmg";
  std::size_t size = 256;
  std::string family = "isotropic";

  CLI::App* construct = app.add_subcommand("construct", "build and store a generator pair");
  construct->add_option("--matrix", matrix, "dilation, row-major 'a,b;c,d'");
  construct->add_option("--lambda0", lambda0, "working cube shrink factor in (0,1)");
  construct->add_option("--eps", eps, "norm regularization (negative: automatic)");
  construct->add_option("--grid", grid, "samples per axis for the stored grids");
  construct->add_option("--out", out_dir, "output directory");

  CLI::App* lattice = app.add_subcommand("lattice", "certify the lattice union conditions");
  lattice->add_option("--matrix", matrix, "dilation, row-major 'a,b;c,d'");
  lattice->add_option("--coarsest", coarsest, "coarsest level of the union");
  lattice->add_option("--radius", radius, "Euclidean sampling radius");
  lattice->add_option("--jmax", jmax, "finest level of the union");

  CLI::App* directional = app.add_subcommand("directional", "check the polar wedge families");
  directional->add_option("--m", m, "wedge count at the coarsest level");
  directional->add_option("--rho", rho, "angular resolution exponent in [0,1)");
  directional->add_option("--levels", levels, "number of octaves to check");
  directional->add_option("--eps-angular", eps_angular, "angular transition (negative: automatic)");
  directional->add_option("--grid", grid, "samples per axis");
  directional->add_option("--report", report_path, "CSV report path");
  directional->add_option("--tol", tol_dir, "residual tolerance");

  CLI::App* filterbank = app.add_subcommand("filterbank", "check refinement and the OEP identity");
  filterbank->add_option("--manifest", manifest_path, "manifest from construct");
  filterbank->add_option("--grid", grid_override, "samples per axis (default: manifest)");
  filterbank->add_option("--report", report_path, "CSV report path");
  filterbank->add_option("--tol", tol_fb, "residual tolerance");
  filterbank->add_flag("--haar", haar, "check the dyadic orthonormal bank instead");

  CLI::App* verify = app.add_subcommand("verify", "grid checks for a stored pair");
  verify->require_subcommand(1);
  CLI::App* tight = verify->add_subcommand("tight", "multi-scale square partition of unity");
  CLI::App* dual = verify->add_subcommand("dual", "one-step recursion per integer shift");
  CLI::App* oracle = verify->add_subcommand("oracle", "coefficient sums vs aliased integrals");
  CLI::App* mra = verify->add_subcommand("mra", "adjacent-level consistency");
  for (CLI::App* sub : {tight, dual, oracle, mra}) {
    sub->add_option("--manifest", manifest_path, "manifest from construct")->required();
    sub->add_option("--grid", grid_override, "samples per axis (default: manifest)");
    sub->add_option("--report", report_path, "CSV report path");
  }
  tight->add_option("--levels", levels_text, "octave range 'from:to'");
  tight->add_option("--tol", tol_tight, "residual tolerance");
  dual->add_option("--levels", levels_text, "octave range 'from:to'");
  dual->add_option("--tol", tol_dual, "residual tolerance");
  oracle->add_option("--kmax", k_max, "translate box half-width");
  oracle->add_option("--tol", tol_oracle, "residual tolerance");
  mra->add_option("--tol", tol_mra, "residual tolerance");

  CLI::App* transform = app.add_subcommand("transform", "frequency-tiled sample transform");
  transform->require_subcommand(1);
  CLI::App* analyze = transform->add_subcommand("analyze", "decompose samples into bands");
  CLI::App* synthesize = transform->add_subcommand("synthesize", "rebuild samples from bands");
  CLI::App* roundtrip = transform->add_subcommand("roundtrip", "analyze + synthesize in memory");
  for (CLI::App* sub : {analyze, roundtrip}) {
    sub->add_option("--image", image, "8-bit binary PGM input (square)");
    sub->add_option("--grid-file", grid_path, "grid-format input (square, 1- or 2-dimensional)");
    sub->add_option("--size", size, "synthesize a deterministic pattern of this size instead");
    sub->add_option("--family", family, "isotropic | directional");
    sub->add_option("--levels", levels, "wavelet octaves");
    sub->add_option("--m", m, "directional: wedges at the coarsest octave");
    sub->add_option("--rho", rho, "directional: angular resolution exponent");
  }
  analyze->add_option("--out", out_dir, "output directory for the band files");
  roundtrip->add_option("--tol", tol_rt, "round-trip tolerance");
  synthesize->add_option("--bands", bands_path, "band manifest from analyze")->required();
  synthesize->add_option("--out", out_path, "output grid file");

  try {
    app.parse(argc, argv);
    if (construct->parsed()) return run_construct(matrix, lambda0, eps, grid, out_dir);
    if (lattice->parsed()) return run_lattice(matrix, coarsest, radius, jmax);
    if (directional->parsed())
      return run_directional(m, rho, levels, eps_angular, grid, report_path, tol_dir);
    if (filterbank->parsed())
      return run_filterbank(manifest_path, grid_override, report_path, tol_fb, haar);
    if (tight->parsed())
      return run_verify_tight(manifest_path, levels_text, grid_override, report_path, tol_tight);
    if (dual->parsed())
      return run_verify_dual(manifest_path, levels_text, grid_override, report_path, tol_dual);
    if (oracle->parsed())
      return run_verify_oracle(manifest_path, grid_override, k_max, report_path, tol_oracle);
    if (mra->parsed()) return run_verify_mra(manifest_path, grid_override, report_path, tol_mra);
    if (analyze->parsed())
      return run_transform_analyze(image, grid_path, size, family, levels, m, rho, out_dir);
    if (synthesize->parsed()) return run_transform_synthesize(bands_path, out_path);
    if (roundtrip->parsed())
      return run_transform_roundtrip(image, grid_path, size, family, levels, m, rho, tol_rt);
    std::fprintf(stderr, "no subcommand\n");
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const fl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == fl::Errc::IoError ? kExitIo : kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
