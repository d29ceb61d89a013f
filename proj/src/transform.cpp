#include "framelet/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "framelet/directional.hpp"
#include "framelet/fft.hpp"
#include "framelet/parallel.hpp"

namespace framelet {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::size_t> plan_shape(const TransformPlan& p) {
  return std::vector<std::size_t>(std::size_t(p.dim), p.n);
}

void unitary_dft(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& shape,
                 int sign) {
  dft(data, shape, sign);
  const double scale = 1.0 / std::sqrt(double(data.size()));
  for (auto& v : data) v *= scale;
}

// Signed DFT bin frequency: nonnegative bins first, then the negative alias.
double bin_frequency(std::size_t index, std::size_t n) {
  const long long s = 2 * (long long)index < (long long)n ? (long long)index
                                                          : (long long)index - (long long)n;
  return 2.0 * M_PI * double(s) / double(n);
}

void validate_geometry(int dim, std::size_t n, int levels) {
  if (n < 32) fail(Errc::PlanTooSmall, "plans need at least 32 samples per axis");
  if (!power_of_two(n)) fail(Errc::BadConfig, "plan size must be a power of two");
  if (levels < 1) fail(Errc::BadConfig, "plans need at least one wavelet octave");
  if (dim < 1 || dim > 2) fail(Errc::BadConfig, "built-in plans cover one and two dimensions");
}

// Finest octave: the first at which the contracted lowpass saturates on the
// whole bin box, extended until the grid agrees exactly.
int saturated_octave(const Generator& phi, int dim, std::size_t n) {
  const double corner = std::sqrt(double(dim)) * M_PI;
  int jp = saturation_level(phi, corner);
  const int cap = int(std::round(std::log2(double(n)))) + 8;
  const FrequencyGrid bins = FrequencyGrid::centered_box(dim, M_PI, n);
  while (jp <= cap && lowpass_limit_residual(phi, bins, jp) != 0.0) ++jp;
  if (jp > cap) fail(Errc::PlanOverflow, "saturation octave exceeds the plan ceiling");
  return jp;
}

std::shared_ptr<const TransformPlan> finish_plan(
    TransformPlan&& plan, const Generator& phi,
    const std::vector<std::vector<Generator>>& octave_members) {
  const int d = plan.dim;
  const std::size_t total = plan.total_bins();
  const std::vector<std::size_t> shape = plan_shape(plan);

  std::size_t bands = 1;
  for (const auto& members : octave_members) bands += members.size();
  plan.windows.assign(bands, std::vector<double>(total));
  plan.band_labels.assign(bands, {});
  {
    char label[48];
    std::snprintf(label, sizeof label, "low:j=%d", plan.coarsest);
    plan.band_labels[0] = label;
    std::size_t band = 1;
    for (std::size_t t = 0; t < octave_members.size(); ++t)
      for (std::size_t l = 0; l < octave_members[t].size(); ++l) {
        if (octave_members[t].size() == 1)
          std::snprintf(label, sizeof label, "oct:j=%d", plan.coarsest + int(t));
        else
          std::snprintf(label, sizeof label, "oct:j=%d:w=%zu", plan.coarsest + int(t), l);
        plan.band_labels[band++] = label;
      }
  }

  std::vector<Mat> contractions(octave_members.size() + 1);
  const Mat n_mat = phi.pair->dilation.n;
  for (std::size_t t = 0; t <= octave_members.size(); ++t)
    contractions[t] = mat_power(n_mat, plan.coarsest + int(t));

  std::vector<double> residual_partial(block_count(total, std::size_t(1) << 12));
  for_blocks(total, std::size_t(1) << 12, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double xi[8], z[8];
    double worst = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t rem = i;
      for (int a = d - 1; a >= 0; --a) {
        xi[a] = bin_frequency(rem % plan.n, plan.n);
        rem /= plan.n;
      }
      contractions[0].apply(xi, z);
      double square_sum = 0.0;
      const double low = phi(z);
      plan.windows[0][i] = low;
      square_sum += low * low;
      std::size_t band = 1;
      for (std::size_t t = 0; t < octave_members.size(); ++t) {
        contractions[t].apply(xi, z);
        for (const Generator& gen : octave_members[t]) {
          const double w = gen(z);
          plan.windows[band++][i] = w;
          square_sum += w * w;
        }
      }
      worst = std::max(worst, std::fabs(square_sum - 1.0));
    }
    residual_partial[b] = worst;
  });
  for (double w : residual_partial) plan.tightness_residual = std::max(plan.tightness_residual, w);

  return std::make_shared<const TransformPlan>(std::move(plan));
}

}  // namespace

std::size_t TransformPlan::total_bins() const {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  return total;
}

double CoefficientPyramid::energy() const {
  double e = 0.0;
  for (const auto& band : bands)
    for (const auto& v : band) e += std::norm(v);
  return e;
}

std::shared_ptr<const TransformPlan> make_plan(const Generator& phi, const Generator& psi,
                                               std::size_t n, int levels) {
  if (!phi.pair) fail(Errc::BadConfig, "plans need a constructed scaling generator");
  validate_geometry(phi.dim, n, levels);
  TransformPlan plan;
  plan.dim = phi.dim;
  plan.n = n;
  plan.levels = levels;
  plan.finest = saturated_octave(phi, phi.dim, n);
  plan.coarsest = plan.finest - levels;
  std::vector<std::vector<Generator>> octaves(std::size_t(levels), {psi});
  return finish_plan(std::move(plan), phi, octaves);
}

std::shared_ptr<const TransformPlan> make_plan_isotropic(int dim, std::size_t n, int levels) {
  validate_geometry(dim, n, levels);
  const DilationMatrix m = analyze_dilation(Mat::scalar(dim, 2.0));
  const Generator phi = construct_phi(m, 0.8);
  const Generator psi = construct_psi(phi);
  return make_plan(phi, psi, n, levels);
}

std::shared_ptr<const TransformPlan> make_plan_directional(std::size_t n, int levels, int m,
                                                           double rho) {
  validate_geometry(2, n, levels);
  const DilationMatrix line = analyze_dilation(Mat::scalar(1, 2.0));
  const Generator radial_phi = construct_phi(line, 0.8);
  const Generator radial_psi = construct_psi(radial_phi);

  std::vector<std::vector<Generator>> octaves(static_cast<std::size_t>(levels));
  DirectionalFamily base = build_directional_family_2d(m, rho, 0, 0.0, radial_phi, radial_psi);
  octaves[0] = std::move(base.members);
  for (int t = 1; t < levels; ++t)
    octaves[std::size_t(t)] =
        build_directional_family_2d(m, rho, t, 0.0, radial_phi, radial_psi).members;

  TransformPlan plan;
  plan.dim = 2;
  plan.n = n;
  plan.levels = levels;
  plan.directional = true;
  plan.m = m;
  plan.rho = rho;
  plan.finest = saturated_octave(base.phi, 2, n);
  plan.coarsest = plan.finest - levels;
  return finish_plan(std::move(plan), base.phi, octaves);
}

CoefficientPyramid analyze(const std::vector<std::complex<double>>& samples,
                           const std::shared_ptr<const TransformPlan>& plan) {
  if (!plan) fail(Errc::BadConfig, "analyze: missing plan");
  const std::size_t total = plan->total_bins();
  if (samples.size() != total) fail(Errc::SizeMismatch, "analyze: sample count mismatch");
  const std::vector<std::size_t> shape = plan_shape(*plan);

  std::vector<std::complex<double>> spectrum = samples;
  unitary_dft(spectrum, shape, -1);

  CoefficientPyramid out;
  out.plan = plan;
  out.bands.resize(plan->bands());
  for (std::size_t b = 0; b < plan->bands(); ++b) {
    std::vector<std::complex<double>> band(total);
    const std::vector<double>& w = plan->windows[b];
    for (std::size_t i = 0; i < total; ++i) band[i] = spectrum[i] * w[i];
    unitary_dft(band, shape, +1);
    out.bands[b] = std::move(band);
  }
  return out;
}

std::vector<std::complex<double>> synthesize(const CoefficientPyramid& pyramid) {
  if (!pyramid.plan) fail(Errc::BadConfig, "synthesize: missing plan");
  const TransformPlan& plan = *pyramid.plan;
  const std::size_t total = plan.total_bins();
  if (pyramid.bands.size() != plan.bands())
    fail(Errc::SizeMismatch, "synthesize: band count mismatch");
  const std::vector<std::size_t> shape = plan_shape(plan);

  std::vector<std::complex<double>> accum(total);
  std::vector<std::complex<double>> spectrum;
  for (std::size_t b = 0; b < plan.bands(); ++b) {
    if (pyramid.bands[b].size() != total)
      fail(Errc::SizeMismatch, "synthesize: band size mismatch");
    spectrum = pyramid.bands[b];
    unitary_dft(spectrum, shape, -1);
    const std::vector<double>& w = plan.windows[b];
    for (std::size_t i = 0; i < total; ++i) accum[i] += spectrum[i] * w[i];
  }
  unitary_dft(accum, shape, +1);
  return accum;
}

double pr_residual(const std::vector<std::complex<double>>& samples,
                   const std::shared_ptr<const TransformPlan>& plan) {
  const std::vector<std::complex<double>> back = synthesize(analyze(samples, plan));
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    err += std::norm(back[i] - samples[i]);
    ref += std::norm(samples[i]);
  }
  if (ref == 0.0) return 0.0;
  return std::sqrt(err / ref);
}

}  // namespace framelet
