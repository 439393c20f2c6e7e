#include "pstirap/shaper.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "pstirap/errors.hpp"
#include "pstirap/propagator.hpp"

namespace pstirap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeTolerance = 1e-6;
constexpr double kReliableEnvelope = 1e-6;
constexpr double kSeedThreshold = 1e-4;

// FFTW planning is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

class Fft {
public:
  explicit Fft(int n, int sign) : n_(n) {
    data_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard lock(plan_mutex());
    plan_ = fftw_plan_dft_1d(n, data_, data_, sign, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(data_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Complex* data() { return reinterpret_cast<Complex*>(data_); }
  void execute() { fftw_execute(plan_); }
  int size() const { return n_; }

private:
  int n_;
  fftw_complex* data_ = nullptr;
  fftw_plan plan_ = nullptr;
};

double wrap(double x) { return std::remainder(x, 2.0 * kPi); }

// Unwraps `raw` scanning outward from `start`.
std::vector<double> unwrap_from(const std::vector<double>& raw, std::size_t start) {
  std::vector<double> out(raw.size());
  if (raw.empty()) return out;
  out[start] = raw[start];
  for (std::size_t i = start + 1; i < raw.size(); ++i) out[i] = out[i - 1] + wrap(raw[i] - raw[i - 1]);
  for (std::size_t i = start; i-- > 0;) out[i] = out[i + 1] + wrap(raw[i] - raw[i + 1]);
  return out;
}

std::vector<double> derivative(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (y[1] - y[0]) / h;
  d[n - 1] = (y[n - 1] - y[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  return d;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

ComplexField field_from_samples(std::vector<double> t, const std::vector<Complex>& e) {
  ComplexField f;
  f.t = std::move(t);
  const std::size_t n = e.size();
  std::vector<double> mag(n), raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(e[i]);
    raw[i] = std::arg(e[i]);
  }
  const std::size_t ipk = argmax(mag);
  f.peak = mag[ipk];
  f.envelope.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.envelope[i] = f.peak > 0.0 ? mag[i] / f.peak : 0.0;
  f.phase = unwrap_from(raw, ipk);
  f.frequency = derivative(f.phase, n > 1 ? f.t[1] - f.t[0] : 1.0);
  return f;
}

void require_constant_two_photon(const Schedule& s) {
  if (const auto* p = std::get_if<ParallelModel>(&s.model()); p && p->alpha != 0.0)
    throw UnsupportedVariant("spectral shaping needs a constant two-photon detuning (alpha = 0)");
  const auto [lo, hi] = std::minmax_element(s.delta_2().begin(), s.delta_2().end());
  if (*hi - *lo > 1e-12 * std::max(1.0, std::abs(*hi)))
    throw UnsupportedVariant("spectral shaping needs a constant two-photon detuning");
}

}  // namespace

// ---------------------------------------------------------------------------

void PhysicalConfig::validate() const {
  if (!(intensity_fwhm_fs > 0.0)) throw InvalidParameter("intensity FWHM must be positive");
  if (!(seed_fwhm_fs > 0.0)) throw InvalidParameter("seed FWHM must be positive");
  if (!(dipole_debye > 0.0)) throw InvalidParameter("dipole must be positive");
  if (!(omega2 > omega1) || !(omega2 > omega3))
    throw InvalidParameter("level 2 must lie above levels 1 and 3 (Lambda configuration)");
}

double PhysicalConfig::t_unit_fs() const {
  // Intensity FWHM of exp(-2 (t / (beta T))^2) is 2 beta T sqrt(ln2 / 2).
  const double beta = std::sqrt(kPi / 2.0);
  return intensity_fwhm_fs / (2.0 * beta * std::sqrt(std::numbers::ln2 / 2.0));
}

PhysicalUnits physical_units(const DesignParams& p, double intensity_fwhm_fs) {
  if (p.alpha != 0.0) throw UnsupportedVariant("physical units are defined for alpha = 0 designs");
  if (!(intensity_fwhm_fs > 0.0)) throw InvalidParameter("intensity FWHM must be positive");
  PhysicalConfig cfg;
  cfg.intensity_fwhm_fs = intensity_fwhm_fs;
  PhysicalUnits u;
  u.t_fs = cfg.t_unit_fs();
  u.omega0_rad_per_fs = p.omega0 / u.t_fs;
  return u;
}

double peak_intensity(double omega_peak_rad_per_s, double dipole_debye) {
  if (!(omega_peak_rad_per_s > 0.0) || !(dipole_debye > 0.0))
    throw InvalidParameter("peak intensity needs positive Rabi frequency and dipole");
  const double field = constants::hbar * omega_peak_rad_per_s / (dipole_debye * constants::debye);
  const double w_per_m2 = 0.5 * constants::speed_of_light * constants::epsilon0 * field * field;
  return w_per_m2 * 1e-4 * 1e-9;  // W/m^2 -> GW/cm^2
}

std::vector<Complex> ComplexField::samples() const {
  std::vector<Complex> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::polar(peak * envelope[i], phase[i]);
  return out;
}

std::vector<Complex> SpectralField::samples() const {
  std::vector<Complex> out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) out[i] = std::polar(scale * amplitude[i], phase[i]);
  return out;
}

double carrier_frequency(const Schedule& s, Channel channel, const PhysicalConfig& cfg) {
  const FieldPoint at0 = s.field_at(0.0);
  const double t_fs = cfg.t_unit_fs();
  if (channel == Channel::pump) return cfg.omega2 - cfg.omega1 - at0.delta_1 / t_fs;
  return cfg.omega2 - cfg.omega3 + (at0.delta_2 - at0.delta_1) / t_fs;
}

ComplexField instantaneous_phase(const Schedule& s, Channel channel, const PhysicalConfig& cfg,
                                 const ShaperGrid& grid) {
  return instantaneous_phase(s, channel, cfg, grid, s.field_at(0.0).delta_1);
}

ComplexField instantaneous_phase(const Schedule& s, Channel channel, const PhysicalConfig& cfg,
                                 const ShaperGrid& grid, double carrier_detuning) {
  cfg.validate();
  require_constant_two_photon(s);
  if (grid.n < 4 || grid.n % 2 != 0) throw InvalidParameter("shaper grid size must be even and >= 4");
  const int n = grid.n;
  const double h = 2.0 * grid.half_width_t / n;
  const std::size_t center = static_cast<std::size_t>(n / 2);

  std::vector<double> t(n), omega(n), nu(n);
  for (int k = 0; k < n; ++k) {
    t[k] = (k - n / 2) * h;
    const FieldPoint p = s.field_at(t[k]);
    omega[k] = channel == Channel::pump ? p.omega_p : p.omega_s;
    nu[k] = carrier_detuning - p.delta_1;
  }
  // phi(t) = int_0^t nu, cumulative trapezoid outward from t = 0.
  std::vector<double> phi(n, 0.0);
  for (std::size_t k = center + 1; k < t.size(); ++k) phi[k] = phi[k - 1] + 0.5 * h * (nu[k] + nu[k - 1]);
  for (std::size_t k = center; k-- > 0;) phi[k] = phi[k + 1] - 0.5 * h * (nu[k] + nu[k + 1]);

  const double t_fs = cfg.t_unit_fs();
  const double peak = *std::max_element(omega.begin(), omega.end());
  ComplexField f;
  f.t.resize(n);
  f.envelope.resize(n);
  f.frequency.resize(n);
  for (int k = 0; k < n; ++k) {
    f.t[k] = t[k] * t_fs;
    f.envelope[k] = peak > 0.0 ? omega[k] / peak : 0.0;
    f.frequency[k] = nu[k] / t_fs;
  }
  f.phase = std::move(phi);
  f.peak = peak / t_fs;
  return f;
}

SpectralField to_spectrum(const ComplexField& f) {
  const int n = static_cast<int>(f.t.size());
  if (n < 4 || n % 2 != 0) throw InvalidParameter("spectrum needs an even number of samples");
  if (f.envelope.front() > kEdgeTolerance || f.envelope.back() > kEdgeTolerance)
    throw WindowingViolation("field has not decayed below 1e-6 of its peak at the window edges");

  const double dt = f.t[1] - f.t[0];
  const double t0 = f.t[0];
  const double dw = 2.0 * kPi / (n * dt);

  Fft fft(n, FFTW_FORWARD);
  const std::vector<Complex> e = f.samples();
  std::copy(e.begin(), e.end(), fft.data());
  fft.execute();

  SpectralField sf;
  sf.t0 = t0;
  sf.dt = dt;
  sf.omega.resize(n);
  std::vector<Complex> spec(n);
  for (int j = 0; j < n; ++j) {
    const int m = j - n / 2;  // ascending frequency index
    const double w = m * dw;
    sf.omega[j] = w;
    spec[j] = dt * std::polar(1.0, -w * t0) * fft.data()[(m + n) % n];
  }
  std::vector<double> mag(n), raw(n);
  for (int j = 0; j < n; ++j) {
    mag[j] = std::abs(spec[j]);
    raw[j] = std::arg(spec[j]);
  }
  const std::size_t ipk = argmax(mag);
  sf.scale = mag[ipk];
  sf.amplitude.resize(n);
  for (int j = 0; j < n; ++j) sf.amplitude[j] = sf.scale > 0.0 ? mag[j] / sf.scale : 0.0;
  sf.phase = unwrap_from(raw, ipk);
  return sf;
}

ComplexField to_temporal(const SpectralField& sf) {
  const int n = static_cast<int>(sf.omega.size());
  if (n < 4 || n % 2 != 0) throw InvalidParameter("spectrum needs an even number of samples");
  const double dw = sf.omega_step();
  for (int j = 1; j < n; ++j)
    if (std::abs(sf.omega[j] - sf.omega[j - 1] - dw) > 1e-9 * std::abs(dw))
      throw InvalidParameter("spectral grid must be uniform");

  Fft fft(n, FFTW_BACKWARD);
  const std::vector<Complex> spec = sf.samples();
  for (int j = 0; j < n; ++j) {
    const int m = j - n / 2;
    fft.data()[(m + n) % n] = spec[j] * std::polar(1.0, sf.omega[j] * sf.t0);
  }
  fft.execute();
  std::vector<double> t(n);
  std::vector<Complex> e(n);
  const double norm = 1.0 / (n * sf.dt);
  for (int k = 0; k < n; ++k) {
    t[k] = sf.t0 + k * sf.dt;
    e[k] = fft.data()[k] * norm;
  }
  return field_from_samples(std::move(t), e);
}

Band full_band(const SpectralField& sf) {
  const double dw = sf.omega_step();
  return {sf.omega.front() - 0.5 * dw, sf.omega.back() + 0.5 * dw};
}

double seed_amplitude(double omega, double seed_fwhm_fs) {
  return std::exp(-omega * omega * seed_fwhm_fs * seed_fwhm_fs / (8.0 * std::numbers::ln2));
}

Band seed_band(double seed_fwhm_fs, double threshold) {
  if (!(seed_fwhm_fs > 0.0) || !(threshold > 0.0 && threshold < 1.0))
    throw InvalidParameter("seed band needs positive FWHM and threshold in (0, 1)");
  const double w = std::sqrt(8.0 * std::numbers::ln2 * std::log(1.0 / threshold)) / seed_fwhm_fs;
  return {-w, w};
}

SpectralField pixelize(const SpectralField& sf, int pixels, const Band& band) {
  if (pixels < 2) throw InvalidParameter("pixelization needs at least 2 pixels");
  if (!(band.hi > band.lo)) throw InvalidParameter("pixel band must have positive width");
  const std::size_t n = sf.omega.size();
  const double width = (band.hi - band.lo) / pixels;

  std::vector<int> owner(n, -1);
  std::vector<double> amp_sum(pixels, 0.0), phase_sum(pixels, 0.0);
  std::vector<int> count(pixels, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = sf.omega[j];
    if (w < band.lo || w >= band.hi) continue;
    const int p = std::min(pixels - 1, static_cast<int>(std::floor((w - band.lo) / width)));
    owner[j] = p;
    amp_sum[p] += sf.amplitude[j];
    phase_sum[p] += sf.phase[j];
    ++count[p];
  }

  SpectralField out = sf;
  out.pixel_count = pixels;
  out.pixels.clear();
  for (int p = 0; p < pixels; ++p) {
    if (count[p] == 0) continue;
    out.pixels.push_back({p, band.lo + p * width, band.lo + (p + 1) * width, amp_sum[p] / count[p],
                          phase_sum[p] / count[p], count[p]});
  }
  std::vector<int> slot(pixels, -1);
  for (std::size_t k = 0; k < out.pixels.size(); ++k) slot[out.pixels[k].index] = static_cast<int>(k);
  for (std::size_t j = 0; j < n; ++j) {
    if (owner[j] < 0) {
      out.amplitude[j] = 0.0;
      continue;
    }
    const Pixel& px = out.pixels[slot[owner[j]]];
    out.amplitude[j] = px.amplitude;
    out.phase[j] = px.phase;
  }
  return out;
}

SeedMask seed_mask(const SpectralField& sf, double seed_fwhm_fs, const Band& band) {
  const std::size_t n = sf.omega.size();
  SeedMask mask;
  mask.transmission.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = sf.omega[j];
    if (w < band.lo || w >= band.hi) continue;
    mask.scale = std::max(mask.scale, sf.amplitude[j] / seed_amplitude(w, seed_fwhm_fs));
  }
  if (!(mask.scale > 0.0)) return mask;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = sf.omega[j];
    const double seed = seed_amplitude(w, seed_fwhm_fs);
    const double shaped = sf.amplitude[j] / mask.scale;
    const bool inside = w >= band.lo && w < band.hi;
    if (!inside && sf.amplitude[j] > kSeedThreshold) ++mask.clipped_bins;
    mask.transmission[j] = inside && seed > 0.0 ? std::min(1.0, shaped / seed) : 0.0;
  }
  return mask;
}

double temporal_energy(const ComplexField& f) {
  if (f.t.size() < 2) return 0.0;
  const double dt = f.t[1] - f.t[0];
  double sum = 0.0;
  for (double a : f.envelope) sum += a * a;
  return sum * f.peak * f.peak * dt;
}

double spectral_energy(const SpectralField& sf) {
  double sum = 0.0;
  for (double a : sf.amplitude) sum += a * a;
  return sum * sf.scale * sf.scale * sf.omega_step() / (2.0 * kPi);
}

Schedule recovered_schedule(const ComplexField& pump, const ComplexField& stokes, double t_unit_fs,
                            double carrier_detuning, double two_photon_detuning, double t_span) {
  const std::size_t n = pump.t.size();
  if (stokes.t.size() != n || n < 4) throw InvalidParameter("pump and Stokes grids differ");

  // Hold instantaneous frequencies where a channel is effectively dark.
  auto reliable = [n](const ComplexField& f) {
    std::vector<double> nu = f.frequency;
    const std::size_t ipk = argmax(f.envelope);
    for (std::size_t i = ipk + 1; i < n; ++i)
      if (f.envelope[i] < kReliableEnvelope) nu[i] = nu[i - 1];
    for (std::size_t i = ipk; i-- > 0;)
      if (f.envelope[i] < kReliableEnvelope) nu[i] = nu[i + 1];
    return nu;
  };
  const std::vector<double> nu_p = reliable(pump);
  const std::vector<double> nu_s = reliable(stokes);

  std::vector<double> t;
  std::vector<FieldPoint> samples;
  const double limit = t_span * (1.0 + 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const double tt = pump.t[i] / t_unit_fs;
    if (std::abs(tt) > limit) continue;
    t.push_back(tt);
    samples.push_back({pump.peak * pump.envelope[i] * t_unit_fs, stokes.peak * stokes.envelope[i] * t_unit_fs,
                       carrier_detuning - nu_p[i] * t_unit_fs,
                       two_photon_detuning + (nu_s[i] - nu_p[i]) * t_unit_fs});
  }
  return custom_schedule(std::move(t), std::move(samples));
}

ShapingReport shape_pipeline(const DesignParams& design, const PhysicalConfig& cfg, int pixels,
                             const ShaperGrid& grid, double dt) {
  design.validate();
  cfg.validate();
  ShapingReport rep;
  rep.units = physical_units(design, cfg.intensity_fwhm_fs);
  rep.pixels = pixels;
  const double beta = std::sqrt(kPi / 2.0);
  rep.peak_rabi_rad_per_s = 0.5 * rep.units.omega0_rad_per_s() * beta;
  rep.peak_intensity_gw_cm2 = peak_intensity(rep.peak_rabi_rad_per_s, cfg.dipole_debye);

  const Schedule sched = make_parallel_schedule(design);
  rep.p3_design = propagate_final(sched, QuantumState::ground(), dt).population(2);
  rep.band = seed_band(cfg.seed_fwhm_fs);

  std::array<ComplexField, 2> ideal, quantized;
  const std::array<Channel, 2> channels{Channel::pump, Channel::stokes};
  double quant_sum = 0.0;
  int quant_bins = 0;
  for (int c = 0; c < 2; ++c) {
    rep.carriers[c] = carrier_frequency(sched, channels[c], cfg);
    rep.fields[c] = instantaneous_phase(sched, channels[c], cfg, grid);
    rep.spectra[c] = to_spectrum(rep.fields[c]);
    rep.pixelized[c] = pixelize(rep.spectra[c], pixels, rep.band);
    rep.masks[c] = seed_mask(rep.spectra[c], cfg.seed_fwhm_fs, rep.band);
    ideal[c] = to_temporal(rep.spectra[c]);
    quantized[c] = to_temporal(rep.pixelized[c]);

    const auto a = rep.spectra[c].samples();
    const auto b = rep.pixelized[c].samples();
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double w = rep.spectra[c].omega[j];
      if (w < rep.band.lo || w >= rep.band.hi) continue;
      quant_sum += std::norm((b[j] - a[j]) / rep.spectra[c].scale);
      ++quant_bins;
    }
  }
  rep.quantization_error = quant_bins > 0 ? std::sqrt(quant_sum / quant_bins) : 0.0;

  const double t_fs = rep.units.t_fs;
  const FieldPoint at0 = sched.field_at(0.0);
  const Schedule roundtrip =
      recovered_schedule(ideal[0], ideal[1], t_fs, at0.delta_1, at0.delta_2, design.t_span);
  const Schedule pixelated =
      recovered_schedule(quantized[0], quantized[1], t_fs, at0.delta_1, at0.delta_2, design.t_span);
  const double h = 2.0 * grid.half_width_t / grid.n;
  rep.p3_roundtrip = propagate_final(roundtrip, QuantumState::ground(), std::min(dt, h)).population(2);
  rep.p3_pixelized = propagate_final(pixelated, QuantumState::ground(), std::min(dt, h)).population(2);

  // Envelope and chirp fidelity over the design window.
  double env_sum = 0.0, freq_max = 0.0;
  std::size_t env_count = 0;
  for (int c = 0; c < 2; ++c) {
    const ComplexField& ref = rep.fields[c];
    const ComplexField& got = quantized[c];
    for (std::size_t i = 0; i < ref.t.size(); ++i) {
      if (std::abs(ref.t[i]) > design.t_span * t_fs) continue;
      const double diff = (got.peak * got.envelope[i] - ref.peak * ref.envelope[i]) / ref.peak;
      env_sum += diff * diff;
      ++env_count;
      if (ref.envelope[i] > 0.1)
        freq_max = std::max(freq_max, std::abs(got.frequency[i] - ref.frequency[i]) / rep.units.omega0_rad_per_fs);
    }
  }
  rep.envelope_rms_error = env_count > 0 ? std::sqrt(env_sum / env_count) : 0.0;
  rep.frequency_error = freq_max;
  return rep;
}

}  // namespace pstirap
