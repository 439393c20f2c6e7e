#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pstirap/errors.hpp"
#include "pstirap/propagator.hpp"
#include "pstirap/shaper.hpp"

using namespace pstirap;

namespace {

constexpr double kPi = std::numbers::pi;

// Unchirped Gaussian with intensity FWHM `fwhm` fs on n samples over [-w, w).
ComplexField gaussian_field(double fwhm, int n, double w, double chirp = 0.0) {
  ComplexField f;
  const double dt = 2.0 * w / n;
  for (int k = 0; k < n; ++k) {
    const double t = -w + k * dt;
    f.t.push_back(t);
    f.envelope.push_back(std::exp(-2.0 * std::numbers::ln2 * t * t / (fwhm * fwhm)));
    f.phase.push_back(chirp * t * t);
    f.frequency.push_back(2.0 * chirp * t);
  }
  f.peak = 0.02;
  return f;
}

double rms_difference(const ComplexField& a, const ComplexField& b) {
  const auto x = a.samples(), y = b.samples();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s / x.size());
}

}  // namespace

TEST_CASE("physical units of the 500 fs design") {
  const PhysicalUnits u = physical_units({5.8, 0.0}, 500.0);
  CHECK(u.t_fs == doctest::Approx(338.8).epsilon(1e-3));
  CHECK(u.omega0_rad_per_fs == doctest::Approx(0.01712).epsilon(1e-3));
  CHECK(u.omega0_thz() == doctest::Approx(17.1).epsilon(0.1 / 17.1));
  CHECK(physical_units({5.8, 0.0}, 1000.0).omega0_rad_per_fs == doctest::Approx(u.omega0_rad_per_fs / 2));
  CHECK(physical_units({5.4, 0.0}, 500.0).omega0_thz() == doctest::Approx(15.9).epsilon(0.1 / 15.9));
  CHECK_THROWS_AS(physical_units({5.8, 0.1}, 500.0), UnsupportedVariant);

  // The intensity FWHM of the fit envelope exp(-2 (t / (beta T))^2), located numerically.
  const double beta = std::sqrt(kPi / 2);
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(-2.0 * mid * mid / (beta * beta)) > 0.5 ? lo : hi) = mid;
  }
  CHECK(500.0 / (2.0 * lo) == doctest::Approx(u.t_fs).epsilon(1e-12));
}

TEST_CASE("peak intensity") {
  const double w = 0.5 * 17.1e12 * std::sqrt(kPi / 2);
  // E = hbar Omega / mu, I = c eps0 E^2 / 2, by hand.
  const double e = 1.054571817e-34 * w / 3.33564095198152e-30;
  const double expected = 0.5 * 299792458.0 * 8.8541878128e-12 * e * e / 1e13;
  CHECK(peak_intensity(w, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(peak_intensity(w, 1.0) == doctest::Approx(15.0).epsilon(0.1));
  CHECK(peak_intensity(w, 2.0) == doctest::Approx(peak_intensity(w, 1.0) / 4));
  CHECK(peak_intensity(2 * w, 1.0) == doctest::Approx(peak_intensity(w, 1.0) * 4));
  CHECK_THROWS_AS(peak_intensity(0.0, 1.0), InvalidParameter);
}

TEST_CASE("instantaneous phase of the designed fields") {
  const Schedule s = make_parallel_schedule({5.8, 0.0});
  const PhysicalConfig cfg;
  const ComplexField p = instantaneous_phase(s, Channel::pump, cfg);
  const ComplexField st = instantaneous_phase(s, Channel::stokes, cfg);
  const std::size_t mid = p.t.size() / 2;
  CHECK(p.t[mid] == 0.0);
  CHECK(p.frequency[mid] == 0.0);
  CHECK(st.frequency[mid] == 0.0);
  CHECK(p.phase == st.phase);
  CHECK(p.frequency == st.frequency);
  for (double e : p.envelope) {
    REQUIRE(e >= 0.0);
    REQUIRE(e <= 1.0);
  }
  CHECK(p.peak == doctest::Approx(s.peak_pump() / cfg.t_unit_fs()).epsilon(1e-6));

  const double t_fs = cfg.t_unit_fs();
  CHECK(carrier_frequency(s, Channel::pump, cfg) == doctest::Approx(2.4 - 5.8 / 4 / t_fs));
  CHECK(carrier_frequency(s, Channel::stokes, cfg) == doctest::Approx(2.4 - 0.3 + (5.8 / 2 - 5.8 / 4) / t_fs));
}

TEST_CASE("constant detuning gives a linear phase") {
  const Schedule s = stirap_schedule({2.0, 1.1, 1.0}, TimeGrid{5.0, 1001});
  const ComplexField f = instantaneous_phase(s, Channel::pump, PhysicalConfig{}, ShaperGrid{}, 0.3);
  for (std::size_t i = 0; i < f.t.size(); i += 97) CHECK(f.phase[i] == doctest::Approx(0.3 * f.t[i] / PhysicalConfig{}.t_unit_fs()));
}

TEST_CASE("alpha != 0 cannot be shaped") {
  const Schedule s = make_parallel_schedule({5.4, 0.1});
  CHECK_THROWS_AS(instantaneous_phase(s, Channel::pump, PhysicalConfig{}), UnsupportedVariant);
}

TEST_CASE("transform-limited Gaussian has a Gaussian spectrum and flat phase") {
  const ComplexField f = gaussian_field(100.0, 4096, 1000.0);
  const SpectralField sf = to_spectrum(f);
  for (std::size_t j = 0; j < sf.omega.size(); ++j) {
    const double expect = seed_amplitude(sf.omega[j], 100.0);
    REQUIRE(std::abs(sf.amplitude[j] - expect) < 1e-12);
    if (expect > 1e-3) REQUIRE(std::abs(sf.phase[j]) < 1e-9);
  }
  // Peak of E~ is peak * tau sqrt(pi / (2 ln 2)).
  CHECK(sf.scale == doctest::Approx(0.02 * 100.0 * std::sqrt(kPi / (2.0 * std::numbers::ln2))).epsilon(1e-12));
}

TEST_CASE("transform pair: Parseval and exact inverse") {
  for (double chirp : {0.0, 2e-4, -7e-4}) {
    const ComplexField f = gaussian_field(150.0, 8192, 2000.0, chirp);
    const SpectralField sf = to_spectrum(f);
    CHECK(std::abs(spectral_energy(sf) - temporal_energy(f)) <= 1e-9 * temporal_energy(f));
    CHECK(rms_difference(to_temporal(sf), f) <= 1e-9 * f.peak);
  }
  const Schedule s = make_parallel_schedule({5.8, 0.0});
  const ComplexField p = instantaneous_phase(s, Channel::pump, PhysicalConfig{});
  const SpectralField sp = to_spectrum(p);
  CHECK(std::abs(spectral_energy(sp) - temporal_energy(p)) <= 1e-9 * temporal_energy(p));
  CHECK(rms_difference(to_temporal(sp), p) <= 1e-9 * p.peak);
}

TEST_CASE("fields that do not decay inside the window are rejected") {
  const ComplexField f = gaussian_field(800.0, 1024, 1000.0);
  CHECK_THROWS_AS(to_spectrum(f), WindowingViolation);
}

TEST_CASE("pixelization") {
  const Schedule s = make_parallel_schedule({5.8, 0.0});
  const SpectralField sf = to_spectrum(instantaneous_phase(s, Channel::pump, PhysicalConfig{}));
  const int n = static_cast<int>(sf.omega.size());

  const SpectralField ident = pixelize(sf, n, full_band(sf));
  CHECK(ident.amplitude == sf.amplitude);
  CHECK(ident.phase == sf.phase);
  CHECK(ident.pixels.size() == sf.omega.size());

  const Band band = seed_band(100.0);
  CHECK(seed_amplitude(band.hi, 100.0) == doctest::Approx(1e-4));
  for (int pixels : {8, 64, 320, n}) {
    const SpectralField px = pixelize(sf, pixels, band);
    CHECK(spectral_energy(px) <= spectral_energy(sf) * (1.0 + 1e-12));
    CHECK(px.pixel_count == pixels);
    for (const Pixel& p : px.pixels) {
      CHECK(p.index >= 0);
      CHECK(p.index < pixels);
      CHECK(p.bins >= 1);
      CHECK(p.omega_hi - p.omega_lo == doctest::Approx((band.hi - band.lo) / pixels));
    }
    for (std::size_t j = 0; j < sf.omega.size(); ++j)
      if (sf.omega[j] < band.lo || sf.omega[j] >= band.hi) REQUIRE(px.amplitude[j] == 0.0);
  }
  const SpectralField coarse = pixelize(sf, 8, band);
  for (std::size_t j = 1; j < sf.omega.size(); ++j) {
    const int a = static_cast<int>(std::floor((sf.omega[j - 1] - band.lo) / ((band.hi - band.lo) / 8)));
    const int b = static_cast<int>(std::floor((sf.omega[j] - band.lo) / ((band.hi - band.lo) / 8)));
    if (a == b && sf.omega[j - 1] >= band.lo && sf.omega[j] < band.hi)
      REQUIRE(coarse.amplitude[j] == coarse.amplitude[j - 1]);
  }
  CHECK_THROWS_AS(pixelize(sf, 1, band), InvalidParameter);
}

TEST_CASE("seed mask only attenuates") {
  const Schedule s = make_parallel_schedule({5.8, 0.0});
  const SpectralField sf = to_spectrum(instantaneous_phase(s, Channel::stokes, PhysicalConfig{}));
  const Band band = seed_band(100.0);
  const SeedMask m = seed_mask(sf, 100.0, band);
  CHECK(m.clipped_bins == 0);
  CHECK(m.scale > 0.0);
  for (std::size_t j = 0; j < sf.omega.size(); ++j) {
    REQUIRE(m.transmission[j] >= 0.0);
    REQUIRE(m.transmission[j] <= 1.0);
  }

  // A spectrum wider than the seed cannot be produced without clipping.
  const SpectralField wide = to_spectrum(gaussian_field(20.0, 8192, 1000.0));
  CHECK(seed_mask(wide, 100.0, band).clipped_bins > 0);
}

TEST_CASE("end-to-end shaping roundtrip") {
  const DesignParams d{5.8, 0.0};
  const ShapingReport rep = shape_pipeline(d, PhysicalConfig{}, 320);
  CHECK(rep.units.omega0_thz() == doctest::Approx(17.1).epsilon(0.1 / 17.1));
  CHECK(rep.peak_intensity_gw_cm2 == doctest::Approx(15.0).epsilon(0.1));
  CHECK(rep.p3_design == doctest::Approx(0.995).epsilon(0.003));
  CHECK(std::abs(rep.p3_roundtrip - rep.p3_design) < 1e-6);
  CHECK(std::abs(rep.p3_pixelized - rep.p3_design) < 1e-3);
  CHECK(rep.envelope_rms_error < 0.01);
  CHECK(rep.frequency_error < 0.01);
  CHECK(rep.masks[0].clipped_bins == 0);
  CHECK(rep.masks[1].clipped_bins == 0);

  const ShapingReport full = shape_pipeline(d, PhysicalConfig{}, ShaperGrid{}.n);
  CHECK(full.quantization_error == 0.0);

  const ShapingReport coarse = shape_pipeline(d, PhysicalConfig{}, 8);
  MESSAGE("8-pixel roundtrip: P3 = " << coarse.p3_pixelized << ", envelope RMS error = " << coarse.envelope_rms_error);
  CHECK(coarse.quantization_error > rep.quantization_error);
}
