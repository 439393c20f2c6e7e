#pragma once

// Spectral amplitude/phase synthesis of the designed fields, modulator
// pixelization, and the map from dimensionless designs to laboratory units.
//
// Conventions: fields are stored at baseband relative to each channel's
// carrier omega_P(0) or omega_S(0). A ComplexField holds E(t) = peak Lambda(t)
// exp(i phi(t)) with `peak` the peak Rabi frequency in rad/fs, so |E(t)| is
// the instantaneous Rabi frequency. The spectrum is
//   E~(w) = int E(t) exp(-i w t) dt,   E(t) = (1/2pi) int E~(w) exp(i w t) dw.

#include <array>
#include <vector>

#include "pstirap/lambda_core.hpp"
#include "pstirap/pulse_design.hpp"

namespace pstirap {

/// CODATA 2018 values, SI units.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double epsilon0 = 8.8541878128e-12;   // F / m
inline constexpr double debye = 3.33564095198152e-30;  // C m (1e-21 / c)
}  // namespace constants

struct PhysicalConfig {
  // Level frequencies in rad/fs, Lambda ordering (omega2 above both).
  double omega1 = 0.0;
  double omega2 = 2.4;
  double omega3 = 0.3;
  double intensity_fwhm_fs = 500.0;
  double dipole_debye = 1.0;
  double seed_fwhm_fs = 100.0;

  void validate() const;
  /// Duration T in fs implied by the intensity FWHM of the Gaussian-fit
  /// envelopes (independent of Omega0 T).
  double t_unit_fs() const;
};

struct PhysicalUnits {
  double t_fs = 0.0;
  double omega0_rad_per_fs = 0.0;

  double omega0_rad_per_s() const { return omega0_rad_per_fs * 1e15; }
  /// Angular frequency in units of 1e12 rad/s.
  double omega0_thz() const { return omega0_rad_per_fs * 1e3; }
};

PhysicalUnits physical_units(const DesignParams& p, double intensity_fwhm_fs);

/// Peak intensity in GW/cm^2 of a field whose Rabi frequency on a transition
/// with dipole `dipole_debye` is `omega_peak_rad_per_s`: E = hbar Omega / mu,
/// I = c eps0 E^2 / 2.
double peak_intensity(double omega_peak_rad_per_s, double dipole_debye);

enum class Channel { pump, stokes };

struct ComplexField {
  std::vector<double> t;          // fs
  std::vector<double> envelope;   // Lambda in [0, 1]
  std::vector<double> phase;      // rad, unwrapped
  std::vector<double> frequency;  // d phi / dt, rad/fs
  double peak = 0.0;              // rad/fs

  std::vector<Complex> samples() const;
};

struct Pixel {
  int index = 0;
  double omega_lo = 0.0, omega_hi = 0.0;
  double amplitude = 0.0, phase = 0.0;
  int bins = 0;
};

struct SpectralField {
  std::vector<double> omega;      // rad/fs, ascending, uniform
  std::vector<double> amplitude;  // normalized to max 1
  std::vector<double> phase;      // rad, unwrapped from the peak outward
  double scale = 0.0;             // max |E~|, restores absolute units
  double t0 = 0.0;                // fs, first sample of the source time grid
  double dt = 0.0;                // fs
  int pixel_count = 0;            // 0: continuous
  std::vector<Pixel> pixels;

  std::vector<Complex> samples() const;
  double omega_step() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }
};

struct ShaperGrid {
  int n = 1 << 14;
  double half_width_t = 8.0;  // in units of T
};

/// Complex field of one channel: relative phase phi(t) = int_0^t [Delta(0) -
/// Delta(t')] dt' (both channels share the chirp when delta is constant) and
/// the normalized Rabi envelope. `carrier_detuning` overrides Delta(0).
ComplexField instantaneous_phase(const Schedule& s, Channel channel, const PhysicalConfig& cfg,
                                 const ShaperGrid& grid = {});
ComplexField instantaneous_phase(const Schedule& s, Channel channel, const PhysicalConfig& cfg,
                                 const ShaperGrid& grid, double carrier_detuning);

/// Absolute carrier omega_{0,P} = w2 - w1 - Delta(0) or omega_{0,S} = w2 - w3 + delta - Delta(0), rad/fs.
double carrier_frequency(const Schedule& s, Channel channel, const PhysicalConfig& cfg);

/// Throws WindowingViolation if |E| at either grid edge exceeds 1e-6 of peak.
SpectralField to_spectrum(const ComplexField& f);

ComplexField to_temporal(const SpectralField& sf);

struct Band {
  double lo, hi;
};

/// Whole spectral grid, one bin per pixel when pixels == grid size.
Band full_band(const SpectralField& sf);

/// Interval where the transform-limited seed amplitude exceeds `threshold`
/// of its peak.
Band seed_band(double seed_fwhm_fs, double threshold = 1e-4);

/// Normalized seed spectral amplitude exp(-w^2 tau^2 / (8 ln 2)).
double seed_amplitude(double omega, double seed_fwhm_fs);

/// Piecewise-constant masks: bins inside `band` take their pixel's mean
/// amplitude and phase; bins outside the band are blocked.
SpectralField pixelize(const SpectralField& sf, int pixels, const Band& band);

struct SeedMask {
  std::vector<double> transmission;  // in [0, 1], per bin
  double scale = 0.0;                // shaped = A / scale
  int clipped_bins = 0;              // bins with A > 1e-4 outside the band
};

/// Attenuation-only mask turning the seed spectrum into the target amplitude.
/// The target is scaled so it touches but never exceeds the seed inside the
/// band; target content outside the band cannot be produced and is counted.
SeedMask seed_mask(const SpectralField& sf, double seed_fwhm_fs, const Band& band);

/// Energy int |E|^2 dt (time) and (1/2pi) int |E~|^2 dw (frequency).
double temporal_energy(const ComplexField& f);
double spectral_energy(const SpectralField& sf);

/// Rebuilds a Lambda-system schedule on [-t_span, t_span] (units of T) from
/// re-synthesized pump and Stokes fields. Instantaneous frequencies where the
/// envelope is below 1e-6 are held from the nearest reliable sample.
Schedule recovered_schedule(const ComplexField& pump, const ComplexField& stokes, double t_unit_fs,
                            double carrier_detuning, double two_photon_detuning, double t_span);

struct ShapingReport {
  PhysicalUnits units;
  double peak_rabi_rad_per_s = 0.0;
  double peak_intensity_gw_cm2 = 0.0;
  std::array<double, 2> carriers{};  // absolute rad/fs
  std::array<ComplexField, 2> fields;
  std::array<SpectralField, 2> spectra;
  std::array<SpectralField, 2> pixelized;
  std::array<SeedMask, 2> masks;
  Band band{};
  int pixels = 0;
  double p3_design = 0.0;
  double p3_roundtrip = 0.0;
  double p3_pixelized = 0.0;
  double envelope_rms_error = 0.0;  // pixelized vs ideal, fraction of peak
  double quantization_error = 0.0;  // RMS complex spectral change inside the band
  double frequency_error = 0.0;     // max |d phi/dt - ideal| over Lambda > 0.1, units of Omega0
};

/// Design -> phase synthesis -> spectrum -> pixelization -> re-synthesis ->
/// propagation, for both channels.
ShapingReport shape_pipeline(const DesignParams& design, const PhysicalConfig& cfg, int pixels,
                             const ShaperGrid& grid = {}, double dt = 1e-3);

}  // namespace pstirap
