#include "pstirap/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pstirap/errors.hpp"

namespace pstirap {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_provenance(std::ostream& os, const std::string& config_json) {
  if (!config_json.empty()) os << "# config: " << config_json << '\n';
}

void write_schedule_csv(std::ostream& os, const Schedule& s) {
  os << "t,omega_p,omega_s,delta1,delta2,w_minus,w_0,w_plus\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_double(s.t()[i]) << ',' << format_double(s.omega_p()[i]) << ','
       << format_double(s.omega_s()[i]) << ',' << format_double(s.delta_1()[i]) << ','
       << format_double(s.delta_2()[i]) << ',' << format_double(s.w_minus()[i]) << ','
       << format_double(s.w_0()[i]) << ',' << format_double(s.w_plus()[i]) << '\n';
  }
}

void write_population_csv(std::ostream& os, const std::vector<double>& t,
                          const std::array<std::vector<double>, 3>& populations,
                          const std::array<std::vector<double>, 3>* adiabatic) {
  const bool have_ad = adiabatic && (*adiabatic)[0].size() == t.size();
  os << (have_ad ? "t,p1,p2,p3,ad_minus,ad_0,ad_plus\n" : "t,p1,p2,p3\n");
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_double(t[i]);
    for (int k = 0; k < 3; ++k) os << ',' << format_double(populations[k][i]);
    if (have_ad)
      for (int k = 0; k < 3; ++k) os << ',' << format_double((*adiabatic)[k][i]);
    os << '\n';
  }
}

void write_population_csv(std::ostream& os, const PropagationResult& r) {
  write_population_csv(os, r.t, r.populations, &r.adiabatic_populations);
}

void write_sweep_header(std::ostream& os) { os << "strategy,control,area_over_pi,fluence_T,p3,deviation\n"; }

void write_sweep_rows(std::ostream& os, const SweepResult& r) {
  const std::string tag = r.strategy.tag();
  for (const SweepPoint& p : r.points)
    os << tag << ',' << format_double(p.control) << ',' << format_double(p.area / std::numbers::pi) << ','
       << format_double(p.fluence) << ',' << format_double(p.p3_final) << ',' << format_double(p.deviation)
       << '\n';
}

void write_spectrum_csv(std::ostream& os, const SpectralField& sf) {
  os << "omega_rel,amplitude,phase\n";
  for (std::size_t j = 0; j < sf.omega.size(); ++j)
    os << format_double(sf.omega[j]) << ',' << format_double(sf.amplitude[j]) << ','
       << format_double(sf.phase[j]) << '\n';
}

void write_pixel_csv(std::ostream& os, const SpectralField& sf) {
  os << "pixel_index,omega_lo,omega_hi,amplitude,phase\n";
  for (const Pixel& p : sf.pixels)
    os << p.index << ',' << format_double(p.omega_lo) << ',' << format_double(p.omega_hi) << ','
       << format_double(p.amplitude) << ',' << format_double(p.phase) << '\n';
}

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t lineno) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t end = std::min(line.find(',', pos), line.size());
    double v = 0.0;
    const char* first = line.data() + pos;
    const char* last = line.data() + end;
    while (first < last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || !std::isfinite(v))
      throw ConfigError("schedule CSV line " + std::to_string(lineno) + ": bad number");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

Schedule read_schedule_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> t;
  std::vector<FieldPoint> samples;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("t,omega_p,omega_s,delta1,delta2", 0) != 0)
        throw ConfigError("schedule CSV must start with t,omega_p,omega_s,delta1,delta2");
      header = true;
      continue;
    }
    const std::vector<double> row = parse_row(line, lineno);
    if (row.size() < 5) throw ConfigError("schedule CSV line " + std::to_string(lineno) + ": too few columns");
    t.push_back(row[0]);
    samples.push_back({row[1], row[2], row[3], row[4]});
  }
  if (!header) throw ConfigError("schedule CSV is empty");
  try {
    return custom_schedule(std::move(t), std::move(samples));
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("schedule CSV: ") + e.what());
  }
}

Schedule read_schedule_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schedule CSV " + path);
  return read_schedule_csv(in);
}

}  // namespace pstirap
