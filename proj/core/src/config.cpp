#include "frqme/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "frqme/csv.hpp"
#include "frqme/errors.hpp"

namespace frqme {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view line) {
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] != '#' && line[k] != ';') continue;
    if (k == 0 || std::isspace(static_cast<unsigned char>(line[k - 1]))) return line.substr(0, k);
  }
  return line;
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Document = std::map<std::string, Entry>;  // "section.key" -> entry

Document tokenize(std::string_view text) {
  Document doc;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (section.empty()) throw ConfigError("key outside of any [section]", line_no, key);
    const std::string full = section + "." + key;
    if (doc.count(full)) throw ConfigError("duplicate key", line_no, full);
    doc.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }
  return doc;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "units.frequency",     "units.two_pi",        "system.omega0",         "system.omega1",
      "system.alpha",        "system.tau_c_ms",     "dipolar.mode",          "dipolar.omega_d",
      "dipolar.amp_m2",      "dipolar.amp_m1",      "dipolar.amp_0",         "dipolar.amp_p1",
      "dipolar.amp_p2",      "dipolar.r",           "dipolar.theta",         "dipolar.phi",
      "dipolar.prefactor",   "bath.omega_sl",       "bath.omega_l",          "bath.m_th",
      "generators.nonsecular", "generators.system_bath", "grid.points",       "grid.t_min_s",
      "grid.t_max_s",        "plateau.rel_tol",     "plateau.window_decades", "fourier.points",
      "sweep.tau_c_ms",      "sweep.alpha",         "sweep.omega1_over_omegad", "output.dir",
      "output.svg"};
  return keys;
}

constexpr std::array<const char*, 5> kAmplitudeKeys = {"amp_m2", "amp_m1", "amp_0", "amp_p1", "amp_p2"};

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {
    for (const auto& [key, entry] : doc_)
      if (!known_keys().count(key)) throw ConfigError("unknown key", entry.line, key);
  }

  std::size_t line_of(const std::string& key) const {
    const auto it = doc_.find(key);
    return it == doc_.end() ? 0 : it->second.line;
  }

  void number(const std::string& key, double& out) const {
    if (const Entry* e = find(key)) {
      if (!parse_double(e->value, out)) throw ConfigError("expected a number, got '" + e->value + "'", e->line, key);
    }
  }

  void number(const std::string& key, std::optional<double>& out) const {
    if (find(key)) {
      double v = 0.0;
      number(key, v);
      out = v;
    }
  }

  void count(const std::string& key, std::size_t& out) const {
    if (const Entry* e = find(key)) {
      double v = 0.0;
      if (!parse_double(e->value, v) || v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ConfigError("expected a non-negative integer, got '" + e->value + "'", e->line, key);
      out = static_cast<std::size_t>(v);
    }
  }

  void flag(const std::string& key, bool& out) const {
    if (const Entry* e = find(key)) {
      if (e->value == "true" || e->value == "yes" || e->value == "1") {
        out = true;
      } else if (e->value == "false" || e->value == "no" || e->value == "0") {
        out = false;
      } else {
        throw ConfigError("expected true or false, got '" + e->value + "'", e->line, key);
      }
    }
  }

  void text(const std::string& key, std::string& out) const {
    if (const Entry* e = find(key)) out = e->value;
  }

  void list(const std::string& key, std::vector<double>& out) const {
    const Entry* e = find(key);
    if (!e) return;
    out.clear();
    std::string_view rest = e->value;
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      double v = 0.0;
      if (!parse_double(item, v)) throw ConfigError("bad list element '" + std::string(item) + "'", e->line, key);
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }

  void complex_pair(const std::string& key, Complex& out) const {
    const Entry* e = find(key);
    if (!e) return;
    std::istringstream in(e->value);
    std::string re_text, im_text, extra;
    in >> re_text >> im_text;
    double re = 0.0, im = 0.0;
    if (!parse_double(re_text, re) || (!im_text.empty() && !parse_double(im_text, im)) || (in >> extra))
      throw ConfigError("expected 're im', got '" + e->value + "'", e->line, key);
    out = {re, im};
  }

  const Entry* find(const std::string& key) const {
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &it->second;
  }

 private:
  Document doc_;
};

const char* unit_name(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::hz:
      return "Hz";
    case FrequencyUnit::mhz:
      return "MHz";
    default:
      return "kHz";
  }
}

const char* mode_name(DipolarMode m) {
  switch (m) {
    case DipolarMode::amplitudes:
      return "amplitudes";
    case DipolarMode::geometry:
      return "geometry";
    default:
      return "scalar";
  }
}

void require(bool ok, const Reader& r, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(message, r.line_of(key), key);
}

}  // namespace

double RunConfig::frequency_scale() const {
  double scale = 1.0e3;
  if (physics.unit == FrequencyUnit::hz) scale = 1.0;
  if (physics.unit == FrequencyUnit::mhz) scale = 1.0e6;
  return physics.two_pi ? kTwoPi * scale : scale;
}

SimParams RunConfig::sim_params() const {
  const double f = frequency_scale();
  SimParams p;
  p.omega0 = physics.omega0 * f;
  p.omega1 = physics.omega1 * f;
  p.alpha = physics.alpha * f;
  p.tau_c = physics.tau_c_ms * 1.0e-3;
  p.omega_sl = physics.omega_sl * f;
  p.omega_l = physics.omega_l * f;
  p.m_th = physics.m_th;
  p.include_nonsecular = physics.include_nonsecular;
  p.include_system_bath = physics.include_system_bath;
  switch (physics.dipolar_mode) {
    case DipolarMode::scalar:
      p.omega_d = scalar_dipolar_amplitudes(physics.omega_d * f);
      break;
    case DipolarMode::amplitudes:
      for (std::size_t k = 0; k < 5; ++k) p.omega_d[k] = physics.amplitudes[k] * f;
      break;
    case DipolarMode::geometry: {
      DipolarGeometry g = physics.geometry;
      g.prefactor *= f;
      p.omega_d = dipolar_amplitudes(g);
      break;
    }
  }
  p.validate();
  return p;
}

RunConfig parse_config(std::string_view text) {
  const Reader r(tokenize(text));
  RunConfig c;
  PhysicsInput& ph = c.physics;

  if (const Entry* e = r.find("units.frequency")) {
    if (e->value == "Hz") {
      ph.unit = FrequencyUnit::hz;
    } else if (e->value == "kHz") {
      ph.unit = FrequencyUnit::khz;
    } else if (e->value == "MHz") {
      ph.unit = FrequencyUnit::mhz;
    } else {
      throw ConfigError("expected Hz, kHz or MHz, got '" + e->value + "'", e->line, "units.frequency");
    }
  }
  r.flag("units.two_pi", ph.two_pi);

  r.number("system.omega0", ph.omega0);
  r.number("system.omega1", ph.omega1);
  r.number("system.alpha", ph.alpha);
  r.number("system.tau_c_ms", ph.tau_c_ms);

  if (const Entry* e = r.find("dipolar.mode")) {
    if (e->value == "scalar") {
      ph.dipolar_mode = DipolarMode::scalar;
    } else if (e->value == "amplitudes") {
      ph.dipolar_mode = DipolarMode::amplitudes;
    } else if (e->value == "geometry") {
      ph.dipolar_mode = DipolarMode::geometry;
    } else {
      throw ConfigError("expected scalar, amplitudes or geometry, got '" + e->value + "'", e->line, "dipolar.mode");
    }
  }
  r.number("dipolar.omega_d", ph.omega_d);
  for (std::size_t k = 0; k < 5; ++k) r.complex_pair(std::string("dipolar.") + kAmplitudeKeys[k], ph.amplitudes[k]);
  r.number("dipolar.r", ph.geometry.r);
  r.number("dipolar.theta", ph.geometry.theta);
  r.number("dipolar.phi", ph.geometry.phi);
  r.number("dipolar.prefactor", ph.geometry.prefactor);

  r.number("bath.omega_sl", ph.omega_sl);
  r.number("bath.omega_l", ph.omega_l);
  r.number("bath.m_th", ph.m_th);
  r.flag("generators.nonsecular", ph.include_nonsecular);
  r.flag("generators.system_bath", ph.include_system_bath);

  r.count("grid.points", c.grid.points);
  r.number("grid.t_min_s", c.grid.t_min);
  r.number("grid.t_max_s", c.grid.t_max);
  r.number("plateau.rel_tol", c.plateau.rel_tol);
  r.number("plateau.window_decades", c.plateau.window_decades);
  r.count("fourier.points", c.fourier_points);

  r.list("sweep.tau_c_ms", c.sweep.tau_c_ms);
  r.list("sweep.alpha", c.sweep.alpha);
  r.list("sweep.omega1_over_omegad", c.sweep.omega1_over_omegad);
  r.text("output.dir", c.output.directory);
  r.flag("output.svg", c.output.svg);

  require(ph.tau_c_ms > 0.0, r, "system.tau_c_ms", "must be positive");
  require(ph.omega0 > 0.0, r, "system.omega0", "must be positive");
  require(ph.m_th >= -1.0 && ph.m_th <= 1.0, r, "bath.m_th", "must lie in [-1, 1]");
  require(c.grid.points >= 3, r, "grid.points", "must be at least 3");
  require(c.fourier_points >= 64, r, "fourier.points", "must be at least 64");
  require(c.plateau.rel_tol > 0.0, r, "plateau.rel_tol", "must be positive");
  require(c.plateau.window_decades > 0.0, r, "plateau.window_decades", "must be positive");
  require(!c.output.directory.empty(), r, "output.dir", "must not be empty");
  for (double v : c.sweep.tau_c_ms) require(v > 0.0, r, "sweep.tau_c_ms", "entries must be positive");
  for (double v : c.sweep.omega1_over_omegad)
    require(v >= 0.0, r, "sweep.omega1_over_omegad", "entries must be non-negative");

  try {
    (void)c.sim_params();
  } catch (const std::invalid_argument& e) {
    std::string field = "dipolar";
    if (ph.dipolar_mode == DipolarMode::scalar) field = "dipolar.omega_d";
    throw ConfigError(e.what(), r.line_of("dipolar.mode"), field);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  const PhysicsInput& ph = c.physics;
  std::ostringstream out;
  auto num = [](double v) { return format_double(v); };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  auto list = [&num](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + num(xs[k]);
    return s;
  };

  out << "[units]\nfrequency = " << unit_name(ph.unit) << "\ntwo_pi = " << flag(ph.two_pi) << "\n\n";
  out << "[system]\nomega0 = " << num(ph.omega0) << "\nomega1 = " << num(ph.omega1) << "\nalpha = " << num(ph.alpha)
      << "\ntau_c_ms = " << num(ph.tau_c_ms) << "\n\n";
  out << "[dipolar]\nmode = " << mode_name(ph.dipolar_mode) << "\nomega_d = " << num(ph.omega_d) << "\n";
  for (std::size_t k = 0; k < 5; ++k)
    out << kAmplitudeKeys[k] << " = " << num(ph.amplitudes[k].real()) << " " << num(ph.amplitudes[k].imag()) << "\n";
  out << "r = " << num(ph.geometry.r) << "\ntheta = " << num(ph.geometry.theta) << "\nphi = " << num(ph.geometry.phi)
      << "\nprefactor = " << num(ph.geometry.prefactor) << "\n\n";
  out << "[bath]\nomega_sl = " << num(ph.omega_sl) << "\nomega_l = " << num(ph.omega_l) << "\nm_th = " << num(ph.m_th)
      << "\n\n";
  out << "[generators]\nnonsecular = " << flag(ph.include_nonsecular) << "\nsystem_bath = " << flag(ph.include_system_bath)
      << "\n\n";
  out << "[grid]\npoints = " << c.grid.points << "\n";
  if (c.grid.t_min) out << "t_min_s = " << num(*c.grid.t_min) << "\n";
  if (c.grid.t_max) out << "t_max_s = " << num(*c.grid.t_max) << "\n";
  out << "\n[plateau]\nrel_tol = " << num(c.plateau.rel_tol) << "\nwindow_decades = " << num(c.plateau.window_decades)
      << "\n\n";
  out << "[fourier]\npoints = " << c.fourier_points << "\n\n";
  out << "[sweep]\n";
  if (!c.sweep.tau_c_ms.empty()) out << "tau_c_ms = " << list(c.sweep.tau_c_ms) << "\n";
  if (!c.sweep.alpha.empty()) out << "alpha = " << list(c.sweep.alpha) << "\n";
  if (!c.sweep.omega1_over_omegad.empty()) out << "omega1_over_omegad = " << list(c.sweep.omega1_over_omegad) << "\n";
  out << "\n[output]\ndir = " << c.output.directory << "\nsvg = " << flag(c.output.svg) << "\n";
  return out.str();
}

}  // namespace frqme
