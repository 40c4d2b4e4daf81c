#include "prppsm/scenario_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "prppsm/error.hpp"

namespace prppsm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: '" + std::string(s) + "'");
}

// "a, b, c" or "start:step:stop" (stop inclusive).
std::vector<double> parse_snr_list(std::string_view s) {
  std::vector<double> out;
  if (s.find(':') != std::string_view::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("SNR range must be start:step:stop");
    const double start = parse_double(parts[0]);
    const double step = parse_double(parts[1]);
    const double stop = parse_double(parts[2]);
    if (!(step > 0.0)) throw ConfigError("SNR range step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  for (auto part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<std::string_view, Enum>, N>& table,
                std::string_view what) {
  text = trim(text);
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, Scheme>, 4> kSchemes{{
    {"sm", Scheme::kSm},
    {"prpp", Scheme::kPrpp},
    {"prpp_sm", Scheme::kPrppSm},
    {"prpp_sm_ablation", Scheme::kPrppSmAblation},
}};
constexpr std::array<std::pair<std::string_view, DetectorKind>, 4> kDetectors{{
    {"ml", DetectorKind::kMl},
    {"lsd", DetectorKind::kLsd},
    {"symbol_flip_las", DetectorKind::kSymbolFlipLas},
    {"mmse_only", DetectorKind::kMmseOnly},
}};
constexpr std::array<std::pair<std::string_view, LsdInit>, 3> kInits{{
    {"mmse", LsdInit::kMmse},
    {"random", LsdInit::kRandom},
    {"truth", LsdInit::kTruth},
}};
constexpr std::array<std::pair<std::string_view, Fading>, 2> kFadings{{
    {"rayleigh", Fading::kRayleigh},
    {"awgn", Fading::kAwgn},
}};

constexpr std::string_view kCsvHeader =
    "snr_db,frames,bits,bit_errors,ber,avg_iterations,avg_neighbor_evals";

}  // namespace

std::string_view to_string(Scheme scheme) { return enum_name(scheme, kSchemes); }
std::string_view to_string(DetectorKind detector) { return enum_name(detector, kDetectors); }
std::string_view to_string(LsdInit init) { return enum_name(init, kInits); }
std::string_view to_string(Fading fading) { return enum_name(fading, kFadings); }

Scheme parse_scheme(std::string_view text) { return parse_enum(text, kSchemes, "scheme"); }
DetectorKind parse_detector(std::string_view text) {
  return parse_enum(text, kDetectors, "detector");
}
LsdInit parse_lsd_init(std::string_view text) { return parse_enum(text, kInits, "lsd_init"); }
Fading parse_fading(std::string_view text) { return parse_enum(text, kFadings, "fading"); }

Scenario parse_scenario(std::istream& in) {
  Scenario scn;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t, std::less<>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      if (key == "name") {
        scn.name = std::string(value);
      } else if (key == "scheme") {
        scn.scheme = parse_scheme(value);
      } else if (key == "n_t") {
        scn.n_t = parse_uint(value);
      } else if (key == "n_r") {
        scn.n_r = parse_uint(value);
      } else if (key == "p") {
        scn.p = parse_uint(value);
      } else if (key == "alphabet") {
        scn.alphabet = Alphabet::make(value).name();
      } else if (key == "detector") {
        scn.detector = parse_detector(value);
      } else if (key == "lsd_init") {
        scn.lsd_init = parse_lsd_init(value);
      } else if (key == "snr_db_list") {
        scn.snr_db_list = parse_snr_list(value);
      } else if (key == "min_bit_errors") {
        scn.stopping.min_bit_errors = parse_uint(value);
      } else if (key == "max_frames") {
        scn.stopping.max_frames = parse_uint(value);
      } else if (key == "master_seed") {
        scn.master_seed = parse_uint(value);
      } else if (key == "precoder_seed") {
        scn.precoder_seed = parse_uint(value);
      } else if (key == "precoder_per_frame") {
        scn.precoder_per_frame = parse_bool(value);
      } else if (key == "fading") {
        scn.fading = parse_fading(value);
      } else if (key == "ml_cap") {
        scn.ml_cap = parse_uint(value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  scn.validate();
  return scn;
}

Scenario parse_scenario_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  try {
    return parse_scenario(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string scenario_to_text(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << '\n'
      << "scheme = " << to_string(s.scheme) << '\n'
      << "n_t = " << s.n_t << '\n'
      << "n_r = " << s.n_r << '\n'
      << "p = " << s.p << '\n'
      << "alphabet = " << s.alphabet << '\n'
      << "detector = " << to_string(s.detector) << '\n'
      << "lsd_init = " << to_string(s.lsd_init) << '\n'
      << "snr_db_list = ";
  for (std::size_t k = 0; k < s.snr_db_list.size(); ++k) {
    out << (k ? ", " : "") << format_double(s.snr_db_list[k]);
  }
  out << '\n'
      << "min_bit_errors = " << s.stopping.min_bit_errors << '\n'
      << "max_frames = " << s.stopping.max_frames << '\n'
      << "master_seed = " << s.master_seed << '\n'
      << "precoder_seed = " << s.precoder_seed << '\n'
      << "precoder_per_frame = " << (s.precoder_per_frame ? "true" : "false") << '\n'
      << "fading = " << to_string(s.fading) << '\n'
      << "ml_cap = " << s.ml_cap << '\n';
  return out.str();
}

void write_curve_csv(const BerCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << kCsvHeader << '\n';
  for (const BerPoint& p : curve.points) {
    out << format_double(p.snr_db) << ',' << p.frames << ',' << p.bits << ',' << p.bit_errors
        << ',' << format_double(p.ber) << ',' << format_double(p.avg_iterations) << ','
        << format_double(p.avg_neighbor_evals) << '\n';
  }
}

BerCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw ConfigError(path.string() + ": unexpected CSV header");
  }
  BerCurve curve;
  curve.scenario_name = path.stem().string();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 7 columns");
    }
    BerPoint p;
    p.snr_db = parse_double(f[0]);
    p.frames = parse_uint(f[1]);
    p.bits = parse_uint(f[2]);
    p.bit_errors = parse_uint(f[3]);
    p.ber = parse_double(f[4]);
    p.avg_iterations = parse_double(f[5]);
    p.avg_neighbor_evals = parse_double(f[6]);
    curve.points.push_back(p);
  }
  return curve;
}

void write_curve_sidecar(const BerCurve& curve, const std::filesystem::path& path) {
  nlohmann::json j;
  j["scenario_name"] = curve.scenario_name;
  j["scenario_digest"] = curve.scenario_digest;
  j["scenario"] = curve.scenario_text;
  j["master_seed"] = curve.master_seed;
  j["wall_seconds"] = curve.wall_seconds;
  j["points"] = nlohmann::json::array();
  for (const BerPoint& p : curve.points) {
    j["points"].push_back({{"snr_db", p.snr_db},
                           {"frames", p.frames},
                           {"bits", p.bits},
                           {"bit_errors", p.bit_errors},
                           {"antenna_bit_errors", p.antenna_bit_errors},
                           {"symbol_bit_errors", p.symbol_bit_errors},
                           {"ber", p.ber},
                           {"avg_iterations", p.avg_iterations},
                           {"avg_neighbor_evals", p.avg_neighbor_evals}});
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace prppsm
