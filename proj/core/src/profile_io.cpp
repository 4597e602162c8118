#include "soliton/profile_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soliton/cones.hpp"
#include "soliton/errors.hpp"
#include "soliton/rotgeom.hpp"

namespace soliton {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ProfileMetadata metadata_of(const ProfileSolution& p) {
  ProfileMetadata m;
  m.n = p.n();
  if (p.speed.is<SigmaKRoot>()) {
    m.speed = "sigma-k";
    m.k = p.speed.as<SigmaKRoot>().k;
  } else {
    m.speed = "harmonic";
    m.equation = to_string(p.harmonic_equation);
  }
  m.startup_slope = p.startup_slope;
  m.startup_radius = p.startup_radius;
  m.r_max = p.r_max;
  m.blowup_radius = p.blowup_radius;
  m.blowup_bracket = p.blowup_bracket;
  m.status = to_string(p.status);
  m.tolerances = p.tolerances;
  m.diagnostics = p.diagnostics;
  return m;
}

std::vector<ProfileRow> profile_rows(const ProfileSolution& p) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ProfileRow> rows;
  rows.reserve(p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    const auto& s = p.samples[i];
    const CurvatureVector lambda = graph_curvatures(p.jet(i), p.n());
    const double t = tilt(s.du);
    double g = nan;
    if (speed_domain_contains(p.speed, lambda)) g = eval_speed(p.speed, lambda);
    rows.push_back(ProfileRow{s.r, s.u, s.du, s.ddu, lambda[0], lambda[1], g, t, g - t});
  }
  return rows;
}

void write_profile_csv(std::ostream& out, const ProfileSolution& profile) {
  out << kProfileCsvHeader << '\n';
  for (const auto& row : profile_rows(profile)) {
    const double v[] = {row.r, row.u, row.du, row.ddu, row.lambda1, row.lambda2, row.gamma, row.tilt, row.residual};
    for (int i = 0; i < 9; ++i) out << (i ? "," : "") << format_double(v[i]);
    out << '\n';
  }
}

namespace {

double parse_field(const std::string& text, int line, int column) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || errno == ERANGE) {
    std::ostringstream os;
    os << "column " << column << ": '" << text << "' is not a number";
    throw ParseError(os.str(), line);
  }
  return v;
}

}  // namespace

std::vector<ProfileRow> read_profile_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty file: missing header", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kProfileCsvHeader) throw ParseError("expected header '" + std::string(kProfileCsvHeader) + "'", 1);

  std::vector<ProfileRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[9];
    std::istringstream fields(line);
    std::string field;
    int count = 0;
    while (std::getline(fields, field, ',')) {
      if (count == 9) throw ParseError("more than 9 fields", line_no);
      v[count] = parse_field(field, line_no, count + 1);
      ++count;
    }
    if (count != 9) throw ParseError("expected 9 fields, found " + std::to_string(count), line_no);
    if (!rows.empty() && !(v[0] > rows.back().r)) throw ParseError("radii must be strictly increasing", line_no);
    rows.push_back(ProfileRow{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  if (rows.empty()) throw ParseError("no samples", line_no);
  return rows;
}

std::string metadata_json(const ProfileMetadata& m) {
  ordered_json j;
  j["n"] = m.n;
  j["speed"] = m.speed;
  j["k"] = m.k ? ordered_json(*m.k) : ordered_json(nullptr);
  if (!m.equation.empty()) j["equation"] = m.equation;
  j["startup_slope"] = m.startup_slope;
  j["startup_radius"] = m.startup_radius;
  j["r_max"] = m.r_max;
  j["blowup_radius"] = m.blowup_radius ? ordered_json(*m.blowup_radius) : ordered_json(nullptr);
  j["blowup_bracket"] = m.blowup_bracket;
  j["status"] = m.status;
  j["tolerances"] = {{"rtol", m.tolerances.rtol},
                     {"atol", m.tolerances.atol},
                     {"blowup_threshold", m.tolerances.blowup_threshold}};
  if (!m.diagnostics.empty()) j["diagnostics"] = m.diagnostics;
  return j.dump(2) + "\n";
}

ProfileMetadata parse_metadata_json(const std::string& text) {
  ProfileMetadata m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.n = j.at("n").get<int>();
    m.speed = j.at("speed").get<std::string>();
    if (!j.at("k").is_null()) m.k = j.at("k").get<int>();
    m.equation = j.value("equation", std::string());
    m.startup_slope = j.at("startup_slope").get<double>();
    m.startup_radius = j.at("startup_radius").get<double>();
    m.r_max = j.value("r_max", 0.0);
    if (!j.at("blowup_radius").is_null()) m.blowup_radius = j.at("blowup_radius").get<double>();
    m.blowup_bracket = j.value("blowup_bracket", 0.0);
    m.status = j.at("status").get<std::string>();
    const auto& t = j.at("tolerances");
    m.tolerances.rtol = t.at("rtol").get<double>();
    m.tolerances.atol = t.at("atol").get<double>();
    m.tolerances.blowup_threshold = t.at("blowup_threshold").get<double>();
    m.diagnostics = j.value("diagnostics", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metadata: ") + e.what());
  }
  if (m.speed != "sigma-k" && m.speed != "harmonic") throw ParseError("metadata: unknown speed '" + m.speed + "'");
  if (m.speed == "sigma-k" && !m.k) throw ParseError("metadata: sigma-k profile without k");
  return m;
}

ProfileSolution profile_from(const ProfileMetadata& m, const std::vector<ProfileRow>& rows) {
  SpeedSpec speed = m.speed == "sigma-k" ? SpeedSpec::sigma_k(m.n, *m.k) : SpeedSpec::harmonic(m.n);
  ProfileSolution p(std::move(speed));
  p.startup_slope = m.startup_slope;
  p.startup_radius = m.startup_radius;
  p.r_max = m.r_max;
  p.blowup_radius = m.blowup_radius;
  p.blowup_bracket = m.blowup_bracket;
  p.tolerances = m.tolerances;
  p.diagnostics = m.diagnostics;
  p.harmonic_equation = m.equation == "geometric" ? HarmonicEquation::geometric : HarmonicEquation::published;
  if (m.status == "completed") p.status = ProfileStatus::completed;
  else if (m.status == "blew_up") p.status = ProfileStatus::blew_up;
  else if (m.status == "step_failure") p.status = ProfileStatus::step_failure;
  else throw ParseError("metadata: unknown status '" + m.status + "'");
  p.samples.reserve(rows.size());
  for (const auto& r : rows) p.samples.push_back(ProfileSample{r.r, r.u, r.du, r.ddu});
  return p;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path out = csv;
  out.replace_extension(".json");
  return out;
}

void save_profile(const ProfileSolution& profile, const std::filesystem::path& csv) {
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  write_profile_csv(out, profile);
  std::ofstream meta(sidecar_path(csv), std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write " + sidecar_path(csv).string());
  meta << metadata_json(metadata_of(profile));
}

ProfileSolution load_profile(const std::filesystem::path& csv) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw ParseError("cannot open " + csv.string());
  const auto rows = read_profile_csv(in);
  std::ifstream meta(sidecar_path(csv), std::ios::binary);
  if (!meta) throw ParseError("missing metadata sidecar " + sidecar_path(csv).string());
  std::stringstream text;
  text << meta.rdbuf();
  try {
    return profile_from(parse_metadata_json(text.str()), rows);
  } catch (const ParameterError& e) {
    throw ParseError(std::string("metadata: ") + e.what());
  }
}

}  // namespace soliton
