#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soliton/profiles.hpp"

namespace soliton {

/// One CSV row: r,u,du,ddu,lambda1,lambda2,gamma,tilt,residual.
/// lambda2 is the repeated curvature λ_2 = … = λ_n; gamma and residual are NaN outside Γ.
struct ProfileRow {
  double r, u, du, ddu, lambda1, lambda2, gamma, tilt, residual;
};

struct ProfileMetadata {
  int n = 0;
  std::string speed;  // "sigma-k" or "harmonic"
  std::optional<int> k;
  std::string equation;  // harmonic only: "published" or "geometric"
  double startup_slope = 0.0;
  double startup_radius = 0.0;
  double r_max = 0.0;
  std::optional<double> blowup_radius;
  double blowup_bracket = 0.0;
  std::string status;
  ProfileTolerances tolerances;
  std::string diagnostics;
};

ProfileMetadata metadata_of(const ProfileSolution& profile);
std::vector<ProfileRow> profile_rows(const ProfileSolution& profile);

inline constexpr const char* kProfileCsvHeader = "r,u,du,ddu,lambda1,lambda2,gamma,tilt,residual";

void write_profile_csv(std::ostream& out, const ProfileSolution& profile);
/// Throws ParseError carrying the 1-based line number of the first bad line.
std::vector<ProfileRow> read_profile_csv(std::istream& in);

std::string metadata_json(const ProfileMetadata& meta);
ProfileMetadata parse_metadata_json(const std::string& text);

/// Rebuilds a solution from metadata and the r,u,du,ddu columns.
ProfileSolution profile_from(const ProfileMetadata& meta, const std::vector<ProfileRow>& rows);

/// The sidecar of "dir/name.csv" is "dir/name.json".
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes the CSV and its metadata sidecar.
void save_profile(const ProfileSolution& profile, const std::filesystem::path& csv);
/// Reads the CSV and its sidecar. Throws ParseError when either is missing or malformed.
ProfileSolution load_profile(const std::filesystem::path& csv);

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double x);

}  // namespace soliton
