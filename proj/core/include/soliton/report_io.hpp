#pragma once

#include <iosfwd>
#include <string>

#include "soliton/cones.hpp"
#include "soliton/picard.hpp"
#include "soliton/speeds.hpp"
#include "soliton/verifier.hpp"

namespace soliton {

// Pretty-printed JSON with a fixed key order; non-finite numbers become null.

std::string to_json(const VerificationReport& report);
std::string to_json(const PropertyReport& report);
std::string to_json(const PinchingEstimate& estimate);
std::string to_json(const LipschitzEstimate& estimate);
/// {n, R, m, tol, relaxation, converged, iterations: [...], fixed_point_csv_path}
std::string to_json(const PicardResult& result, const std::string& fixed_point_csv_path);

/// "r,w" rows at 17 significant digits.
void write_grid_csv(std::ostream& out, const GridFunction& grid);

}  // namespace soliton
