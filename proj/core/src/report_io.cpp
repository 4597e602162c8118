#include "soliton/report_io.hpp"

#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "soliton/profile_io.hpp"

namespace soliton {

using nlohmann::ordered_json;

namespace {

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json named(const NamedValues& values) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : values) {
    // Counts travel through the same list as measurements.
    if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15)
      j[k] = static_cast<long long>(v);
    else
      j[k] = number(v);
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const VerificationReport& report) {
  ordered_json j;
  j["profile"] = report.profile ? ordered_json::parse(metadata_json(*report.profile)) : ordered_json(nullptr);
  if (!report.context.empty()) {
    ordered_json ctx = ordered_json::object();
    for (const auto& [k, v] : report.context) ctx[k] = v;
    j["context"] = ctx;
  }
  j["passed"] = report.passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["tolerance"] = number(c.tolerance);
    e["worst_violation"] = std::isinf(c.worst_violation) ? ordered_json("inf") : number(c.worst_violation);
    if (c.witness) {
      ordered_json w;
      w[c.witness->coordinate] = number(c.witness->at);
      w["values"] = named(c.witness->values);
      e["witness"] = w;
    } else {
      e["witness"] = nullptr;
    }
    if (!c.stats.empty()) e["stats"] = named(c.stats);
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return dump(j);
}

std::string to_json(const PropertyReport& report) {
  ordered_json j;
  j["speed"] = report.speed;
  j["n"] = report.n;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  ordered_json props = ordered_json::array();
  for (const auto& o : report.outcomes) {
    ordered_json e;
    e["property"] = to_string(o.property);
    e["satisfied"] = o.failures == 0;
    e["tolerance"] = number(o.tolerance);
    e["passes"] = o.passes;
    e["failures"] = o.failures;
    e["worst"] = number(o.worst);
    e["witness"] = o.witness ? ordered_json(*o.witness) : ordered_json(nullptr);
    props.push_back(e);
  }
  j["properties"] = props;
  j["total_failures"] = report.total_failures();
  return dump(j);
}

std::string to_json(const PinchingEstimate& e) {
  ordered_json j;
  j["gradient_pinching"] = number(e.gradient_pinching);
  j["hessian_sup"] = number(e.hessian_sup);
  j["accepted"] = e.accepted;
  j["skipped"] = e.skipped;
  return dump(j);
}

std::string to_json(const LipschitzEstimate& e) {
  ordered_json j;
  j["C"] = number(e.C);
  j["R2"] = std::isinf(e.R2) ? ordered_json("inf") : number(e.R2);
  j["argmax"] = {{"r", e.argmax_r}, {"w", e.argmax_w}};
  j["fd_relative_error"] = number(e.fd_relative_error);
  j["samples"] = e.samples;
  return dump(j);
}

std::string to_json(const PicardResult& r, const std::string& fixed_point_csv_path) {
  ordered_json j;
  j["n"] = r.n;
  j["R"] = r.fixed_point.R;
  j["m"] = r.fixed_point.m();
  j["tol"] = r.tol;
  j["relaxation"] = r.relaxation;
  j["converged"] = r.converged;
  j["max_contraction_ratio"] = r.max_contraction_ratio();
  ordered_json its = ordered_json::array();
  for (const auto& it : r.iterations) {
    ordered_json e;
    e["sup_change"] = number(it.sup_change);
    e["contraction_ratio"] = it.contraction_ratio ? number(*it.contraction_ratio) : ordered_json(nullptr);
    e["clamp_events"] = it.clamp_events;
    its.push_back(e);
  }
  j["iterations"] = its;
  j["fixed_point_csv_path"] = fixed_point_csv_path;
  return dump(j);
}

void write_grid_csv(std::ostream& out, const GridFunction& grid) {
  out << "r,w\n";
  for (int i = 0; i < grid.m(); ++i) out << format_double(grid.node(i)) << ',' << format_double(grid.values[i]) << '\n';
}

}  // namespace soliton
