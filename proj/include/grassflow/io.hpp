#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "grassflow/atomicity.hpp"
#include "grassflow/linear_curve.hpp"
#include "grassflow/verify.hpp"

namespace grassflow::io {

using Json = nlohmann::ordered_json;

/// Curve specification: {"p": int, "q": int, "E": row-major (p+q)*p numbers,
/// "D": same shape}.
LinearCurve read_curve(const Json& j, const std::string& origin);
LinearCurve read_curve_file(const std::string& path);

/// Bundle map: {"m": int, "n": int, "re": n*m, "im": n*m} or
/// {"real_debug": true, "p": int, "q": int, "A": q*p}.
BundleMapSample read_bundle_map(const Json& j, const std::string& origin);
BundleMapSample read_bundle_map_file(const std::string& path);

/// Family: {"grid": [sizes], "samples": [map, ...]} with flat row-major order,
/// or {"grid": [sizes], "generator": {"name": ..., ...}}. Built-in generators:
///   constant    {"base": map}
///   phase       {"base": complex map}        e^{2 pi i x_0} * A0
///   sine_scale  {"base": map, "axis": k, "frequency": f}   sin(2 pi f x_k) * A0
///   random      {"m": int, "n": int}         iid complex Gaussian per cell
MapFamily read_family(const Json& j, const std::string& origin,
                      std::uint64_t seed);
MapFamily read_family_file(const std::string& path, std::uint64_t seed);

Json curve_json(const LinearCurve& c);
Json partition_json(const PartitionReport& p);
Json curve_report_json(const CurveReport& r);
Json atomicity_json(const AtomicityReport& r, const BaseGrid& grid);
Json verify_json(const VerifySummary& s);

std::string atomicity_csv(const AtomicityReport& r, const BaseGrid& grid);
std::string lengths_csv(const std::vector<double>& lengths);

Json read_json_file(const std::string& path);

/// Writes to a temp file in the target directory, then renames into place, so
/// an error never leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace grassflow::io
