#include "grassflow/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "grassflow/rng.hpp"

namespace grassflow::io {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

[[noreturn]] void fail(const std::string& origin, const std::string& reason) {
  throw BadInput(origin, reason);
}

long require_int(const Json& j, const char* key, const std::string& origin) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(origin, std::string("missing integer field \"") + key + "\"");
  return j[key].get<long>();
}

Eigen::VectorXd require_array(const Json& j, const char* key, long expect,
                              const std::string& origin) {
  if (!j.contains(key) || !j[key].is_array())
    fail(origin, std::string("missing array field \"") + key + "\"");
  const auto& arr = j[key];
  if (static_cast<long>(arr.size()) != expect)
    fail(origin, std::string("field \"") + key + "\" must hold " +
                     std::to_string(expect) + " numbers, got " +
                     std::to_string(arr.size()));
  Eigen::VectorXd v(expect);
  for (long i = 0; i < expect; ++i) {
    if (!arr[i].is_number())
      fail(origin, std::string("field \"") + key + "\" has a non-number entry");
    v(i) = arr[i].get<double>();
    if (!std::isfinite(v(i)))
      fail(origin, std::string("field \"") + key + "\" has a non-finite entry");
  }
  return v;
}

Matrix reshape_row_major(const Eigen::VectorXd& flat, long rows, long cols) {
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = flat(i * cols + j);
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Json finite_or_null(double x) {
  if (std::isfinite(x)) return Json(x);
  return Json(nullptr);
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(path, "invalid JSON");
  return j;
}

LinearCurve read_curve(const Json& j, const std::string& origin) {
  const long p = require_int(j, "p", origin);
  const long q = require_int(j, "q", origin);
  if (p < 1 || q < 1) fail(origin, "p and q must be >= 1");
  const long entries = (p + q) * p;
  Matrix e = reshape_row_major(require_array(j, "E", entries, origin), p + q, p);
  Matrix d = reshape_row_major(require_array(j, "D", entries, origin), p + q, p);
  try {
    return LinearCurve(std::move(e), std::move(d));
  } catch (const RankDeficient&) {
    fail(origin, "E must have full column rank");
  }
}

LinearCurve read_curve_file(const std::string& path) {
  return read_curve(read_json_file(path), path);
}

BundleMapSample read_bundle_map(const Json& j, const std::string& origin) {
  if (j.contains("real_debug") && j["real_debug"].is_boolean() &&
      j["real_debug"].get<bool>()) {
    const long p = require_int(j, "p", origin);
    const long q = require_int(j, "q", origin);
    if (p < 1 || q < 1) fail(origin, "p and q must be >= 1");
    Matrix a = reshape_row_major(require_array(j, "A", q * p, origin), q, p);
    return BundleMapSample::from_real(std::move(a));
  }
  const long m = require_int(j, "m", origin);
  const long n = require_int(j, "n", origin);
  if (m < 1 || n < 1) fail(origin, "m and n must be >= 1");
  const Eigen::VectorXd re = require_array(j, "re", n * m, origin);
  const Eigen::VectorXd im = require_array(j, "im", n * m, origin);
  ComplexMatrix a(n, m);
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < m; ++k)
      a(i, k) = std::complex<double>(re(i * m + k), im(i * m + k));
  return BundleMapSample::from_complex(std::move(a));
}

BundleMapSample read_bundle_map_file(const std::string& path) {
  return read_bundle_map(read_json_file(path), path);
}

namespace {

std::function<BundleMapSample(const GridPoint&)> make_generator(
    const Json& g, const std::string& origin, std::uint64_t seed) {
  if (!g.contains("name") || !g["name"].is_string())
    fail(origin, "generator needs a \"name\"");
  const std::string name = g["name"].get<std::string>();

  const auto base_map = [&]() -> BundleMapSample {
    if (!g.contains("base")) fail(origin, "generator needs a \"base\" map");
    return read_bundle_map(g["base"], origin);
  };

  if (name == "constant") {
    BundleMapSample base = base_map();
    return [base](const GridPoint&) { return base; };
  }
  if (name == "phase") {
    BundleMapSample base = base_map();
    if (base.real_mode)
      fail(origin, "phase generator needs a complex base map");
    return [base](const GridPoint& gp) {
      const std::complex<double> phase =
          std::polar(1.0, kTwoPi * gp.x.at(0));
      return BundleMapSample::from_complex(phase * base.a);
    };
  }
  if (name == "sine_scale") {
    BundleMapSample base = base_map();
    const long axis = g.contains("axis") ? g["axis"].get<long>() : 0;
    const double freq =
        g.contains("frequency") ? g["frequency"].get<double>() : 1.0;
    return [base, axis, freq](const GridPoint& gp) {
      const double f = std::sin(kTwoPi * freq * gp.x.at(axis));
      return base.scaled(f);
    };
  }
  if (name == "random") {
    const long m = require_int(g, "m", origin);
    const long n = require_int(g, "n", origin);
    if (m < 1 || n < 1) fail(origin, "m and n must be >= 1");
    const Rng rng = Rng(seed).stream(0x66616d696cull);
    return [rng, m, n](const GridPoint& gp) {
      Rng cell = rng.stream(static_cast<std::uint64_t>(gp.flat));
      return BundleMapSample::from_complex(cell.gaussian_complex(n, m));
    };
  }
  fail(origin, "unknown generator \"" + name + "\"");
}

}  // namespace

MapFamily read_family(const Json& j, const std::string& origin,
                      std::uint64_t seed) {
  if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].empty())
    fail(origin, "missing \"grid\" array of axis sizes");
  std::vector<int> shape;
  for (const auto& s : j["grid"]) {
    if (!s.is_number_integer()) fail(origin, "grid sizes must be integers");
    shape.push_back(s.get<int>());
  }
  BaseGrid grid = [&] {
    try {
      return BaseGrid(shape);
    } catch (const InvalidArgument& e) {
      fail(origin, e.what());
    }
  }();

  if (j.contains("samples")) {
    const auto& arr = j["samples"];
    if (!arr.is_array() ||
        static_cast<long>(arr.size()) != grid.total_cells())
      fail(origin, "\"samples\" must hold one map per grid cell");
    std::vector<BundleMapSample> samples;
    samples.reserve(arr.size());
    for (const auto& s : arr) samples.push_back(read_bundle_map(s, origin));
    for (const BundleMapSample& s : samples)
      if (s.p() != samples.front().p() || s.q() != samples.front().q() ||
          s.real_mode != samples.front().real_mode)
        fail(origin, "family samples have differing fiber dimensions");
    return MapFamily{grid, std::move(samples)};
  }
  if (j.contains("generator")) {
    try {
      return build_family(grid, make_generator(j["generator"], origin, seed));
    } catch (const InconsistentFibers& e) {
      fail(origin, e.what());
    }
  }
  fail(origin, "family needs either \"samples\" or \"generator\"");
}

MapFamily read_family_file(const std::string& path, std::uint64_t seed) {
  return read_family(read_json_file(path), path, seed);
}

Json curve_json(const LinearCurve& c) {
  Json j;
  j["p"] = c.dim();
  j["q"] = c.ambient() - c.dim();
  j["E"] = matrix_to_json(c.e);
  j["D"] = matrix_to_json(c.d);
  return j;
}

Json partition_json(const PartitionReport& p) {
  Json j;
  j["roots"] = p.roots;
  Json ivs = Json::array();
  for (const Interval& iv : p.intervals) {
    Json e;
    e["lower"] = finite_or_null(iv.lower);
    e["upper"] = finite_or_null(iv.upper);
    ivs.push_back(e);
  }
  j["intervals"] = ivs;
  Json poly = Json::array();
  for (Eigen::Index i = 0; i < p.poly.size(); ++i) poly.push_back(p.poly(i));
  j["poly"] = poly;
  return j;
}

Json curve_report_json(const CurveReport& r) {
  Json j;
  j["total_length"] = r.total_length;
  j["max_speed"] = r.max_speed;
  j["max_curvature"] =
      r.max_curvature ? Json(*r.max_curvature) : Json(nullptr);
  j["partition"] = partition_json(r.partition);
  Json mono = Json::array();
  for (const MonotonicityVerdict& v : r.monotonicity) {
    Json e;
    e["lower"] = finite_or_null(v.interval.lower);
    e["upper"] = finite_or_null(v.interval.upper);
    e["probe"] = v.probe;
    e["max_violation"] = v.max_violation;
    e["ok"] = v.ok;
    mono.push_back(e);
  }
  j["monotonicity"] = mono;
  return j;
}

Json atomicity_json(const AtomicityReport& r, const BaseGrid& grid) {
  Json j;
  j["grid"] = grid.shape;
  j["cells"] = grid.total_cells();
  j["cell_volume"] = grid.cell_volume();
  j["sup_length"] = r.sup_length;
  j["mean_length"] = r.mean_length;
  j["measure_estimate"] = r.measure_estimate;
  j["zero_locus_cells"] = r.zero_locus_cells;
  return j;
}

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string atomicity_csv(const AtomicityReport& r, const BaseGrid& grid) {
  std::string out;
  for (int k = 0; k < grid.nu(); ++k) out += "i" + std::to_string(k) + ",";
  for (int k = 0; k < grid.nu(); ++k) out += "x" + std::to_string(k) + ",";
  out += "length\n";
  for (long flat = 0; flat < grid.total_cells(); ++flat) {
    for (int idx : grid.multi_index(flat)) out += std::to_string(idx) + ",";
    for (double x : grid.center(flat)) out += format_double(x) + ",";
    out += format_double(r.lengths.at(flat)) + "\n";
  }
  return out;
}

std::string lengths_csv(const std::vector<double>& lengths) {
  std::string out = "index,length\n";
  for (std::size_t i = 0; i < lengths.size(); ++i)
    out += std::to_string(i) + "," + format_double(lengths[i]) + "\n";
  return out;
}

Json verify_json(const VerifySummary& s) {
  Json j;
  j["seed"] = s.seed;
  j["max_dim"] = s.max_dim;
  j["all_pass"] = s.all_pass;
  Json checks = Json::array();
  for (const CheckResult& c : s.checks) {
    Json e;
    e["index"] = c.index;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["measured"] = c.measured;
    e["tolerance"] = c.tolerance;
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BadInput(path, "cannot open for writing");
    out << content;
    if (!out.good()) {
      out.close();
      fs::remove(tmp);
      throw BadInput(path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw BadInput(path, "rename failed: " + ec.message());
  }
}

}  // namespace grassflow::io
