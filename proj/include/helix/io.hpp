#pragma once

// CSV and JSON serialization. Numbers are written in the shortest decimal
// form that reads back to the same double.

#include "helix/classify.hpp"
#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/indicatrix.hpp"
#include "helix/types.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace helix::io {

inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Reads a CSV whose header must equal `expected` exactly (a prefix match
/// is allowed when `allow_extra` is set). `source` names the input in
/// error messages.
inline Table read_table(std::istream& in, const std::vector<std::string>& expected,
                        const std::string& source, bool allow_extra = false) {
  auto where = [&](std::size_t line) { return source + ":" + std::to_string(line) + ": "; };
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw MalformedInput(source + ": empty file");
  ++lineno;
  const auto fields = split(line);
  bool ok = allow_extra ? fields.size() >= expected.size() : fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = fields[i] == expected[i];
  if (!ok) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw MalformedInput(where(lineno) + "expected header '" + want + "', got '" +
                         std::string(trim(line)) + "'");
  }

  Table t;
  for (auto f : fields) t.header.emplace_back(f);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw MalformedInput(where(lineno) + "expected " + std::to_string(t.header.size()) +
                           " fields, got " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double x = 0.0;
      const auto cell = cells[c];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw MalformedInput(where(lineno) + "cannot parse '" + std::string(cell) + "' in column " +
                             t.header[c]);
      }
      t.columns[c].push_back(x);
    }
  }
  if (t.rows() == 0) throw MalformedInput(source + ": no data rows");
  return t;
}

inline Table read_table_file(const std::string& path, const std::vector<std::string>& expected,
                             bool allow_extra = false) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_table(in, expected, path, allow_extra);
}

inline void write_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& columns) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_number(columns[c][r]);
    }
    out << '\n';
  }
}

inline void write_table_file(const std::string& path, const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_table(out, header, columns);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace detail {

inline void append_vec(std::vector<std::vector<double>>& cols, const std::vector<Vec3>& v) {
  for (int k = 0; k < 3; ++k) {
    std::vector<double> col(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) col[i] = v[i](k);
    cols.push_back(std::move(col));
  }
}

inline std::vector<Vec3> take_vec(const Table& t, std::size_t first) {
  std::vector<Vec3> out(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    out[i] = Vec3(t.columns[first][i], t.columns[first + 1][i], t.columns[first + 2][i]);
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string> kCurveHeader = {"s", "x", "y", "z"};
inline const std::vector<std::string> kProfileHeader = {"s", "kappa", "tau"};
inline const std::vector<std::string> kSphericalHeader = {"t", "x", "y", "z"};
inline const std::vector<std::string> kFramesHeader = {"s",  "Tx", "Ty", "Tz", "Nx",
                                                       "Ny", "Nz", "Bx", "By", "Bz"};

inline void write_curve(std::ostream& out, const CurveSamples& c) {
  std::vector<std::vector<double>> cols{c.s};
  detail::append_vec(cols, c.p);
  write_table(out, kCurveHeader, cols);
}

inline void write_curve_file(const std::string& path, const CurveSamples& c) {
  std::vector<std::vector<double>> cols{c.s};
  detail::append_vec(cols, c.p);
  write_table_file(path, kCurveHeader, cols);
}

inline CurveSamples curve_from_table(const Table& t) {
  CurveSamples c{t.columns[0], detail::take_vec(t, 1)};
  check_samples(c, 2);
  return c;
}

inline CurveSamples read_curve(std::istream& in, const std::string& source = "<stream>") {
  return curve_from_table(read_table(in, kCurveHeader, source));
}

inline CurveSamples read_curve_file(const std::string& path) {
  return curve_from_table(read_table_file(path, kCurveHeader));
}

inline void write_profile_file(const std::string& path, const std::vector<double>& s,
                               const std::vector<double>& kappa, const std::vector<double>& tau) {
  write_table_file(path, kProfileHeader, {s, kappa, tau});
}

inline IntrinsicProfile read_profile_file(const std::string& path) {
  const Table t = read_table_file(path, kProfileHeader);
  return IntrinsicProfile::tabulated(t.columns[0], t.columns[1], t.columns[2]);
}

/// Spherical curve plus optional named extra columns (e.g. k_g).
inline void write_spherical_file(
    const std::string& path, const SphericalCurve& sc,
    const std::vector<std::pair<std::string, std::vector<double>>>& extra = {}) {
  std::vector<std::string> header = kSphericalHeader;
  std::vector<std::vector<double>> cols{sc.t};
  detail::append_vec(cols, sc.gamma);
  for (const auto& [name, col] : extra) {
    header.push_back(name);
    cols.push_back(col);
  }
  write_table_file(path, header, cols);
}

inline SphericalCurve read_spherical_file(const std::string& path) {
  const Table t = read_table_file(path, kSphericalHeader, true);
  SphericalCurve sc{t.columns[0], detail::take_vec(t, 1)};
  check_spherical(sc);
  return sc;
}

inline void write_frames_file(const std::string& path, const std::vector<double>& s,
                              const std::vector<Vec3>& T, const std::vector<Vec3>& N,
                              const std::vector<Vec3>& B) {
  std::vector<std::vector<double>> cols{s};
  detail::append_vec(cols, T);
  detail::append_vec(cols, N);
  detail::append_vec(cols, B);
  write_table_file(path, kFramesHeader, cols);
}

// ---------------------------------------------------------------------------
// JSON

using json = nlohmann::ordered_json;

// JSON has no NaN or infinity; they become null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const Verdict& v) {
  json j;
  j["pass"] = v.pass;
  j["mean"] = number(v.stat.mean);
  j["rel_std"] = number(v.stat.rel_std);
  j["coverage"] = number(v.stat.coverage);
  j["notes"] = v.notes;
  if (!v.fitted.empty()) {
    json fitted = json::object();
    for (const auto& [k, x] : v.fitted) fitted[k] = number(x);
    j["fitted"] = fitted;
  }
  return j;
}

inline json to_json(const ClassificationReport& r) {
  json j;
  json det = json::object();
  for (const auto& [name, v] : r.detectors) det[name] = to_json(v);
  j["detectors"] = det;
  json tol = json::object();
  for (const auto& [k, x] : r.tolerances) tol[k] = number(x);
  j["tolerances"] = tol;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline json summary_json(const std::vector<double>& v) {
  json j;
  if (v.empty()) {
    j["count"] = 0;
    return j;
  }
  const auto ms = numerics::mean_std(v);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  j["count"] = v.size();
  j["mean"] = number(ms.mean);
  j["std"] = number(ms.stddev);
  j["rel_std"] = number(ms.stddev / (std::abs(ms.mean) + kEpsAbs));
  j["min"] = number(*lo);
  j["max"] = number(*hi);
  return j;
}

/// Kept apart from the payload so that reports compare equal across runs.
inline json metadata_json(const std::string& command) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  json j;
  j["command"] = command;
  j["timestamp"] = ts.str();
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace helix::io
