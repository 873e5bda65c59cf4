#pragma once

// CSV and JSON serialization of experiment results.
//
// CSV: header row, ',' separator, '\n' line endings, floats with 17
// significant digits and '.' decimal point (locale independent), NaN as "nan".

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rindler/entanglement.hpp"
#include "rindler/errors.hpp"
#include "rindler/experiments.hpp"

namespace rindler::io {

inline constexpr std::string_view kSurveyHeader = "sample_index,inertial_negativity,extinct_flag";
inline constexpr std::string_view kSweepHeader = "r1,r2,n_rr,n_ra,n_ar,n_aa";
inline constexpr std::string_view kRadiusHeader = "sample_index,first_zero_p";

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ValidationError("csv: malformed number '" + std::string(s) + "'");
  return x;
}

inline std::size_t parse_count(std::string_view s) {
  std::size_t x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ValidationError("csv: malformed integer '" + std::string(s) + "'");
  return x;
}

// ---------------------------------------------------------------- writers

inline void write_csv(std::ostream& out, const std::vector<SurveySample>& rows) {
  out << kSurveyHeader << '\n';
  for (const auto& s : rows) out << s.index << ',' << format_double(s.inertial_negativity) << ',' << (s.extinct ? 1 : 0) << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<SweepCell>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& c : rows)
    out << format_double(c.r1) << ',' << format_double(c.r2) << ',' << format_double(c.n_rr) << ','
        << format_double(c.n_ra) << ',' << format_double(c.n_ar) << ',' << format_double(c.n_aa) << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<RadiusSample>& rows) {
  out << kRadiusHeader << '\n';
  for (const auto& s : rows) out << s.index << ',' << format_double(s.first_zero_p) << '\n';
}

inline void write_csv(std::ostream& out, const SurveyResult& r) { write_csv(out, r.samples); }
inline void write_csv(std::ostream& out, const SweepResult& r) { write_csv(out, r.cells); }
inline void write_csv(std::ostream& out, const RadiusResult& r) { write_csv(out, r.samples); }

template <class Result>
std::string to_csv(const Result& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

/// Throws IoError if the file cannot be written.
template <class Result>
void write_csv(const Result& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_csv(out, r);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------- readers

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class Row, class Parse>
std::vector<Row> read_rows(std::istream& in, std::string_view header, std::size_t n_fields, Parse parse) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw ValidationError("csv: expected header '" + std::string(header) + "'");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != n_fields) throw ValidationError("csv: wrong field count in '" + line + "'");
    rows.push_back(parse(fields));
  }
  return rows;
}

}  // namespace detail

inline std::vector<SurveySample> read_survey_csv(std::istream& in) {
  return detail::read_rows<SurveySample>(in, kSurveyHeader, 3, [](const auto& f) {
    const auto flag = parse_count(f[2]);
    if (flag > 1) throw ValidationError("csv: extinct_flag must be 0 or 1");
    return SurveySample{parse_count(f[0]), parse_double(f[1]), flag == 1};
  });
}

inline std::vector<SweepCell> read_sweep_csv(std::istream& in) {
  return detail::read_rows<SweepCell>(in, kSweepHeader, 6, [](const auto& f) {
    return SweepCell{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]),
                     parse_double(f[3]), parse_double(f[4]), parse_double(f[5])};
  });
}

inline std::vector<RadiusSample> read_radius_csv(std::istream& in) {
  return detail::read_rows<RadiusSample>(in, kRadiusHeader, 2, [](const auto& f) {
    return RadiusSample{parse_count(f[0]), parse_double(f[1])};
  });
}

// ---------------------------------------------------------------- JSON summaries

inline nlohmann::json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

inline nlohmann::json summary_json(const SurveyResult& r) {
  return {
      {"command", "survey"},
      {"seed", r.config.seed},
      {"qr", r.config.qR},
      {"ql_phase", r.config.qL_phase},
      {"extinction_point", {r.config.r1, r.config.r2}},
      {"n_samples", r.n_samples},
      {"n_entangled", r.n_entangled},
      {"n_extinct", r.n_extinct},
      {"fraction_entangled", r.fraction_entangled()},
      {"fraction_extinct_given_entangled", r.fraction_extinct_given_entangled()},
      {"histogram", {{"min", 0.0}, {"max", r.config.histogram_max}, {"counts", r.histogram}}},
  };
}

inline nlohmann::json summary_json(const SweepResult& r) {
  nlohmann::json maxima = nlohmann::json::object();
  for (auto b : kAllBipartitions) {
    double m = 0.0;
    for (const auto& c : r.cells) m = std::max(m, c[b]);
    maxima[std::string(short_name(b))] = m;
  }
  return {{"command", "sweep"}, {"qr", r.qR}, {"grid", r.grid_n}, {"cells", r.cells.size()}, {"max_negativity", maxima}};
}

inline nlohmann::json summary_json(const RadiusResult& r) {
  nlohmann::json j = {
      {"command", "radius"},
      {"seed", r.config.seed},
      {"n_samples", r.config.n_samples},
      {"p_step", r.config.p_step},
      {"p_min", json_number(r.p_min)},
      {"argmin_index", r.argmin_index ? nlohmann::json(*r.argmin_index) : nlohmann::json(nullptr)},
  };
  if (r.argmin_state) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
      for (std::size_t k = 0; k < 4; ++k) {
        rr.push_back((*r.argmin_state)(i, k).real());
        ii.push_back((*r.argmin_state)(i, k).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    j["argmin_state"] = {{"basis", kStateFileBasis}, {"re", re}, {"im", im}};
  }
  return j;
}

}  // namespace rindler::io
