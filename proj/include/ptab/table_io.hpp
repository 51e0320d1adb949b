#pragma once

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ptab/json_codec.hpp"
#include "ptab/table.hpp"

namespace ptab {

enum class TableFormat { json, csv };

/// Runtime-mode table: the file decides whether entries are exact or float.
using AnyTable = std::variant<ExactTable, FloatTable>;

inline NumericMode mode_of(const AnyTable& t) {
  return std::holds_alternative<ExactTable>(t) ? NumericMode::exact
                                               : NumericMode::floating;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline bool looks_like_rational(const std::string& token) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) return is_integer_token(token);
  return is_integer_token(token.substr(0, slash)) &&
         is_integer_token(token.substr(slash + 1));
}

inline double parse_double_token(const std::string& token, const std::string& context) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw SyntaxError(context + ": invalid number '" + token + "'");
  return value;
}

template <class S>
S parse_scalar_token(const std::string& token, const std::string& context) {
  if constexpr (scalar_traits<S>::is_exact) {
    if (!looks_like_rational(token))
      throw SyntaxError(context + ": exact-mode entry '" + token +
                        "' is not an integer or num/den string");
    return parse_rational(token);
  } else {
    return parse_double_token(token, context);
  }
}

struct RawCsv {
  std::vector<std::string> state_names;
  std::vector<Measurement> measurements;
  std::vector<std::vector<std::string>> value_rows;  // tokens per outcome row
};

inline RawCsv read_csv_structure(const std::string& text) {
  RawCsv raw;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    for (auto& f : fields) f = trimmed(f);
    if (!have_header) {
      if (fields.size() < 3)
        throw SyntaxError("csv header needs measurement, outcome and at least one state column");
      raw.state_names.assign(fields.begin() + 2, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != raw.state_names.size() + 2)
      throw ValidationError("csv row " + std::to_string(raw.value_rows.size() + 1) +
                            " has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(raw.state_names.size() + 2));
    const std::string& meas = fields[0];
    const std::string& outcome = fields[1];
    if (raw.measurements.empty() || raw.measurements.back().name != meas) {
      for (const auto& m : raw.measurements)
        if (m.name == meas)
          throw ValidationError("measurement '" + meas + "' appears in non-adjacent csv rows");
      raw.measurements.push_back({meas, {}});
    }
    raw.measurements.back().outcomes.push_back(outcome);
    raw.value_rows.emplace_back(fields.begin() + 2, fields.end());
  }
  if (!have_header || raw.value_rows.empty())
    throw SyntaxError("csv input has no data rows");
  return raw;
}

template <class S>
BasicTable<S> table_from_csv(const RawCsv& raw, double tolerance) {
  Matrix<S> entries(static_cast<int>(raw.value_rows.size()),
                    static_cast<int>(raw.state_names.size()));
  for (std::size_t i = 0; i < raw.value_rows.size(); ++i)
    for (std::size_t j = 0; j < raw.state_names.size(); ++j)
      entries(static_cast<int>(i), static_cast<int>(j)) = parse_scalar_token<S>(
          raw.value_rows[i][j], "csv row " + std::to_string(i + 2) + ", column " +
                                    raw.state_names[j]);
  return BasicTable<S>(MeasurementLayout(raw.measurements), raw.state_names,
                       std::move(entries), tolerance);
}

template <class S>
BasicTable<S> table_from_json(const Json& doc, double tolerance) {
  if (!doc.contains("states") || !doc["states"].is_array())
    throw SyntaxError("table json needs a 'states' array");
  if (!doc.contains("measurements") || !doc["measurements"].is_array())
    throw SyntaxError("table json needs a 'measurements' array");
  if (!doc.contains("probabilities") || !doc["probabilities"].is_array())
    throw SyntaxError("table json needs a 'probabilities' array");

  std::vector<std::string> states;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) throw SyntaxError("state names must be strings");
    states.push_back(s.get<std::string>());
  }

  std::vector<Measurement> measurements;
  for (const auto& m : doc["measurements"]) {
    if (!m.is_object() || !m.contains("name") || !m.contains("outcomes"))
      throw SyntaxError("each measurement needs 'name' and 'outcomes'");
    Measurement meas;
    meas.name = m["name"].get<std::string>();
    for (const auto& o : m["outcomes"]) meas.outcomes.push_back(o.get<std::string>());
    measurements.push_back(std::move(meas));
  }

  MeasurementLayout layout(measurements);
  const auto& rows = doc["probabilities"];
  if (static_cast<int>(rows.size()) != layout.total_outcomes())
    throw ValidationError("probabilities has " + std::to_string(rows.size()) +
                          " rows but the measurements declare " +
                          std::to_string(layout.total_outcomes()) + " outcomes");
  Matrix<S> entries(layout.total_outcomes(), static_cast<int>(states.size()));
  for (int i = 0; i < entries.rows(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != entries.cols())
      throw ValidationError("probability row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(entries.cols()));
    for (int j = 0; j < entries.cols(); ++j)
      entries(i, j) = scalar_from_json<S>(
          row[j], "row " + layout.outcome_name(i) + ", state " + states[j]);
  }
  return BasicTable<S>(std::move(layout), std::move(states), std::move(entries), tolerance);
}

}  // namespace detail

/// Parses a table, deciding the numeric mode from the input (JSON
/// `numeric_mode`, or token shape for CSV) unless an override is given.
/// A float-to-exact override snaps entries at the default 1e-9 tolerance.
inline AnyTable parse_table(const std::string& text, TableFormat format,
                            std::optional<NumericMode> mode_override = {},
                            double tolerance = kDefaultTolerance) {
  NumericMode file_mode;
  AnyTable parsed = [&]() -> AnyTable {
    if (format == TableFormat::json) {
      Json doc;
      try {
        doc = Json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("json parse failure: ") + e.what());
      }
      if (!doc.is_object()) throw SyntaxError("table json must be an object");
      if (!doc.contains("numeric_mode") || !doc["numeric_mode"].is_string())
        throw SyntaxError("table json needs a 'numeric_mode' of \"exact\" or \"float\"");
      const std::string mode_str = doc["numeric_mode"].get<std::string>();
      if (mode_str == "exact") {
        file_mode = NumericMode::exact;
        return detail::table_from_json<Rational>(doc, tolerance);
      }
      if (mode_str == "float") {
        file_mode = NumericMode::floating;
        return detail::table_from_json<double>(doc, tolerance);
      }
      throw SyntaxError("unknown numeric_mode '" + mode_str + "'");
    }
    const auto raw = detail::read_csv_structure(text);
    bool all_rational = true;
    for (const auto& row : raw.value_rows)
      for (const auto& token : row)
        all_rational = all_rational && detail::looks_like_rational(token);
    if (all_rational) {
      file_mode = NumericMode::exact;
      return detail::table_from_csv<Rational>(raw, tolerance);
    }
    file_mode = NumericMode::floating;
    return detail::table_from_csv<double>(raw, tolerance);
  }();

  if (!mode_override || *mode_override == file_mode) return parsed;
  if (*mode_override == NumericMode::floating)
    return to_float(std::get<ExactTable>(parsed), tolerance);
  return snap_to_exact(std::get<FloatTable>(parsed));
}

inline AnyTable parse_table(std::istream& in, TableFormat format,
                            std::optional<NumericMode> mode_override = {},
                            double tolerance = kDefaultTolerance) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str(), format, mode_override, tolerance);
}

template <class S>
Json table_to_json(const BasicTable<S>& t) {
  Json doc;
  doc["numeric_mode"] = to_string(BasicTable<S>::mode);
  doc["states"] = t.state_names();
  Json measurements = Json::array();
  for (const auto& m : t.layout().measurements())
    measurements.push_back(Json{{"name", m.name}, {"outcomes", m.outcomes}});
  doc["measurements"] = std::move(measurements);
  doc["probabilities"] = matrix_to_json(t.entries());
  return doc;
}

template <class S>
std::string serialize_table(const BasicTable<S>& t, TableFormat format) {
  if (format == TableFormat::json) return table_to_json(t).dump(2) + "\n";
  std::ostringstream out;
  out << "measurement,outcome";
  for (const auto& s : t.state_names()) out << ',' << s;
  out << '\n';
  for (int i = 0; i < t.outcome_rows(); ++i) {
    const auto [m, local] = t.layout().locate(i);
    out << t.layout().measurement(m).name << ','
        << t.layout().measurement(m).outcomes[local];
    for (int j = 0; j < t.state_count(); ++j) out << ',' << scalar_str(t.entry(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace ptab
