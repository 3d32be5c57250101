#include "cauchylab/measure_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "cauchylab/error.hpp"

namespace cauchylab {

namespace {

enum class Format { csv, json };

Format format_of(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv" || ext == ".CSV") return Format::csv;
  if (ext == ".json" || ext == ".JSON") return Format::json;
  throw Error(Errc::io_error, "cannot infer measure format from '" + path.string() +
                                  "' (expected .csv or .json)");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

DiscreteMeasure validated(std::size_t dim, std::vector<double> coords, std::vector<double> weights) {
  try {
    return DiscreteMeasure(dim, std::move(coords), std::move(weights));
  } catch (const Error& e) {
    throw Error(Errc::validation_error, e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string measure_to_csv(const DiscreteMeasure& mu) {
  std::string out;
  for (std::size_t a = 0; a < mu.dim(); ++a) out += "x" + std::to_string(a + 1) + ",";
  out += "weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (double c : mu.point(i)) out += format_double(c) + ",";
    out += format_double(mu.weight(i)) + "\n";
  }
  return out;
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  std::string out = "{\"dim\": " + std::to_string(mu.dim()) + ", \"points\": [";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out += i ? ", [" : "[";
    auto p = mu.point(i);
    for (std::size_t a = 0; a < p.size(); ++a) out += (a ? ", " : "") + format_double(p[a]);
    out += "]";
  }
  out += "], \"weights\": [";
  for (std::size_t i = 0; i < mu.size(); ++i) out += (i ? ", " : "") + format_double(mu.weight(i));
  out += "]}\n";
  return out;
}

DiscreteMeasure measure_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t fields_per_row = 0;
  std::vector<double> coords, weights;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (view.empty()) continue;
    const auto fields = split_commas(view);
    std::vector<double> values(fields.size());
    std::size_t numeric_fields = 0;
    for (std::size_t f = 0; f < fields.size(); ++f) numeric_fields += parse_number(fields[f], values[f]) ? 1 : 0;
    if (numeric_fields != fields.size()) {
      if (first_content_line && numeric_fields == 0) {  // header row
        first_content_line = false;
        continue;
      }
      throw Error(Errc::parse_error, "malformed CSV row " + std::to_string(line_no));
    }
    first_content_line = false;
    if (fields.size() < 2) throw Error(Errc::parse_error, "CSV row " + std::to_string(line_no) + " has no coordinates");
    if (fields_per_row == 0) fields_per_row = fields.size();
    if (fields.size() != fields_per_row) {
      throw Error(Errc::parse_error, "CSV row " + std::to_string(line_no) + " has mixed dimension");
    }
    coords.insert(coords.end(), values.begin(), values.end() - 1);
    weights.push_back(values.back());
  }
  if (weights.empty()) throw Error(Errc::parse_error, "CSV holds no data rows");
  return validated(fields_per_row - 1, std::move(coords), std::move(weights));
}

DiscreteMeasure measure_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
  try {
    const auto dim = doc.at("dim").get<std::size_t>();
    const auto& pts = doc.at("points");
    const auto& ws = doc.at("weights");
    if (!pts.is_array() || !ws.is_array()) throw Error(Errc::parse_error, "points/weights must be arrays");
    if (pts.size() != ws.size()) {
      throw Error(Errc::parse_error, std::to_string(pts.size()) + " points but " + std::to_string(ws.size()) +
                                         " weights");
    }
    std::vector<double> coords, weights;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != dim) throw Error(Errc::parse_error, "point of wrong dimension");
      for (const auto& c : p) coords.push_back(c.get<double>());
    }
    for (const auto& w : ws) weights.push_back(w.get<double>());
    return validated(dim, std::move(coords), std::move(weights));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

void save_measure(const DiscreteMeasure& mu, const std::filesystem::path& path) {
  const Format fmt = format_of(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  out << (fmt == Format::csv ? measure_to_csv(mu) : measure_to_json(mu));
  if (!out) throw Error(Errc::io_error, "failed writing '" + path.string() + "'");
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
  const Format fmt = format_of(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fmt == Format::csv ? measure_from_csv(buf.str()) : measure_from_json(buf.str());
}

}  // namespace cauchylab
