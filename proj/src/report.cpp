#include "qnlse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qnlse {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string value_to_text(const ReportValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_field(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Integers, booleans and numbers are recognised; anything else stays text.
ReportValue text_to_value(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  std::int64_t i = 0;
  auto [iend, iec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (iec == std::errc() && iend == s.data() + s.size()) return i;
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (!s.empty() && end == s.c_str() + s.size()) return d;
  return s;
}

ordered_json value_to_json(const ReportValue& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

std::string svg_polyline(const std::vector<double>& x, const std::vector<double>& y,
                         double x0, double x1, double y0, double y1,
                         const char* colour) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 360.0;
  constexpr double kMargin = 40.0;
  std::ostringstream out;
  out << "  <polyline fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"1.5\" points=\"";
  char buffer[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double px = kMargin + (x[i] - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
    const double py =
        kHeight - kMargin - (y[i] - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    std::snprintf(buffer, sizeof(buffer), "%s%.3f,%.3f", i ? " " : "", px, py);
    out << buffer;
  }
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void Report::add(std::string key, ReportValue value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add(const std::string& prefix, const ResidualReport& r) {
  add(prefix + ".equation", r.equation_tag);
  add(prefix + ".max_abs", r.max_abs);
  add(prefix + ".l2", r.l2);
  add(prefix + ".worst_x", r.worst_x);
  add(prefix + ".worst_t", r.worst_t);
  add(prefix + ".n_samples", static_cast<std::int64_t>(r.n_samples));
}

const ReportValue* Report::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Report::to_csv() const {
  std::string out = "key,value\n";
  for (const auto& [k, v] : entries_) {
    out += csv_field(k) + "," + csv_field(value_to_text(v)) + "\n";
  }
  return out;
}

std::string Report::to_json() const {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : entries_) {
    j[k] = value_to_json(v);
  }
  return j.dump(2) + "\n";
}

Report Report::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "key,value") {
    throw std::invalid_argument("report CSV must start with a key,value header");
  }
  Report report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          fields.back() += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.emplace_back();
      } else {
        fields.back() += c;
      }
    }
    if (fields.size() != 2 || quoted) {
      throw std::invalid_argument("malformed report CSV row: " + line);
    }
    report.add(fields[0], text_to_value(fields[1]));
  }
  return report;
}

Report Report::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("report JSON must be an object");
  }
  Report report;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_boolean()) {
      report.add(it.key(), v.get<bool>());
    } else if (v.is_number_integer()) {
      report.add(it.key(), v.get<std::int64_t>());
    } else if (v.is_number()) {
      report.add(it.key(), v.get<double>());
    } else if (v.is_string()) {
      report.add(it.key(), text_to_value(v.get<std::string>()));
    } else {
      throw std::invalid_argument("report JSON values must be scalars");
    }
  }
  return report;
}

std::string frame_to_csv(const WaveField& frame) {
  std::string out = "x,t,re,im\n";
  const std::string t = format_number(frame.t);
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    out += format_number(frame.grid.x(i)) + "," + t + "," +
           format_number(frame.values[i].real()) + "," +
           format_number(frame.values[i].imag()) + "\n";
  }
  return out;
}

std::string curves_to_svg(
    const std::vector<double>& x,
    const std::vector<std::pair<std::string, std::vector<double>>>& curves,
    const std::string& title) {
  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e"};
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -y0;
  for (const auto& [name, y] : curves) {
    for (double v : y) {
      if (std::isfinite(v)) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
    }
  }
  if (!(y1 > y0)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double x0 = x.empty() ? 0.0 : x.front();
  const double x1 = x.empty() || x.back() == x0 ? x0 + 1.0 : x.back();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
         "viewBox=\"0 0 640 360\">\n"
      << "  <rect width=\"640\" height=\"360\" fill=\"white\"/>\n"
      << "  <text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n"
      << "  <rect x=\"40\" y=\"40\" width=\"560\" height=\"280\" fill=\"none\" "
         "stroke=\"black\"/>\n";
  std::size_t index = 0;
  for (const auto& [name, y] : curves) {
    const char* colour = kColours[index % std::size(kColours)];
    out << svg_polyline(x, y, x0, x1, y0, y1, colour);
    out << "  <text x=\"" << 50 + 90 * index << "\" y=\"352\" font-size=\"12\" fill=\""
        << colour << "\">" << name << "</text>\n";
    ++index;
  }
  out << "  <text x=\"40\" y=\"335\" font-size=\"10\">" << format_number(x0)
      << "</text>\n"
      << "  <text x=\"600\" y=\"335\" font-size=\"10\" text-anchor=\"end\">"
      << format_number(x1) << "</text>\n"
      << "  <text x=\"36\" y=\"44\" font-size=\"10\" text-anchor=\"end\">"
      << format_number(y1) << "</text>\n"
      << "  <text x=\"36\" y=\"320\" font-size=\"10\" text-anchor=\"end\">"
      << format_number(y0) << "</text>\n"
      << "</svg>\n";
  return out.str();
}

std::string frame_to_svg(const WaveField& frame, const std::string& title) {
  std::vector<double> x;
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> modulus;
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    x.push_back(frame.grid.x(i));
    re.push_back(frame.values[i].real());
    im.push_back(frame.values[i].imag());
    modulus.push_back(std::abs(frame.values[i]));
  }
  return curves_to_svg(x, {{"Re", re}, {"Im", im}, {"|u|", modulus}}, title);
}

std::string frame_file_name(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "frame_%06zu.csv", index);
  return buffer;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

}  // namespace qnlse
