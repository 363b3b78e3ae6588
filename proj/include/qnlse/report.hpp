#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qnlse/integrators.hpp"
#include "qnlse/residuals.hpp"

namespace qnlse {

using ReportValue = std::variant<double, std::int64_t, bool, std::string>;

/// Flat, ordered key/value record. Serializes to `key,value` CSV or to one
/// JSON object with the same keys in the same order.
class Report {
 public:
  void add(std::string key, ReportValue value);
  void add(const std::string& prefix, const ResidualReport& residual);

  const std::vector<std::pair<std::string, ReportValue>>& entries() const {
    return entries_;
  }
  const ReportValue* find(const std::string& key) const;

  std::string to_csv() const;
  std::string to_json() const;

  /// Parses the output of to_csv / to_json. Throws std::invalid_argument on
  /// malformed input.
  static Report from_csv(const std::string& text);
  static Report from_json(const std::string& text);

 private:
  std::vector<std::pair<std::string, ReportValue>> entries_;
};

/// Shortest text that names the same double: 17 significant digits.
std::string format_number(double value);

/// `x,t,re,im` header and one row per grid point.
std::string frame_to_csv(const WaveField& frame);

/// Polylines of Re, Im and modulus against x.
std::string frame_to_svg(const WaveField& frame, const std::string& title);

/// Polylines of several named curves sharing one x axis.
std::string curves_to_svg(const std::vector<double>& x,
                          const std::vector<std::pair<std::string, std::vector<double>>>& curves,
                          const std::string& title);

/// frame_000000.csv, frame_000001.csv, ...
std::string frame_file_name(std::size_t index);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qnlse
