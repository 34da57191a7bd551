#pragma once

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cantor::cli {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// RFC 4180 writer: CRLF line ends, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> names) {
    std::vector<std::string> row(names.begin(), names.end());
    write(row);
  }

  void write(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << quote(fields[i]);
    }
    out_ << "\r\n";
  }

  static std::string field(std::uint64_t v) { return std::to_string(v); }
  static std::string field(double v) { return format_double(v); }
  static std::string field(bool v) { return v ? "true" : "false"; }
  static std::string field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  std::ostream& out_;
};

/// Parses one RFC 4180 record per line (no embedded newlines); accepts LF or CRLF.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace cantor::cli
