#ifndef CMAX_CSV_HPP
#define CMAX_CSV_HPP

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace cmax {

/// Locale-independent number formatting: shortest round-trip for floating
/// point, plain decimal for integers.
template <typename T>
std::string format_number(T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Comma-separated rows with '.' decimals, whatever the global locale.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((write_sep(first), write(fields)), ...);
    out_ << '\n';
  }

 private:
  void write_sep(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }
  void write(std::string_view s) { out_ << s; }
  void write(const char* s) { out_ << s; }
  void write(const std::string& s) { out_ << s; }
  template <typename T>
    requires std::is_arithmetic_v<T>
  void write(T v) { out_ << format_number(v); }

  std::ostream& out_;
};

}  // namespace cmax

#endif  // CMAX_CSV_HPP
