#include "prisparse/weight.hpp"

#include <charconv>
#include <stdexcept>

namespace prisparse {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("malformed weight '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Weight parse_weight(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Weight(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Weight(num, den);
}

std::string format_weight(const Weight& w) {
  if (w.denominator() == 1) return std::to_string(w.numerator());
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

double to_double(const Weight& w) {
  return boost::rational_cast<double>(w);
}

}  // namespace prisparse
