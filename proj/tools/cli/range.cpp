#include "cli/range.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace poltyrev::cli {

namespace {

constexpr std::size_t kMaxTerms = 1'000'000;

double parse_number(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void append_span(std::string_view item, std::vector<double>& out) {
  const auto parts = split(item, ':');
  if (parts.size() == 1) {
    out.push_back(parse_number(parts[0]));
    return;
  }
  if (parts.size() > 3) throw std::invalid_argument("bad range '" + std::string(item) + "'");
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  if (b < a) throw std::invalid_argument("range end below start in '" + std::string(item) + "'");
  const std::string_view step_text = parts.size() == 3 ? parts[2] : std::string_view("1");
  const std::size_t before = out.size();
  if (!step_text.empty() && step_text.front() == 'x') {
    const double ratio = parse_number(step_text.substr(1));
    if (!(ratio > 1.0) || !(a > 0.0)) {
      throw std::invalid_argument("geometric range needs start > 0 and ratio > 1");
    }
    // Index-based terms avoid drift from repeated multiplication.
    for (std::size_t k = 0;; ++k) {
      const double v = a * std::pow(ratio, static_cast<double>(k));
      if (v > b * (1.0 + 1e-12)) break;
      out.push_back(v);
      if (out.size() - before > kMaxTerms) throw std::invalid_argument("range too long");
    }
    return;
  }
  const double step = parse_number(step_text);
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  for (std::size_t k = 0;; ++k) {
    const double v = a + step * static_cast<double>(k);
    if (v > b + 1e-12 * std::max(1.0, std::fabs(b))) break;
    out.push_back(v);
    if (out.size() - before > kMaxTerms) throw std::invalid_argument("range too long");
  }
}

}  // namespace

std::vector<double> parse_real_range(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty range");
  std::vector<double> out;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty item in list '" + std::string(text) + "'");
    append_span(item, out);
  }
  return out;
}

std::vector<int> parse_int_range(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty range");
  std::vector<int> out;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty item in list '" + std::string(text) + "'");
    const bool geometric = item.find(":x") != std::string_view::npos;
    std::vector<double> terms;
    append_span(item, terms);
    for (double v : terms) {
      const double r = std::round(v);
      // Only geometric terms are rounded; literal values must be integers.
      if (!geometric && std::fabs(v - r) > 1e-9) {
        throw std::invalid_argument("not an integer in '" + std::string(item) + "'");
      }
      if (std::fabs(r) > 2e9) throw std::invalid_argument("integer out of range");
      const int k = static_cast<int>(r);
      if (out.empty() || out.back() != k) out.push_back(k);
    }
  }
  return out;
}

}  // namespace poltyrev::cli
