#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "qkds/error.hpp"
#include "qkds/types.hpp"

namespace qkds {

struct GridSpec {
  std::vector<double> mu_values;
  std::vector<double> eta_values;
  std::vector<AttackKind> attacks;
  /// Beam splitter counts for CBSF; required when attacks contains CBSF.
  std::vector<int> cbsf_n_values;
};

inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw InputError("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  v.back() = hi;
  return v;
}

inline std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > 0.0)) throw InputError("log grid bounds must be > 0");
  auto v = linspace(std::log(lo), std::log(hi), count);
  for (auto& x : v) x = std::exp(x);
  v.front() = lo;
  v.back() = hi;
  return v;
}

namespace detail {

inline double parse_double(std::string_view s) {
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) throw InputError("not a number: '" + str + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

/// Parses "lo:hi:n" (linear), "lo:hi:n:log" (logarithmic) or "a,b,c".
inline std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw InputError("empty grid");
  if (text.find(':') != std::string_view::npos) {
    const auto p = detail::split(text, ':');
    if (p.size() < 3 || p.size() > 4 || (p.size() == 4 && p[3] != "log")) {
      throw InputError("grid must be lo:hi:n or lo:hi:n:log, got '" + std::string(text) + "'");
    }
    const double lo = detail::parse_double(p[0]);
    const double hi = detail::parse_double(p[1]);
    const double n = detail::parse_double(p[2]);
    if (n < 1 || n != std::floor(n)) throw InputError("grid point count must be a positive integer");
    return p.size() == 4 ? logspace(lo, hi, static_cast<int>(n)) : linspace(lo, hi, static_cast<int>(n));
  }
  std::vector<double> v;
  for (auto part : detail::split(text, ',')) v.push_back(detail::parse_double(part));
  return v;
}

/// Grids used for the figure datasets: 200 log-spaced eta values in [1e-3, 1].
inline GridSpec default_figure_grid() {
  GridSpec g;
  g.mu_values = {0.01, 0.1, 0.5, 1.1};
  g.eta_values = logspace(1e-3, 1.0, 200);
  return g;
}

}  // namespace qkds
