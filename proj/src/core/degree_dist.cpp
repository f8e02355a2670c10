#include "core/degree_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cpsres {

namespace {

double ipow(double z, int k) {
  double acc = 1.0;
  double base = z;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

// Shortest decimal that parses back to exactly the same double.
std::string format_fraction(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  cdf_.reserve(entries_.size());
  double acc = 0.0;
  for (const auto& [degree, fraction] : entries_) {
    acc += fraction;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

DegreeDistribution DegreeDistribution::from_coefficients(
    const std::vector<Entry>& entries) {
  if (entries.empty())
    fail(ErrorCode::empty_distribution, "degree distribution has no entries");

  std::vector<Entry> sorted = entries;
  std::sort(sorted.begin(), sorted.end());

  double sum = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto& [degree, fraction] = sorted[i];
    if (degree < 1)
      fail(ErrorCode::degree_zero,
           "degree " + std::to_string(degree) + " is below 1");
    if (i > 0 && degree == sorted[i - 1].first)
      fail(ErrorCode::invalid_argument,
           "duplicate degree " + std::to_string(degree));
    if (fraction < 0.0 || std::isnan(fraction))
      fail(ErrorCode::negative_fraction,
           "fraction for degree " + std::to_string(degree) + " is negative");
    sum += fraction;
  }
  if (std::fabs(sum - 1.0) > 1e-6)
    fail(ErrorCode::not_normalized,
         "fractions sum to " + std::to_string(sum));

  std::vector<Entry> kept;
  kept.reserve(sorted.size());
  // Rounding-level deficits stay untouched so round-trips are bit-exact.
  const double scale = std::fabs(sum - 1.0) <= 1e-12 ? 1.0 : sum;
  for (const auto& [degree, fraction] : sorted)
    if (fraction > 0.0) kept.emplace_back(degree, fraction / scale);
  if (kept.empty())
    fail(ErrorCode::empty_distribution, "all fractions are zero");
  return DegreeDistribution(std::move(kept));
}

DegreeDistribution DegreeDistribution::point_mass(int degree) {
  return from_coefficients({{degree, 1.0}});
}

double DegreeDistribution::eval(double z) const {
  if (!(z >= 0.0 && z <= 1.0))
    fail(ErrorCode::domain_error, "generating function argument outside [0,1]");
  // Pin the endpoint so downstream fixed-point identities hold exactly even
  // when the stored fractions sum to 1 only up to rounding.
  if (z == 1.0) return 1.0;
  double acc = 0.0;
  for (const auto& [degree, fraction] : entries_)
    acc += fraction * ipow(z, degree);
  return acc;
}

double DegreeDistribution::derivative(double z) const {
  if (!(z >= 0.0 && z <= 1.0))
    fail(ErrorCode::domain_error, "generating function argument outside [0,1]");
  double acc = 0.0;
  for (const auto& [degree, fraction] : entries_)
    acc += fraction * degree * ipow(z, degree - 1);
  return acc;
}

double DegreeDistribution::derivative_at_one() const {
  double acc = 0.0;
  for (const auto& [degree, fraction] : entries_) acc += fraction * degree;
  return acc;
}

double DegreeDistribution::second_derivative_at_one() const {
  double acc = 0.0;
  for (const auto& [degree, fraction] : entries_)
    acc += fraction * degree * (degree - 1);
  return acc;
}

int DegreeDistribution::sample(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    fail(ErrorCode::domain_error, "sample argument outside [0,1)");
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return entries_[static_cast<size_t>(it - cdf_.begin())].first;
}

std::string DegreeDistribution::format() const {
  if (entries_.size() == 1)
    return "z^" + std::to_string(entries_.front().first);
  std::string out;
  for (const auto& [degree, fraction] : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(degree);
    out += ':';
    out += format_fraction(fraction);
  }
  return out;
}

DegreeDistribution build_scale_free(double gamma, int k_min, int n_nodes) {
  if (!(gamma > 1.0))
    fail(ErrorCode::invalid_argument, "scale-free exponent must exceed 1");
  if (k_min < 1) fail(ErrorCode::degree_zero, "k_min is below 1");
  if (n_nodes < 2)
    fail(ErrorCode::invalid_argument, "scale-free cutoff needs n_nodes >= 2");

  const int k_max = static_cast<int>(
      std::lround(k_min * std::pow(static_cast<double>(n_nodes),
                                   1.0 / (gamma - 1.0))));
  if (k_max < k_min)
    fail(ErrorCode::degenerate_range, "degree cutoff fell below k_min");

  std::vector<DegreeDistribution::Entry> entries;
  entries.reserve(static_cast<size_t>(k_max - k_min + 1));
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) sum += std::pow(k, -gamma);
  for (int k = k_min; k <= k_max; ++k)
    entries.emplace_back(k, std::pow(k, -gamma) / sum);
  return DegreeDistribution::from_coefficients(entries);
}

namespace {

// Truncated-Poisson mean as a function of the rate, computed in log space
// so large rates stay finite.
double truncated_poisson_mean(double mu, int k_min, int k_max,
                              std::vector<double>& logw) {
  logw.clear();
  const double log_mu = std::log(mu);
  double top = -1e300;
  for (int k = k_min; k <= k_max; ++k) {
    double lw = k * log_mu - std::lgamma(k + 1.0);
    logw.push_back(lw);
    top = std::max(top, lw);
  }
  double norm = 0.0, acc = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    double w = std::exp(logw[static_cast<size_t>(k - k_min)] - top);
    norm += w;
    acc += k * w;
  }
  return acc / norm;
}

}  // namespace

DegreeDistribution build_er_truncated(double mean_degree, int k_min, int k_max) {
  if (k_min < 1) fail(ErrorCode::degree_zero, "k_min is below 1");
  if (k_min > k_max)
    fail(ErrorCode::degenerate_range, "k_min exceeds k_max");
  if (std::isnan(mean_degree) || mean_degree < k_min || mean_degree > k_max)
    fail(ErrorCode::unsolvable,
         "target mean " + std::to_string(mean_degree) +
             " is outside the degree range");

  // Exact endpoints are the limiting point masses.
  if (k_min == k_max || mean_degree == static_cast<double>(k_min))
    return DegreeDistribution::point_mass(k_min);
  if (mean_degree == static_cast<double>(k_max))
    return DegreeDistribution::point_mass(k_max);

  std::vector<double> logw;
  double lo = 1e-12, hi = 1.0;
  while (truncated_poisson_mean(hi, k_min, k_max, logw) < mean_degree) {
    hi *= 2.0;
    if (hi > 1e15)
      fail(ErrorCode::unsolvable, "rate search diverged");
  }
  double mid = hi;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    double m = truncated_poisson_mean(mid, k_min, k_max, logw);
    if (std::fabs(m - mean_degree) <= 1e-9) break;
    (m < mean_degree ? lo : hi) = mid;
  }

  truncated_poisson_mean(mid, k_min, k_max, logw);
  double top = *std::max_element(logw.begin(), logw.end());
  std::vector<DegreeDistribution::Entry> entries;
  double sum = 0.0;
  for (double lw : logw) sum += std::exp(lw - top);
  for (int k = k_min; k <= k_max; ++k)
    entries.emplace_back(
        k, std::exp(logw[static_cast<size_t>(k - k_min)] - top) / sum);
  return DegreeDistribution::from_coefficients(entries);
}

namespace {

bool parse_int(const std::string& s, int& out) {
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  out = static_cast<int>(v);
  return true;
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0';
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    parts.push_back(strip(s.substr(pos, next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

DegreeDistribution parse_builder(const std::string& name,
                                 const std::string& args) {
  auto parts = split(args, ',');
  if (parts.size() != 3)
    fail(ErrorCode::invalid_argument,
         name + "(...) takes exactly three arguments");
  double first;
  int second, third;
  if (!parse_double(parts[0], first) || !parse_int(parts[1], second) ||
      !parse_int(parts[2], third))
    fail(ErrorCode::invalid_argument, "malformed " + name + "(...) argument");
  return name == "sf" ? build_scale_free(first, second, third)
                      : build_er_truncated(first, second, third);
}

}  // namespace

DegreeDistribution parse_dist(const std::string& literal) {
  const std::string s = strip(literal);
  if (s.empty())
    fail(ErrorCode::invalid_argument, "empty distribution literal");

  if (s == "z") return DegreeDistribution::point_mass(1);
  if (s.rfind("z^", 0) == 0) {
    int degree;
    if (!parse_int(s.substr(2), degree))
      fail(ErrorCode::invalid_argument, "malformed point-mass literal: " + s);
    return DegreeDistribution::point_mass(degree);
  }
  for (const char* name : {"sf", "er"}) {
    std::string prefix = std::string(name) + "(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')')
      return parse_builder(name,
                           s.substr(prefix.size(),
                                    s.size() - prefix.size() - 1));
  }

  std::vector<DegreeDistribution::Entry> entries;
  for (const std::string& part : split(s, ',')) {
    size_t colon = part.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::invalid_argument,
           "expected degree:fraction, got: " + part);
    int degree;
    double fraction;
    if (!parse_int(strip(part.substr(0, colon)), degree) ||
        !parse_double(strip(part.substr(colon + 1)), fraction))
      fail(ErrorCode::invalid_argument,
           "malformed degree:fraction pair: " + part);
    entries.emplace_back(degree, fraction);
  }
  return DegreeDistribution::from_coefficients(entries);
}

}  // namespace cpsres
