#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace cpsres {

// Sparse probability generating function over positive degrees.
// Coefficients are kept sorted by degree, zero fractions dropped,
// and renormalized so they sum to exactly 1.
class DegreeDistribution {
 public:
  using Entry = std::pair<int, double>;  // (degree, fraction)

  // Entries may arrive in any order but degrees must be distinct.
  static DegreeDistribution from_coefficients(const std::vector<Entry>& entries);
  static DegreeDistribution point_mass(int degree);

  // g(z) = sum_k c_k z^k, z in [0,1]
  double eval(double z) const;
  // g'(z)
  double derivative(double z) const;
  // g'(1) = mean degree
  double derivative_at_one() const;
  // g''(1)
  double second_derivative_at_one() const;

  int min_degree() const { return entries_.front().first; }
  int max_degree() const { return entries_.back().first; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Inverse-CDF draw; u in [0,1). Bucket k covers [cdf_{k-1}, cdf_k).
  int sample(double u) const;

  // Canonical literal: "z^k" for a point mass, else "d:f,d:f,...".
  std::string format() const;

  bool operator==(const DegreeDistribution& other) const {
    return entries_ == other.entries_;
  }

 private:
  explicit DegreeDistribution(std::vector<Entry> entries);

  std::vector<Entry> entries_;
  std::vector<double> cdf_;
};

// Truncated power law: c_k proportional to k^-gamma on {k_min..k_max},
// k_max = round(k_min * n_nodes^(1/(gamma-1))).
DegreeDistribution build_scale_free(double gamma, int k_min, int n_nodes);

// Truncated Poisson: c_k proportional to mu^k/k! on {k_min..k_max},
// with mu solved so the mean matches to within 1e-9.
DegreeDistribution build_er_truncated(double mean_degree, int k_min, int k_max);

// Accepts "z^k", "d:f,d:f,...", "sf(gamma,k_min,n)", "er(mean,k_min,k_max)".
DegreeDistribution parse_dist(const std::string& literal);

}  // namespace cpsres
