#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vaoi/core.hpp"

namespace vaoi {

/// Bitmask over the n nodes; bit k is node k (0-based).
using Subset = std::uint32_t;

class SubsetCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a subset has no incoming information at all, so its
/// stationary age is unbounded.
class ZeroDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stationary expected minimum age over every nonempty node subset.
class SubsetAgeTable {
 public:
  SubsetAgeTable(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {}

  std::size_t n() const { return n_; }
  Subset full_set() const { return static_cast<Subset>((std::uint64_t{1} << n_) - 1); }
  double at(Subset s) const;
  /// Mean over all subsets of the given cardinality.
  double mean_of_size(std::size_t size) const;

 private:
  std::size_t n_;
  std::vector<double> values_;  // indexed by mask; entry 0 unused
};

/// v[j] is the common stationary age of any j-node subset, j = 1..n.
struct SymmetricAgeProfile {
  std::vector<double> by_size;  // by_size[j - 1]

  std::size_t n() const { return by_size.size(); }
  double of_size(std::size_t j) const { return by_size.at(j - 1); }
  double v1() const { return by_size.front(); }
};

inline constexpr std::size_t kDefaultSubsetCap = 20;

/// Solves the subset recursion for arbitrary rates by back-substitution
/// from the full set down (every subset depends only on strict supersets).
SubsetAgeTable solve_subset_dp(const RateSet& rates, std::size_t cap = kDefaultSubsetCap);

/// Cardinality recursion for the symmetric DC/FC x f(n) cases.
SymmetricAgeProfile v_symmetric(const NetworkConfig& config);

/// Closed form of v1 for DC with f(n) = n, n >= 2.
double v_closed_form_dc_linear(std::size_t n, double lambda_e, double lambda);

/// Fixed point of the recursion at j = n: f(n) lambda_e / (lambda (f(n) + n)).
double v_n_terminal(const NetworkConfig& config);

/// Stationary age per node for DC exchange mobility; does not depend on the
/// exchange rate.
double v_exchange_dc(std::size_t n, double lambda_e, double lambda);

/// H_k = 1 + 1/2 + ... + 1/k, summed in ascending k. H_0 = 0.
double harmonic(std::size_t k);

}  // namespace vaoi
