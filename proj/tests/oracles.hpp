#pragma once

// Reference computations that share no code path with the library's
// solvers. Used to freeze expected values and to cross-check the DP.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vaoi/core.hpp"

namespace oracle {

/// Stationary E[min_{k in S} X_k] for every subset mask S (index 0 unused),
/// from the full joint age chain truncated at `max_age` and solved by
/// uniformized power iteration. Practical for n <= 3.
std::vector<double> ctmc_subset_ages(const vaoi::RateSet& rates, int max_age, double tol = 1e-14);

struct Fraction {
  __int128 num = 0;
  __int128 den = 1;

  Fraction() = default;
  Fraction(__int128 n, __int128 d = 1);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Fraction operator+(Fraction a, Fraction b);
  friend Fraction operator*(Fraction a, Fraction b);
  friend Fraction operator/(Fraction a, Fraction b);
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
};

/// Exact DC, f(n) = n recursion at lambda_e = lambda = 1, evaluated in
/// rational arithmetic. Returns v_1..v_n.
std::vector<Fraction> dc_linear_exact(int n);

}  // namespace oracle
