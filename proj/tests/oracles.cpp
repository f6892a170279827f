#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

struct Transition {
  enum Kind { Tick, Reset, Copy, Merge } kind;
  int a;
  int b;
  double rate;
};

}  // namespace

std::vector<double> ctmc_subset_ages(const vaoi::RateSet& rates, int max_age, double tol) {
  const int n = static_cast<int>(rates.n);
  if (n < 1 || n > 4) throw std::invalid_argument("oracle supports 1..4 nodes");
  const int base = max_age + 1;
  std::size_t states = 1;
  for (int k = 0; k < n; ++k) states *= static_cast<std::size_t>(base);

  std::vector<Transition> moves;
  if (rates.lambda_e > 0) moves.push_back({Transition::Tick, 0, 0, rates.lambda_e});
  for (int j = 0; j < n; ++j) {
    const double r = rates.source_to_node[j] + rates.mobility[0][j + 1];
    if (r > 0) moves.push_back({Transition::Reset, j, 0, r});
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rates.gossip[i][j] > 0) moves.push_back({Transition::Copy, i, j, rates.gossip[i][j]});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rates.mobility[i + 1][j + 1] > 0)
        moves.push_back({Transition::Merge, i, j, rates.mobility[i + 1][j + 1]});

  double uniform_rate = 0;
  for (const auto& m : moves) uniform_rate += m.rate;

  auto decode = [&](std::size_t s, int* x) {
    for (int k = 0; k < n; ++k) {
      x[k] = static_cast<int>(s % base);
      s /= base;
    }
  };
  auto encode = [&](const int* x) {
    std::size_t s = 0;
    for (int k = n - 1; k >= 0; --k) s = s * base + static_cast<std::size_t>(x[k]);
    return s;
  };

  // Precompute successor of every state under every move.
  std::vector<std::size_t> next(states * moves.size());
  int x[4], y[4];
  for (std::size_t s = 0; s < states; ++s) {
    decode(s, x);
    for (std::size_t m = 0; m < moves.size(); ++m) {
      std::copy(x, x + n, y);
      const auto& mv = moves[m];
      switch (mv.kind) {
        case Transition::Tick:
          for (int k = 0; k < n; ++k) y[k] = std::min(y[k] + 1, max_age);
          break;
        case Transition::Reset:
          y[mv.a] = 0;
          break;
        case Transition::Copy:
          y[mv.b] = std::min(y[mv.b], y[mv.a]);
          break;
        case Transition::Merge:
          y[mv.a] = y[mv.b] = std::min(y[mv.a], y[mv.b]);
          break;
      }
      next[s * moves.size() + m] = encode(y);
    }
  }

  std::vector<double> pi(states, 0.0), nxt(states);
  pi[0] = 1.0;
  for (int iter = 0; iter < 200000; ++iter) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      if (pi[s] == 0.0) continue;
      for (std::size_t m = 0; m < moves.size(); ++m)
        nxt[next[s * moves.size() + m]] += pi[s] * moves[m].rate / uniform_rate;
    }
    double diff = 0;
    for (std::size_t s = 0; s < states; ++s) diff += std::abs(nxt[s] - pi[s]);
    pi.swap(nxt);
    if (diff < tol) break;
  }

  std::vector<double> result(std::size_t{1} << n, 0.0);
  for (std::size_t s = 0; s < states; ++s) {
    decode(s, x);
    for (std::size_t mask = 1; mask < result.size(); ++mask) {
      int lo = max_age;
      for (int k = 0; k < n; ++k)
        if (mask >> k & 1) lo = std::min(lo, x[k]);
      result[mask] += pi[s] * lo;
    }
  }
  return result;
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Fraction::Fraction(__int128 n, __int128 d) : num(n), den(d) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Fraction operator+(Fraction a, Fraction b) { return Fraction(a.num * b.den + b.num * a.den, a.den * b.den); }
Fraction operator*(Fraction a, Fraction b) { return Fraction(a.num * b.num, a.den * b.den); }
Fraction operator/(Fraction a, Fraction b) { return Fraction(a.num * b.den, a.den * b.num); }

std::vector<Fraction> dc_linear_exact(int n) {
  // v_j = (1 + j(n-j)/n v_{j+1}) / (2j/n + j(n-j)/n), lambda_e = lambda = 1.
  std::vector<Fraction> v(n + 2, Fraction(0));
  for (int j = n; j >= 1; --j) {
    const Fraction pair_rate(static_cast<__int128>(j) * (n - j), n);
    const Fraction denom = Fraction(2 * j, n) + pair_rate;
    v[j] = (Fraction(1) + pair_rate * v[j + 1]) / denom;
  }
  return std::vector<Fraction>(v.begin() + 1, v.begin() + n + 1);
}

}  // namespace oracle
