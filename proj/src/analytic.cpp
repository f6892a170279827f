#include "vaoi/analytic.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace vaoi {

double SubsetAgeTable::at(Subset s) const {
  if (s == 0 || s > full_set()) throw std::out_of_range("subset outside node set");
  return values_[s];
}

double SubsetAgeTable::mean_of_size(std::size_t size) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (Subset s = 1; s <= full_set(); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) != size) continue;
    sum += values_[s];
    ++count;
  }
  if (count == 0) throw std::out_of_range("no subset of requested size");
  return sum / static_cast<double>(count);
}

SubsetAgeTable solve_subset_dp(const RateSet& rates, std::size_t cap) {
  rates.validate();
  const std::size_t n = rates.n;
  if (n > cap || n > 31)
    throw SubsetCapExceeded("subset table needs 2^" + std::to_string(n) +
                            " entries; cap is n <= " + std::to_string(cap));

  const Subset full = static_cast<Subset>((std::uint64_t{1} << n) - 1);
  std::vector<double> v(static_cast<std::size_t>(full) + 1, 0.0);

  // Descending numeric order visits every strict superset of s before s.
  for (Subset s = full; s >= 1; --s) {
    double source_rate = 0.0;    // lambda_0(S)
    double source_contact = 0.0; // lambda^m_0(S)
    for (std::size_t k = 0; k < n; ++k) {
      if (!(s >> k & 1u)) continue;
      source_rate += rates.source_to_node[k];
      source_contact += rates.mobility[0][k + 1];
    }

    double numerator = rates.lambda_e;
    double denominator = source_rate + source_contact;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1u) continue;
      double gossip_in = 0.0;   // lambda_i(S)
      double contact_in = 0.0;  // lambda^m_i(S)
      for (std::size_t k = 0; k < n; ++k) {
        if (!(s >> k & 1u)) continue;
        gossip_in += rates.gossip[i][k];
        contact_in += rates.mobility[i + 1][k + 1];
      }
      const double superset_age = v[s | (Subset{1} << i)];
      if (gossip_in > 0.0) {
        numerator += gossip_in * superset_age;
        denominator += gossip_in;
      }
      if (contact_in > 0.0) {
        numerator += contact_in * superset_age;
        denominator += contact_in;
      }
    }
    if (!(denominator > 0.0))
      throw ZeroDenominator("subset mask " + std::to_string(s) +
                            " receives no updates from the source, gossip or contacts");
    v[s] = numerator / denominator;
  }
  return SubsetAgeTable(n, std::move(v));
}

namespace {

// One backward step of the cardinality recursion: v_j from v_{j+1}.
double recursion_step(const NetworkConfig& cfg, double j, double next) {
  const double n = static_cast<double>(cfg.n);
  const double le = cfg.lambda_e;
  const double l = cfg.lambda;
  const double pairs = j * (n - j);
  const bool fc = cfg.topology == TopologyKind::FullyConnected && cfg.n > 1;

  switch (cfg.scaling.kind) {
    case ScalingKind::Linear: {
      if (!fc)
        return (le + pairs * (l / n) * next) / (j * l / n + j * l / n + pairs * l / n);
      const double lambda_eff = l / (n - 1.0) + l / n;
      return (le + pairs * lambda_eff * next) / (2.0 * j * l / n + pairs * lambda_eff);
    }
    case ScalingKind::LogScaled: {
      const double cln = cfg.scaling.c * std::log(n);
      if (!fc)
        return (le + pairs * l / cln * next) / (j * l / n + j * l / cln + pairs * l / cln);
      const double lambda_eff = l / (n - 1.0) + l / cln;
      return (le + pairs * lambda_eff * next) / (j * l / n + j * l / cln + pairs * lambda_eff);
    }
    case ScalingKind::Constant: {
      const double c = cfg.scaling.c;
      if (!fc)
        return (le + pairs * l / c * next) / (j * l / n + j * l / c + pairs * l / c);
      const double lambda_eff = l / (n - 1.0) + l / c;
      return (le + pairs * lambda_eff * next) / (j * l / n + j * l / c + pairs * lambda_eff);
    }
  }
  throw DomainError("unknown scaling kind");
}

}  // namespace

SymmetricAgeProfile v_symmetric(const NetworkConfig& config) {
  config.validate();
  if (!config.mobility_enabled)
    throw ConfigError("symmetric recursion assumes contact mobility is enabled");

  SymmetricAgeProfile profile;
  profile.by_size.assign(config.n, 0.0);
  double next = 0.0;  // multiplied by j(n-j) = 0 at j = n
  for (std::size_t j = config.n; j >= 1; --j) {
    next = recursion_step(config, static_cast<double>(j), next);
    profile.by_size[j - 1] = next;
  }
  return profile;
}

double harmonic(std::size_t k) {
  double h = 0.0;
  for (std::size_t m = 1; m <= k; ++m) h += 1.0 / static_cast<double>(m);
  return h;
}

double v_closed_form_dc_linear(std::size_t n, double lambda_e, double lambda) {
  if (n < 2) throw DomainError("closed form requires n >= 2");
  const double nd = static_cast<double>(n);
  return lambda_e / lambda * harmonic(n - 1) - lambda_e * (nd - 1.0) / (lambda * (nd + 1.0)) +
         lambda_e / (lambda * nd * (nd + 1.0));
}

double v_n_terminal(const NetworkConfig& config) {
  config.validate();
  const double n = static_cast<double>(config.n);
  const double le = config.lambda_e;
  const double l = config.lambda;
  const double c = config.scaling.c;
  switch (config.scaling.kind) {
    case ScalingKind::Linear:
      return le / (2.0 * l);
    case ScalingKind::LogScaled:
      return c * le * std::log(n) / (l * (n + c * std::log(n)));
    case ScalingKind::Constant:
      return c * le / (l * (c + n));
  }
  throw DomainError("unknown scaling kind");
}

double v_exchange_dc(std::size_t n, double lambda_e, double lambda) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (!(lambda_e >= 0.0) || !(lambda > 0.0)) throw DomainError("rates must be positive");
  return static_cast<double>(n) * lambda_e / lambda;
}

}  // namespace vaoi
