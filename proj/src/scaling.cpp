#include "vaoi/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "vaoi/analytic.hpp"

namespace vaoi {

bool ScalingReport::bounds_hold() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](const ScalingSample& s) { return s.v1_exact <= s.upper_bound; });
}

double k_constant(const MobilityScaling& scaling, std::size_t n, double lambda_e) {
  if (n < 2) throw DomainError("K is defined for n >= 2");
  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  const double c = scaling.c;
  switch (scaling.kind) {
    case ScalingKind::Linear:
      return lambda_e * (ln + 1.0);
    case ScalingKind::LogScaled:
      return c * lambda_e * ln * ln / nd + c * lambda_e * ln / nd +
             c * lambda_e * ln / (nd * (nd + c * ln));
    case ScalingKind::Constant:
      return c * lambda_e * (ln + 1.0) / nd + c * lambda_e / (nd * (c + nd));
  }
  throw DomainError("unknown scaling kind");
}

double upper_bound_v1(const MobilityScaling& scaling, TopologyKind topology, std::size_t n,
                      double lambda_e, double lambda) {
  if (n < 2) throw DomainError("upper bounds are derived for n >= 2");
  if (topology == TopologyKind::Disconnected) return k_constant(scaling, n, lambda_e) / lambda;

  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  const double c = scaling.c;
  switch (scaling.kind) {
    case ScalingKind::Linear:
      return lambda_e / lambda * 2.0 * (nd - 1.0) * harmonic(n - 1) / (2.0 * nd - 1.0) +
             lambda_e / (2.0 * lambda);
    case ScalingKind::LogScaled:
      return 2.0 * c * lambda_e * (ln + 1.0) * ln / (lambda * (nd - 1.0)) +
             c * lambda_e * ln / (lambda * (c * ln + nd));
    case ScalingKind::Constant:
      return 2.0 * c * lambda_e * (ln + 1.0) / (lambda * nd) + c * lambda_e / (lambda * (c + nd));
  }
  throw DomainError("unknown scaling kind");
}

double order_envelope(ScalingKind kind, std::size_t n) {
  if (n < 2) throw DomainError("envelope vanishes for n < 2");
  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  switch (kind) {
    case ScalingKind::Linear: return ln;
    case ScalingKind::LogScaled: return ln * ln / nd;
    case ScalingKind::Constant: return ln / nd;
  }
  throw DomainError("unknown scaling kind");
}

ScalingReport scaling_sweep(const MobilityScaling& scaling, TopologyKind topology,
                            std::span<const std::size_t> n_list, double lambda_e, double lambda) {
  ScalingReport report;
  report.scaling = scaling;
  report.topology = topology;
  for (std::size_t n : n_list) {
    if (n < 2) throw DomainError("scaling sweep requires n >= 2");
    NetworkConfig cfg{n, lambda_e, lambda, topology, scaling, true};
    ScalingSample s;
    s.n = n;
    s.v1_exact = v_symmetric(cfg).v1();
    s.upper_bound = upper_bound_v1(scaling, topology, n, lambda_e, lambda);
    s.ratio = s.v1_exact / order_envelope(scaling.kind, n);
    if (!report.samples.empty() && s.ratio > report.samples.back().ratio)
      report.ratio_non_increasing = false;
    report.max_ratio = std::max(report.max_ratio, s.ratio);
    report.samples.push_back(s);
  }
  return report;
}

std::vector<std::size_t> default_n_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 2; n <= 2048; n *= 2) grid.push_back(n);
  return grid;
}

}  // namespace vaoi
