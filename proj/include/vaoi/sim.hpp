#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include <pcg_random.hpp>

#include "vaoi/core.hpp"

namespace vaoi {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// PCG64 (XSL RR 128/64). The seed picks both the start state and the
/// stream. Uniforms come straight from the 64-bit output, not from
/// std distributions, whose results vary between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed, seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// 1 - uniform() is exact and lies in (0, 1].
  double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

  static constexpr std::string_view name() { return "pcg64"; }

 private:
  pcg64 engine_;
};

enum class EventKind : std::uint8_t { SourceSelfUpdate, SourcePush, Gossip, ContactMeet, Exchange };

/// Node labels are 1..n with 0 the source. SourcePush uses `to`; Gossip
/// sends from `from` to `to`; ContactMeet and Exchange are unordered.
struct Event {
  EventKind kind = EventKind::SourceSelfUpdate;
  std::uint32_t from = 0;
  std::uint32_t to = 0;

  static Event self_update() { return {EventKind::SourceSelfUpdate, 0, 0}; }
  static Event push(std::uint32_t node) { return {EventKind::SourcePush, 0, node}; }
  static Event gossip(std::uint32_t from, std::uint32_t to) { return {EventKind::Gossip, from, to}; }
  static Event contact(std::uint32_t a, std::uint32_t b) { return {EventKind::ContactMeet, a, b}; }
  static Event exchange(std::uint32_t a, std::uint32_t b) { return {EventKind::Exchange, a, b}; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct SimState {
  std::uint64_t source_version = 0;
  std::vector<std::uint64_t> versions;  // versions[k - 1] belongs to node k
  double clock = 0.0;

  explicit SimState(std::size_t n = 0) : versions(n, 0) {}
  std::uint64_t age(std::size_t node) const { return source_version - versions.at(node - 1); }
};

/// Reset map. Throws std::out_of_range for labels outside the network and
/// std::invalid_argument for malformed pairs.
void apply_event_in_place(SimState& state, const Event& event);
SimState apply_event(SimState state, const Event& event);

/// Superposition of all event clocks as one exponential clock plus a
/// categorical choice (Walker alias table, built once).
class EventSampler {
 public:
  EventSampler(std::vector<Event> events, std::vector<double> rates);

  /// Contact-mobility events of a rate set. Zero-rate events are dropped.
  static EventSampler contact(const RateSet& rates);
  /// Exchange-mobility events: self-update, pushes and pairwise swaps.
  static EventSampler exchange(std::size_t n, double lambda_e, double push_rate, double lambda_m);

  double total_rate() const { return total_; }
  std::size_t size() const { return events_.size(); }
  std::pair<double, Event> sample(Rng& rng) const;

 private:
  std::vector<Event> events_;
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
  double total_ = 0.0;
};

std::pair<double, Event> sample_next_event(const RateSet& rates, Rng& rng);

struct SimOptions {
  /// Fraction of the horizon discarded before averaging, in [0, 1).
  double warmup_fraction = 0.0;
};

struct SimResult {
  std::vector<double> per_node_time_avg_age;
  double network_avg_age = 0.0;
  double horizon = 0.0;
  std::uint64_t events_processed = 0;
  std::uint64_t seed = 0;
};

/// Runs one trajectory until the clock reaches `horizon`. Time averages
/// integrate the piecewise-constant ages exactly over [warmup, horizon].
SimResult simulate(const EventSampler& sampler, std::size_t n, double horizon, std::uint64_t seed,
                   const SimOptions& options = {});

SimResult simulate_rates(const RateSet& rates, double horizon, std::uint64_t seed,
                         const SimOptions& options = {});
SimResult simulate_contact(const NetworkConfig& config, double horizon, std::uint64_t seed,
                           const SimOptions& options = {});
/// DC only: swaps between nodes at rate lambda_m per pair, lambda/n pushes,
/// no gossip and no contact mobility.
SimResult simulate_exchange(const NetworkConfig& config, double lambda_m, double horizon,
                            std::uint64_t seed, const SimOptions& options = {});

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::vector<SimResult> replications;  // seed order
};

/// Runs replications with seeds base_seed + r on up to `threads` workers and
/// aggregates in seed order, so the result does not depend on scheduling.
McEstimate monte_carlo(const std::function<SimResult(std::uint64_t)>& run_one,
                       std::size_t replications, std::uint64_t base_seed, std::size_t threads = 1);

McEstimate monte_carlo(const NetworkConfig& config, double horizon, std::size_t replications,
                       std::uint64_t base_seed, std::size_t threads = 1,
                       const SimOptions& options = {});

/// Sample mean and 95% normal-approximation half-width.
std::pair<double, double> mean_and_half_width(const std::vector<double>& samples);

}  // namespace vaoi
