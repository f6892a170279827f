#include "vaoi/sim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace vaoi {

namespace {

void check_node(const SimState& state, std::uint32_t node) {
  if (node < 1 || node > state.versions.size())
    throw std::out_of_range("node label " + std::to_string(node) + " outside 1.." +
                            std::to_string(state.versions.size()));
}

}  // namespace

void apply_event_in_place(SimState& state, const Event& event) {
  auto& v = state.versions;
  switch (event.kind) {
    case EventKind::SourceSelfUpdate:
      ++state.source_version;
      return;
    case EventKind::SourcePush:
      check_node(state, event.to);
      v[event.to - 1] = state.source_version;
      return;
    case EventKind::Gossip: {
      check_node(state, event.from);
      check_node(state, event.to);
      if (event.from == event.to) throw std::invalid_argument("gossip needs two distinct nodes");
      auto& dst = v[event.to - 1];
      dst = std::max(dst, v[event.from - 1]);
      return;
    }
    case EventKind::ContactMeet: {
      if (event.from == event.to) throw std::invalid_argument("contact needs two distinct parties");
      if (event.from == 0 || event.to == 0) {
        const std::uint32_t node = event.from == 0 ? event.to : event.from;
        check_node(state, node);
        v[node - 1] = state.source_version;
        return;
      }
      check_node(state, event.from);
      check_node(state, event.to);
      const auto fresher = std::max(v[event.from - 1], v[event.to - 1]);
      v[event.from - 1] = fresher;
      v[event.to - 1] = fresher;
      return;
    }
    case EventKind::Exchange:
      check_node(state, event.from);
      check_node(state, event.to);
      if (event.from == event.to) throw std::invalid_argument("exchange needs two distinct nodes");
      std::swap(v[event.from - 1], v[event.to - 1]);
      return;
  }
}

SimState apply_event(SimState state, const Event& event) {
  apply_event_in_place(state, event);
  return state;
}

EventSampler::EventSampler(std::vector<Event> events, std::vector<double> rates)
    : events_(std::move(events)) {
  if (events_.size() != rates.size()) throw std::invalid_argument("events and rates differ in length");
  if (events_.size() >= std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("too many event clocks");
  for (double r : rates)
    if (!(r >= 0.0)) throw SimulationError("negative event rate");
  total_ = std::accumulate(rates.begin(), rates.end(), 0.0);
  if (!(total_ > 0.0)) throw SimulationError("total event rate is zero");

  // Vose's alias construction.
  const std::size_t k = rates.size();
  accept_.assign(k, 1.0);
  alias_.resize(k);
  std::iota(alias_.begin(), alias_.end(), 0u);
  std::vector<double> scaled(k);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = rates[i] * static_cast<double>(k) / total_;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : small) accept_[i] = 1.0;
  for (auto i : large) accept_[i] = 1.0;
}

EventSampler EventSampler::contact(const RateSet& rates) {
  rates.validate();
  const auto n = static_cast<std::uint32_t>(rates.n);
  std::vector<Event> events;
  std::vector<double> weights;
  auto add = [&](Event e, double r) {
    if (r > 0.0) {
      events.push_back(e);
      weights.push_back(r);
    }
  };
  add(Event::self_update(), rates.lambda_e);
  for (std::uint32_t j = 1; j <= n; ++j) add(Event::push(j), rates.source_to_node[j - 1]);
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      if (i != j) add(Event::gossip(i, j), rates.gossip[i - 1][j - 1]);
  for (std::uint32_t i = 0; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j) add(Event::contact(i, j), rates.mobility[i][j]);
  if (events.empty()) throw SimulationError("total event rate is zero");
  return EventSampler(std::move(events), std::move(weights));
}

EventSampler EventSampler::exchange(std::size_t n, double lambda_e, double push_rate, double lambda_m) {
  if (!(lambda_m >= 0.0)) throw SimulationError("exchange rate must be nonnegative");
  std::vector<Event> events;
  std::vector<double> weights;
  auto add = [&](Event e, double r) {
    if (r > 0.0) {
      events.push_back(e);
      weights.push_back(r);
    }
  };
  const auto nn = static_cast<std::uint32_t>(n);
  add(Event::self_update(), lambda_e);
  for (std::uint32_t j = 1; j <= nn; ++j) add(Event::push(j), push_rate);
  for (std::uint32_t i = 1; i <= nn; ++i)
    for (std::uint32_t j = i + 1; j <= nn; ++j) add(Event::exchange(i, j), lambda_m);
  if (events.empty()) throw SimulationError("total event rate is zero");
  return EventSampler(std::move(events), std::move(weights));
}

std::pair<double, Event> EventSampler::sample(Rng& rng) const {
  const double dt = rng.exponential(total_);
  const double u = rng.uniform() * static_cast<double>(events_.size());
  auto idx = static_cast<std::size_t>(u);
  if (idx >= events_.size()) idx = events_.size() - 1;
  const double frac = u - static_cast<double>(idx);
  return {dt, events_[frac < accept_[idx] ? idx : alias_[idx]]};
}

std::pair<double, Event> sample_next_event(const RateSet& rates, Rng& rng) {
  return EventSampler::contact(rates).sample(rng);
}

namespace {

// Per-node age areas, integrated lazily: a node's segment is closed only
// when its own version or the source version changes.
class AgeIntegrator {
 public:
  explicit AgeIntegrator(std::size_t n) : last_(n, 0.0), area_(n, 0.0) {}

  void close(const SimState& s, std::size_t k, double t) {
    area_[k] += static_cast<double>(s.source_version - s.versions[k]) * (t - last_[k]);
    last_[k] = t;
  }
  void close_all(const SimState& s, double t) {
    for (std::size_t k = 0; k < area_.size(); ++k) close(s, k, t);
  }
  const std::vector<double>& areas() const { return area_; }

 private:
  std::vector<double> last_;
  std::vector<double> area_;
};

void step(SimState& s, AgeIntegrator& ages, const Event& e, double t) {
  auto& v = s.versions;
  switch (e.kind) {
    case EventKind::SourceSelfUpdate:
      ages.close_all(s, t);
      ++s.source_version;
      return;
    case EventKind::SourcePush: {
      const std::size_t k = e.to - 1;
      if (v[k] != s.source_version) {
        ages.close(s, k, t);
        v[k] = s.source_version;
      }
      return;
    }
    case EventKind::Gossip: {
      const std::size_t src = e.from - 1, dst = e.to - 1;
      if (v[src] > v[dst]) {
        ages.close(s, dst, t);
        v[dst] = v[src];
      }
      return;
    }
    case EventKind::ContactMeet: {
      if (e.from == 0) {
        const std::size_t k = e.to - 1;
        if (v[k] != s.source_version) {
          ages.close(s, k, t);
          v[k] = s.source_version;
        }
        return;
      }
      const std::size_t a = e.from - 1, b = e.to - 1;
      if (v[a] < v[b]) {
        ages.close(s, a, t);
        v[a] = v[b];
      } else if (v[b] < v[a]) {
        ages.close(s, b, t);
        v[b] = v[a];
      }
      return;
    }
    case EventKind::Exchange: {
      const std::size_t a = e.from - 1, b = e.to - 1;
      if (v[a] != v[b]) {
        ages.close(s, a, t);
        ages.close(s, b, t);
        std::swap(v[a], v[b]);
      }
      return;
    }
  }
}

}  // namespace

SimResult simulate(const EventSampler& sampler, std::size_t n, double horizon, std::uint64_t seed,
                   const SimOptions& options) {
  if (!(horizon > 0.0)) throw SimulationError("horizon must be positive");
  if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0))
    throw SimulationError("warmup fraction must lie in [0, 1)");
  if (n == 0) throw SimulationError("network has no nodes");

  Rng rng(seed);
  SimState state(n);
  AgeIntegrator ages(n);
  const double warmup_end = options.warmup_fraction * horizon;
  bool warm = warmup_end == 0.0;
  std::vector<double> warm_areas(n, 0.0);
  std::uint64_t events = 0;

  for (;;) {
    const auto [dt, event] = sampler.sample(rng);
    const double next = state.clock + dt;
    if (!warm && next >= warmup_end) {
      ages.close_all(state, warmup_end);
      warm_areas = ages.areas();
      warm = true;
    }
    if (next >= horizon) break;
    state.clock = next;
    step(state, ages, event, next);
    ++events;
  }
  ages.close_all(state, horizon);
  state.clock = horizon;

  SimResult result;
  result.horizon = horizon;
  result.events_processed = events;
  result.seed = seed;
  const double span = horizon - warmup_end;
  result.per_node_time_avg_age.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    result.per_node_time_avg_age[k] = (ages.areas()[k] - warm_areas[k]) / span;
  result.network_avg_age =
      std::accumulate(result.per_node_time_avg_age.begin(), result.per_node_time_avg_age.end(), 0.0) /
      static_cast<double>(n);
  return result;
}

SimResult simulate_rates(const RateSet& rates, double horizon, std::uint64_t seed,
                         const SimOptions& options) {
  return simulate(EventSampler::contact(rates), rates.n, horizon, seed, options);
}

SimResult simulate_contact(const NetworkConfig& config, double horizon, std::uint64_t seed,
                           const SimOptions& options) {
  return simulate_rates(build_rates(config), horizon, seed, options);
}

SimResult simulate_exchange(const NetworkConfig& config, double lambda_m, double horizon,
                            std::uint64_t seed, const SimOptions& options) {
  config.validate();
  if (config.topology != TopologyKind::Disconnected)
    throw ConfigError("exchange mobility is only modelled on the disconnected topology");
  const auto sampler = EventSampler::exchange(config.n, config.lambda_e,
                                              config.lambda / static_cast<double>(config.n), lambda_m);
  return simulate(sampler, config.n, horizon, seed, options);
}

std::pair<double, double> mean_and_half_width(const std::vector<double>& samples) {
  if (samples.size() < 2) throw SimulationError("confidence interval needs at least two samples");
  const double r = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / r;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (r - 1.0));
  return {mean, 1.959963984540054 * sd / std::sqrt(r)};
}

McEstimate monte_carlo(const std::function<SimResult(std::uint64_t)>& run_one,
                       std::size_t replications, std::uint64_t base_seed, std::size_t threads) {
  if (replications < 2) throw SimulationError("monte carlo needs at least two replications");
  threads = std::clamp<std::size_t>(threads, 1, replications);

  McEstimate est;
  est.replications.resize(replications);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < replications;) {
      try {
        est.replications[r] = run_one(base_seed + r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> values;
  values.reserve(replications);
  for (const auto& rep : est.replications) values.push_back(rep.network_avg_age);
  std::tie(est.mean, est.half_width_95) = mean_and_half_width(values);
  return est;
}

McEstimate monte_carlo(const NetworkConfig& config, double horizon, std::size_t replications,
                       std::uint64_t base_seed, std::size_t threads, const SimOptions& options) {
  const auto sampler = EventSampler::contact(build_rates(config));
  return monte_carlo(
      [&](std::uint64_t seed) { return simulate(sampler, config.n, horizon, seed, options); },
      replications, base_seed, threads);
}

}  // namespace vaoi
