#include "polynet/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <stdexcept>

#include "polynet/rng.hpp"

namespace polynet {

std::uint64_t SimConfig::effective_warmup() const {
  if (warmup) return *warmup;
  return std::max<std::uint64_t>(100'000, target_served / 100);
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tie-break priority when event times coincide; queue index breaks the rest.
enum EventKind : int { kServiceEnd = 0, kArrival = 1, kSwitchEnd = 2 };
}  // namespace

SimResult run(const NetworkModel& model, const Eigen::VectorXd& lambda,
              const SimConfig& config) {
  require_valid(model);
  const Eigen::Index n = model.n;
  if (lambda.size() != n)
    throw std::invalid_argument("run: lambda has wrong length");
  if (lambda.minCoeff() < 0.0 || !(lambda.sum() > 0.0))
    throw std::invalid_argument(
        "run: arrival rates must be nonnegative with a positive sum");
  if (config.reference_queue < 0 || config.reference_queue >= n)
    throw std::invalid_argument("run: reference queue out of range");
  if (!(model.switchover_means().sum() > 0.0))
    throw std::invalid_argument(
        "run: total switch-over time must be positive, otherwise an empty "
        "system polls forever without advancing the clock");
  const Eigen::Index ref = config.reference_queue;

  std::vector<RngStream> arr_rng, svc_rng, rte_rng, swi_rng;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    arr_rng.emplace_back(config.seed, StreamKind::arrival, idx);
    svc_rng.emplace_back(config.seed, StreamKind::service, idx);
    rte_rng.emplace_back(config.seed, StreamKind::routing, idx);
    swi_rng.emplace_back(config.seed, StreamKind::switchover, idx);
  }

  Eigen::VectorXd row_total(n);
  std::vector<Eigen::Index> last_dest(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    row_total[i] = model.routing.row(i).sum();
    for (Eigen::Index j = 0; j < n; ++j)
      if (model.routing(i, j) > 0.0) last_dest[i] = j;
  }

  std::vector<std::deque<double>> queue(n);
  std::vector<double> next_arrival(n, kInf);
  for (Eigen::Index i = 0; i < n; ++i)
    if (lambda[i] > 0.0) next_arrival[i] = arr_rng[i].exponential(1.0 / lambda[i]);

  double clock = 0.0;
  // Server phase: serving (pos = queue in service, server_time = service end)
  // or switching (pos = switch target, server_time = arrival there).  Start
  // as if a switch into queue 0 completes at t = 0.
  bool serving = false;
  Eigen::Index pos = 0;
  double server_time = 0.0;
  std::uint64_t gate_left = 0;
  std::uint64_t visit_gate = 0;
  std::uint64_t visit_started = 0;
  double visit_poll = 0.0;

  const std::uint64_t warmup_needed = config.effective_warmup();
  bool warm = warmup_needed == 0;
  std::uint64_t served_all = 0;

  SimResult res;
  res.served.assign(static_cast<std::size_t>(n), 0);
  res.polling.assign(static_cast<std::size_t>(n), MomentAccumulator{});
  res.wait_samples.assign(static_cast<std::size_t>(n), {});

  std::vector<StreamingBatcher> wait_stats(
      static_cast<std::size_t>(n), StreamingBatcher(config.batches));
  StreamingBatcher cycle_stats(config.batches);
  MomentAccumulator cycle_moments;
  double busy_time = 0.0;
  double origin = 0.0;
  double last_poll = 0.0;
  bool have_last_poll = false;

  auto reset_stats = [&] {
    for (auto& b : wait_stats) b.reset();
    cycle_stats.reset();
    cycle_moments.reset();
    for (auto& p : res.polling) p.reset();
    res.polling_count = 0;
    std::fill(res.served.begin(), res.served.end(), 0);
    res.served_total = 0;
    res.cycle_samples.clear();
    for (auto& w : res.wait_samples) w.clear();
    busy_time = 0.0;
    origin = clock;
    have_last_poll = false;
  };

  // Pops the next gated customer of queue i and puts it into service.
  auto start_service = [&](Eigen::Index i) {
    assert(!queue[i].empty());
    const double arrived = queue[i].front();
    queue[i].pop_front();
    if (arrived > visit_poll) ++res.late_service_violations;
    if (warm) {
      const double w = clock - arrived;
      auto& samples = res.wait_samples[static_cast<std::size_t>(i)];
      wait_stats[static_cast<std::size_t>(i)].add(w);
      if (samples.size() < config.keep_wait_samples) samples.push_back(w);
    }
    const double s = sample(model.service[static_cast<std::size_t>(i)],
                            svc_rng[static_cast<std::size_t>(i)]);
    if (warm) busy_time += s;
    serving = true;
    pos = i;
    server_time = clock + s;
    --gate_left;
    ++visit_started;
  };

  auto begin_switch = [&](Eigen::Index from) {
    if (visit_started != visit_gate) ++res.gate_mismatches;
    const double s = sample(model.switchover[static_cast<std::size_t>(from)],
                            swi_rng[static_cast<std::size_t>(from)]);
    serving = false;
    pos = (from + 1) % n;
    server_time = clock + s;
  };

  for (;;) {
    // Next event: the server transition vs. each queue's next arrival.
    double best_t = server_time;
    int best_kind = serving ? kServiceEnd : kSwitchEnd;
    Eigen::Index best_q = pos;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = next_arrival[i];
      if (t < best_t || (t == best_t && kArrival < best_kind)) {
        best_t = t;
        best_kind = kArrival;
        best_q = i;
      }
    }
    assert(best_t >= clock);
    clock = best_t;

    if (best_kind == kArrival) {
      queue[best_q].push_back(clock);
      next_arrival[best_q] =
          clock + arr_rng[static_cast<std::size_t>(best_q)].exponential(
                      1.0 / lambda[best_q]);
      continue;
    }

    if (best_kind == kSwitchEnd) {
      // Polling instant: the gate at queue `pos` closes now.  Same-time
      // completions and arrivals were already processed, so they made it in.
      const Eigen::Index i = pos;
      if (i == ref && warm) {
        if (have_last_poll) {
          const double c = clock - last_poll;
          cycle_stats.add(c);
          cycle_moments.add(c);
          if (res.cycle_samples.size() < config.keep_cycle_samples)
            res.cycle_samples.push_back(c);
        }
        last_poll = clock;
        have_last_poll = true;
        if (config.record_polling_vectors) {
          for (Eigen::Index j = 0; j < n; ++j)
            res.polling[static_cast<std::size_t>(j)].add(
                static_cast<double>(queue[j].size()));
          ++res.polling_count;
        }
      }
      visit_poll = clock;
      visit_gate = queue[i].size();
      visit_started = 0;
      gate_left = visit_gate;
      if (gate_left > 0)
        start_service(i);
      else
        begin_switch(i);
      continue;
    }

    // Service completion at queue `pos`: route the customer, then either
    // serve the next gated one or move on.
    const Eigen::Index i = pos;
    Eigen::Index dest = -1;
    if (row_total[i] > 0.0) {
      const double u = rte_rng[static_cast<std::size_t>(i)].u01();
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double p = model.routing(i, j);
        if (p <= 0.0) continue;
        acc += p;
        if (u < acc) {
          dest = j;
          break;
        }
      }
      // Guard against the row sum rounding just below u; the mass belongs
      // to the final destination, not the exit.
      if (dest < 0 && u < row_total[i]) dest = last_dest[i];
    }
    if (dest >= 0) queue[dest].push_back(clock);

    ++served_all;
    if (warm) {
      ++res.served[static_cast<std::size_t>(i)];
      ++res.served_total;
      if (res.served_total >= config.target_served) break;
    } else if (served_all >= warmup_needed) {
      warm = true;
      reset_stats();
    }

    if (gate_left > 0)
      start_service(i);
    else
      begin_switch(i);
  }

  res.elapsed = clock - origin;
  res.busy_fraction = res.elapsed > 0.0 ? busy_time / res.elapsed : 0.0;
  res.wait.reserve(static_cast<std::size_t>(n));
  for (auto& b : wait_stats) res.wait.push_back(b.interval());
  res.cycle = cycle_stats.interval();
  res.cycle_variance = cycle_moments.variance();
  res.cycle_second_moment = cycle_moments.second_moment();
  res.cycle_count = cycle_moments.count();
  return res;
}

}  // namespace polynet
