#include "rswr/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "rswr/errors.hpp"

namespace rswr::runtime {

namespace {

struct RunContext {
  const RswrConfig& config;
  Partition partition;
  double dt;
  double a;
  std::size_t total_steps;
};

class Worker {
 public:
  Worker(const RunContext& ctx, std::size_t id) : ctx_(ctx) {
    state_.subdomain = ctx.partition.subdomains[id];
    state_.wave = WaveState::zero(state_.subdomain.n_nodes());
    state_.plan = WindowPlan::first(ctx.config.predict_steps_at_start(), ctx.dt);
  }

  std::size_t id() const { return state_.subdomain.id; }
  const WorkerState& state() const { return state_; }
  const FieldSlab& predictive() const { return *predictive_; }
  const FieldSlab& accepted() const { return *accepted_; }
  const std::optional<GlobalSpanDecision>& decision() const { return decision_; }
  const std::optional<std::string>& abort_reason() const { return abort_reason_; }
  const std::optional<SpanVote>& root_view_vote() const { return vote_; }

  void predict_phase(MessageBus& bus) {
    const auto& sub = state_.subdomain;
    const auto& plan = state_.plan;
    predictive_ = predict(state_.wave, sub, plan.predict_steps,
                          physical_series(plan.step0, plan.predict_steps), ctx_.dt, ctx_.a);
    own_exchange_ = {};
    for (Side side : {Side::Left, Side::Right}) {
      const auto nbr = sub.neighbor(side);
      if (!nbr) {
        continue;
      }
      const auto region = overlap_of(sub.id, *nbr, ctx_.partition.overlaps);
      PredictExchange ex = make_exchange(*predictive_, sub, *region);
      own_exchange_[index(side)] = ex;
      bus.send({plan.k, sub.id, *nbr, std::move(ex)});
    }
  }

  void vote_phase(MessageBus& bus) {
    const auto& sub = state_.subdomain;
    const auto& plan = state_.plan;
    received_ = {};
    for (auto& m : bus.collect(sub.id, plan.k, MessageKind::PredictExchangeMsg)) {
      Side side;
      if (sub.left_neighbor && m.from == *sub.left_neighbor) {
        side = Side::Left;
      } else if (sub.right_neighbor && m.from == *sub.right_neighbor) {
        side = Side::Right;
      } else {
        throw ProtocolError("worker " + std::to_string(sub.id) +
                            ": predict exchange from non-adjacent worker " +
                            std::to_string(m.from));
      }
      if (received_[index(side)]) {
        throw ProtocolError("worker " + std::to_string(sub.id) + ": duplicate exchange from " +
                            std::to_string(m.from));
      }
      received_[index(side)] = std::get<PredictExchange>(std::move(m.payload));
    }

    SpanVote vote;
    vote.worker = sub.id;
    vote.span = plan.predict_steps;
    vote.epsilon = ctx_.config.epsilon_rel * std::max(running_max_abs_, 1.0);
    for (double v : state_.wave.u_curr) {
      vote.local_max_abs = std::max(vote.local_max_abs, std::abs(v));
    }
    for (Side side : {Side::Left, Side::Right}) {
      const auto nbr = sub.neighbor(side);
      if (!nbr) {
        continue;
      }
      if (!received_[index(side)]) {
        throw ProtocolError("worker " + std::to_string(sub.id) + ": no exchange from worker " +
                            std::to_string(*nbr) + " in window " + std::to_string(plan.k));
      }
      const auto region = overlap_of(sub.id, *nbr, ctx_.partition.overlaps);
      PairSpan ps;
      ps.left = region->pair.first;
      ps.right = region->pair.second;
      ps.selected = select_span(*own_exchange_[index(side)], *received_[index(side)], vote.epsilon);
      ps.capped = cap_span(ps.selected, *region, ctx_.config.safety_steps);
      vote.span = std::min(vote.span, ps.capped);
      vote.pairs.push_back(ps);
    }
    vote_ = vote;
    bus.send({plan.k, sub.id, 0, std::move(vote)});
  }

  // Runs on worker 0 only.
  void reduce_phase(MessageBus& bus, std::size_t n_workers) {
    const auto& plan = state_.plan;
    std::vector<std::optional<std::size_t>> spans(n_workers);
    PairwiseSpans pairwise;
    double running = running_max_abs_;
    double epsilon = 0.0;
    for (auto& m : bus.collect(id(), plan.k, MessageKind::SpanVote)) {
      const auto& vote = std::get<SpanVote>(m.payload);
      if (vote.worker >= n_workers || spans[vote.worker]) {
        throw ProtocolError("reduction: unexpected or duplicate vote from worker " +
                            std::to_string(vote.worker));
      }
      spans[vote.worker] = vote.span;
      running = std::max(running, vote.local_max_abs);
      epsilon = vote.epsilon;
      for (const auto& p : vote.pairs) {
        const auto key = std::pair{p.left, p.right};
        const auto [it, inserted] = pairwise.emplace(key, p.capped);
        if (!inserted && it->second != p.capped) {
          throw ProtocolError("reduction: workers disagree on the span of pair (" +
                              std::to_string(p.left) + "," + std::to_string(p.right) + ")");
        }
      }
    }

    auto broadcast = [&](const Payload& payload) {
      for (std::size_t w = 0; w < n_workers; ++w) {
        bus.send({plan.k, id(), w, payload});
      }
    };

    std::size_t reduced = 0;
    try {
      reduced = min_reduce(spans);
      const std::size_t by_pair = global_span(pairwise, plan.predict_steps);
      if (by_pair != reduced && !pairwise.empty()) {
        throw ProtocolError("reduction: vote minimum " + std::to_string(reduced) +
                            " differs from pairwise minimum " + std::to_string(by_pair));
      }
      if (reduced == 0) {
        throw ProtocolError("zero global span: no progress possible");
      }
    } catch (const ProtocolError& e) {
      std::ostringstream why;
      why << "window " << plan.k << " at t=" << plan.t_start << ": " << e.what()
          << " (epsilon=" << epsilon << ", overlap_cells=" << ctx_.config.overlap_cells
          << ", safety_steps=" << ctx_.config.safety_steps << ")";
      broadcast(TerminationNotice{why.str()});
      return;
    }

    GlobalSpanDecision d;
    d.selected = reduced;
    d.span = std::min<std::size_t>(
        reduced, ctx_.total_steps - static_cast<std::size_t>(plan.step0));
    d.running_max_abs = running;
    broadcast(d);
  }

  // False if the round was aborted; state is then left untouched.
  bool update_phase(MessageBus& bus) {
    const auto& sub = state_.subdomain;
    const std::size_t k = state_.plan.k;
    decision_.reset();
    abort_reason_.reset();
    auto notices = bus.collect(sub.id, k, MessageKind::TerminationNotice);
    auto decisions = bus.collect(sub.id, k, MessageKind::GlobalSpanDecision);
    if (!notices.empty()) {
      abort_reason_ = std::get<TerminationNotice>(notices.front().payload).reason;
      return false;
    }
    if (decisions.size() != 1) {
      throw ProtocolError("worker " + std::to_string(sub.id) + ": expected one span decision in window " +
                          std::to_string(k) + ", got " + std::to_string(decisions.size()));
    }
    const auto d = std::get<GlobalSpanDecision>(decisions.front().payload);
    decision_ = d;

    NeighborFlux flux;
    if (received_[0]) {
      flux.left = received_[0]->output_flux;
    }
    if (received_[1]) {
      flux.right = received_[1]->output_flux;
    }
    auto& plan = state_.plan;
    WindowSolution sol = update_window(state_.wave, sub, flux, d.span,
                                       physical_series(plan.step0, d.span), ctx_.dt, ctx_.a);
    accepted_ = std::move(sol.slab);
    state_.wave = std::move(sol.terminal);
    plan.selected_steps = d.selected;
    plan.global_steps = d.span;
    state_.accepted_history.push_back({plan.k, plan.step0, plan.t_start, d.span});
    plan = advance_plan(plan, d.span, ctx_.config.beta);
    running_max_abs_ = d.running_max_abs;
    return true;
  }

 private:
  static std::size_t index(Side side) { return side == Side::Left ? 0 : 1; }

  PhysicalSeries physical_series(std::int64_t step0, std::size_t n_steps) const {
    PhysicalSeries p;
    const auto& sub = state_.subdomain;
    if (sub.left_kind == BoundaryKind::PhysicalDirichlet) {
      p.left = ctx_.config.drive_series(Side::Left, step0, n_steps);
    }
    if (sub.right_kind == BoundaryKind::PhysicalDirichlet) {
      p.right = ctx_.config.drive_series(Side::Right, step0, n_steps);
    }
    return p;
  }

  const RunContext& ctx_;
  WorkerState state_;
  double running_max_abs_ = 0.0;
  std::optional<FieldSlab> predictive_;
  std::optional<FieldSlab> accepted_;
  std::array<std::optional<PredictExchange>, 2> own_exchange_;
  std::array<std::optional<PredictExchange>, 2> received_;
  std::optional<SpanVote> vote_;
  std::optional<GlobalSpanDecision> decision_;
  std::optional<std::string> abort_reason_;
};

// Barrier-separated superstep: runs f on every worker, then rethrows the failure
// of the lowest-id worker, if any.
template <typename F>
void superstep(std::vector<Worker>& workers, std::size_t threads, F&& f) {
  std::vector<std::exception_ptr> errors(workers.size());
  auto body = [&](std::size_t t, std::size_t stride) {
    for (std::size_t i = t; i < workers.size(); i += stride) {
      try {
        f(workers[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    body(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(body, t, threads);
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::PredictExchangeMsg:
      return "PredictExchange";
    case MessageKind::SpanVote:
      return "SpanVote";
    case MessageKind::GlobalSpanDecision:
      return "GlobalSpanDecision";
    case MessageKind::TerminationNotice:
      return "TerminationNotice";
  }
  return "?";
}

MessageBus::MessageBus(std::size_t n_workers) {
  boxes_.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) {
    boxes_.push_back(std::make_unique<Mailbox>());
  }
}

void MessageBus::send(Message message) {
  if (message.to >= boxes_.size()) {
    throw ProtocolError("message to unknown worker " + std::to_string(message.to));
  }
  counts_[static_cast<std::size_t>(message.kind())].fetch_add(1, std::memory_order_relaxed);
  auto& box = *boxes_[message.to];
  std::lock_guard lock(box.mutex);
  box.queue.push_back(std::move(message));
}

std::vector<Message> MessageBus::collect(std::size_t worker, std::size_t k, MessageKind kind) {
  if (worker >= boxes_.size()) {
    throw ProtocolError("collect for unknown worker " + std::to_string(worker));
  }
  std::vector<Message> out;
  {
    auto& box = *boxes_[worker];
    std::lock_guard lock(box.mutex);
    auto split = std::stable_partition(box.queue.begin(), box.queue.end(),
                                       [&](const Message& m) { return m.kind() != kind; });
    std::move(split, box.queue.end(), std::back_inserter(out));
    box.queue.erase(split, box.queue.end());
  }
  for (const auto& m : out) {
    if (m.k != k) {
      throw ProtocolError("worker " + std::to_string(worker) + ": " + to_string(kind) +
                          " from worker " + std::to_string(m.from) + " belongs to window " +
                          std::to_string(m.k) + ", expected " + std::to_string(k));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Message& a, const Message& b) { return a.from < b.from; });
  return out;
}

MessageCounts MessageBus::counts() const {
  return {counts_[0].load(), counts_[1].load(), counts_[2].load(), counts_[3].load()};
}

std::size_t min_reduce(std::span<const std::optional<std::size_t>> votes) {
  if (votes.empty()) {
    throw ProtocolError("min_reduce: no workers");
  }
  std::size_t result = 0;
  for (std::size_t w = 0; w < votes.size(); ++w) {
    if (!votes[w]) {
      throw ProtocolError("min_reduce: no vote from worker " + std::to_string(w));
    }
    result = w == 0 ? *votes[w] : std::min(result, *votes[w]);
  }
  return result;
}

std::size_t default_thread_count(std::size_t n_workers) {
  std::size_t threads = 0;
  if (const char* env = std::getenv("RSWR_THREADS")) {
    threads = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  return std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n_workers, 1));
}

FieldSlab RswrResult::assemble(const Grid1D& grid, double dt) const {
  if (windows.empty()) {
    return FieldSlab(grid, 0, dt, 0);
  }
  FieldSlab out = windows.front();
  for (std::size_t i = 1; i < windows.size(); ++i) {
    out.append(windows[i]);
  }
  return out;
}

RswrResult run_rswr(const RswrConfig& config, const RunOptions& options) {
  config.validate();
  RunContext ctx{config, partition(config.grid(), config.n_subdomains, config.overlap_cells),
                 config.dt(), config.a, config.total_steps()};
  const std::size_t n_workers = ctx.partition.subdomains.size();
  const Grid1D global = config.grid();

  std::vector<Worker> workers;
  workers.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) {
    workers.emplace_back(ctx, i);
  }
  MessageBus bus(n_workers);

  RswrResult result;
  auto& report = result.report;
  report.mode = config.mode;
  report.n_workers = n_workers;
  report.total_steps = ctx.total_steps;
  report.threads = config.mode == ExecutionMode::Parallel
                       ? (options.threads ? std::min(options.threads, n_workers)
                                          : default_thread_count(n_workers))
                       : 1;
  const std::size_t threads = report.threads;

  std::vector<FieldSlab> predictive;
  std::vector<FieldSlab> accepted;
  while (static_cast<std::size_t>(workers.front().state().plan.step0) < ctx.total_steps) {
    const WindowPlan plan = workers.front().state().plan;
    const std::size_t exchanges_before = bus.counts().exchange;

    auto t0 = std::chrono::steady_clock::now();
    superstep(workers, threads, [&](Worker& w) { w.predict_phase(bus); });
    report.seconds.predict += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    superstep(workers, threads, [&](Worker& w) { w.vote_phase(bus); });
    report.seconds.vote += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    workers.front().reduce_phase(bus, n_workers);
    report.seconds.reduce += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<char> committed(n_workers, 0);
    superstep(workers, threads, [&](Worker& w) { committed[w.id()] = w.update_phase(bus); });
    report.seconds.update += seconds_since(t0);
    if (std::any_of(committed.begin(), committed.end(), [](char c) { return !c; })) {
      for (const auto& w : workers) {
        if (w.abort_reason()) {
          throw ProtocolError(*w.abort_reason());
        }
      }
      throw ProtocolError("round aborted without a termination notice");
    }

    const auto& decision = *workers.front().decision();
    WindowRecord rec;
    rec.k = plan.k;
    rec.step0 = plan.step0;
    rec.t_start = plan.t_start;
    rec.predict_steps = plan.predict_steps;
    rec.selected_steps = decision.selected;
    rec.global_steps = decision.span;
    rec.next_predict_steps = workers.front().state().plan.predict_steps;
    rec.field_messages = bus.counts().exchange - exchanges_before;
    for (const auto& w : workers) {
      const auto& vote = *w.root_view_vote();
      rec.epsilon = vote.epsilon;
      for (const auto& p : vote.pairs) {
        if (p.left == w.id()) {
          rec.pairs.push_back(p);
        }
      }
    }

    t0 = std::chrono::steady_clock::now();
    predictive.clear();
    accepted.clear();
    for (const auto& w : workers) {
      predictive.push_back(w.predictive());
      accepted.push_back(w.accepted());
    }
    if (options.observer) {
      options.observer(RoundView{rec, predictive, accepted, ctx.partition.subdomains});
    }
    result.windows.push_back(stitch(accepted, ctx.partition.subdomains, global));
    report.seconds.stitch += seconds_since(t0);
    report.windows.push_back(std::move(rec));
  }
  report.messages = bus.counts();
  return result;
}

}  // namespace rswr::runtime
