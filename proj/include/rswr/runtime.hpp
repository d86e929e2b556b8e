#pragma once

// One worker per subdomain, bulk-synchronous rounds, all coordination by messages.
//
// Round k, each phase separated by a barrier:
//   predict  every worker solves its predictive window and sends a PredictExchange
//            to each adjacent worker
//   vote     every worker selects and caps the span of each of its overlaps and
//            sends a SpanVote to the reduction root (worker 0)
//   reduce   the root min-reduces the votes and sends a GlobalSpanDecision to every
//            worker, or a TerminationNotice if some pair cannot progress
//   update   every worker commits the decided span using its neighbors' flux
//
// Each phase only consumes messages produced by earlier phases, so the result does
// not depend on thread count or delivery order.

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rswr/config.hpp"
#include "rswr/decomposition.hpp"
#include "rswr/engine.hpp"
#include "rswr/grid.hpp"
#include "rswr/wave.hpp"

namespace rswr::runtime {

enum class MessageKind : std::size_t {
  PredictExchangeMsg = 0,
  SpanVote = 1,
  GlobalSpanDecision = 2,
  TerminationNotice = 3,
};

const char* to_string(MessageKind kind);

/// Capped span of one overlap as seen by a voter.
struct PairSpan {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t selected = 0;
  std::size_t capped = 0;

  bool operator==(const PairSpan&) const = default;
};

struct SpanVote {
  std::size_t worker = 0;
  /// Minimum capped span over the worker's overlaps (predict_steps if it has none).
  std::size_t span = 0;
  std::vector<PairSpan> pairs;
  /// max |u| of the worker's state at the window start.
  double local_max_abs = 0.0;
  double epsilon = 0.0;
};

struct GlobalSpanDecision {
  /// Steps every worker commits; already truncated at the end of the run.
  std::size_t span = 0;
  /// Reduced minimum before end-of-run truncation.
  std::size_t selected = 0;
  double running_max_abs = 0.0;
};

struct TerminationNotice {
  std::string reason;
};

using Payload = std::variant<PredictExchange, SpanVote, GlobalSpanDecision, TerminationNotice>;

struct Message {
  std::size_t k = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  Payload payload;

  MessageKind kind() const { return static_cast<MessageKind>(payload.index()); }
};

struct MessageCounts {
  std::size_t exchange = 0;
  std::size_t vote = 0;
  std::size_t decision = 0;
  std::size_t termination = 0;

  std::size_t total() const { return exchange + vote + decision + termination; }
  bool operator==(const MessageCounts&) const = default;
};

/// In-process transport: one locked mailbox per worker. A networked backend only
/// needs to provide send() and collect() with the same semantics.
class MessageBus {
 public:
  explicit MessageBus(std::size_t n_workers);

  void send(Message message);

  /// Removes and returns every queued message of `kind` addressed to `worker`, ordered
  /// by sender. ProtocolError if one of them belongs to a round other than k.
  std::vector<Message> collect(std::size_t worker, std::size_t k, MessageKind kind);

  MessageCounts counts() const;

 private:
  struct Mailbox {
    std::mutex mutex;
    std::vector<Message> queue;
  };
  std::vector<std::unique_ptr<Mailbox>> boxes_;
  std::array<std::atomic<std::size_t>, 4> counts_{};
};

/// Minimum of one vote per worker; ProtocolError naming the first silent worker.
std::size_t min_reduce(std::span<const std::optional<std::size_t>> votes);

struct WindowSummary {
  std::size_t k = 0;
  std::int64_t step0 = 0;
  double t_start = 0.0;
  std::size_t span = 0;

  bool operator==(const WindowSummary&) const = default;
};

struct WorkerState {
  Subdomain subdomain;
  WaveState wave;
  WindowPlan plan;
  std::vector<WindowSummary> accepted_history;
};

struct WindowRecord {
  std::size_t k = 0;
  std::int64_t step0 = 0;
  double t_start = 0.0;
  std::size_t predict_steps = 0;
  std::size_t selected_steps = 0;
  std::size_t global_steps = 0;
  std::size_t next_predict_steps = 0;
  double epsilon = 0.0;
  std::vector<PairSpan> pairs;
  std::size_t field_messages = 0;

  bool operator==(const WindowRecord&) const = default;
};

struct PhaseTimes {
  double predict = 0.0;
  double vote = 0.0;
  double reduce = 0.0;
  double update = 0.0;
  double stitch = 0.0;
};

struct RunReport {
  ExecutionMode mode = ExecutionMode::SingleThreadedDeterministic;
  std::size_t n_workers = 0;
  std::size_t threads = 1;
  std::size_t total_steps = 0;
  std::vector<WindowRecord> windows;
  MessageCounts messages;
  /// Wall-clock seconds per phase; the only nondeterministic part of the report.
  PhaseTimes seconds;
};

/// What an observer sees after each committed round (before stitching).
struct RoundView {
  const WindowRecord& record;
  std::span<const FieldSlab> predictive;
  std::span<const FieldSlab> accepted;
  std::span<const Subdomain> subdomains;
};

struct RunOptions {
  /// Worker threads in parallel mode; 0 reads RSWR_THREADS, falling back to the
  /// hardware concurrency. Never changes results.
  std::size_t threads = 0;
  std::function<void(const RoundView&)> observer;
};

struct RswrResult {
  /// Stitched global window slabs in order; window j starts at the last row of window j - 1.
  std::vector<FieldSlab> windows;
  RunReport report;

  /// Single slab over the whole run, rows 0..total_steps.
  FieldSlab assemble(const Grid1D& grid, double dt) const;
};

/// Runs the windowed protocol to total_steps. Throws ProtocolError when a round cannot
/// progress; rounds committed before the failure are never partially emitted.
RswrResult run_rswr(const RswrConfig& config, const RunOptions& options = {});

/// Thread count for parallel mode as chosen by RunOptions::threads == 0.
std::size_t default_thread_count(std::size_t n_workers);

}  // namespace rswr::runtime
