#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "pgraph/graph.hpp"

namespace pgraph {

enum class JobStatus { Running, Confirmed, Refuted };

using JobId = std::uint32_t;

/// A deferred feasibility check, run in time slices until it reaches a verdict.
class ConfirmationJob {
 public:
  using Clock = std::chrono::steady_clock;

  explicit ConfirmationJob(EdgeId edge) : edge_(edge) {}
  virtual ~ConfirmationJob() = default;
  ConfirmationJob(const ConfirmationJob&) = delete;
  ConfirmationJob& operator=(const ConfirmationJob&) = delete;

  /// Runs for roughly `budget_ms` (non-positive = until done). Calling this after a
  /// verdict throws std::logic_error.
  JobStatus step(double budget_ms);

  EdgeId edge() const { return edge_; }
  JobId id() const { return id_; }
  void set_id(JobId id) { id_ = id; }
  JobStatus status() const { return status_; }
  double compute_ms() const { return compute_ms_; }
  int slices() const { return slices_; }

 protected:
  /// One bounded unit of work.
  virtual JobStatus advance() = 0;
  /// Default slice: advance until the deadline passes or a verdict is reached.
  virtual JobStatus run_slice(Clock::time_point deadline, bool unbounded);

 private:
  EdgeId edge_;
  JobId id_ = 0;
  JobStatus status_ = JobStatus::Running;
  double compute_ms_ = 0.0;
  int slices_ = 0;
};

struct Verdict {
  JobId job = 0;
  EdgeId edge;
  JobStatus status = JobStatus::Running;
  double compute_ms = 0.0;
  int slices = 0;
};

/// Ordered, thread-safe hand-off of verdicts from workers to the planner loop.
class VerdictChannel {
 public:
  void post(Verdict verdict);
  std::vector<Verdict> drain();
  /// Blocks until at least `count` verdicts have been posted in total or the timeout expires.
  bool wait_for_total(std::size_t count, std::chrono::milliseconds timeout);

 private:
  std::mutex mutex_;
  std::condition_variable posted_;
  std::vector<Verdict> pending_;
  std::size_t total_ = 0;
};

/// Round-robin, time-sliced execution of confirmation jobs. With zero workers every job
/// runs to completion inside insert(), which keeps the whole planner single-threaded.
class ConfirmationQueue {
 public:
  ConfirmationQueue(int workers, double slice_budget_ms, VerdictChannel& channel);
  ~ConfirmationQueue();
  ConfirmationQueue(const ConfirmationQueue&) = delete;
  ConfirmationQueue& operator=(const ConfirmationQueue&) = delete;

  /// Assigns the job id and enqueues (or, inline, runs) the job.
  JobId insert(std::unique_ptr<ConfirmationJob> job);
  /// Starts the worker pool; no-op inline or when already running.
  void launch();
  /// Stops workers after their current slice; unfinished jobs are dropped.
  void stop();

  bool inline_mode() const { return workers_ == 0; }
  std::size_t pending() const;

  /// Called with the job id before every slice (for instrumentation and tests).
  void set_slice_observer(std::function<void(JobId)> observer) { slice_observer_ = std::move(observer); }

 private:
  void worker_loop();

  int workers_;
  double slice_budget_ms_;
  VerdictChannel& channel_;
  JobId next_id_ = 0;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<std::unique_ptr<ConfirmationJob>> jobs_;
  std::vector<std::thread> threads_;
  bool stopping_ = false;
  std::function<void(JobId)> slice_observer_;
};

}  // namespace pgraph
