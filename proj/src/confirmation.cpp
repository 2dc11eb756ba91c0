#include "pgraph/confirmation.hpp"

#include <stdexcept>

namespace pgraph {

JobStatus ConfirmationJob::step(double budget_ms) {
  if (status_ != JobStatus::Running) throw std::logic_error("confirmation job stepped after its verdict");
  const auto begin = Clock::now();
  const bool unbounded = !(budget_ms > 0.0);
  const auto deadline =
      begin + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(budget_ms));
  status_ = run_slice(deadline, unbounded);
  ++slices_;
  compute_ms_ += std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
  return status_;
}

JobStatus ConfirmationJob::run_slice(Clock::time_point deadline, bool unbounded) {
  for (;;) {
    const JobStatus s = advance();
    if (s != JobStatus::Running) return s;
    if (!unbounded && Clock::now() >= deadline) return s;
  }
}

void VerdictChannel::post(Verdict verdict) {
  {
    std::lock_guard lock(mutex_);
    pending_.push_back(verdict);
    ++total_;
  }
  posted_.notify_all();
}

std::vector<Verdict> VerdictChannel::drain() {
  std::lock_guard lock(mutex_);
  std::vector<Verdict> out;
  out.swap(pending_);
  return out;
}

bool VerdictChannel::wait_for_total(std::size_t count, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  return posted_.wait_for(lock, timeout, [&] { return total_ >= count; });
}

ConfirmationQueue::ConfirmationQueue(int workers, double slice_budget_ms, VerdictChannel& channel)
    : workers_(workers), slice_budget_ms_(slice_budget_ms), channel_(channel) {
  if (workers < 0) throw std::invalid_argument("worker count must be non-negative");
  if (!(slice_budget_ms > 0.0)) throw std::invalid_argument("slice budget must be positive");
}

ConfirmationQueue::~ConfirmationQueue() { stop(); }

JobId ConfirmationQueue::insert(std::unique_ptr<ConfirmationJob> job) {
  const JobId id = next_id_++;
  job->set_id(id);
  if (inline_mode()) {
    if (slice_observer_) slice_observer_(id);
    const JobStatus status = job->step(0.0);
    channel_.post(Verdict{id, job->edge(), status, job->compute_ms(), job->slices()});
    return id;
  }
  {
    std::lock_guard lock(mutex_);
    jobs_.push_back(std::move(job));
  }
  wake_.notify_one();
  return id;
}

void ConfirmationQueue::launch() {
  if (inline_mode() || !threads_.empty()) return;
  stopping_ = false;
  for (int i = 0; i < workers_; ++i) threads_.emplace_back([this] { worker_loop(); });
}

void ConfirmationQueue::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
  threads_.clear();
}

std::size_t ConfirmationQueue::pending() const {
  std::lock_guard lock(mutex_);
  return jobs_.size();
}

void ConfirmationQueue::worker_loop() {
  for (;;) {
    std::unique_ptr<ConfirmationJob> job;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || !jobs_.empty(); });
      if (stopping_) return;
      job = std::move(jobs_.front());
      jobs_.pop_front();
    }
    if (slice_observer_) slice_observer_(job->id());
    const JobStatus status = job->step(slice_budget_ms_);
    if (status == JobStatus::Running) {
      {
        std::lock_guard lock(mutex_);
        jobs_.push_back(std::move(job));
      }
      wake_.notify_one();
    } else {
      channel_.post(Verdict{job->id(), job->edge(), status, job->compute_ms(), job->slices()});
    }
  }
}

}  // namespace pgraph
