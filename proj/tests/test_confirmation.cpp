#include <chrono>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "pgraph/confirmation.hpp"

using namespace pgraph;
using namespace std::chrono_literals;

namespace {

// Needs `units` calls to advance(), each sleeping `unit`.
class CountingJob : public ConfirmationJob {
 public:
  CountingJob(std::uint32_t edge, int units, JobStatus verdict, std::chrono::microseconds unit = 0us)
      : ConfirmationJob(EdgeId{edge}), remaining_(units), verdict_(verdict), unit_(unit) {}

 protected:
  JobStatus advance() override {
    if (unit_.count() > 0) std::this_thread::sleep_for(unit_);
    return --remaining_ <= 0 ? verdict_ : JobStatus::Running;
  }

 private:
  int remaining_;
  JobStatus verdict_;
  std::chrono::microseconds unit_;
};

}  // namespace

TEST(ConfirmationJob, StepAfterVerdictThrows) {
  CountingJob job(0, 1, JobStatus::Confirmed);
  EXPECT_EQ(job.step(0.0), JobStatus::Confirmed);
  EXPECT_EQ(job.slices(), 1);
  EXPECT_THROW(job.step(1.0), std::logic_error);
}

TEST(ConfirmationJob, BudgetedSlicesReturnRunning) {
  CountingJob job(0, 50, JobStatus::Refuted, 1000us);
  EXPECT_EQ(job.step(2.0), JobStatus::Running);
  EXPECT_LT(job.compute_ms(), 40.0);
  EXPECT_EQ(job.step(0.0), JobStatus::Refuted);
  EXPECT_EQ(job.slices(), 2);
}

TEST(ConfirmationQueue, InlineRunsImmediately) {
  VerdictChannel channel;
  ConfirmationQueue queue(0, 5.0, channel);
  EXPECT_TRUE(queue.inline_mode());
  const JobId first = queue.insert(std::make_unique<CountingJob>(7, 3, JobStatus::Confirmed));
  const JobId second = queue.insert(std::make_unique<CountingJob>(9, 1, JobStatus::Refuted));
  EXPECT_EQ(first, 0u);
  EXPECT_EQ(second, 1u);
  const auto verdicts = channel.drain();
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_EQ(verdicts[0].edge, EdgeId{7});
  EXPECT_EQ(verdicts[0].status, JobStatus::Confirmed);
  EXPECT_EQ(verdicts[1].job, 1u);
  EXPECT_EQ(verdicts[1].status, JobStatus::Refuted);
  EXPECT_TRUE(channel.drain().empty());
  EXPECT_EQ(queue.pending(), 0u);
}

TEST(ConfirmationQueue, ShortJobOvertakesLongOneOnSingleWorker) {
  VerdictChannel channel;
  ConfirmationQueue queue(1, 2.0, channel);
  // The long job needs about 200 ms; the short one a single unit.
  queue.insert(std::make_unique<CountingJob>(0, 200, JobStatus::Confirmed, 1000us));
  queue.insert(std::make_unique<CountingJob>(1, 1, JobStatus::Confirmed));
  queue.launch();
  ASSERT_TRUE(channel.wait_for_total(2, 10s));
  const auto verdicts = channel.drain();
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_EQ(verdicts[0].edge, EdgeId{1});
  EXPECT_EQ(verdicts[1].edge, EdgeId{0});
  EXPECT_GT(verdicts[1].slices, 1);
  queue.stop();
}

TEST(ConfirmationQueue, SlicesRotateRoundRobin) {
  VerdictChannel channel;
  ConfirmationQueue queue(1, 1.0, channel);
  std::mutex mutex;
  std::vector<JobId> order;
  queue.set_slice_observer([&](JobId id) {
    std::lock_guard lock(mutex);
    order.push_back(id);
  });
  for (std::uint32_t i = 0; i < 3; ++i) queue.insert(std::make_unique<CountingJob>(i, 12, JobStatus::Confirmed, 500us));
  queue.launch();
  ASSERT_TRUE(channel.wait_for_total(3, 10s));
  queue.stop();
  // While all three are alive no job runs twice before the others have had a turn.
  ASSERT_GE(order.size(), 6u);
  for (std::size_t i = 0; i + 2 < 6; ++i) {
    EXPECT_NE(order[i], order[i + 1]);
    EXPECT_NE(order[i], order[i + 2]);
  }
}

TEST(ConfirmationQueue, HundredJobsFourWorkersExactlyOnce) {
  VerdictChannel channel;
  ConfirmationQueue queue(4, 0.5, channel);
  queue.launch();
  std::mt19937 rng(1);
  for (std::uint32_t i = 0; i < 100; ++i) {
    const int units = 1 + static_cast<int>(rng() % 8);
    queue.insert(std::make_unique<CountingJob>(i, units, i % 3 ? JobStatus::Confirmed : JobStatus::Refuted, 200us));
  }
  ASSERT_TRUE(channel.wait_for_total(100, 30s));
  std::this_thread::sleep_for(20ms);
  const auto verdicts = channel.drain();
  queue.stop();
  ASSERT_EQ(verdicts.size(), 100u);
  std::set<JobId> jobs;
  std::set<std::uint32_t> edges;
  for (const Verdict& v : verdicts) {
    jobs.insert(v.job);
    edges.insert(v.edge.value);
    EXPECT_EQ(v.status, v.edge.value % 3 ? JobStatus::Confirmed : JobStatus::Refuted);
    EXPECT_EQ(v.job, v.edge.value);
  }
  EXPECT_EQ(jobs.size(), 100u);
  EXPECT_EQ(edges.size(), 100u);
}

TEST(ConfirmationQueue, StopDropsUnfinishedWork) {
  VerdictChannel channel;
  {
    ConfirmationQueue queue(2, 1.0, channel);
    queue.launch();
    for (std::uint32_t i = 0; i < 4; ++i) queue.insert(std::make_unique<CountingJob>(i, 100000, JobStatus::Confirmed, 100us));
    std::this_thread::sleep_for(10ms);
    queue.stop();
  }
  EXPECT_TRUE(channel.drain().empty());
}
