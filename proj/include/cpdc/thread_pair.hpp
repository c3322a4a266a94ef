#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>

namespace cpdc {

/// A single persistent helper thread for two-way task splits. Dense-algebra
/// right-hand sides call run() thousands of times per simulation, so the
/// worker is kept alive instead of spawning threads per call.
class WorkerPair {
 public:
  static WorkerPair& instance() {
    static WorkerPair pool;
    return pool;
  }

  /// Runs `other` on the helper thread and `mine` inline, returns when both
  /// are finished.
  void run(const std::function<void()>& mine, const std::function<void()>& other) {
    {
      std::unique_lock<std::mutex> lock(mutex_);
      job_ = &other;
      has_job_ = true;
    }
    cv_.notify_one();
    mine();
    std::unique_lock<std::mutex> lock(mutex_);
    cv_.wait(lock, [this] { return !has_job_ && !running_; });
  }

  ~WorkerPair() {
    {
      std::unique_lock<std::mutex> lock(mutex_);
      stop_ = true;
    }
    cv_.notify_one();
    worker_.join();
  }

 private:
  WorkerPair() : worker_([this] { loop(); }) {}

  void loop() {
    for (;;) {
      const std::function<void()>* job = nullptr;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_.wait(lock, [this] { return has_job_ || stop_; });
        if (stop_) return;
        job = job_;
        has_job_ = false;
        running_ = true;
      }
      (*job)();
      {
        std::unique_lock<std::mutex> lock(mutex_);
        running_ = false;
      }
      cv_.notify_all();
    }
  }

  std::thread worker_;
  std::mutex mutex_;
  std::condition_variable cv_;
  const std::function<void()>* job_ = nullptr;
  bool has_job_ = false;
  bool running_ = false;
  bool stop_ = false;
};

}  // namespace cpdc
