#include "fabt/support/large_stack.hpp"

#include <pthread.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fabt {
namespace {

struct Job {
  std::function<void()> fn;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* job = static_cast<Job*>(arg);
  try {
    job->fn();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

pthread_t spawn(Job& job, std::size_t stack_bytes) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, &trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("pthread_create failed");
  return thread;
}

}  // namespace

int run_with_large_stack(const std::function<int()>& fn, std::size_t stack_bytes) {
  int result = 0;
  Job job{[&] { result = fn(); }, nullptr};
  pthread_join(spawn(job, stack_bytes), nullptr);
  if (job.error) std::rethrow_exception(job.error);
  return result;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body,
                  std::size_t stack_bytes) {
  if (count == 0) return;
  workers = std::clamp<std::size_t>(workers, 1, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> cursor{0};
  auto drain = [&] {
    for (std::size_t i = cursor++; i < count; i = cursor++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    drain();
  } else {
    std::vector<Job> jobs(workers, Job{drain, nullptr});
    std::vector<pthread_t> threads;
    threads.reserve(workers);
    for (auto& job : jobs) threads.push_back(spawn(job, stack_bytes));
    for (auto t : threads) pthread_join(t, nullptr);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace fabt
