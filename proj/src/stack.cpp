#include "garrow/stack.hpp"

#include <pthread.h>

#include <exception>

#include "garrow/error.hpp"

namespace garrow {

namespace {

constexpr std::size_t kStackBytes = std::size_t{256} << 20;

thread_local bool on_large_stack = false;

struct Job {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* job = static_cast<Job*>(arg);
  on_large_stack = true;
  try {
    (*job->fn)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void with_large_stack(const std::function<void()>& fn) {
  if (on_large_stack) {
    fn();
    return;
  }
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  Job job{&fn, nullptr};
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // No thread available; fall back to the current stack.
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace garrow
