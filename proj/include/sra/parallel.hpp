#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace sra {

namespace detail {
inline std::atomic<unsigned>& jobs_setting() {
  static std::atomic<unsigned> jobs{1};
  return jobs;
}
}  // namespace detail

/// Worker count used by exhaustive loops. Results never depend on it.
inline unsigned default_jobs() { return detail::jobs_setting().load(); }

inline void set_default_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  detail::jobs_setting().store(jobs);
}

/// Restores the previous worker count on scope exit.
class JobsGuard {
 public:
  explicit JobsGuard(unsigned jobs) : saved_(default_jobs()) { set_default_jobs(jobs); }
  ~JobsGuard() { set_default_jobs(saved_); }
  JobsGuard(const JobsGuard&) = delete;
  JobsGuard& operator=(const JobsGuard&) = delete;

 private:
  unsigned saved_;
};

/// Returns the smallest index i in [0, count) for which probe(i) yields a
/// value, together with that value. probe must be safe to call concurrently.
///
/// Indices are dealt to workers round-robin; a worker stops once its next
/// index exceeds the best hit found so far, so the answer is the canonical
/// minimum regardless of scheduling.
template <class T, class Probe>
std::optional<std::pair<std::size_t, T>> first_hit(std::size_t count, Probe&& probe,
                                                   unsigned jobs = default_jobs()) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      std::optional<T> r = probe(i);
      if (r) return std::pair<std::size_t, T>{i, std::move(*r)};
    }
    return std::nullopt;
  }
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::atomic<std::size_t> best{count};
  std::vector<std::optional<std::pair<std::size_t, T>>> found(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += jobs) {
            if (i > best.load(std::memory_order_relaxed)) break;
            std::optional<T> r = probe(i);
            if (!r) continue;
            found[w].emplace(i, std::move(*r));
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::optional<std::pair<std::size_t, T>> out;
  for (auto& f : found)
    if (f && (!out || f->first < out->first)) out = std::move(f);
  return out;
}

/// Runs body(i) for every i in [0, count) across workers.
template <class Body>
void for_each_index(std::size_t count, Body&& body, unsigned jobs = default_jobs()) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += jobs) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sra
