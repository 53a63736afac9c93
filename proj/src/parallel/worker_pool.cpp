/*
 * Copyright 2026 The pdevs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdevs/parallel/worker_pool.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>

namespace pdevs {

struct WorkerPool::Batch {
  const std::function<void(std::size_t)>* task = nullptr;
  std::size_t count = 0;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> remaining{0};
  std::mutex error_mutex;
  std::exception_ptr error;
};

std::size_t hardware_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("worker pool needs at least one worker");
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { work(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run(std::size_t count, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  auto batch = std::make_shared<Batch>();
  batch->task = &task;
  batch->count = count;
  batch->remaining = count;
  {
    std::unique_lock lock(mutex_);
    batch_ = batch;
    ++generation_;
    wake_.notify_all();
    done_.wait(lock, [&] { return batch->remaining.load() == 0; });
    batch_.reset();
  }
  if (batch->error) std::rethrow_exception(batch->error);
}

void WorkerPool::work() {
  std::size_t seen = 0;
  for (;;) {
    std::shared_ptr<Batch> batch;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || (generation_ != seen && batch_); });
      if (stopping_) return;
      seen = generation_;
      batch = batch_;
    }
    for (;;) {
      const std::size_t i = batch->next.fetch_add(1);
      if (i >= batch->count) break;
      try {
        (*batch->task)(i);
      } catch (...) {
        std::lock_guard guard(batch->error_mutex);
        if (!batch->error) batch->error = std::current_exception();
      }
      if (batch->remaining.fetch_sub(1) == 1) {
        std::lock_guard lock(mutex_);
        done_.notify_all();
      }
    }
  }
}

}  // namespace pdevs
