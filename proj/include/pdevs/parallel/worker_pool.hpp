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

#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace pdevs {

/// Fixed set of threads that runs batches of indexed tasks. run() blocks the
/// caller until every task of the batch has finished, so consecutive calls on
/// different pools give a barrier between them.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return threads_.size(); }

  /// Runs task(0) ... task(count - 1), at most size() at a time. The first
  /// exception thrown by a task is rethrown once the batch has drained.
  void run(std::size_t count, const std::function<void(std::size_t)>& task);

 private:
  struct Batch;
  void work();

  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::shared_ptr<Batch> batch_;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

/// Logical CPU count, at least 1.
std::size_t hardware_workers();

}  // namespace pdevs
