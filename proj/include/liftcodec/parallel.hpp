// Copyright (c) the liftcodec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIFTCODEC_PARALLEL_HPP_
#define LIFTCODEC_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace liftcodec {

// Size of the worker pool: LIFTCODEC_THREADS if set and positive, otherwise
// the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write results into per-index slots so the outcome does not depend on
// scheduling. Nested calls from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace liftcodec

#endif  // LIFTCODEC_PARALLEL_HPP_
