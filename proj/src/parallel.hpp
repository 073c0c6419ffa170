// Copyright 2026 The uqubo Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace uqubo::detail {

/// Splits [0, total) into `workers` contiguous ranges whose boundaries are
/// multiples of `align`, runs fn(begin, end, worker) on each and rethrows the
/// first exception. Work assignment never depends on timing.
template <class Fn>
void parallel_ranges(std::uint64_t total, unsigned workers, std::uint64_t align, Fn&& fn) {
    align = std::max<std::uint64_t>(align, 1);
    const std::uint64_t units = (total + align - 1) / align;
    workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(units, 1)));
    if (workers == 1) {
        fn(std::uint64_t{0}, total, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(total, units * w / workers * align);
        const std::uint64_t end = std::min(total, units * (w + 1) / workers * align);
        threads.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace uqubo::detail
