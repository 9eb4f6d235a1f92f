#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace optocat::detail {

/// Runs fn(i) for i in [0, count) on a small pool of threads. Callers write into
/// preallocated slots indexed by i, so output order never depends on scheduling.
/// The first exception thrown by any task is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
	const std::size_t workers =
	    std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
	if(workers <= 1) {
		for(std::size_t i = 0; i < count; ++i) {
			fn(i);
		}
		return;
	}

	std::exception_ptr failure;
	std::mutex failure_mutex;
	std::vector<std::jthread> pool;
	pool.reserve(workers);
	for(std::size_t w = 0; w < workers; ++w) {
		pool.emplace_back([&, w] {
			for(std::size_t i = w; i < count; i += workers) {
				try {
					fn(i);
				} catch(...) {
					const std::lock_guard lock(failure_mutex);
					if(!failure) {
						failure = std::current_exception();
					}
					return;
				}
			}
		});
	}
	pool.clear();
	if(failure) {
		std::rethrow_exception(failure);
	}
}

} // namespace optocat::detail
