#pragma once

#include <cstddef>
#include <functional>

namespace polarmax::detail {

/// Splits [0, n) into at most `threads` contiguous chunks and runs `fn(begin, end)`
/// on each; the calling thread takes the first chunk. Inline when threads <= 1.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace polarmax::detail
