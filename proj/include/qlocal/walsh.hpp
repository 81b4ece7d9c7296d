#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qlocal {

// In-place Walsh-Hadamard transform (unnormalised):
// out[x] = sum_m in[m] * (-1)^{popcount(x & m)}.
inline void fwht(std::vector<double>& v) {
  const std::size_t size = v.size();
  if (size == 0 || (size & (size - 1)))
    throw std::invalid_argument("fwht: length must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t base = 0; base < size; base += h << 1)
      for (std::size_t i = base; i < base + h; ++i) {
        const double a = v[i];
        const double b = v[i + h];
        v[i] = a + b;
        v[i + h] = a - b;
      }
}

}  // namespace qlocal
