#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace framelet {

// In-place discrete Fourier transform of a row-major multidimensional array
// (last axis fastest). sign -1 applies the e^{-i...} kernel, sign +1 the
// e^{+i...} kernel; neither direction normalizes.
void dft(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& shape,
         int sign);

}  // namespace framelet
