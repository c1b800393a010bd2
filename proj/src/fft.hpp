#pragma once

#include <complex>
#include <span>
#include <vector>

namespace semzk::detail {

enum class FftDirection { forward, backward };

/// Unnormalized complex DFT of a row-major array with the given extents.
/// forward uses exp(-i k x), backward exp(+i k x). Plans are created once per
/// shape under a lock and executed through FFTW's thread-safe new-array API.
void fft(std::span<const int> extents, FftDirection dir, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out);

inline void fft2d(int n0, int n1, FftDirection dir, std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
    const int ext[2] = {n0, n1};
    fft(ext, dir, in, out);
}

inline void fft3d(int n0, int n1, int n2, FftDirection dir,
                  std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    const int ext[3] = {n0, n1, n2};
    fft(ext, dir, in, out);
}

}  // namespace semzk::detail
