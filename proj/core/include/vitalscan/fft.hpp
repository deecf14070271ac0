#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vitalscan {

/// Forward DFT of a real signal. Returns the n/2+1 non-negative-frequency
/// bins; bin k corresponds to frequency k*fs/n. Any length >= 1 is accepted
/// (non-power-of-two sizes go through Bluestein's chirp transform).
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

/// Inverse of rfft: reconstructs a real signal of length n from its
/// non-negative-frequency half spectrum.
std::vector<double> irfft(const std::vector<std::complex<double>>& half_spectrum, std::size_t n);

}  // namespace vitalscan
