#include "vitalscan/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace vitalscan {
namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const cd step(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= step;
            }
        }
    }
    if (inverse) {
        for (auto& v : a) v /= static_cast<double>(n);
    }
}

// Chirp factor e^{-i*pi*k^2/n}, with k^2 reduced mod 2n to keep the angle
// argument small.
cd chirp(std::size_t k, std::size_t n, bool inverse) {
    const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % (2ull * n);
    const double ang = (inverse ? 1.0 : -1.0) * kPi * static_cast<double>(k2) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

// Arbitrary-length DFT via Bluestein: the transform becomes a convolution
// with a chirp, evaluated with power-of-two FFTs.
std::vector<cd> fft_bluestein(const std::vector<cd>& x, bool inverse) {
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n - 1);

    std::vector<cd> a(m, cd(0.0, 0.0));
    std::vector<cd> b(m, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const cd c = chirp(k, n, inverse);
        a[k] = x[k] * c;
        const cd cc = std::conj(c);
        b[k] = cc;
        if (k != 0) b[m - k] = cc;
    }

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp(k, n, inverse);
    if (inverse) {
        for (auto& v : out) v /= static_cast<double>(n);
    }
    return out;
}

std::vector<cd> dft(std::vector<cd> x, bool inverse) {
    if (x.size() <= 1) return x;
    if (is_pow2(x.size())) {
        fft_pow2(x, inverse);
        return x;
    }
    return fft_bluestein(x, inverse);
}

}  // namespace

std::vector<cd> rfft(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("rfft: empty input");
    std::vector<cd> buf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = cd(x[i], 0.0);
    buf = dft(std::move(buf), false);
    buf.resize(x.size() / 2 + 1);
    return buf;
}

std::vector<double> irfft(const std::vector<cd>& half_spectrum, std::size_t n) {
    if (n == 0 || half_spectrum.size() != n / 2 + 1)
        throw std::invalid_argument("irfft: spectrum size does not match signal length");
    std::vector<cd> full(n);
    for (std::size_t k = 0; k < half_spectrum.size(); ++k) full[k] = half_spectrum[k];
    for (std::size_t k = half_spectrum.size(); k < n; ++k) full[k] = std::conj(full[n - k]);
    full = dft(std::move(full), true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = full[i].real();
    return out;
}

}  // namespace vitalscan
