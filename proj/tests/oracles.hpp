#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Brute-force reference implementations, deliberately sharing no code with
// the library: tests compare library output against these.
namespace vitalscan::oracle {

double pnn50_pct(std::span<const double> rr_ms);
double rmssd_ms(std::span<const double> rr_ms);
double sdnn_ms(std::span<const double> rr_ms);

// Direct O(n^2) full-spectrum DFT.
std::vector<std::complex<double>> dft(std::span<const double> x);

struct Nearest {
    std::size_t index = 0;
    double distance = 0.0;
};

// Linear scan for the closest record under Euclidean distance.
Nearest nearest_record(std::span<const double> probe,
                       const std::vector<std::vector<double>>& records);

}  // namespace vitalscan::oracle
