#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace reflab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Global worker-thread cap for the panel/batch loops. 0 means "hardware".
/// Results are bit-identical for every setting; this only trades wall time.
void set_max_threads(int n);
int max_threads();

/// Run fn(i) for i in [0, n), possibly on several threads. Each call must
/// write only to its own slot of any shared output.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

/// Sum in a fixed pairwise order, independent of how the values were produced.
double pairwise_sum(const std::vector<double>& v);

/// 9-point Gauss-Legendre rule on [0,1]: nodes() and weights().
const double* gauss9_nodes();
const double* gauss9_weights();

/// SplitMix64: tiny deterministic RNG used to derive QMC batch shifts.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// uniform in [0,1)
    double next_unit();
};

/// Integral over [-ell, ell] of ln(max(clip, |F|)) for a trigonometric sum
/// F(y) = sum_j c_j e^{2 pi i f_j y}. Uniform panels of width 1/panels_per_unit
/// with a 9-point rule; panels whose node minimum of |F| drops below 1e-3 are
/// subdivided (up to max_depth halvings) before clipping applies.
///
/// Node values are produced by per-panel phase rotations (one complex multiply
/// per frequency per node) re-anchored with fresh sin/cos every 4096 panels,
/// so the cost per node is flat in ell. Panel sums are accumulated in index
/// order and pairwise-reduced: the result is bit-stable across thread counts.
struct LogIntegralResult {
    double clipped;    // with the requested clip floor
    double floored;    // clip replaced by 1e-300 ("machine floor")
    std::int64_t evaluations;
};

LogIntegralResult log_abs_line_integral(const std::vector<Complex>& coeffs,
                                        const std::vector<double>& freqs, double ell,
                                        int panels_per_unit, double clip, int max_depth);

} // namespace reflab
