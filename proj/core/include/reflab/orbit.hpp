#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflab/filter.hpp"

namespace reflab {

/// Point of the n-torus with rational coordinates nums_i / den, 0 <= nums_i < den.
struct TorusState {
    std::vector<BigInt> nums;
    BigInt den;
};

bool operator==(const TorusState& a, const TorusState& b);

struct OrbitResult {
    std::int64_t preperiod = 0;
    std::int64_t period = 0;
    std::vector<TorusState> cycle;
    std::vector<Rational> seed_q;
    double alpha = 0.0;  // eigenbasis coefficient of the seed along lambda_1
};

/// Iterate x -> C x mod 1 from the rational seed q with exact arithmetic
/// (the shared denominator never grows); detect the first repeated state.
/// Throws OrbitTooLong above 1e7 visited states.
OrbitResult torus_orbit(const AlgebraicContext& ctx, const std::vector<Rational>& q);

/// Mean of ln|P| over the cycle, each state evaluated at exact rational
/// angles. When |P| < 1e-13 at a state, the sum is re-checked symbolically in
/// the cyclotomic field; an exact zero throws ZeroOnCycle, otherwise the tiny
/// value stands.
double cycle_mean_log(const TrigPolynomial& P, const OrbitResult& orbit);

struct ErdosSeed {
    double alpha = 0.0;
    std::string prediction;
};

/// Integer seeds reduce to the fixed point 0, so the scaling sequence of
/// fhat(alpha lambda^k) converges to a nonzero limit for PV contexts.
ErdosSeed erdos_seed(const AlgebraicContext& ctx, const std::vector<BigInt>& q);

/// Torus distance between frac(alpha lambda^{k}(1, lambda, ..)) and the exact
/// orbit state, for k = 0..k_max; decays like |lambda_2|^k for PV contexts.
std::vector<double> shadowing_distances(const AlgebraicContext& ctx,
                                        const std::vector<Rational>& q, int k_max);

} // namespace reflab
