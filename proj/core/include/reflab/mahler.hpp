#pragma once

#include <cstdint>
#include <vector>

#include "reflab/filter.hpp"

namespace reflab {

enum class MeanMethod { JensenExact, TorusQmc, LineAverage, BoydLawton };

const char* to_string(MeanMethod m);

/// A mean (or Mahler measure) with its reported uncertainty. Where a clipping
/// policy applies, `value` uses the stated clip and `value_unclipped` the
/// machine floor 1e-300; they coincide otherwise.
struct MeanEstimate {
    double value = 0.0;
    double value_unclipped = 0.0;
    double half_width = 0.0;
    std::int64_t samples = 0;
    double clip = 0.0;
    MeanMethod method = MeanMethod::JensenExact;
};

/// M(P) = |leading coeff| * prod max(1, |root|) over the roots of the
/// univariate polynomial (ascending coefficients). half_width is propagated
/// from the final Newton-step sizes of the root finder.
MeanEstimate mahler_jensen(const std::vector<Complex>& coeffs_ascending);

/// exp of the average of ln|P| over randomized Kronecker point sets on T^d:
/// 8 batches of n_samples/8 points, x_k = frac(shift_b + k * (sqrt(p_i))_i).
/// ln|P| is clipped below at ln(clip); half_width = 2 * batch stddev / sqrt(8),
/// scaled to the value.
MeanEstimate mahler_torus_mean(const TrigPolynomial& P, std::int64_t n_samples,
                               double clip, std::uint64_t seed = 0);

/// Mean of ln|A(y)| over [-L, L] for each L in the schedule (uniform panels,
/// width 1/64, 9-point rule, near-zero panels subdivided, |A| clipped at
/// 1e-8). Returns the final-L mean; half_width is the last schedule increment.
MeanEstimate bohr_mean_log_modulus(const Filter& f, const std::vector<double>& L_schedule);

/// For each N, M(P(z, z^N)) via Jensen on the substituted univariate
/// polynomial; the sequence converges to the two-variable Mahler measure.
std::vector<MeanEstimate> boyd_lawton_sequence(const TrigPolynomial& P,
                                               const std::vector<int>& N_list);

} // namespace reflab
