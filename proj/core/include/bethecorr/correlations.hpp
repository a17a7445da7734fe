#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bethecorr/bethe.hpp"
#include "bethecorr/types.hpp"

// Ground-state equal-time correlation functions in the large-coupling string
// regime: closed finite sums for the field and density correlators, plus an
// end-to-end limit-taking oracle that reproduces them from the brute-force
// generating functions (twist limit, counting-parameter derivatives, position
// derivatives, norm division) without using the closed forms.

namespace bethecorr::correlations {

enum class CorrKind { field, density };
enum class CorrMethod { closed_form, limit_oracle };

struct CorrelationCurve {
    bethe::ModelParams params;
    std::vector<std::pair<double, double>> samples; // (x, value), x strictly increasing
    CorrKind kind = CorrKind::field;
    CorrMethod method = CorrMethod::closed_form;
};

// Squared norm of the ground state: (-1)^N kappa L N^2.
Complex ground_state_norm(const bethe::ModelParams& params);

// <Psi+(x) Psi(0)> = (1/L) e^{-kappa x (N-1)/2}
//   sum_{l=1}^N e^{-kappa x (l-1)(N-l)} (1 + (kappa x / 2)(N - 2l + 1)^2).
// Defined for x >= 0; equals N/L at x = 0 and 1/L for a single particle.
double field_correlation(double x, const bethe::ModelParams& params);

// <j(x) j(0)> = (kappa/L) sum_{l=1}^{N-1} e^{-kappa x m_l}
//   (m_l^2 (1 + (kappa x / 2) s_l^2) - m_l s_l^2),
// with m_l = l(N-l), s_l = N-2l: the analytic term-by-term second
// x-derivative of density_series. The contact point x = 0 is excluded.
double density_correlation(double x, const bethe::ModelParams& params);

// Undifferentiated form of the density correlator,
//   (1/(kappa L)) sum_{l=1}^{N-1} e^{-kappa x m_l} (1 + (kappa x / 2) s_l^2);
// density_correlation is its second x-derivative. Kept public as the target
// of the finite-difference derivative check.
double density_series(double x, const bethe::ModelParams& params);

// Formal x -> 0 value of the density series' second derivative,
// (kappa/L) sum m_l (m_l - s_l^2). Diagnostic only: the closed form is
// derived for separated points, so density_correlation rejects x = 0.
double density_contact_limit(const bethe::ModelParams& params);

// Step sizes of the limit oracle. The twist limit evaluates at the step,
// step/2, step/4 and forms two first-order eliminations that must agree to
// converge_rtol. The counting-parameter and position second derivatives use
// 5-point central stencils with steps alpha_step and x_step/kappa. The
// derivative steps are far above naive truncation optima because each stage
// amplifies the evaluation jitter of the stage below by 1/step^2. The
// density limit uses a much wider twist than the field limit for the same
// reason: near-resolution string gaps leave the raw sums with a residue that
// grows as the twist shrinks, and the two stencil stages amplify whatever of
// it survives the eliminations, so the density twist is kept far from that
// regime at the price of a larger (still eliminated) smooth truncation.
struct OracleSteps {
    double beta_step = 1e-4;
    double density_beta_step = 4e-3;
    double alpha_step = 5e-2;
    double x_step = 5e-2; // in units of 1/kappa
    double converge_rtol = 1e-4;
};

// End-to-end reproduction of the closed forms from the partition-sum
// generating functions on refined string roots, divided by the squared norm.
// Brute-force path: N <= 5 (CapExceeded above). Throws NotConverged if the
// twist-limit estimates disagree or a result keeps a spurious imaginary part.
double correlation_limit_oracle(double x, const bethe::ModelParams& params, CorrKind kind,
                                const OracleSteps& steps = {}, const Tolerances& tol = {});

// Evaluates one curve over the sample positions (strictly increasing, inside
// the kind's domain), parallelized over samples with a deterministic result.
CorrelationCurve evaluate_curve(const bethe::ModelParams& params, CorrKind kind,
                                CorrMethod method, std::span<const double> xs,
                                const OracleSteps& steps = {}, const Tolerances& tol = {});

} // namespace bethecorr::correlations
