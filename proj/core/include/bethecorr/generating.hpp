#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bethecorr/bethe.hpp"
#include "bethecorr/types.hpp"

// Equal-time generating functions on the ground-state string: the exact
// partition-sum forms (small-N oracles, N <= 7) and the string-reduced
// N-term forms with their Lambda/M building blocks and analytic
// beta-derivatives.
//
// Conventions: the ket carries roots lambda (ubar), the bra carries the
// twisted roots mu_j = lambda_j + i beta / L (vbar); gamma = beta/(kappa L).
// The position x must lie strictly inside (0, L): the composite-model
// splitting needs a proper bipartition of the interval.  The twist must be
// nonzero; the beta -> 0 limits live in the correlations module.

namespace bethecorr::generating {

// One partition pair's full contribution to a brute-force sum (global
// prefactor included, so the values add up to the returned total).
struct PartitionTerm {
    std::uint32_t umask = 0; // part I of ubar
    std::uint32_t vmask = 0; // part I of vbar
    Complex value{0.0, 0.0};
};

// Field generating function as an exact partition sum over
// ubar -> {I,II}, vbar -> {I,II} with #u_I = #v_I + 1 and #v_II = #u_II + 1:
//   -kappa sum [r1(v_II)/r1(u_II)] f(u_II,u_I) f(v_I,v_II)
//              omega_Psi(v_I, u_I | beta) omega_Psi(u_II, v_II | 0).
// The span form checks the raw Bethe residuals of both sets; the StringState
// form validates the state's own gap-equation residual (the raw logarithmic
// residual cannot resolve string deviations at large kappa*L) and twists the
// bra internally.  audit, when non-null, receives one entry per partition.
Complex gen_field_bruteforce(std::span<const Complex> vbar, std::span<const Complex> ubar,
                             double x, double beta, const bethe::ModelParams& params,
                             const Tolerances& tol = {},
                             std::vector<PartitionTerm>* audit = nullptr);
Complex gen_field_bruteforce(const bethe::StringState& state, double x, double beta,
                             const Tolerances& tol = {},
                             std::vector<PartitionTerm>* audit = nullptr);

// Density generating function (matrix element of e^{alpha Q_x}), partition
// sum with #u_I = #v_I and #u_II = #v_II:
//   e^{alpha N} sum [r1(v_II)/r1(u_II)] f(u_II,u_I) f(v_I,v_II)
//               omega_J(v_I, u_I | beta - alpha) omega_J(u_II, v_II | -alpha),
// with the empty-set block equal to 1.
Complex gen_density_bruteforce(std::span<const Complex> vbar, std::span<const Complex> ubar,
                               double x, double alpha, double beta,
                               const bethe::ModelParams& params, const Tolerances& tol = {},
                               std::vector<PartitionTerm>* audit = nullptr);
Complex gen_density_bruteforce(const bethe::StringState& state, double x, double alpha,
                               double beta, const Tolerances& tol = {},
                               std::vector<PartitionTerm>* audit = nullptr);

// String-reduced per-term building blocks (real for real twist):
//   lambda_psi: (2l-N-1-g) e^{kappa g x (N-l+1)} 2F1(l-N-g, 1-l; 1; 1-e^b)
//   lambda_J:   (N-2l+g) e^{kappa g x (N-l)} 2F1(l+1-N-g, 1-l; 2; 1-e^{b-a})
//                                            2F1(1-l+g, l+1-N; 2; 1-e^{-a})
// with g = beta/(kappa L), and their pair sums
//   m_psi(l) = lambda_psi(l) + lambda_psi(N-l+1)     (finite as beta -> 0)
//   m_J(l)   = lambda_J(l) + lambda_J(N-l)
// N is taken from params.N; l runs over 1..N (psi) or 1..N-1 (J).
double lambda_psi(int ell, double x, double beta, const bethe::ModelParams& params);
double m_psi(int ell, double x, double beta, const bethe::ModelParams& params);
double lambda_J(int ell, double x, double beta, double alpha, const bethe::ModelParams& params);
double m_J(int ell, double x, double beta, double alpha, const bethe::ModelParams& params);

// Analytic beta-slopes at beta = 0:
//   m_psi_beta_derivative = d m_psi / d beta   = -2/(kappa L) - (x/L)(N-2l+1)^2
//   m_J_beta_derivative   = (1/2) d m_J / d beta |_{alpha=0}
//                         = (1/(kappa L)) (1 + (kappa x / 2)(N-2l)^2)
// (the J form carries the conventional 1/2 of the second alpha-derivative).
double m_psi_beta_derivative(int ell, int N, double x, const bethe::ModelParams& params);
double m_J_beta_derivative(int ell, int N, double x, const bethe::ModelParams& params);

// String-reduced field generating function:
//   (-1)^{N-1} kappa pi (N!)^2 e^{-i x lambda_1}
//   / [sin(pi gamma) Gamma(N-gamma) Gamma(N+gamma)]
//   * sum_{l=1}^N e^{-kappa x (l-1)(N-l)} Lambda^psi_l,
// with the prefactor accumulated in log space and the sum switched to the
// symmetrized (1/2) m_psi form for |beta| < tol.beta_switch.
Complex gen_field_string(double x, const bethe::StringState& state, const bethe::Twist& twist,
                         const Tolerances& tol = {});

// String-reduced density generating function: the l = 1..N-1 bulk sum plus
// the two boundary partitions (all of ubar or none of it in part I), which
// stay finite as beta -> 0 only in combination and whose limit is affine in
// x.  They are returned tagged so callers can check that property.
struct GenDensityParts {
    Complex bulk{0.0, 0.0};
    Complex boundary{0.0, 0.0};
    Complex total() const { return bulk + boundary; }
};
GenDensityParts gen_density_string_parts(double x, double alpha, const bethe::StringState& state,
                                         const bethe::Twist& twist, const Tolerances& tol = {});
Complex gen_density_string(double x, double alpha, const bethe::StringState& state,
                           const bethe::Twist& twist, const Tolerances& tol = {});

} // namespace bethecorr::generating
