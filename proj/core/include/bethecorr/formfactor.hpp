#pragma once

#include <span>

#include "bethecorr/bethe.hpp"
#include "bethecorr/types.hpp"

// Determinant representations, recursions, and a pole-aware dispatcher for
// the two scalar-product blocks
//
//   omega_J(vbar, ubar | beta):   #v = #u = N   (density sector)
//   omega_Psi(vbar, ubar | beta): #v = #u - 1   (field sector)
//
// plus the physical form-factor wrappers built on them.  Both blocks are
// rational and finite at h(u_j, u_k) = 0 (string configurations), but the
// naive determinant is 0/0 there: the dispatcher switches to a column-
// rescaled determinant near strings and to the recursion on top of them.

namespace bethecorr::formfactor {

enum class OmegaKind { J, Psi };

struct OmegaArgs {
    RapiditySet vbar;
    RapiditySet ubar;
    Complex beta{0.0, 0.0};
    Complex eta{0.0, 1.0};
    OmegaKind kind = OmegaKind::J;

    void validate() const {
        const int expect = (kind == OmegaKind::J) ? ubar.size() : ubar.size() - 1;
        if (vbar.size() != expect)
            throw CardinalityMismatch("OmegaArgs: wrong #v for the requested kind");
    }
};

// Determinant forms.  Entries switch to the column-rescaled variant
// (column k multiplied by h(ubar, u_k), prefactor divided by h(ubar, ubar))
// when min_{j != k} |h(u_j, u_k)| < tol.reg_threshold.
Complex omega_J_det(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                    Complex eta, const Tolerances& tol = {});
Complex omega_Psi_det(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                      Complex eta, const Tolerances& tol = {});

// Pole-expansion recursions, memoized on subsets of ubar; exactly valid on
// string configurations where the determinants degenerate.  Cost O(2^N N^2).
Complex omega_J_rec(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                    Complex eta, int cap = Tolerances{}.recursion_cap);
Complex omega_Psi_rec(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                      Complex eta, int cap = Tolerances{}.recursion_cap);

// Dispatchers: recursion below tol.string_dispatch_threshold on
// min |h(u_j, u_k)|, rescaled determinant below tol.reg_threshold, plain
// determinant otherwise.
Complex omega_J(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                Complex eta, const Tolerances& tol = {});
Complex omega_Psi(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                  Complex eta, const Tolerances& tol = {});

// OmegaArgs wrappers.
Complex omega_J_det(const OmegaArgs& a, const Tolerances& tol = {});
Complex omega_Psi_det(const OmegaArgs& a, const Tolerances& tol = {});
Complex omega_J_rec(const OmegaArgs& a, int cap = Tolerances{}.recursion_cap);
Complex omega_Psi_rec(const OmegaArgs& a, int cap = Tolerances{}.recursion_cap);
Complex omega(const OmegaArgs& a, const Tolerances& tol = {});

// Form factor of the density operator between two distinct on-shell states
// with #v = #u:
//   [ i sum_j (u_j - v_j) ] prod_j e^{i x (u_j - v_j)} d/dbeta omega_J |_{beta=0},
// the beta derivative by central differences at +-delta_beta, +-delta_beta/2
// with one Richardson step.  Identical sets return exactly 0 (the prefactor
// vanishes) without evaluating omega_J.
Complex density_form_factor(std::span<const Complex> vbar, std::span<const Complex> ubar,
                            double x, const bethe::ModelParams& params,
                            double delta_beta = 1e-5, const Tolerances& tol = {});

// Form factor of the field operator, #v = N - 1, #u = N:
//   sqrt(kappa) prod_j e^{i x u_j} prod_j e^{-i x v_j} omega_Psi(v, u | 0).
Complex field_form_factor(std::span<const Complex> vbar, std::span<const Complex> ubar, double x,
                          const bethe::ModelParams& params, const Tolerances& tol = {});

// String-state overload: bra holds N-1 particles, ket holds N; on-shell
// validation uses the states' own gap-equation residuals instead of the
// resolution-limited raw form.
Complex field_form_factor(const bethe::StringState& bra, const bethe::StringState& ket, double x,
                          const Tolerances& tol = {});

} // namespace bethecorr::formfactor
