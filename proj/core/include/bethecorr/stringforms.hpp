#pragma once

#include <span>

#include "bethecorr/formfactor.hpp"
#include "bethecorr/oracles.hpp"
#include "bethecorr/types.hpp"

// Closed forms of the scalar-product blocks when ubar is an exact arithmetic
// string u_{k+1} = u_k + eta: an (n+1)-term binomial sum for generic vbar,
// first-order beta expansions, and the fully reduced double-string forms
// (vbar also a string, offset v_1 - u_1 = eta s) built on a terminating
// Gauss hypergeometric series.

namespace bethecorr::stringforms {

// Terminating Gauss series sum_{k=0}^{-b} [a]_k [b]_k / ([c]_k k!) z^k for
// nonpositive integer b, by Pochhammer recurrence.  Throws NonTerminating
// for b > 0 and DomainError when c is a nonpositive integer inside the
// truncated range (division by zero).
Complex hyp2f1_terminating(Complex a, int b, Complex c, Complex z);

// Binomial sum forms on an exact string (NotAString beyond
// tol.string_tol * |eta| spacing deviation):
//   J  : (e^beta - 1) n! g(u_1,vbar) g(u_n,vbar)
//        sum_k C(n-1,k) e^{k beta} (-1)^{n-1-k} / g(u_{k+1},vbar),   #v = n
//   Psi: the same sum without the (e^beta - 1) factor,               #v = n-1
Complex omega_J_string(std::span<const Complex> vbar, std::span<const Complex> ubar,
                       Complex beta, Complex eta, const Tolerances& tol = {});
Complex omega_Psi_string(std::span<const Complex> vbar, std::span<const Complex> ubar,
                         Complex beta, Complex eta, const Tolerances& tol = {});

// The string identity behind those forms: on an exact string,
// g(u_{k+1}, ubar_{k+1}) = (-1)^{n-1-k} C(n-1,k) / (n-1)!.  Left side by
// kernel products, right side by the binomial expression; 0 <= k <= n-1.
oracles::LemmaSides binom_g_identity(int n, int k, Complex eta);

// First-order expansion around beta = 0 on an exact string:
//   J  : order0 = 0,
//        order1 = (1/eta) n! (n-1)! g(u_1,vbar) g(u_n,vbar) sum_j (u_j - v_j)
//   Psi: order0 = n! (n-1)! g(u_1,vbar) g(u_n,vbar),
//        order1 = order0 [ (n-1) + (1/eta) sum_{j<=n-1} (u_j - v_j) ]
struct BetaExpansion {
    Complex order0;
    Complex order1;
};
BetaExpansion omega_beta_expansion(std::span<const Complex> vbar,
                                   std::span<const Complex> ubar, Complex eta,
                                   formfactor::OmegaKind kind, const Tolerances& tol = {});

// Double-string forms: both sets are strings with offset v_1 - u_1 = eta s.
// With z = 1 - e^beta,
//   J  : -(n!)^2 (e^beta - 1) 2F1(1-s, 1-n; 2; z) / prod_{m=1-n}^{n-1} (s+m)
//   Psi:  n! (n-1)!           2F1(1-s, 1-n; 1; z) / prod_{m=1-n}^{n-2} (s+m)
// (the Gamma/sin prefactors of the pi-over-sine representation collapse to
// these rational products by the reflection formula; poles exactly at the
// integer s values the products vanish on).  Evaluated in log space so the
// factorials never overflow; PoleAtS when s is within tol.pole_exclusion of
// a product zero; Overflow if the final magnitude leaves double range (the
// _log variants return log(value) instead and never overflow).
Complex omega_J_s(int n, Complex s, Complex beta, const Tolerances& tol = {});
Complex omega_Psi_s(int n, Complex s, Complex beta, const Tolerances& tol = {});
Complex omega_J_s_log(int n, Complex s, Complex beta, const Tolerances& tol = {});
Complex omega_Psi_s_log(int n, Complex s, Complex beta, const Tolerances& tol = {});

} // namespace bethecorr::stringforms
