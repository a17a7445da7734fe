#pragma once

#include <functional>
#include <span>
#include <utility>

#include "bethecorr/bethe.hpp"
#include "bethecorr/kernel.hpp"
#include "bethecorr/types.hpp"

// Brute-force reference evaluators.  Everything here enumerates partitions
// explicitly and is the ground truth the determinant and recursion paths are
// tested against.  Costs are exponential; every routine enforces a cap.

namespace bethecorr::oracles {

// Highest coefficient
//   K_N(vbar|ubar) = delta'(vbar) delta(ubar) h(vbar,ubar) det_N[ t(v_j,u_k) ],
// K_0 = 1.  Symmetric separately in vbar and ubar.  Poles at v_j = u_k only;
// the evaluation additionally trips the guard at h(v_j,u_k) = 0 even though
// K itself is finite there.
Complex highest_coefficient(std::span<const Complex> vbar, std::span<const Complex> ubar,
                            Complex eta, double sep_scale = Tolerances{}.sep_scale);

// Scalar product of two off-shell states as the double partition sum
//   sum r(vbar_II) r(ubar_I) K(vbar_I|ubar_I) K(ubar_II|vbar_II)
//       f(ubar_II,ubar_I) f(vbar_I,vbar_II)
// over partitions with #vbar_I = #ubar_I.  Cost sum_k C(N,k)^2 = C(2N,N)
// terms; requires 2N <= cap.
Complex scalar_product_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                           const bethe::ModelParams& params,
                           int cap = Tolerances{}.enumeration_cap);

// Partition-sum form of the field scalar-product block, #ubar = n,
// #vbar = n - 1:
//   sum over ubar -> {u0, u1, u2} (#u0 = 1), vbar -> {v1, v2} (#v1 = #u1) of
//   K(v1|u1) K(u2|v2) e^{#u2 beta} f(v2,v1) f(u1,u2) f(u1,u0) f(u0,u2).
// Equals 1 at n = 1.
Complex omega_psi_partition_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                                double beta, Complex eta, int cap = 8);

// Both sides of an identity, returned separately so callers pick tolerances.
struct LemmaSides {
    Complex lhs;
    Complex rhs;
};

// Summation identity for the highest coefficient: for #y = m1, #z = m2,
// #xi = m1 + m2,
//   lhs = sum_{xi -> {xi_I, xi_II}, #xi_I = m1}
//           K_{m1}(xi_I|y) K_{m2}(z|xi_II) f(xi_II, xi_I)
//   rhs = (-1)^{m1} f(xi, y) K_{m1+m2}({y - eta, z} | xi).
LemmaSides lemma_identity_K(std::span<const Complex> xi, std::span<const Complex> y,
                            std::span<const Complex> z, Complex eta, int cap = 10);

// Which cross product multiplies the partition term in lemma_long_det.
enum class LemmaOrdering {
    f_II_I, // f(wbar_II, wbar_I): determinant with plain C1
    f_I_II, // f(wbar_I, wbar_II): C1 acquires f(w_k,wbar_k)/f(wbar_k,w_k)
};

// Partition sum versus long determinant: for #w = #xi = m and scalar
// functions C1, C2,
//   lhs = sum_{w -> {w_I, w_II}} K_m({w_I - eta, w_II}|xi) f(xi, w_I)
//           f(cross per ordering) C1(w_I) C2(w_II)
//   rhs = delta'(xi) delta(w)
//           det_m[ C2(w_k) t(w_k,xi_j) h(w_k,xi)
//                  + (-1)^m C1eff(w_k) t(xi_j,w_k) h(xi,w_k) ].
LemmaSides lemma_long_det(std::span<const Complex> w, std::span<const Complex> xi,
                          const std::function<Complex(Complex)>& C1,
                          const std::function<Complex(Complex)>& C2, Complex eta,
                          LemmaOrdering ordering, int cap = 8);

// The C1/C2 instances used when the partition sum over a set separates one
// root u0: C1(w) = -f(w, u0) and C2(w) = e^beta f(u0, w).
std::function<Complex(Complex)> c1_separated_root(Complex u0, Complex eta);
std::function<Complex(Complex)> c2_separated_root(Complex u0, double beta, Complex eta);

} // namespace bethecorr::oracles
