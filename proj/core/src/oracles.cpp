#include "bethecorr/oracles.hpp"

#include <cmath>
#include <vector>

#include "bethecorr/detail/reduce.hpp"

namespace bethecorr::oracles {

using kernel::ComplexMatrix;
using kernel::enumerate_bipartitions;
using kernel::prod_f;
using kernel::prod_h;

Complex highest_coefficient(std::span<const Complex> vbar, std::span<const Complex> ubar,
                            Complex eta, double sep_scale) {
    if (vbar.size() != ubar.size())
        throw CardinalityMismatch("highest_coefficient: #v != #u");
    const int n = static_cast<int>(vbar.size());
    if (n == 0) return Complex{1.0, 0.0};

    ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            m(j, k) = kernel::t(vbar[static_cast<std::size_t>(j)],
                                ubar[static_cast<std::size_t>(k)], eta, sep_scale);

    return kernel::delta_prime(vbar, eta) * kernel::delta(ubar, eta) *
           prod_h(vbar, ubar, eta) * kernel::det(std::move(m));
}

Complex scalar_product_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                           const bethe::ModelParams& params, int cap) {
    if (vbar.size() != ubar.size())
        throw CardinalityMismatch("scalar_product_sum: #v != #u");
    const int n = static_cast<int>(vbar.size());
    if (2 * n > cap)
        throw CapExceeded("scalar_product_sum: C(2N,N) terms exceed the enumeration cap");
    const Complex eta = params.eta();

    std::vector<Complex> terms;
    for (int k = 0; k <= n; ++k) {
        auto vparts = enumerate_bipartitions(n, k, cap);
        auto uparts = enumerate_bipartitions(n, k, cap);
        for (const auto& vp : vparts) {
            auto vI = subset_by_mask(vbar, vp.mask);
            auto vII = complement_by_mask(vbar, vp.mask);
            Complex vfac = kernel::set_product1([&](Complex z) { return bethe::r(z, params); },
                                                vII) *
                           prod_f(vI, vII, eta);
            for (const auto& up : uparts) {
                auto uI = subset_by_mask(ubar, up.mask);
                auto uII = complement_by_mask(ubar, up.mask);
                terms.push_back(
                    vfac *
                    kernel::set_product1([&](Complex z) { return bethe::r(z, params); }, uI) *
                    highest_coefficient(vI, uI, eta) * highest_coefficient(uII, vII, eta) *
                    prod_f(uII, uI, eta));
            }
        }
    }
    return detail::pairwise_sum(std::move(terms));
}

Complex omega_psi_partition_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                                double beta, Complex eta, int cap) {
    const int n = static_cast<int>(ubar.size());
    if (static_cast<int>(vbar.size()) != n - 1)
        throw CardinalityMismatch("omega_psi_partition_sum: needs #v = #u - 1");
    if (n > cap) throw CapExceeded("omega_psi_partition_sum: n exceeds cap");

    std::vector<Complex> terms;
    for (int j0 = 0; j0 < n; ++j0) {
        const Complex u0 = ubar[static_cast<std::size_t>(j0)];
        auto urest = erase_index(ubar, j0);
        for (int n1 = 0; n1 <= n - 1; ++n1) {
            const int n2 = n - 1 - n1;
            const Complex twist = std::exp(Complex(n2 * beta, 0.0));
            for (const auto& up : enumerate_bipartitions(n - 1, n1, cap)) {
                auto u1 = subset_by_mask(urest, up.mask);
                auto u2 = complement_by_mask(urest, up.mask);
                Complex ufac = twist * prod_f(u1, u2, eta) * prod_f(u1, u0, eta) *
                               prod_f(u0, u2, eta);
                for (const auto& vp : enumerate_bipartitions(n - 1, n1, cap)) {
                    auto v1 = subset_by_mask(vbar, vp.mask);
                    auto v2 = complement_by_mask(vbar, vp.mask);
                    terms.push_back(ufac * highest_coefficient(v1, u1, eta) *
                                    highest_coefficient(u2, v2, eta) * prod_f(v2, v1, eta));
                }
            }
        }
    }
    return detail::pairwise_sum(std::move(terms));
}

LemmaSides lemma_identity_K(std::span<const Complex> xi, std::span<const Complex> y,
                            std::span<const Complex> z, Complex eta, int cap) {
    const int m1 = static_cast<int>(y.size());
    const int m2 = static_cast<int>(z.size());
    if (static_cast<int>(xi.size()) != m1 + m2)
        throw CardinalityMismatch("lemma_identity_K: #xi != #y + #z");
    if (m1 + m2 > cap) throw CapExceeded("lemma_identity_K: set size exceeds cap");

    std::vector<Complex> terms;
    for (const auto& bp : enumerate_bipartitions(m1 + m2, m1, cap)) {
        auto xiI = subset_by_mask(xi, bp.mask);
        auto xiII = complement_by_mask(xi, bp.mask);
        terms.push_back(highest_coefficient(xiI, y, eta) * highest_coefficient(z, xiII, eta) *
                        prod_f(xiII, xiI, eta));
    }
    Complex lhs = detail::pairwise_sum(std::move(terms));

    std::vector<Complex> shifted;
    shifted.reserve(static_cast<std::size_t>(m1 + m2));
    for (const Complex& yj : y) shifted.push_back(yj - eta);
    shifted.insert(shifted.end(), z.begin(), z.end());
    double sign = (m1 % 2 == 0) ? 1.0 : -1.0;
    Complex rhs = sign * prod_f(xi, y, eta) * highest_coefficient(shifted, xi, eta);
    return {lhs, rhs};
}

LemmaSides lemma_long_det(std::span<const Complex> w, std::span<const Complex> xi,
                          const std::function<Complex(Complex)>& C1,
                          const std::function<Complex(Complex)>& C2, Complex eta,
                          LemmaOrdering ordering, int cap) {
    const int m = static_cast<int>(w.size());
    if (static_cast<int>(xi.size()) != m)
        throw CardinalityMismatch("lemma_long_det: #w != #xi");
    if (m > cap) throw CapExceeded("lemma_long_det: set size exceeds cap");

    std::vector<Complex> terms;
    for (const auto& bp : kernel::enumerate_all_bipartitions(m, cap)) {
        auto wI = subset_by_mask(w, bp.mask);
        auto wII = complement_by_mask(w, bp.mask);

        std::vector<Complex> first;
        first.reserve(static_cast<std::size_t>(m));
        for (const Complex& a : wI) first.push_back(a - eta);
        first.insert(first.end(), wII.begin(), wII.end());

        Complex cross = (ordering == LemmaOrdering::f_II_I) ? prod_f(wII, wI, eta)
                                                            : prod_f(wI, wII, eta);
        Complex cfac{1.0, 0.0};
        for (const Complex& a : wI) cfac *= C1(a);
        for (const Complex& a : wII) cfac *= C2(a);

        terms.push_back(highest_coefficient(first, xi, eta) * prod_f(xi, wI, eta) * cross *
                        cfac);
    }
    Complex lhs = detail::pairwise_sum(std::move(terms));

    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    ComplexMatrix mat(m, m);
    for (int k = 0; k < m; ++k) {
        const Complex wk = w[static_cast<std::size_t>(k)];
        Complex c1 = C1(wk);
        if (ordering == LemmaOrdering::f_I_II) {
            auto rest = erase_index(w, k);
            c1 *= prod_f(wk, rest, eta) / prod_f(rest, wk, eta);
        }
        const Complex c2 = C2(wk);
        for (int j = 0; j < m; ++j) {
            const Complex xj = xi[static_cast<std::size_t>(j)];
            mat(j, k) = c2 * kernel::t(wk, xj, eta) * prod_h(wk, xi, eta) +
                        sign * c1 * kernel::t(xj, wk, eta) * prod_h(xi, wk, eta);
        }
    }
    Complex rhs = kernel::delta_prime(xi, eta) * kernel::delta(w, eta) * kernel::det(std::move(mat));
    return {lhs, rhs};
}

std::function<Complex(Complex)> c1_separated_root(Complex u0, Complex eta) {
    return [u0, eta](Complex w) { return -kernel::f(w, u0, eta); };
}

std::function<Complex(Complex)> c2_separated_root(Complex u0, double beta, Complex eta) {
    const Complex scale = std::exp(Complex(beta, 0.0));
    return [u0, eta, scale](Complex w) { return scale * kernel::f(u0, w, eta); };
}

} // namespace bethecorr::oracles
