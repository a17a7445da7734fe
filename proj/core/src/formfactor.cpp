#include "bethecorr/formfactor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bethecorr/kernel.hpp"

namespace bethecorr::formfactor {

namespace {

using kernel::ComplexMatrix;

// Smallest |h(u_j, u_k)| over ordered pairs; infinity for fewer than two
// roots.  This is the string-proximity measure the dispatcher keys on.
double min_h_gap(std::span<const Complex> u, Complex eta) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (j == k) continue;
            m = std::min(m, std::abs(kernel::h(u[j], u[k], eta)));
        }
    return m;
}

struct ColumnData {
    Complex h_bar_uk;  // h(ubar, u_k)
    Complex h_uk_bar;  // h(u_k, ubar)
    Complex h_v_uk;    // h(vbar, u_k)
    Complex h_uk_v;    // h(u_k, vbar)
};

ColumnData column_data(Complex uk, std::span<const Complex> u, std::span<const Complex> v,
                       Complex eta) {
    return ColumnData{kernel::prod_h(u, uk, eta), kernel::prod_h(uk, u, eta),
                      kernel::prod_h(v, uk, eta), kernel::prod_h(uk, v, eta)};
}

// sign = +1 builds the density block, sign = -1 the field block (whose last
// row is h(u_k, ubar) / h(u_k, vbar) instead of a kernel row).
Complex omega_det_impl(std::span<const Complex> v, std::span<const Complex> u, Complex beta,
                       Complex eta, const Tolerances& tol, double sign) {
    const int n = static_cast<int>(u.size());
    const int nv = static_cast<int>(v.size());
    if (n == 0) return Complex{1.0, 0.0};

    const bool rescale = min_h_gap(u, eta) < tol.reg_threshold;
    const Complex eb = std::exp(beta);

    ComplexMatrix m(n, n);
    for (int k = 0; k < n; ++k) {
        const ColumnData c = column_data(u[k], u, v, eta);
        for (int j = 0; j < nv; ++j) {
            const Complex a = eb * kernel::t(u[k], v[j], eta, tol.sep_scale);
            const Complex b =
                kernel::t(v[j], u[k], eta, tol.sep_scale) * c.h_uk_bar * c.h_v_uk / c.h_uk_v;
            m(j, k) = rescale ? (a * c.h_bar_uk + sign * b) : (a + sign * b / c.h_bar_uk);
        }
        if (nv < n) // field block: bottom row carries the extra u root
            m(n - 1, k) = rescale ? (c.h_uk_bar * c.h_bar_uk / c.h_uk_v) : (c.h_uk_bar / c.h_uk_v);
    }

    Complex pref = kernel::delta_prime(v, eta) * kernel::delta(u, eta) * kernel::prod_h(u, v, eta);
    if (rescale) pref /= kernel::prod_h(u, u, eta);
    return pref * kernel::det(std::move(m));
}

// Shared memoized recursion.  States are subsets of ubar encoded as bit
// masks; the matching v arguments are always a prefix of vbar (the recursion
// strips v from the back), so the popcount fixes them.  Masks are processed
// in ascending order, which visits every submask before its supersets and
// keeps the evaluation fully deterministic.
//
// Density step, n roots left, w = v[n-1], vr = v[0..n-2]:
//   Omega(S) = sum_{j in S} g(w, u_j)
//              [ f(u_j, u_{S\j}) f(vr, u_j) - e^beta f(u_{S\j}, u_j) f(u_j, vr) ] Omega(S\j),
//   base Omega({j}) = g(u_j, v_0) (e^beta - 1).
// Field step, w = v[n-2], vr = v[0..n-3]:
//   Omega(S) = sum_{j in S} g(u_j, w)
//              [ e^beta f(u_{S\j}, u_j) f(u_j, vr) - f(u_j, u_{S\j}) f(vr, u_j) ] Omega(S\j),
//   base Omega({j}) = 1.
Complex omega_rec_impl(std::span<const Complex> v, std::span<const Complex> u, Complex beta,
                       Complex eta, int cap, OmegaKind kind) {
    const int n = static_cast<int>(u.size());
    if (n > cap || n > 30)
        throw CapExceeded("omega recursion: N = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(std::min(cap, 30)));
    if (n == 0) return Complex{1.0, 0.0};

    const Complex eb = std::exp(beta);
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<Complex> memo(full + 1u);

    std::vector<Complex> urest;
    urest.reserve(static_cast<std::size_t>(n));

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int nm = std::popcount(mask);
        if (nm == 1) {
            const int j = std::countr_zero(mask);
            memo[mask] = (kind == OmegaKind::J)
                             ? kernel::g(u[j], v[0], eta) * (eb - Complex{1.0, 0.0})
                             : Complex{1.0, 0.0};
            continue;
        }
        const int vlast_idx = (kind == OmegaKind::J) ? nm - 1 : nm - 2;
        const Complex w = v[vlast_idx];
        const std::span<const Complex> vr = v.subspan(0, static_cast<std::size_t>(vlast_idx));

        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const std::uint32_t bit = 1u << j;
            if (!(mask & bit)) continue;
            urest.clear();
            for (int k = 0; k < n; ++k)
                if ((mask & (1u << k)) && k != j) urest.push_back(u[k]);

            const Complex fwd = kernel::prod_f(u[j], urest, eta) * kernel::prod_f(vr, u[j], eta);
            const Complex bwd = kernel::prod_f(urest, u[j], eta) * kernel::prod_f(u[j], vr, eta);
            const Complex weight = (kind == OmegaKind::J)
                                       ? kernel::g(w, u[j], eta) * (fwd - eb * bwd)
                                       : kernel::g(u[j], w, eta) * (eb * bwd - fwd);
            acc += weight * memo[mask ^ bit];
        }
        memo[mask] = acc;
    }
    return memo[full];
}

void check_cardinality(std::span<const Complex> v, std::span<const Complex> u, OmegaKind kind,
                       const char* who) {
    if (kind == OmegaKind::Psi && u.empty())
        throw CardinalityMismatch(std::string(who) + ": field block needs at least one u root");
    const std::size_t expect = (kind == OmegaKind::J) ? u.size() : u.size() - 1;
    if (v.size() != expect)
        throw CardinalityMismatch(std::string(who) + ": expected #v = " + std::to_string(expect) +
                                  ", got " + std::to_string(v.size()));
}

Complex omega_dispatch(std::span<const Complex> v, std::span<const Complex> u, Complex beta,
                       Complex eta, const Tolerances& tol, OmegaKind kind) {
    const double hmin = min_h_gap(u, eta);
    if (hmin < tol.string_dispatch_threshold)
        return omega_rec_impl(v, u, beta, eta, tol.recursion_cap, kind);
    return omega_det_impl(v, u, beta, eta, tol, kind == OmegaKind::J ? 1.0 : -1.0);
}

void require_on_shell(std::span<const Complex> roots, const bethe::ModelParams& p, double tol,
                      const char* who) {
    const auto res = bethe::bethe_residual(roots, p);
    const double worst = res.max_abs();
    if (!(worst <= tol))
        throw NotOnShell(std::string(who) + ": Bethe residual " + std::to_string(worst) +
                         " exceeds " + std::to_string(tol));
}

void require_on_shell(const bethe::StringState& s, double tol, const char* who) {
    if (s.exact_at_machine_precision) return;
    if (!(s.residual_norm <= tol))
        throw NotOnShell(std::string(who) + ": gap-equation residual " +
                         std::to_string(s.residual_norm) + " exceeds " + std::to_string(tol) +
                         "; refine the state");
}

bool same_multiset(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) return false;
    std::vector<Complex> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    const auto lt = [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(sa.begin(), sa.end(), lt);
    std::sort(sb.begin(), sb.end(), lt);
    return std::equal(sa.begin(), sa.end(), sb.begin(),
                      [](Complex x, Complex y) { return x == y; });
}

} // namespace

Complex omega_J_det(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                    Complex eta, const Tolerances& tol) {
    check_cardinality(vbar, ubar, OmegaKind::J, "omega_J_det");
    return omega_det_impl(vbar, ubar, beta, eta, tol, 1.0);
}

Complex omega_Psi_det(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                      Complex eta, const Tolerances& tol) {
    check_cardinality(vbar, ubar, OmegaKind::Psi, "omega_Psi_det");
    return omega_det_impl(vbar, ubar, beta, eta, tol, -1.0);
}

Complex omega_J_rec(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                    Complex eta, int cap) {
    check_cardinality(vbar, ubar, OmegaKind::J, "omega_J_rec");
    return omega_rec_impl(vbar, ubar, beta, eta, cap, OmegaKind::J);
}

Complex omega_Psi_rec(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                      Complex eta, int cap) {
    check_cardinality(vbar, ubar, OmegaKind::Psi, "omega_Psi_rec");
    return omega_rec_impl(vbar, ubar, beta, eta, cap, OmegaKind::Psi);
}

Complex omega_J(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                Complex eta, const Tolerances& tol) {
    check_cardinality(vbar, ubar, OmegaKind::J, "omega_J");
    return omega_dispatch(vbar, ubar, beta, eta, tol, OmegaKind::J);
}

Complex omega_Psi(std::span<const Complex> vbar, std::span<const Complex> ubar, Complex beta,
                  Complex eta, const Tolerances& tol) {
    check_cardinality(vbar, ubar, OmegaKind::Psi, "omega_Psi");
    return omega_dispatch(vbar, ubar, beta, eta, tol, OmegaKind::Psi);
}

Complex omega_J_det(const OmegaArgs& a, const Tolerances& tol) {
    return omega_J_det(a.vbar, a.ubar, a.beta, a.eta, tol);
}

Complex omega_Psi_det(const OmegaArgs& a, const Tolerances& tol) {
    return omega_Psi_det(a.vbar, a.ubar, a.beta, a.eta, tol);
}

Complex omega_J_rec(const OmegaArgs& a, int cap) {
    return omega_J_rec(a.vbar, a.ubar, a.beta, a.eta, cap);
}

Complex omega_Psi_rec(const OmegaArgs& a, int cap) {
    return omega_Psi_rec(a.vbar, a.ubar, a.beta, a.eta, cap);
}

Complex omega(const OmegaArgs& a, const Tolerances& tol) {
    a.validate();
    return omega_dispatch(a.vbar, a.ubar, a.beta, a.eta, tol, a.kind);
}

Complex density_form_factor(std::span<const Complex> vbar, std::span<const Complex> ubar,
                            double x, const bethe::ModelParams& params, double delta_beta,
                            const Tolerances& tol) {
    if (vbar.size() != ubar.size())
        throw CardinalityMismatch("density_form_factor: #v must equal #u");
    params.validate();
    require_on_shell(vbar, params, tol.on_shell_tol, "density_form_factor (v side)");
    require_on_shell(ubar, params, tol.on_shell_tol, "density_form_factor (u side)");
    if (same_multiset(vbar, ubar)) return Complex{0.0, 0.0}; // diagonal: prefactor vanishes

    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < ubar.size(); ++j) s += ubar[j] - vbar[j];
    const Complex pref = Complex{0.0, 1.0} * s * std::exp(Complex{0.0, 1.0} * x * s);

    const Complex eta = params.eta();
    const auto slope = [&](double d) {
        return (omega_J(vbar, ubar, Complex{d, 0.0}, eta, tol) -
                omega_J(vbar, ubar, Complex{-d, 0.0}, eta, tol)) /
               (2.0 * d);
    };
    const Complex d1 = slope(delta_beta);
    const Complex d2 = slope(0.5 * delta_beta);
    return pref * (4.0 * d2 - d1) / 3.0;
}

Complex field_form_factor(std::span<const Complex> vbar, std::span<const Complex> ubar, double x,
                          const bethe::ModelParams& params, const Tolerances& tol) {
    if (ubar.empty() || vbar.size() + 1 != ubar.size())
        throw CardinalityMismatch("field_form_factor: need #v = #u - 1 with #u >= 1");
    params.validate();
    require_on_shell(vbar, params, tol.on_shell_tol, "field_form_factor (v side)");
    require_on_shell(ubar, params, tol.on_shell_tol, "field_form_factor (u side)");

    Complex s{0.0, 0.0};
    for (const Complex& u : ubar) s += u;
    for (const Complex& v : vbar) s -= v;
    const Complex pref = std::sqrt(params.kappa) * std::exp(Complex{0.0, 1.0} * x * s);
    return pref * omega_Psi(vbar, ubar, Complex{0.0, 0.0}, params.eta(), tol);
}

Complex field_form_factor(const bethe::StringState& bra, const bethe::StringState& ket, double x,
                          const Tolerances& tol) {
    if (bra.N() + 1 != ket.N())
        throw CardinalityMismatch("field_form_factor: bra must hold one particle fewer than ket");
    if (bra.params.kappa != ket.params.kappa || bra.params.L != ket.params.L)
        throw DomainError("field_form_factor: bra and ket belong to different models");
    require_on_shell(bra, tol.on_shell_tol, "field_form_factor (bra)");
    require_on_shell(ket, tol.on_shell_tol, "field_form_factor (ket)");

    Complex s{0.0, 0.0};
    for (const Complex& u : ket.roots.values()) s += u;
    for (const Complex& v : bra.roots.values()) s -= v;
    const Complex pref = std::sqrt(ket.params.kappa) * std::exp(Complex{0.0, 1.0} * x * s);
    return pref * omega_Psi(bra.roots, ket.roots, Complex{0.0, 0.0}, ket.params.eta(), tol);
}

} // namespace bethecorr::formfactor
