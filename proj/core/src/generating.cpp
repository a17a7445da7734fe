#include "bethecorr/generating.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bethecorr/detail/reduce.hpp"
#include "bethecorr/errors.hpp"
#include "bethecorr/formfactor.hpp"
#include "bethecorr/kernel.hpp"
#include "bethecorr/stringforms.hpp"

namespace bethecorr::generating {

namespace {

constexpr int kBruteForceCap = 7;

void require_inside(double x, const bethe::ModelParams& p) {
    if (!(x > 0.0) || !(x < p.L))
        throw DomainError("generating: x = " + std::to_string(x) +
                          " must lie strictly inside (0, " + std::to_string(p.L) + ")");
}

void require_twist(double beta, double gamma, int N, double pole_exclusion) {
    if (beta == 0.0)
        throw DomainError("generating: twist must be nonzero (beta -> 0 limits live in the "
                          "correlation routines)");
    const double nearest = std::round(gamma);
    if (nearest != 0.0 && std::abs(gamma - nearest) < pole_exclusion)
        throw PoleAtGamma("generating: gamma = " + std::to_string(gamma) +
                          " within the exclusion radius of " + std::to_string(nearest));
    if (!(std::abs(gamma) < static_cast<double>(N)))
        throw DomainError("generating: |gamma| must stay below N");
}

void require_state(const bethe::StringState& s, double on_shell_tol) {
    if (s.exact_at_machine_precision) return;
    if (s.residual_norm > on_shell_tol)
        throw NotOnShell("generating: string-state residual " + std::to_string(s.residual_norm) +
                         " exceeds " + std::to_string(on_shell_tol));
}

void require_raw_on_shell(std::span<const Complex> vbar, std::span<const Complex> ubar,
                          double beta, const bethe::ModelParams& p, double on_shell_tol) {
    const double ru = bethe::bethe_residual(ubar, p).max_abs();
    if (ru > on_shell_tol)
        throw NotOnShell("generating: ket residual " + std::to_string(ru));
    const double rv = bethe::twisted_bethe_residual(vbar, beta, p).max_abs();
    if (rv > on_shell_tol)
        throw NotOnShell("generating: bra residual " + std::to_string(rv));
}

Complex set_sum(std::span<const Complex> s) {
    Complex acc{0.0, 0.0};
    for (const Complex& w : s) acc += w;
    return acc;
}

// Product of f over all pairs, certifying sub-resolution string spacings as
// exact. A spacing within a few ulps of -eta cannot be told apart from an
// exact string gap (the true gaps decay like exp(-kappa L m(N-m)/2) and fall
// below double resolution long before they reach zero), while the position
// factor of such a partition can grow like exp(+kappa x N); without the
// certification the rounding dirt of the stored roots is amplified into the
// sum. The floor sits well under the smallest representable honest gap.
Complex prod_f_certified(std::span<const Complex> a, std::span<const Complex> b, Complex eta) {
    constexpr double kUlps = 16.0;
    const double eps = std::numeric_limits<double>::epsilon();
    Complex prod{1.0, 0.0};
    for (const Complex& u : a) {
        for (const Complex& w : b) {
            const Complex d = u - w;
            const double floor =
                kUlps * eps * std::max({std::abs(u), std::abs(w), std::abs(eta)});
            if (std::abs(d + eta) <= floor) return Complex{0.0, 0.0};
            prod *= kernel::f(u, w, eta);
        }
    }
    return prod;
}

// Exponentially suppressed partitions can pair an exactly vanishing f factor
// (string spacings at machine resolution) with an overflowing position
// factor, so the f products decide before anything else is evaluated.
Complex field_partition_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                            double x, double beta, const bethe::ModelParams& p,
                            const Tolerances& tol, std::vector<PartitionTerm>* audit) {
    const int N = static_cast<int>(ubar.size());
    if (static_cast<int>(vbar.size()) != N)
        throw CardinalityMismatch("gen_field_bruteforce: #v != #u");
    if (N < 1) throw DomainError("gen_field_bruteforce: empty state");
    if (N > kBruteForceCap)
        throw CapExceeded("gen_field_bruteforce: N = " + std::to_string(N) + " exceeds cap " +
                          std::to_string(kBruteForceCap));
    const Complex eta = p.eta();
    const Complex zero{0.0, 0.0};
    std::vector<Complex> terms;
    std::vector<PartitionTerm> entries;
    for (int nI = 1; nI <= N; ++nI) {
        const auto uparts = kernel::enumerate_bipartitions(N, nI, tol.enumeration_cap);
        const auto vparts = kernel::enumerate_bipartitions(N, nI - 1, tol.enumeration_cap);
        for (const auto& up : uparts) {
            const auto uI = subset_by_mask(ubar, up.mask);
            const auto uII = complement_by_mask(ubar, up.mask);
            for (const auto& vp : vparts) {
                const auto vI = subset_by_mask(vbar, vp.mask);
                const auto vII = complement_by_mask(vbar, vp.mask);
                Complex val = zero;
                const Complex fu = prod_f_certified(uII, uI, eta);
                const Complex fv = prod_f_certified(vI, vII, eta);
                if (fu != zero && fv != zero) {
                    const Complex rr =
                        std::exp(Complex{0.0, -x} * (set_sum(vII) - set_sum(uII)));
                    const Complex oI =
                        formfactor::omega_Psi(vI, uI, Complex{beta, 0.0}, eta, tol);
                    const Complex oII = formfactor::omega_Psi(uII, vII, zero, eta, tol);
                    val = -p.kappa * rr * fu * fv * oI * oII;
                }
                terms.push_back(val);
                if (audit) entries.push_back({up.mask, vp.mask, val});
            }
        }
    }
    if (audit) *audit = std::move(entries);
    return detail::pairwise_sum(std::move(terms));
}

Complex density_partition_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                              double x, double alpha, double beta, const bethe::ModelParams& p,
                              const Tolerances& tol, std::vector<PartitionTerm>* audit) {
    const int N = static_cast<int>(ubar.size());
    if (static_cast<int>(vbar.size()) != N)
        throw CardinalityMismatch("gen_density_bruteforce: #v != #u");
    if (N < 1) throw DomainError("gen_density_bruteforce: empty state");
    if (N > kBruteForceCap)
        throw CapExceeded("gen_density_bruteforce: N = " + std::to_string(N) + " exceeds cap " +
                          std::to_string(kBruteForceCap));
    const Complex eta = p.eta();
    const Complex zero{0.0, 0.0};
    const double pref = std::exp(alpha * N);
    std::vector<Complex> terms;
    std::vector<PartitionTerm> entries;
    for (int nI = 0; nI <= N; ++nI) {
        const auto uparts = kernel::enumerate_bipartitions(N, nI, tol.enumeration_cap);
        const auto vparts = kernel::enumerate_bipartitions(N, nI, tol.enumeration_cap);
        for (const auto& up : uparts) {
            const auto uI = subset_by_mask(ubar, up.mask);
            const auto uII = complement_by_mask(ubar, up.mask);
            for (const auto& vp : vparts) {
                const auto vI = subset_by_mask(vbar, vp.mask);
                const auto vII = complement_by_mask(vbar, vp.mask);
                Complex val = zero;
                const Complex fu = prod_f_certified(uII, uI, eta);
                const Complex fv = prod_f_certified(vI, vII, eta);
                if (fu != zero && fv != zero) {
                    const Complex rr =
                        std::exp(Complex{0.0, -x} * (set_sum(vII) - set_sum(uII)));
                    const Complex oI =
                        formfactor::omega_J(vI, uI, Complex{beta - alpha, 0.0}, eta, tol);
                    const Complex oII =
                        formfactor::omega_J(uII, vII, Complex{-alpha, 0.0}, eta, tol);
                    val = pref * rr * fu * fv * oI * oII;
                }
                terms.push_back(val);
                if (audit) entries.push_back({up.mask, vp.mask, val});
            }
        }
    }
    if (audit) *audit = std::move(entries);
    return detail::pairwise_sum(std::move(terms));
}

double real_2f1(double a, int b, double c, double z) {
    return stringforms::hyp2f1_terminating(Complex{a, 0.0}, b, Complex{c, 0.0}, Complex{z, 0.0})
        .real();
}

// log of the common positive magnitude pi (N!)^2 / (|sin(pi gamma)|
// Gamma(N-gamma) Gamma(N+gamma)); the sign of the sine is tracked separately.
double log_gamma_ratio(int N, double gamma, double abs_sin) {
    return std::log(kPi) + 2.0 * std::lgamma(N + 1.0) - std::lgamma(N - gamma) -
           std::lgamma(N + gamma) - std::log(abs_sin);
}

} // namespace

Complex gen_field_bruteforce(std::span<const Complex> vbar, std::span<const Complex> ubar,
                             double x, double beta, const bethe::ModelParams& params,
                             const Tolerances& tol, std::vector<PartitionTerm>* audit) {
    params.validate();
    require_inside(x, params);
    if (beta == 0.0)
        throw DomainError("gen_field_bruteforce: twist must be nonzero (coinciding sets)");
    require_raw_on_shell(vbar, ubar, beta, params, tol.on_shell_tol);
    return field_partition_sum(vbar, ubar, x, beta, params, tol, audit);
}

Complex gen_field_bruteforce(const bethe::StringState& state, double x, double beta,
                             const Tolerances& tol, std::vector<PartitionTerm>* audit) {
    state.params.validate();
    require_inside(x, state.params);
    if (beta == 0.0)
        throw DomainError("gen_field_bruteforce: twist must be nonzero (coinciding sets)");
    require_state(state, tol.on_shell_tol);
    const RapiditySet mu = bethe::twist_roots(state, beta);
    return field_partition_sum(mu, state.roots, x, beta, state.params, tol, audit);
}

Complex gen_density_bruteforce(std::span<const Complex> vbar, std::span<const Complex> ubar,
                               double x, double alpha, double beta,
                               const bethe::ModelParams& params, const Tolerances& tol,
                               std::vector<PartitionTerm>* audit) {
    params.validate();
    require_inside(x, params);
    if (beta == 0.0)
        throw DomainError("gen_density_bruteforce: twist must be nonzero (coinciding sets)");
    require_raw_on_shell(vbar, ubar, beta, params, tol.on_shell_tol);
    return density_partition_sum(vbar, ubar, x, alpha, beta, params, tol, audit);
}

Complex gen_density_bruteforce(const bethe::StringState& state, double x, double alpha,
                               double beta, const Tolerances& tol,
                               std::vector<PartitionTerm>* audit) {
    state.params.validate();
    require_inside(x, state.params);
    if (beta == 0.0)
        throw DomainError("gen_density_bruteforce: twist must be nonzero (coinciding sets)");
    require_state(state, tol.on_shell_tol);
    const RapiditySet mu = bethe::twist_roots(state, beta);
    return density_partition_sum(mu, state.roots, x, alpha, beta, state.params, tol, audit);
}

double lambda_psi(int ell, double x, double beta, const bethe::ModelParams& params) {
    const int N = params.N;
    if (ell < 1 || ell > N)
        throw IndexOutOfRange("lambda_psi: ell = " + std::to_string(ell) + " outside [1, " +
                              std::to_string(N) + "]");
    const double gamma = beta / (params.kappa * params.L);
    const double z = 1.0 - std::exp(beta);
    return (2.0 * ell - N - 1.0 - gamma) *
           std::exp(params.kappa * gamma * x * (N - ell + 1)) *
           real_2f1(ell - N - gamma, 1 - ell, 1.0, z);
}

double m_psi(int ell, double x, double beta, const bethe::ModelParams& params) {
    return lambda_psi(ell, x, beta, params) + lambda_psi(params.N - ell + 1, x, beta, params);
}

double lambda_J(int ell, double x, double beta, double alpha, const bethe::ModelParams& params) {
    const int N = params.N;
    if (ell < 1 || ell > N - 1)
        throw IndexOutOfRange("lambda_J: ell = " + std::to_string(ell) + " outside [1, " +
                              std::to_string(N - 1) + "]");
    const double gamma = beta / (params.kappa * params.L);
    const double zb = 1.0 - std::exp(beta - alpha);
    const double za = 1.0 - std::exp(-alpha);
    return (N - 2.0 * ell + gamma) * std::exp(params.kappa * gamma * x * (N - ell)) *
           real_2f1(ell + 1 - N - gamma, 1 - ell, 2.0, zb) *
           real_2f1(1.0 - ell + gamma, ell + 1 - N, 2.0, za);
}

double m_J(int ell, double x, double beta, double alpha, const bethe::ModelParams& params) {
    return lambda_J(ell, x, beta, alpha, params) +
           lambda_J(params.N - ell, x, beta, alpha, params);
}

double m_psi_beta_derivative(int ell, int N, double x, const bethe::ModelParams& params) {
    if (ell < 1 || ell > N)
        throw IndexOutOfRange("m_psi_beta_derivative: ell outside [1, N]");
    const double d = static_cast<double>(N - 2 * ell + 1);
    return -2.0 / (params.kappa * params.L) - (x / params.L) * d * d;
}

double m_J_beta_derivative(int ell, int N, double x, const bethe::ModelParams& params) {
    if (ell < 1 || ell > N - 1)
        throw IndexOutOfRange("m_J_beta_derivative: ell outside [1, N-1]");
    const double d = static_cast<double>(N - 2 * ell);
    return (1.0 + 0.5 * params.kappa * x * d * d) / (params.kappa * params.L);
}

Complex gen_field_string(double x, const bethe::StringState& state, const bethe::Twist& twist,
                         const Tolerances& tol) {
    const bethe::ModelParams& p = state.params;
    p.validate();
    if (p.N < 1) throw DomainError("gen_field_string: empty state");
    require_inside(x, p);
    require_state(state, tol.on_shell_tol);
    require_twist(twist.beta, twist.gamma, p.N, tol.pole_exclusion);
    const int N = p.N;
    const double beta = twist.beta;
    const double gamma = twist.gamma;
    const double s_sin = std::sin(kPi * gamma);
    const double logmag = std::log(p.kappa) + log_gamma_ratio(N, gamma, std::abs(s_sin));
    double sign = (N % 2 == 1) ? 1.0 : -1.0;
    if (s_sin < 0.0) sign = -sign;
    const Complex phase = std::exp(Complex{0.0, -x} * state.roots[0]);
    const bool sym = std::abs(beta) < tol.beta_switch;
    double sum = 0.0;
    for (int ell = 1; ell <= N; ++ell) {
        const double w = std::exp(-p.kappa * x * (ell - 1) * (N - ell));
        sum += w * (sym ? 0.5 * m_psi(ell, x, beta, p) : lambda_psi(ell, x, beta, p));
    }
    return sign * std::exp(logmag) * phase * sum;
}

GenDensityParts gen_density_string_parts(double x, double alpha, const bethe::StringState& state,
                                         const bethe::Twist& twist, const Tolerances& tol) {
    const bethe::ModelParams& p = state.params;
    p.validate();
    if (p.N < 1) throw DomainError("gen_density_string: empty state");
    require_inside(x, p);
    require_state(state, tol.on_shell_tol);
    require_twist(twist.beta, twist.gamma, p.N, tol.pole_exclusion);
    const int N = p.N;
    const double beta = twist.beta;
    const double gamma = twist.gamma;
    const double s_sin = std::sin(kPi * gamma);
    const double logmag = log_gamma_ratio(N, gamma, std::abs(s_sin)) + alpha * N;
    double sign = (N % 2 == 0) ? 1.0 : -1.0;
    if (s_sin < 0.0) sign = -sign;
    const double za = 1.0 - std::exp(-alpha);
    const double zb = 1.0 - std::exp(beta - alpha);
    // both pure partitions together: their individual 1/sin(pi gamma)
    // divergences cancel in this bracket as gamma -> 0
    const double bracket =
        (std::exp(beta - alpha) - 1.0) * real_2f1(1.0 - gamma, 1 - N, 2.0, zb) -
        (std::exp(-alpha) - 1.0) * std::exp(p.kappa * gamma * x * N) *
            real_2f1(1.0 + gamma, 1 - N, 2.0, za);
    GenDensityParts parts;
    parts.boundary = Complex{sign * std::exp(logmag) * bracket, 0.0};
    if (N >= 2 && za != 0.0 && zb != 0.0) {
        const double logbulk =
            logmag + std::log(std::abs(std::exp(beta - alpha) - 1.0)) +
            std::log(std::abs(std::exp(-alpha) - 1.0));
        double bulk_sign = sign;
        if (std::exp(beta - alpha) - 1.0 < 0.0) bulk_sign = -bulk_sign;
        if (std::exp(-alpha) - 1.0 < 0.0) bulk_sign = -bulk_sign;
        const bool sym = std::abs(beta) < tol.beta_switch;
        double sum = 0.0;
        for (int ell = 1; ell <= N - 1; ++ell) {
            const double w = std::exp(-p.kappa * x * ell * (N - ell));
            sum += w * (sym ? 0.5 * m_J(ell, x, beta, alpha, p)
                            : lambda_J(ell, x, beta, alpha, p));
        }
        parts.bulk = Complex{bulk_sign * std::exp(logbulk) * sum, 0.0};
    }
    return parts;
}

Complex gen_density_string(double x, double alpha, const bethe::StringState& state,
                           const bethe::Twist& twist, const Tolerances& tol) {
    return gen_density_string_parts(x, alpha, state, twist, tol).total();
}

} // namespace bethecorr::generating
