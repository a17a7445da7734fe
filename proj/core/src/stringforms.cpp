#include "bethecorr/stringforms.hpp"

#include <cmath>
#include <string>

#include "bethecorr/errors.hpp"
#include "bethecorr/kernel.hpp"

namespace bethecorr::stringforms {

namespace {

void require_string(std::span<const Complex> ubar, Complex eta, double string_tol,
                    const char* who) {
    if (ubar.empty()) throw CardinalityMismatch(std::string(who) + ": empty string set");
    const double scale = string_tol * std::abs(eta);
    for (std::size_t k = 0; k + 1 < ubar.size(); ++k) {
        const double dev = std::abs(ubar[k + 1] - ubar[k] - eta);
        if (dev > scale)
            throw NotAString(std::string(who) + ": spacing deviation " + std::to_string(dev) +
                             " at index " + std::to_string(k));
    }
}

double factorial(int n) {
    double p = 1.0;
    for (int k = 2; k <= n; ++k) p *= k;
    return p;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double p = 1.0;
    for (int j = 1; j <= k; ++j) p = p * (n - k + j) / j;
    return p;
}

// Shared binomial sum: n! g(u_1,vbar) g(u_n,vbar)
//                      sum_k C(n-1,k) e^{k beta} (-1)^{n-1-k} / g(u_{k+1},vbar)
Complex string_sum(std::span<const Complex> vbar, std::span<const Complex> ubar,
                   Complex beta, Complex eta) {
    const int n = static_cast<int>(ubar.size());
    const Complex g1 = kernel::prod_g(ubar.front(), vbar, eta);
    const Complex gn = kernel::prod_g(ubar.back(), vbar, eta);
    const Complex ebeta = std::exp(beta);
    Complex sum{0.0, 0.0};
    Complex ekb{1.0, 0.0};
    double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
        const Complex gk = kernel::prod_g(ubar[static_cast<std::size_t>(k)], vbar, eta);
        sum += binomial(n - 1, k) * sign * ekb / gk;
        ekb *= ebeta;
        sign = -sign;
    }
    return factorial(n) * g1 * gn * sum;
}

// log(s + m) summed over m in [lo, hi]; throws PoleAtS near a product zero.
Complex log_pole_product(Complex s, int lo, int hi, double pole_exclusion) {
    Complex acc{0.0, 0.0};
    for (int m = lo; m <= hi; ++m) {
        const Complex factor = s + static_cast<double>(m);
        if (std::abs(factor) < pole_exclusion)
            throw PoleAtS("string offset s within " + std::to_string(pole_exclusion) +
                          " of pole at " + std::to_string(-m));
        acc += std::log(factor);
    }
    return acc;
}

Complex exp_or_overflow(Complex logvalue, const char* who) {
    // exp overflows past log(DBL_MAX) ~ 709.78; keep a safety margin.
    if (logvalue.real() > 709.0)
        throw Overflow(std::string(who) + ": log-magnitude " +
                       std::to_string(logvalue.real()) + " exceeds double range");
    return std::exp(logvalue);
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

void require_positive_n(int n, const char* who) {
    if (n < 1) throw DomainError(std::string(who) + ": string length must be positive");
}

// log of the double-string value; shared by the plain and _log entry points.
Complex omega_J_s_log_impl(int n, Complex s, Complex beta, const Tolerances& tol) {
    require_positive_n(n, "omega_J_s");
    const Complex em1 = std::exp(beta) - 1.0;
    const Complex f21 = hyp2f1_terminating(1.0 - s, 1 - n, Complex{2.0, 0.0},
                                           1.0 - std::exp(beta));
    const Complex logpref = 2.0 * log_factorial(n) -
                            log_pole_product(s, 1 - n, n - 1, tol.pole_exclusion);
    // overall sign is -1; fold it into the phase.
    return logpref + std::log(-em1 * f21);
}

Complex omega_Psi_s_log_impl(int n, Complex s, Complex beta, const Tolerances& tol) {
    require_positive_n(n, "omega_Psi_s");
    const Complex f21 = hyp2f1_terminating(1.0 - s, 1 - n, Complex{1.0, 0.0},
                                           1.0 - std::exp(beta));
    const Complex logpref = log_factorial(n) + log_factorial(n - 1) -
                            log_pole_product(s, 1 - n, n - 2, tol.pole_exclusion);
    return logpref + std::log(f21);
}

} // namespace

Complex hyp2f1_terminating(Complex a, int b, Complex c, Complex z) {
    if (b > 0)
        throw NonTerminating("hyp2f1_terminating: second parameter " + std::to_string(b) +
                             " is positive, series does not terminate");
    const int kmax = -b;
    // c hitting a nonpositive integer before the series terminates divides by zero.
    for (int j = 0; j < kmax; ++j) {
        if (std::abs(c + static_cast<double>(j)) < 1e-14)
            throw DomainError("hyp2f1_terminating: lower parameter hits nonpositive "
                              "integer -" + std::to_string(j) + " inside the sum");
    }
    Complex sum{1.0, 0.0};
    Complex term{1.0, 0.0};
    for (int k = 0; k < kmax; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (static_cast<double>(b) + kd) * z /
                ((c + kd) * (kd + 1.0));
        sum += term;
    }
    return sum;
}

Complex omega_J_string(std::span<const Complex> vbar, std::span<const Complex> ubar,
                       Complex beta, Complex eta, const Tolerances& tol) {
    require_string(ubar, eta, tol.string_tol, "omega_J_string");
    if (vbar.size() != ubar.size())
        throw CardinalityMismatch("omega_J_string: #v = " + std::to_string(vbar.size()) +
                                  " but #u = " + std::to_string(ubar.size()));
    return (std::exp(beta) - 1.0) * string_sum(vbar, ubar, beta, eta);
}

Complex omega_Psi_string(std::span<const Complex> vbar, std::span<const Complex> ubar,
                         Complex beta, Complex eta, const Tolerances& tol) {
    require_string(ubar, eta, tol.string_tol, "omega_Psi_string");
    if (vbar.size() + 1 != ubar.size())
        throw CardinalityMismatch("omega_Psi_string: #v = " + std::to_string(vbar.size()) +
                                  " but #u = " + std::to_string(ubar.size()));
    return string_sum(vbar, ubar, beta, eta);
}

oracles::LemmaSides binom_g_identity(int n, int k, Complex eta) {
    require_positive_n(n, "binom_g_identity");
    if (k < 0 || k >= n)
        throw IndexOutOfRange("binom_g_identity: k = " + std::to_string(k) +
                              " outside [0, " + std::to_string(n - 1) + "]");
    std::vector<Complex> ubar(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) ubar[static_cast<std::size_t>(j)] = static_cast<double>(j) * eta;
    std::vector<Complex> rest = ubar;
    rest.erase(rest.begin() + k);
    const Complex lhs = kernel::prod_g(ubar[static_cast<std::size_t>(k)], rest, eta);
    const double sign = (n - 1 - k) % 2 == 0 ? 1.0 : -1.0;
    const Complex rhs = sign * binomial(n - 1, k) / factorial(n - 1);
    return {lhs, rhs};
}

BetaExpansion omega_beta_expansion(std::span<const Complex> vbar,
                                   std::span<const Complex> ubar, Complex eta,
                                   formfactor::OmegaKind kind, const Tolerances& tol) {
    const char* who = kind == formfactor::OmegaKind::J ? "omega_beta_expansion(J)"
                                                       : "omega_beta_expansion(Psi)";
    require_string(ubar, eta, tol.string_tol, who);
    const int n = static_cast<int>(ubar.size());
    const std::size_t expected = kind == formfactor::OmegaKind::J
                                     ? ubar.size()
                                     : ubar.size() - 1;
    if (vbar.size() != expected)
        throw CardinalityMismatch(std::string(who) + ": #v = " + std::to_string(vbar.size()) +
                                  " but expected " + std::to_string(expected));
    const Complex g1 = kernel::prod_g(ubar.front(), vbar, eta);
    const Complex gn = kernel::prod_g(ubar.back(), vbar, eta);
    const Complex base = factorial(n) * factorial(n - 1) * g1 * gn;
    Complex diff{0.0, 0.0};
    for (std::size_t j = 0; j < vbar.size(); ++j) diff += ubar[j] - vbar[j];
    if (kind == formfactor::OmegaKind::J) return {Complex{0.0, 0.0}, base * diff / eta};
    return {base, base * (static_cast<double>(n - 1) + diff / eta)};
}

Complex omega_J_s(int n, Complex s, Complex beta, const Tolerances& tol) {
    if (beta == Complex{0.0, 0.0}) {
        require_positive_n(n, "omega_J_s");
        log_pole_product(s, 1 - n, n - 1, tol.pole_exclusion);
        return {0.0, 0.0};
    }
    return exp_or_overflow(omega_J_s_log_impl(n, s, beta, tol), "omega_J_s");
}

Complex omega_Psi_s(int n, Complex s, Complex beta, const Tolerances& tol) {
    return exp_or_overflow(omega_Psi_s_log_impl(n, s, beta, tol), "omega_Psi_s");
}

Complex omega_J_s_log(int n, Complex s, Complex beta, const Tolerances& tol) {
    return omega_J_s_log_impl(n, s, beta, tol);
}

Complex omega_Psi_s_log(int n, Complex s, Complex beta, const Tolerances& tol) {
    return omega_Psi_s_log_impl(n, s, beta, tol);
}

} // namespace bethecorr::stringforms
