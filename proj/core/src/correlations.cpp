#include "bethecorr/correlations.hpp"

#include <array>
#include <cmath>
#include <cstddef>

#include "bethecorr/errors.hpp"
#include "bethecorr/generating.hpp"
#include "bethecorr/parallel.hpp"

namespace bethecorr::correlations {

using bethe::ModelParams;
using bethe::StringState;

namespace {

void require_particles(const ModelParams& p, const char* where) {
    p.validate();
    if (p.N < 1) throw DomainError(std::string(where) + ": needs N >= 1");
}

// Spurious imaginary parts on manifestly real results indicate a broken
// evaluation chain, so they are rejected rather than silently projected out.
double project_real(Complex v, const char* where) {
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw NotConverged(std::string(where) + ": imaginary residue " +
                           std::to_string(v.imag()));
    return v.real();
}

// Twist limit beta -> 0: evaluations at b, b/2, b/4 give two first-order
// eliminations; they must agree to rtol or the limit is rejected.
template <typename F>
Complex twist_limit(F&& eval, double beta_step, double rtol, const char* where) {
    const Complex v1 = eval(beta_step);
    const Complex v2 = eval(0.5 * beta_step);
    const Complex v3 = eval(0.25 * beta_step);
    const Complex e1 = 2.0 * v2 - v1;
    const Complex e2 = 2.0 * v3 - v2;
    const double scale = std::max(std::abs(e1), std::abs(e2));
    if (std::abs(e2 - e1) > rtol * scale)
        throw NotConverged(std::string(where) + ": twist-limit estimates disagree");
    return e2;
}

} // namespace

Complex ground_state_norm(const ModelParams& p) {
    require_particles(p, "ground_state_norm");
    const double sign = p.N % 2 == 0 ? 1.0 : -1.0;
    return Complex{sign * p.kappa * p.L * static_cast<double>(p.N) * static_cast<double>(p.N),
                   0.0};
}

double field_correlation(double x, const ModelParams& p) {
    require_particles(p, "field_correlation");
    if (x < 0.0) throw DomainError("field_correlation: x must be >= 0");
    const double k = p.kappa;
    // terms are symmetric under l -> N+1-l, so this plain accumulation gives
    // a bit-identical result in either direction
    double sum = 0.0;
    for (int l = 1; l <= p.N; ++l) {
        const double m = static_cast<double>(l - 1) * static_cast<double>(p.N - l);
        const double s = static_cast<double>(p.N - 2 * l + 1);
        sum += std::exp(-k * x * m) * (1.0 + 0.5 * k * x * s * s);
    }
    return std::exp(-0.5 * k * x * static_cast<double>(p.N - 1)) * sum / p.L;
}

double density_correlation(double x, const ModelParams& p) {
    require_particles(p, "density_correlation");
    if (!(x > 0.0)) throw DomainError("density_correlation: x must be > 0");
    const double k = p.kappa;
    double sum = 0.0;
    for (int l = 1; l <= p.N - 1; ++l) {
        const double m = static_cast<double>(l) * static_cast<double>(p.N - l);
        const double s = static_cast<double>(p.N - 2 * l);
        sum += std::exp(-k * x * m) * (m * m * (1.0 + 0.5 * k * x * s * s) - m * s * s);
    }
    return k * sum / p.L;
}

double density_series(double x, const ModelParams& p) {
    require_particles(p, "density_series");
    if (x < 0.0) throw DomainError("density_series: x must be >= 0");
    const double k = p.kappa;
    double sum = 0.0;
    for (int l = 1; l <= p.N - 1; ++l) {
        const double m = static_cast<double>(l) * static_cast<double>(p.N - l);
        const double s = static_cast<double>(p.N - 2 * l);
        sum += std::exp(-k * x * m) * (1.0 + 0.5 * k * x * s * s);
    }
    return sum / (k * p.L);
}

double density_contact_limit(const ModelParams& p) {
    require_particles(p, "density_contact_limit");
    double sum = 0.0;
    for (int l = 1; l <= p.N - 1; ++l) {
        const double m = static_cast<double>(l) * static_cast<double>(p.N - l);
        const double s = static_cast<double>(p.N - 2 * l);
        sum += m * (m - s * s);
    }
    return p.kappa * sum / p.L;
}

double correlation_limit_oracle(double x, const ModelParams& p, CorrKind kind,
                                const OracleSteps& steps, const Tolerances& tol) {
    require_particles(p, "correlation_limit_oracle");
    if (p.N > 5)
        throw CapExceeded("correlation_limit_oracle: brute-force path capped at N = 5");
    if (!(x > 0.0) || !(x < p.L))
        throw DomainError("correlation_limit_oracle: x must lie strictly inside (0, L)");

    const StringState state = bethe::string_ground_state(p);
    const Complex norm = ground_state_norm(p);

    if (kind == CorrKind::field) {
        const Complex lim = twist_limit(
            [&](double b) { return generating::gen_field_bruteforce(state, x, b, tol); },
            steps.beta_step, steps.converge_rtol, "correlation_limit_oracle[field]");
        return project_real(lim / norm, "correlation_limit_oracle[field]");
    }

    const double hx = steps.x_step / p.kappa;
    if (!(x - 2.0 * hx > 0.0) || !(x + 2.0 * hx < p.L))
        throw DomainError("correlation_limit_oracle: position stencil leaves (0, L)");

    // 5-point second-derivative stencils for both parameters: each stage
    // amplifies the jitter of the one below by 1/h^2, and the h^4 truncation
    // of the wide stencil admits steps large enough to keep that in budget
    const auto second = [](const std::array<Complex, 5>& v, double h) {
        return (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
    };

    const double ha = steps.alpha_step;
    const auto second_alpha = [&](double xx) {
        std::array<Complex, 5> g;
        for (int i = 0; i < 5; ++i) {
            const double a = ha * static_cast<double>(i - 2);
            g[static_cast<std::size_t>(i)] = twist_limit(
                [&](double b) {
                    return generating::gen_density_bruteforce(state, xx, a, b, tol);
                },
                steps.density_beta_step, steps.converge_rtol,
                "correlation_limit_oracle[density]");
        }
        return second(g, ha) / norm;
    };

    std::array<Complex, 5> q;
    for (int j = 0; j < 5; ++j)
        q[static_cast<std::size_t>(j)] = second_alpha(x + hx * static_cast<double>(j - 2));
    const Complex dd = 0.5 * second(q, hx);
    return project_real(dd, "correlation_limit_oracle[density]");
}

CorrelationCurve evaluate_curve(const ModelParams& p, CorrKind kind, CorrMethod method,
                                std::span<const double> xs, const OracleSteps& steps,
                                const Tolerances& tol) {
    require_particles(p, "evaluate_curve");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw DomainError("evaluate_curve: sample positions must increase strictly");
        if (!(xs[i] >= 0.0) || !(xs[i] < p.L))
            throw DomainError("evaluate_curve: sample positions must lie in [0, L)");
        const bool needs_positive =
            method == CorrMethod::limit_oracle || kind == CorrKind::density;
        if (needs_positive && !(xs[i] > 0.0))
            throw DomainError("evaluate_curve: this kind/method pair needs x > 0");
    }

    CorrelationCurve curve;
    curve.params = p;
    curve.kind = kind;
    curve.method = method;
    curve.samples.resize(xs.size());
    parallel_for(static_cast<int>(xs.size()), [&](int i) {
        const double x = xs[static_cast<std::size_t>(i)];
        double v = 0.0;
        if (method == CorrMethod::closed_form)
            v = kind == CorrKind::field ? field_correlation(x, p) : density_correlation(x, p);
        else
            v = correlation_limit_oracle(x, p, kind, steps, tol);
        curve.samples[static_cast<std::size_t>(i)] = {x, v};
    });
    return curve;
}

} // namespace bethecorr::correlations
