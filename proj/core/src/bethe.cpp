#include "bethecorr/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bethecorr::bethe {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Principal log of exp(i L u): imaginary part wrapped to (-pi, pi].
Complex wrapped_exponent(Complex u, double L) {
    Complex z = Complex(0.0, 1.0) * L * u;
    double k = std::round(z.imag() / (2.0 * kPi));
    return z - Complex(0.0, 2.0 * kPi * k);
}

bool on_negative_axis(Complex z) {
    return z.real() < 0.0 && std::abs(z.imag()) <= 1e-12 * std::abs(z);
}

// ----- internal gap machinery -----
//
// The ground-state string is parametrized by the spacing deviations
// ("gaps") g_m > 0, m = 1..M, M = floor(N/2), where gap m belongs to the
// root pair (N-m, N-m+1) counted from the top; the lower half mirrors by
// symmetry.  Multiplying the Bethe equations of the top m roots cancels all
// intra-set factors in pairs and leaves one near-zero factor, g_m, giving
// well-conditioned log-form equations
//
//   y_m = logpred_m(g),   y_m = log g_m,
//   logpred_m = -kappa L T_m + sum' [ log den_{jk} - log num_{jk} ],
//
// with T_m the sum of the top m scaled roots, num/den the non-singular
// cross-pair factors (j-k-1) resp. (j-k+1) plus tiny deviation sums.

struct GapSystem {
    int N;
    int M;
    double kappaL;

    int gap_index(int p) const { return std::min(p, N - p); } // spacing p = 1..N-1

    // deviation sum over spacings p in [k, j-1]; exact (sums of tiny positives)
    double corr_diff(const std::vector<double>& g, int j, int k) const {
        double s = 0.0;
        for (int p = k; p < j; ++p) s += g[static_cast<std::size_t>(gap_index(p) - 1)];
        return s;
    }

    // corrections c_j (centered: c_j = -c_{N+1-j}), 1-based index j
    std::vector<double> corrections(const std::vector<double>& g) const {
        std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
        if (N < 2) return c;
        if (N % 2 == 1) {
            int mid = (N + 1) / 2;
            c[static_cast<std::size_t>(mid)] = 0.0;
            for (int j = mid + 1; j <= N; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] +
                                                 g[static_cast<std::size_t>(gap_index(j - 1) - 1)];
        } else {
            int lo = N / 2 + 1;
            c[static_cast<std::size_t>(lo)] = 0.5 * g[static_cast<std::size_t>(M - 1)];
            for (int j = lo + 1; j <= N; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] +
                                                 g[static_cast<std::size_t>(gap_index(j - 1) - 1)];
        }
        for (int j = 1; j <= N - j; ++j) c[static_cast<std::size_t>(j)] = -c[static_cast<std::size_t>(N + 1 - j)];
        return c;
    }

    double ideal(int j) const { return j - 0.5 * (N + 1); }

    // T_m = sum of scaled roots of the top m; the integer part is exact
    double T(const std::vector<double>& g, int m) const {
        auto c = corrections(g);
        double tiny = 0.0;
        for (int j = N - m + 1; j <= N; ++j) tiny += c[static_cast<std::size_t>(j)];
        return 0.5 * m * (N - m) + tiny;
    }

    double logpred(const std::vector<double>& g, int m) const {
        double s = -kappaL * T(g, m);
        for (int j = N - m + 1; j <= N; ++j)
            for (int k = 1; k <= N - m; ++k) {
                double d = corr_diff(g, j, k);
                s += std::log((j - k + 1) + d);
                if (j - k == 1) continue; // boundary pair: this is the solved-for gap
                s -= std::log((j - k - 1) + d);
            }
        return s;
    }

    // d logpred_m / d g_l (1-based l), by the chain rule through T and the
    // deviation sums; used for the Newton Jacobian.
    double dlogpred(const std::vector<double>& g, int m, int l) const {
        // dT_m/dg_l via the correction construction
        std::vector<double> dc(static_cast<std::size_t>(N) + 1, 0.0);
        if (N % 2 == 1) {
            int mid = (N + 1) / 2;
            for (int j = mid + 1; j <= N; ++j)
                dc[static_cast<std::size_t>(j)] = dc[static_cast<std::size_t>(j - 1)] +
                                                  (gap_index(j - 1) == l ? 1.0 : 0.0);
        } else {
            int lo = N / 2 + 1;
            dc[static_cast<std::size_t>(lo)] = (l == M) ? 0.5 : 0.0;
            for (int j = lo + 1; j <= N; ++j)
                dc[static_cast<std::size_t>(j)] = dc[static_cast<std::size_t>(j - 1)] +
                                                  (gap_index(j - 1) == l ? 1.0 : 0.0);
        }
        for (int j = 1; j <= N - j; ++j) dc[static_cast<std::size_t>(j)] = -dc[static_cast<std::size_t>(N + 1 - j)];

        double dT = 0.0;
        for (int j = N - m + 1; j <= N; ++j) dT += dc[static_cast<std::size_t>(j)];

        double s = -kappaL * dT;
        for (int j = N - m + 1; j <= N; ++j)
            for (int k = 1; k <= N - m; ++k) {
                double cnt = 0.0;
                for (int p = k; p < j; ++p)
                    if (gap_index(p) == l) cnt += 1.0;
                if (cnt == 0.0) continue;
                double d = corr_diff(g, j, k);
                s += cnt / ((j - k + 1) + d);
                if (j - k == 1) continue;
                s -= cnt / ((j - k - 1) + d);
            }
        return s;
    }
};

std::vector<double> gaps_from_y(const std::vector<double>& y) {
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = std::exp(y[i]);
    return g;
}

// Solve the small real linear system J x = b in place (partial pivoting).
void solve_small(std::vector<double> J, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    auto a = [&](int r, int c) -> double& { return J[static_cast<std::size_t>(r * n + c)]; };
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        if (std::abs(a(piv, c)) < 1e-14)
            throw IllConditioned("string_ground_state: Newton Jacobian is singular");
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(c)]);
        }
        for (int r = c + 1; r < n; ++r) {
            double fac = a(r, c) / a(c, c);
            for (int k = c; k < n; ++k) a(r, k) -= fac * a(c, k);
            b[static_cast<std::size_t>(r)] -= fac * b[static_cast<std::size_t>(c)];
        }
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int k = r + 1; k < n; ++k) s -= a(r, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(r)] = s / a(r, r);
    }
}

StringState assemble_state(const ModelParams& p, const GapSystem& sys,
                           const std::vector<double>& gaps, bool refined) {
    auto c = sys.corrections(gaps);
    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(p.N));
    for (int j = 1; j <= p.N; ++j)
        roots.emplace_back(0.0, p.kappa * (sys.ideal(j) + c[static_cast<std::size_t>(j)]));

    StringState s;
    s.params = p;
    s.roots = RapiditySet(std::move(roots), "ground-state string", 1e-10 * p.kappa);
    s.corrections.assign(c.begin() + 1, c.end());
    s.gaps = gaps;
    s.refined = refined;

    double pred1 = (sys.M >= 1) ? std::exp(sys.logpred(gaps, 1)) : 0.0;
    s.exact_at_machine_precision =
        (sys.M == 0) || pred1 < 16.0 * kEps * std::max(1.0, 0.5 * (p.N - 1));

    // gap-equation residuals R_m = g_m - pred_m
    double rn = 0.0;
    for (int m = 1; m <= sys.M; ++m) {
        double r = gaps[static_cast<std::size_t>(m - 1)] - std::exp(sys.logpred(gaps, m));
        rn = std::max(rn, std::abs(r));
    }
    s.residual_norm = rn;
    return s;
}

} // namespace

Complex r(Complex u, const ModelParams& p) {
    return std::exp(Complex(0.0, -1.0) * p.L * u);
}

Complex r1(Complex u, double x, const ModelParams& p) {
    if (x < 0.0 || x > p.L) throw DomainError("r1: x outside [0, L]");
    return std::exp(Complex(0.0, -1.0) * u * x);
}

Complex r2(Complex u, double x, const ModelParams& p) {
    if (x < 0.0 || x > p.L) throw DomainError("r2: x outside [0, L]");
    return std::exp(Complex(0.0, -1.0) * u * (p.L - x));
}

double BetheResidual::max_abs() const {
    double m = 0.0;
    for (const Complex& c : components) m = std::max(m, std::abs(c));
    return m;
}

BetheResidual twisted_bethe_residual(std::span<const Complex> v, double beta,
                                     const ModelParams& p) {
    p.validate();
    const int n = static_cast<int>(v.size());
    const Complex ik(0.0, p.kappa);

    BetheResidual res;
    res.components.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Complex comp = wrapped_exponent(v[static_cast<std::size_t>(j)], p.L) + beta;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            Complex d = v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(k)];
            Complex num = d + ik, den = d - ik;
            if (on_negative_axis(num) || on_negative_axis(den)) res.branch_warning = true;
            comp += std::log(num) - std::log(den);
        }
        res.components.push_back(comp);
    }
    return res;
}

BetheResidual bethe_residual(std::span<const Complex> u, const ModelParams& p) {
    return twisted_bethe_residual(u, 0.0, p);
}

StringState string_ground_state(const ModelParams& p, bool refine, double newton_tol,
                                int max_iter) {
    p.validate();
    const int N = p.N;

    GapSystem sys{N, N / 2, p.kappa * p.L};

    if (N == 0) {
        StringState s;
        s.params = p;
        s.refined = true;
        s.exact_at_machine_precision = true;
        return s;
    }

    std::vector<double> zero(static_cast<std::size_t>(sys.M), 0.0);
    if (!refine || sys.M == 0) return assemble_state(p, sys, zero, !refine ? false : true);

    // Newton on H_m(y) = y_m - logpred_m(exp(y)); the decoupled estimate
    // (deviation sums dropped) is already accurate to relative O(g).
    std::vector<double> y(static_cast<std::size_t>(sys.M));
    for (int m = 1; m <= sys.M; ++m) y[static_cast<std::size_t>(m - 1)] = sys.logpred(zero, m);

    const double Tmax = sys.T(zero, sys.M);
    const double tol = std::max(newton_tol, 4.0 * kEps * (1.0 + sys.kappaL * Tmax));

    auto eval_H = [&](const std::vector<double>& yy, std::vector<double>& H) {
        auto g = gaps_from_y(yy);
        double norm = 0.0;
        for (int m = 1; m <= sys.M; ++m) {
            H[static_cast<std::size_t>(m - 1)] = yy[static_cast<std::size_t>(m - 1)] - sys.logpred(g, m);
            norm = std::max(norm, std::abs(H[static_cast<std::size_t>(m - 1)]));
        }
        return norm;
    };

    std::vector<double> H(static_cast<std::size_t>(sys.M));
    double norm = eval_H(y, H);
    double best = norm;

    for (int it = 0; it < max_iter && norm > tol; ++it) {
        auto g = gaps_from_y(y);
        // J_{ml} = delta_{ml} - g_l * dlogpred_m/dg_l
        std::vector<double> J(static_cast<std::size_t>(sys.M * sys.M), 0.0);
        for (int m = 1; m <= sys.M; ++m)
            for (int l = 1; l <= sys.M; ++l)
                J[static_cast<std::size_t>((m - 1) * sys.M + (l - 1))] =
                    (m == l ? 1.0 : 0.0) -
                    g[static_cast<std::size_t>(l - 1)] * sys.dlogpred(g, m, l);

        std::vector<double> step, negH(H);
        for (double& v : negH) v = -v;
        solve_small(J, negH, step);

        double scale = 1.0;
        std::vector<double> ytry(y.size()), Htry(H.size());
        double newnorm = norm;
        for (int damp = 0; damp < 40; ++damp) {
            for (std::size_t i = 0; i < y.size(); ++i) ytry[i] = y[i] + scale * step[i];
            newnorm = eval_H(ytry, Htry);
            if (newnorm < norm || newnorm <= tol) break;
            scale *= 0.5;
        }
        y = ytry;
        H = Htry;
        norm = newnorm;
        best = std::min(best, norm);
    }

    if (norm > tol)
        throw MaxIterations("string_ground_state: Newton failed to reach tolerance", best);

    return assemble_state(p, sys, gaps_from_y(y), true);
}

std::vector<double> string_residual(const StringState& s) {
    const int N = s.params.N;
    GapSystem sys{N, N / 2, s.params.kappa * s.params.L};
    std::vector<double> out;
    for (int m = 1; m <= sys.M; ++m)
        out.push_back(s.gaps[static_cast<std::size_t>(m - 1)] - std::exp(sys.logpred(s.gaps, m)));
    return out;
}

BetheResidual bethe_residual(const StringState& s) {
    const int N = s.params.N;
    GapSystem sys{N, N / 2, s.params.kappa * s.params.L};

    BetheResidual res;
    for (int j = 1; j <= N; ++j) {
        // -kappa L lam_j + sum_{k != j} [ log|D+1| - log|D-1| ], D = lam_j - lam_k;
        // the +-i pi contributions of negative factors cancel pairwise.
        double comp = -sys.kappaL * (sys.ideal(j) + s.corrections[static_cast<std::size_t>(j - 1)]);
        for (int k = 1; k <= N; ++k) {
            if (k == j) continue;
            // num/den assembled from the integer offset and the exact
            // deviation sum; never form (j-k)+d first, that rounds the
            // deviation away against the integer part.
            double d = (j > k) ? sys.corr_diff(s.gaps, j, k) : -sys.corr_diff(s.gaps, k, j);
            double num = (j - k + 1) + d, den = (j - k - 1) + d;
            if (num == 0.0 || den == 0.0)
                throw DomainError("bethe_residual(StringState): zero gap; refine the state first");
            comp += std::log(std::abs(num)) - std::log(std::abs(den));
        }
        res.components.push_back(Complex(comp, 0.0));
    }
    return res;
}

BetheResidual twisted_bethe_residual(const StringState& s, double /*beta*/) {
    // The uniform shift mu_j = lambda_j + i beta / L multiplies every
    // exponential factor by e^{ -beta }, exactly cancelling the twist; the
    // pair differences are unchanged.
    return bethe_residual(s);
}

RapiditySet twist_roots(const StringState& s, double beta) {
    std::vector<Complex> mu = s.roots.values();
    const Complex shift(0.0, beta / s.params.L);
    for (Complex& m : mu) m += shift;
    return RapiditySet(std::move(mu), "twisted string", 1e-10 * s.params.kappa);
}

Complex energy(std::span<const Complex> u) {
    Complex e{0.0, 0.0};
    for (const Complex& x : u) e += x * x;
    return e;
}

double energy(const StringState& s, double imag_tol) {
    const int N = s.params.N;
    GapSystem sys{N, N / 2, 0.0};
    double sum = 0.0;
    for (int j = 1; j <= N; ++j) {
        double lam = sys.ideal(j) + s.corrections[static_cast<std::size_t>(j - 1)];
        sum += lam * lam;
    }
    double e = -s.params.kappa * s.params.kappa * sum;

    Complex eraw = energy(std::span<const Complex>(s.roots.values()));
    if (std::abs(eraw.imag()) > imag_tol * std::abs(eraw.real()) + 1e-12)
        throw DomainError("energy: eigenvalue has a non-negligible imaginary part");
    return e;
}

} // namespace bethecorr::bethe
