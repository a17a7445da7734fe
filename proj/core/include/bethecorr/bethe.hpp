#pragma once

#include <span>
#include <vector>

#include "bethecorr/types.hpp"

// Bethe equations of the attractive one-dimensional Bose gas, coupling
// c = -kappa < 0, eta = i*kappa.  The N-particle ground state is a single
// bound-state string: lambda_j = i*kappa*((1-N)/2 + j - 1 + corrections),
// with corrections exponentially small in kappa*L.

namespace bethecorr::bethe {

struct ModelParams {
    double kappa = 1.0; // interaction strength, > 0
    double L = 1.0;     // system size, > 0
    int N = 1;          // particle number, >= 0

    Complex eta() const { return Complex(0.0, kappa); }
    void validate() const {
        if (!(kappa > 0.0)) throw DomainError("ModelParams: kappa must be > 0");
        if (!(L > 0.0)) throw DomainError("ModelParams: L must be > 0");
        if (N < 0) throw DomainError("ModelParams: N must be >= 0");
    }
};

// Eigenvalue-side scalar functions.
Complex r(Complex u, const ModelParams& p);             // exp(-i L u)
Complex r1(Complex u, double x, const ModelParams& p);  // exp(-i u x), 0 <= x <= L
Complex r2(Complex u, double x, const ModelParams& p);  // exp(-i u (L - x)); r = r1 * r2

// Twist bookkeeping for the twisted Bethe equations
// exp(i L v_j) = exp(-beta) * prod_{k != j} (v_j - v_k - i kappa)/(v_j - v_k + i kappa).
struct Twist {
    double beta = 0.0;
    double gamma = 0.0; // beta / (kappa * L)

    static Twist make(double beta, const ModelParams& p) {
        return Twist{beta, beta / (p.kappa * p.L)};
    }
};

// ----- residuals (generic sets, raw values) -----
//
// Log-form residual, component j:
//   Log(e^{i L u_j}) + beta + sum_{k != j} [ Log(u_j-u_k+i kappa) - Log(u_j-u_k-i kappa) ]
// with each factor on its principal branch (the exponential factor is wrapped
// to Im in (-pi, pi], i.e. the branch with momentum quantum number nearest 0).
// Zero iff ubar solves the (twisted) Bethe equations on that branch.
//
// Conditioning caveat: near string configurations adjacent differences
// u_j - u_k approach +-i kappa and the raw values cannot resolve the
// exponentially small deviations; use the StringState overloads, which
// evaluate from the exact deviation representation.
struct BetheResidual {
    std::vector<Complex> components;
    bool branch_warning = false; // some log factor on the negative real axis
    double max_abs() const;
};

BetheResidual bethe_residual(std::span<const Complex> u, const ModelParams& p);
BetheResidual twisted_bethe_residual(std::span<const Complex> v, double beta,
                                     const ModelParams& p);

// ----- ground-state string -----

struct StringState {
    ModelParams params;
    RapiditySet roots;               // ascending imaginary part
    std::vector<double> corrections; // c_j: lambda_j = i kappa (j - (N+1)/2 + c_j), c_j = -c_{N+1-j}
    std::vector<double> gaps;        // g_m, m = 1..floor(N/2): spacing deviation of the
                                     // pair (N-m, N-m+1) counted from the top, g_m > 0
    double residual_norm = 0.0;      // max gap-equation residual (see string_residual)
    bool refined = false;
    bool exact_at_machine_precision = false; // corrections below double resolution

    int N() const { return params.N; }
};

// Build the ground-state string.  refine = false gives the ideal string
// (corrections 0).  refine = true runs a damped Newton iteration on the
// log-form gap equations (unknowns y_m = log g_m, floor(N/2) of them;
// the symmetry lambda_j = -lambda_{N-j+1} holds by construction).
StringState string_ground_state(const ModelParams& p, bool refine = true,
                                double newton_tol = 1e-13, int max_iter = 50);

// Gap-equation residuals R_m = g_m - pred_m(gaps): the difference between
// each spacing deviation and the value the multiplied-out Bethe equations
// assign to it.  Finite for refined and unrefined states alike; this is the
// quantity behind StringState::residual_norm.
std::vector<double> string_residual(const StringState& s);

// Per-root log-form residual evaluated from the exact deviation
// representation (differences never suffer cancellation).  Requires positive
// gaps, i.e. a refined state.
BetheResidual bethe_residual(const StringState& s);

// Twisted residual of the uniformly shifted state: the shift by i beta / L
// cancels exactly against the twist factor, so this equals bethe_residual(s).
BetheResidual twisted_bethe_residual(const StringState& s, double beta);

// mu_j = lambda_j + i beta / L; solves the twisted equations on the same branch.
RapiditySet twist_roots(const StringState& s, double beta);

// Eigenvalue of the Hamiltonian-like charge: sum u_j^2.  The StringState
// overload evaluates exactly on the deviation representation and checks the
// result is real within tolerance.
Complex energy(std::span<const Complex> u);
double energy(const StringState& s, double imag_tol = 1e-10);

} // namespace bethecorr::bethe
