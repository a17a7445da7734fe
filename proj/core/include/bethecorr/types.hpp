#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bethecorr/errors.hpp"

namespace bethecorr {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Default guards and caps.  Every tolerance used by the library lives here
// so that callers (and the CLI) can override them in one place.
struct Tolerances {
    // pairwise separation guard, in units of |eta|
    double sep_scale = 1e-10;
    // relative tolerance for identity checks, N <= 5
    double identity_rtol = 1e-10;
    // degraded tolerance for N >= 6 (determinant conditioning)
    double identity_rtol_large = 1e-8;
    // bipartition enumeration cap
    int enumeration_cap = 14;
    // memoized recursion cap
    int recursion_cap = 9;
    // below this min |h(u_j,u_k)| the rescaled-column determinant is used
    double reg_threshold = 1e-3;
    // below this the determinant route is numerically meaningless and the
    // recursion is used instead (string configurations)
    double string_dispatch_threshold = 1e-8;
    // on-shell residual threshold for form-factor inputs
    double on_shell_tol = 1e-10;
    // |beta| below which the symmetrized M-form of the string-reduced
    // generating functions is used
    double beta_switch = 1e-2;
    // closed string forms: exclusion radius around integer s / gamma
    double pole_exclusion = 1e-8;
    // string-state tolerance: max |u_{k+1}-u_k-eta| <= string_tol*|eta|
    double string_tol = 1e-12;
};

// Validated list of pairwise-distinct complex rapidities.  Most numerical
// kernels work on raw spans; this wrapper is the checked boundary type.
class RapiditySet {
public:
    RapiditySet() = default;

    // sep_guard is an absolute distance; pass kappa*1e-10 for physical sets.
    explicit RapiditySet(std::vector<Complex> values, std::string label = "",
                         double sep_guard = 1e-10)
        : values_(std::move(values)), label_(std::move(label)) {
        for (std::size_t j = 0; j < values_.size(); ++j)
            for (std::size_t k = j + 1; k < values_.size(); ++k)
                if (std::abs(values_[j] - values_[k]) < sep_guard)
                    throw CoincidingArguments(
                        "RapiditySet '" + label_ + "': entries " + std::to_string(j) +
                        " and " + std::to_string(k) + " closer than guard");
    }

    int size() const { return static_cast<int>(values_.size()); }
    bool empty() const { return values_.empty(); }
    const Complex& operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    const std::vector<Complex>& values() const { return values_; }
    const std::string& label() const { return label_; }

    operator std::span<const Complex>() const { return values_; }

private:
    std::vector<Complex> values_;
    std::string label_;
};

// ----- small span helpers shared across modules -----

inline std::vector<Complex> subset_by_mask(std::span<const Complex> set, std::uint32_t mask) {
    std::vector<Complex> out;
    for (int j = 0; j < static_cast<int>(set.size()); ++j)
        if (mask & (1u << j)) out.push_back(set[static_cast<std::size_t>(j)]);
    return out;
}

inline std::vector<Complex> complement_by_mask(std::span<const Complex> set, std::uint32_t mask) {
    std::vector<Complex> out;
    for (int j = 0; j < static_cast<int>(set.size()); ++j)
        if (!(mask & (1u << j))) out.push_back(set[static_cast<std::size_t>(j)]);
    return out;
}

inline std::vector<Complex> erase_index(std::span<const Complex> set, int j) {
    std::vector<Complex> out;
    for (int k = 0; k < static_cast<int>(set.size()); ++k)
        if (k != j) out.push_back(set[static_cast<std::size_t>(k)]);
    return out;
}

inline double rel_err(Complex a, Complex b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

} // namespace bethecorr
