#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bethecorr/types.hpp"

// Deterministic sample points for oracle and identity tests: an annulus
// 0.3 <= |z| <= 3 in units of kappa, with every drawn point kept away from
// all previous points and their +-eta images so no pole guard trips and no
// determinant is near-singular by accident.

namespace testpoints {

using bethecorr::Complex;

class Annulus {
public:
    explicit Annulus(std::uint64_t seed, double kappa = 1.0) : rng_(seed), kappa_(kappa) {}

    double uniform() { return (rng_() >> 11) * 0x1.0p-53; }

    Complex draw() {
        double rad = kappa_ * (0.3 + 2.7 * uniform());
        double th = 2.0 * bethecorr::kPi * uniform();
        return Complex(rad * std::cos(th), rad * std::sin(th));
    }

    std::vector<Complex> set(int n, double floor = 0.05) {
        std::vector<Complex> out;
        const Complex eta(0.0, kappa_);
        while (static_cast<int>(out.size()) < n) {
            Complex z = draw();
            bool ok = true;
            for (const Complex& o : out) {
                Complex d = z - o;
                if (std::abs(d) < floor * kappa_ || std::abs(d - eta) < floor * kappa_ ||
                    std::abs(d + eta) < floor * kappa_) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(z);
        }
        return out;
    }

    // one well-separated pool split into two sets
    std::pair<std::vector<Complex>, std::vector<Complex>> pair(int nfirst, int nsecond,
                                                               double floor = 0.05) {
        auto pool = set(nfirst + nsecond, floor);
        std::vector<Complex> a(pool.begin(), pool.begin() + nfirst);
        std::vector<Complex> b(pool.begin() + nfirst, pool.end());
        return {std::move(a), std::move(b)};
    }

private:
    std::mt19937_64 rng_;
    double kappa_;
};

} // namespace testpoints
