#include "doctest.h"

#include <cmath>

#include "bethecorr/bethe.hpp"

using namespace bethecorr;
using namespace bethecorr::bethe;

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS((ModelParams{-1.0, 1.0, 2}.validate()), DomainError);
    CHECK_THROWS_AS((ModelParams{1.0, 0.0, 2}.validate()), DomainError);
    CHECK_THROWS_AS((ModelParams{1.0, 1.0, -1}.validate()), DomainError);
    CHECK_NOTHROW((ModelParams{2.0, 3.0, 0}.validate()));
}

TEST_CASE("eigenvalue factor functions") {
    ModelParams p{1.5, 2.0, 3};
    Complex u(0.4, -0.3);
    CHECK(rel_err(r(u, p), r1(u, 0.7, p) * r2(u, 0.7, p)) < 1e-14);
    CHECK_THROWS_AS(r1(u, -0.1, p), DomainError);
    CHECK_THROWS_AS(r2(u, 2.1, p), DomainError);
}

TEST_CASE("free particle satisfies the equations on the wrapped branch") {
    ModelParams p{1.0, 5.0, 1};
    // momentum quantum number 3: the exponent wraps to exactly zero
    std::vector<Complex> u{Complex(2.0 * kPi * 3.0 / p.L, 0.0)};
    auto res = bethe_residual(u, p);
    CHECK(res.components.size() == 1);
    CHECK(res.max_abs() < 1e-12);
    CHECK_FALSE(res.branch_warning);
}

TEST_CASE("twist enters the raw residual additively") {
    ModelParams p{1.0, 5.0, 1};
    std::vector<Complex> u{Complex(2.0 * kPi / p.L, 0.0)};
    auto res0 = bethe_residual(u, p);
    auto resb = twisted_bethe_residual(u, 0.25, p);
    CHECK(rel_err(resb.components[0] - res0.components[0], Complex(0.25, 0.0)) < 1e-12);
}

TEST_CASE("branch warning on a negative-real log factor") {
    ModelParams p{1.0, 1.0, 2};
    std::vector<Complex> u{Complex(0.0, 0.0), Complex(1.0, 1.0)}; // u1-u2+i = -1
    auto res = bethe_residual(u, p);
    CHECK(res.branch_warning);
    for (const Complex& c : res.components) CHECK(std::isfinite(std::abs(c)));
}

TEST_CASE("ideal string: roots, energy, residual window") {
    ModelParams p{1.0, 10.0, 2};
    auto s = string_ground_state(p, /*refine=*/false);
    CHECK_FALSE(s.refined);
    CHECK(s.roots.size() == 2);
    CHECK(s.roots[0] == Complex(0.0, -0.5));
    CHECK(s.roots[1] == Complex(0.0, 0.5));
    CHECK(energy(s) == doctest::Approx(-0.5).epsilon(1e-14));

    ModelParams p3{2.0, 5.0, 3};
    auto s3 = string_ground_state(p3, /*refine=*/false);
    CHECK(s3.roots[1] == Complex(0.0, 0.0));
    CHECK(energy(s3) == doctest::Approx(-2.0 * 4.0).epsilon(1e-14));
}

TEST_CASE("ideal string residuals sit in the documented window at kappa L = 10") {
    for (int N : {2, 3, 4}) {
        ModelParams p{1.0, 10.0, N};
        auto s = string_ground_state(p, /*refine=*/false);
        CHECK(s.residual_norm > 1e-6);
        CHECK(s.residual_norm < 1e-1);
        auto rs = string_residual(s);
        CHECK(rs.size() == static_cast<std::size_t>(N / 2));
        double mx = 0.0;
        for (double v : rs) mx = std::max(mx, std::abs(v));
        CHECK(mx == doctest::Approx(s.residual_norm).epsilon(1e-12));
    }
}

TEST_CASE("refined string solves the gap equations to machine accuracy") {
    for (int N = 2; N <= 8; ++N)
        for (double kL : {20.0, 40.0}) {
            ModelParams p{1.0, kL, N};
            auto s = string_ground_state(p);
            CHECK(s.refined);
            CHECK(s.residual_norm <= 1e-12);
            auto res = bethe_residual(s);
            CHECK(res.components.size() == static_cast<std::size_t>(N));
            CHECK(res.max_abs() <= 1e-12);
            // shifted state solves the twisted equations identically
            auto rest = twisted_bethe_residual(s, 0.37);
            CHECK(rest.max_abs() == res.max_abs());
        }
}

TEST_CASE("string roots are antisymmetric and ascending") {
    ModelParams p{0.7, 30.0, 7};
    auto s = string_ground_state(p);
    for (int j = 0; j < p.N; ++j) {
        CHECK(s.roots[j].real() == 0.0);
        CHECK(s.roots[j] == -s.roots[p.N - 1 - j]);
        if (j > 0) CHECK(s.roots[j].imag() > s.roots[j - 1].imag());
    }
    CHECK(s.corrections.size() == static_cast<std::size_t>(p.N));
    for (int j = 0; j < p.N; ++j)
        CHECK(s.corrections[static_cast<std::size_t>(j)] ==
              -s.corrections[static_cast<std::size_t>(p.N - 1 - j)]);
}

TEST_CASE("two-particle gap agrees with direct bisection") {
    ModelParams p{1.0, 40.0, 2};
    auto s = string_ground_state(p);
    REQUIRE(s.gaps.size() == 1);

    // same scalar equation g = (2+g) exp(-kappa L (1+g)/2), solved by bisection
    auto F = [&](double g) { return g - (2.0 + g) * std::exp(-p.kappa * p.L * (1.0 + g) / 2.0); };
    double lo = 1e-12, hi = 1e-6;
    REQUIRE(F(lo) < 0.0);
    REQUIRE(F(hi) > 0.0);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) < 0.0 ? lo : hi) = mid;
    }
    CHECK(s.gaps[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
    CHECK(s.gaps[0] == doctest::Approx(4.1223069e-9).epsilon(1e-5));
}

TEST_CASE("corrections shrink exponentially with kappa L") {
    for (int N : {2, 5, 8}) {
        auto s20 = string_ground_state(ModelParams{1.0, 20.0, N});
        auto s40 = string_ground_state(ModelParams{1.0, 40.0, N});
        // leading gap scales like exp(-kappa L (N-1)/2); halving L gains
        // at least the N = 2 factor exp(-10)
        CHECK(s40.gaps[0] < 1e-4 * s20.gaps[0]);
    }
}

TEST_CASE("raw residual is resolution-limited where the state form is exact") {
    ModelParams p{1.0, 40.0, 2};
    auto s = string_ground_state(p);
    auto raw = bethe_residual(std::span<const Complex>(s.roots.values()), p);
    CHECK(raw.max_abs() < 1e-6);   // raw doubles resolve the gap only to ~1e-7 relative
    CHECK(bethe_residual(s).max_abs() <= 1e-12);
}

TEST_CASE("twisted roots satisfy the twisted equations") {
    ModelParams p{1.0, 20.0, 3};
    auto s = string_ground_state(p);
    double beta = 0.42;
    auto mu = twist_roots(s, beta);
    CHECK(mu.size() == 3);
    auto res = twisted_bethe_residual(std::span<const Complex>(mu.values()), beta, p);
    CHECK(res.max_abs() < 1e-6);
    auto res0 = bethe_residual(std::span<const Complex>(mu.values()), p);
    CHECK(res0.max_abs() > 0.1); // untwisted equations are genuinely violated
}

TEST_CASE("machine-exact string is flagged and handled") {
    ModelParams p{1.0, 2000.0, 2};
    auto s = string_ground_state(p);
    CHECK(s.exact_at_machine_precision);
    CHECK(s.gaps[0] == 0.0);
    CHECK(s.residual_norm == 0.0);
    CHECK_THROWS_AS(bethe_residual(s), DomainError); // log form needs positive gaps
    CHECK(energy(s) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("newton iteration cap reports the best residual") {
    ModelParams p{1.0, 10.0, 4};
    try {
        string_ground_state(p, true, 1e-13, 0);
        FAIL("expected MaxIterations");
    } catch (const MaxIterations& e) {
        CHECK(e.best_residual > 0.0);
        CHECK(e.best_residual < 1e-2);
    }
}

TEST_CASE("trivial particle numbers") {
    auto s0 = string_ground_state(ModelParams{1.0, 1.0, 0});
    CHECK(s0.roots.empty());
    CHECK(s0.exact_at_machine_precision);

    auto s1 = string_ground_state(ModelParams{1.0, 1.0, 1});
    CHECK(s1.roots.size() == 1);
    CHECK(s1.roots[0] == Complex(0.0, 0.0));
    CHECK(bethe_residual(s1).max_abs() == 0.0);
    CHECK(energy(s1) == 0.0);
}

TEST_CASE("energy of a generic set is the plain power sum") {
    std::vector<Complex> u{Complex(1.0, 2.0), Complex(-0.5, 0.0)};
    Complex e = energy(u);
    CHECK(rel_err(e, Complex(-3.0, 4.0) + Complex(0.25, 0.0)) < 1e-15);
}
