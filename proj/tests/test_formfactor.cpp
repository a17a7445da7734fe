#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "bethecorr/bethe.hpp"
#include "bethecorr/formfactor.hpp"
#include "bethecorr/kernel.hpp"
#include "bethecorr/oracles.hpp"
#include "test_points.hpp"

using namespace bethecorr;
namespace ff = bethecorr::formfactor;

namespace {
const Complex kEta{0.0, 1.0};
const Complex kI{0.0, 1.0};
} // namespace

TEST_CASE("density block, one root") {
    testpoints::Annulus gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto [v, u] = gen.pair(1, 1);
        const Complex beta{0.4, -0.3};
        const Complex expect = kernel::g(u[0], v[0], kEta) * (std::exp(beta) - 1.0);
        CHECK(rel_err(ff::omega_J_det(v, u, beta, kEta), expect) < 1e-14);
        CHECK(rel_err(ff::omega_J_rec(v, u, beta, kEta), expect) < 1e-14);
        // the recursion base carries the factor e^0 - 1 = 0 exactly; the
        // determinant cancels the same two terms only to rounding
        CHECK(std::abs(ff::omega_J_rec(v, u, Complex{0.0, 0.0}, kEta)) == 0.0);
        CHECK(std::abs(ff::omega_J_det(v, u, Complex{0.0, 0.0}, kEta)) <
              1e-14 * std::abs(kernel::g(u[0], v[0], kEta)));
    }
}

TEST_CASE("field block, one root") {
    testpoints::Annulus gen(12);
    const std::vector<Complex> none;
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<Complex> u = gen.set(1);
        const Complex beta{-0.2, 0.7};
        CHECK(rel_err(ff::omega_Psi_det(none, u, beta, kEta), Complex{1.0, 0.0}) < 1e-14);
        CHECK(rel_err(ff::omega_Psi_rec(none, u, beta, kEta), Complex{1.0, 0.0}) < 1e-14);
    }
}

TEST_CASE("field block, two roots, explicit pole expansion") {
    testpoints::Annulus gen(13);
    auto [v, u] = gen.pair(1, 2);
    const Complex beta{0.3, 0.1};
    const Complex eb = std::exp(beta);
    Complex expect{0.0, 0.0};
    for (int j = 0; j < 2; ++j) {
        const Complex uj = u[j], uo = u[1 - j];
        expect += kernel::g(uj, v[0], kEta) *
                  (eb * kernel::f(uo, uj, kEta) - kernel::f(uj, uo, kEta));
    }
    CHECK(rel_err(ff::omega_Psi_rec(v, u, beta, kEta), expect) < 1e-13);
    CHECK(rel_err(ff::omega_Psi_det(v, u, beta, kEta), expect) < 1e-12);
}

TEST_CASE("determinant and recursion agree on random pole-free sets") {
    testpoints::Annulus gen(14);
    int checked = 0;
    for (int rep = 0; rep < 30; ++rep) {
        for (int n = 2; n <= 6; ++n) {
            const Complex beta{0.8 * gen.uniform() - 0.4, 0.8 * gen.uniform() - 0.4};
            {
                auto [v, u] = gen.pair(n, n, 0.1);
                CHECK(rel_err(ff::omega_J_det(v, u, beta, kEta),
                              ff::omega_J_rec(v, u, beta, kEta)) < 1e-9);
            }
            {
                auto [v, u] = gen.pair(n - 1, n, 0.1);
                CHECK(rel_err(ff::omega_Psi_det(v, u, beta, kEta),
                              ff::omega_Psi_rec(v, u, beta, kEta)) < 1e-9);
            }
            checked += 2;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("tight determinant-recursion agreement at fixed small sizes") {
    testpoints::Annulus gen(15);
    {
        auto [v, u] = gen.pair(2, 2);
        const Complex beta{0.25, 0.0};
        CHECK(rel_err(ff::omega_J_det(v, u, beta, kEta), ff::omega_J_rec(v, u, beta, kEta)) <
              1e-11);
    }
    {
        auto [v, u] = gen.pair(3, 3);
        const Complex beta{-0.15, 0.35};
        CHECK(rel_err(ff::omega_J_det(v, u, beta, kEta), ff::omega_J_rec(v, u, beta, kEta)) <
              1e-10);
    }
    {
        auto [v, u] = gen.pair(2, 3);
        const Complex beta{0.45, -0.1};
        CHECK(rel_err(ff::omega_Psi_det(v, u, beta, kEta), ff::omega_Psi_rec(v, u, beta, kEta)) <
              1e-10);
    }
    {
        auto [v, u] = gen.pair(4, 5);
        const Complex beta{0.2, 0.2};
        CHECK(rel_err(ff::omega_Psi_det(v, u, beta, kEta), ff::omega_Psi_rec(v, u, beta, kEta)) <
              1e-9);
        auto [vj, uj] = gen.pair(5, 5);
        CHECK(rel_err(ff::omega_J_det(vj, uj, beta, kEta), ff::omega_J_rec(vj, uj, beta, kEta)) <
              1e-9);
    }
}

TEST_CASE("field block matches the partition-sum oracle") {
    testpoints::Annulus gen(16);
    {
        auto [v, u] = gen.pair(1, 2);
        CHECK(rel_err(ff::omega_Psi_det(v, u, Complex{0.35, 0.0}, kEta),
                      oracles::omega_psi_partition_sum(v, u, 0.35, kEta)) < 1e-10);
    }
    {
        auto [v, u] = gen.pair(3, 4);
        CHECK(rel_err(ff::omega_Psi_det(v, u, Complex{-0.6, 0.0}, kEta),
                      oracles::omega_psi_partition_sum(v, u, -0.6, kEta)) < 1e-9);
    }
    int checked = 0;
    for (int rep = 0; rep < 10; ++rep) {
        for (int n = 2; n <= 6; ++n) {
            auto [v, u] = gen.pair(n - 1, n);
            const double beta = 1.2 * gen.uniform() - 0.6;
            CHECK(rel_err(ff::omega_Psi_det(v, u, Complex{beta, 0.0}, kEta),
                          oracles::omega_psi_partition_sum(v, u, beta, kEta)) < 1e-9);
            ++checked;
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("exchange symmetry of the density block") {
    testpoints::Annulus gen(17);
    for (int n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            auto [v, u] = gen.pair(n, n);
            const Complex beta{gen.uniform() - 0.5, gen.uniform() - 0.5};
            const Complex lhs = ff::omega_J_det(v, u, beta, kEta);
            const Complex rhs =
                std::exp(beta * static_cast<double>(n)) * ff::omega_J_det(u, v, -beta, kEta);
            CHECK(rel_err(lhs, rhs) < 1e-10);
        }
    }
}

TEST_CASE("both blocks stay finite as two roots close onto a string") {
    testpoints::Annulus gen(18);
    auto [v, u] = gen.pair(3, 3);
    const Complex beta{0.3, 0.0};

    const auto with_offset = [&](double eps) {
        std::vector<Complex> us = u;
        us[1] = us[0] + kEta + Complex{eps * 0.6, eps * 0.8};
        return us;
    };
    const double offsets[] = {1e-4, 1e-6, 1e-8};

    std::vector<Complex> valsJ, valsPsi;
    for (double eps : offsets) {
        const std::vector<Complex> us = with_offset(eps);
        const std::vector<Complex> vshort(v.begin(), v.begin() + 2);
        const Complex j_disp = ff::omega_J(v, us, beta, kEta);
        const Complex j_rec = ff::omega_J_rec(v, us, beta, kEta);
        const Complex p_disp = ff::omega_Psi(vshort, us, beta, kEta);
        const Complex p_rec = ff::omega_Psi_rec(vshort, us, beta, kEta);
        // the rescaled determinant loses roughly eps/offset digits here, so
        // the cross-path tolerance is looser than the generic 1e-9
        CHECK(rel_err(j_disp, j_rec) < 1e-5);
        CHECK(rel_err(p_disp, p_rec) < 1e-5);
        valsJ.push_back(j_rec);
        valsPsi.push_back(p_rec);
    }
    for (int i = 0; i + 1 < 3; ++i) {
        CHECK(rel_err(valsJ[i], valsJ[i + 1]) < 1e-3);
        CHECK(rel_err(valsPsi[i], valsPsi[i + 1]) < 1e-3);
    }
}

TEST_CASE("density block decays when one root runs to infinity") {
    testpoints::Annulus gen(19);
    auto [v, u] = gen.pair(3, 3);
    const Complex beta{0.3, 0.0};
    const Complex base = ff::omega_J_det(v, u, beta, kEta);

    std::vector<Complex> far = u;
    far[2] *= 1e6 / std::abs(far[2]);
    const Complex tail = ff::omega_J_det(v, far, beta, kEta);
    CHECK(std::abs(tail) < 1e-3 * std::abs(base));
}

TEST_CASE("both blocks are symmetric in each argument set") {
    testpoints::Annulus gen(20);
    auto [v, u] = gen.pair(4, 4);
    const Complex beta{0.2, -0.4};

    std::vector<Complex> vp = {v[2], v[0], v[3], v[1]};
    std::vector<Complex> up = {u[1], u[3], u[0], u[2]};
    CHECK(rel_err(ff::omega_J_det(v, u, beta, kEta), ff::omega_J_det(vp, up, beta, kEta)) < 1e-12);

    const std::vector<Complex> w(v.begin(), v.begin() + 3);
    std::vector<Complex> wp = {w[1], w[2], w[0]};
    CHECK(rel_err(ff::omega_Psi_det(w, u, beta, kEta), ff::omega_Psi_det(wp, up, beta, kEta)) <
          1e-12);
    CHECK(rel_err(ff::omega_J_rec(v, u, beta, kEta), ff::omega_J_rec(vp, up, beta, kEta)) < 1e-12);
}

TEST_CASE("cardinality and cap guards") {
    testpoints::Annulus gen(21);
    auto [v, u] = gen.pair(3, 4);
    CHECK_THROWS_AS(ff::omega_J_det(v, u, Complex{0.1, 0.0}, kEta), CardinalityMismatch);
    CHECK_THROWS_AS(ff::omega_Psi_det(u, u, Complex{0.1, 0.0}, kEta), CardinalityMismatch);
    CHECK_THROWS_AS(ff::omega_Psi_rec(v, std::vector<Complex>{}, Complex{0.1, 0.0}, kEta),
                    CardinalityMismatch);

    auto [vbig, ubig] = gen.pair(10, 10);
    CHECK_THROWS_AS(ff::omega_J_rec(vbig, ubig, Complex{0.1, 0.0}, kEta), CapExceeded);

    ff::OmegaArgs args;
    args.vbar = RapiditySet(v, "v");
    args.ubar = RapiditySet(u, "u");
    args.kind = ff::OmegaKind::J;
    CHECK_THROWS_AS(ff::omega(args), CardinalityMismatch);
    args.kind = ff::OmegaKind::Psi;
    args.beta = Complex{0.25, 0.0};
    CHECK(rel_err(ff::omega(args), ff::omega_Psi_det(v, u, args.beta, kEta)) < 1e-12);
}

TEST_CASE("scalar product sum reproduces the density block on twisted states") {
    // The comparison needs raw root values that still resolve the string
    // deviations: the brute-force sum weights the small f factors of adjacent
    // roots with exponentially large eigenvalue factors, so once the top-pair
    // gap (about 6 e^{-kappa L} at N = 3) falls near double resolution the
    // identity defect grows like eps divided by the gap.  N = 2 keeps a gap
    // of 4e-9 at kappa L = 40; N = 3 is checked at kappa L = 12 and 20.
    const double beta = 0.2;
    const auto check_at = [&](int N, double L, double tol) {
        bethe::ModelParams p{1.0, L, N};
        const bethe::StringState s = bethe::string_ground_state(p);
        const RapiditySet vtw = bethe::twist_roots(s, beta);

        const Complex lhs = oracles::scalar_product_sum(vtw, s.roots, p);
        const Complex rhs = ff::omega_J(vtw, s.roots, Complex{beta, 0.0}, p.eta());
        CHECK(rel_err(lhs, rhs) < tol);
    };
    check_at(2, 40.0, 1e-6);
    check_at(3, 12.0, 1e-9);
    check_at(3, 20.0, 1e-6);
}

TEST_CASE("partition-sum oracle validates the dispatcher on string configurations") {
    for (int N : {2, 3, 4, 5}) {
        bethe::ModelParams ket_p{1.0, 20.0, N};
        bethe::ModelParams bra_p{1.0, 20.0, N - 1};
        const bethe::StringState ket = bethe::string_ground_state(ket_p);
        const bethe::StringState bra = bethe::string_ground_state(bra_p);

        for (double beta : {0.0, 0.4}) {
            const Complex oracle =
                oracles::omega_psi_partition_sum(bra.roots, ket.roots, beta, ket_p.eta());
            const Complex val =
                ff::omega_Psi(bra.roots, ket.roots, Complex{beta, 0.0}, ket_p.eta());
            CHECK(rel_err(val, oracle) < 1e-8);
        }
    }
}

TEST_CASE("density form factor: diagonal vanishes, off-shell rejected") {
    bethe::ModelParams p{1.0, 5.0, 2};
    const bethe::StringState s = bethe::string_ground_state(p);
    const std::vector<Complex> u = s.roots.values();
    CHECK(ff::density_form_factor(u, u, 0.3, p) == Complex{0.0, 0.0});

    const std::vector<Complex> perm = {u[1], u[0]};
    CHECK(ff::density_form_factor(perm, u, 0.3, p) == Complex{0.0, 0.0});

    testpoints::Annulus gen(22);
    auto [v, w] = gen.pair(2, 2);
    CHECK_THROWS_AS(ff::density_form_factor(v, w, 0.3, p), NotOnShell);

    const std::vector<Complex> vshort = {u[0]};
    CHECK_THROWS_AS(ff::density_form_factor(vshort, u, 0.3, p), CardinalityMismatch);
}

TEST_CASE("density form factor for one particle matches the closed value") {
    bethe::ModelParams p{0.7, 3.0, 1};
    const double k1 = 2.0 * kPi / p.L;
    const std::vector<Complex> u = {Complex{0.0, 0.0}};
    const std::vector<Complex> v = {Complex{k1, 0.0}};

    for (double x : {0.0, 0.4, 1.9}) {
        const Complex got = ff::density_form_factor(v, u, x, p);
        const Complex expect = -p.kappa * std::exp(kI * x * (u[0] - v[0]));
        CHECK(rel_err(got, expect) < 1e-9);
    }

    const Complex at0 = ff::density_form_factor(v, u, 0.0, p);
    const Complex pref = kI * (u[0] - v[0]);
    CHECK(rel_err(at0 / pref, ff::density_form_factor(v, u, 1.1, p) /
                                  (pref * std::exp(kI * 1.1 * (u[0] - v[0])))) < 1e-9);
}

TEST_CASE("one-particle density block equals the twisted scalar product") {
    bethe::ModelParams p{1.0, 3.0, 1};
    const double k1 = 2.0 * kPi / p.L;
    for (double beta : {0.3, -0.2}) {
        const std::vector<Complex> v = {Complex{k1, 0.0} + kI * (beta / p.L)};
        const std::vector<Complex> u = {Complex{0.0, 0.0}};
        const Complex sp = oracles::scalar_product_sum(v, u, p);
        const Complex om = ff::omega_J_det(v, u, Complex{beta, 0.0}, p.eta());
        CHECK(rel_err(sp, om) < 1e-12);
    }
}

TEST_CASE("field form factor wrappers") {
    {
        bethe::ModelParams p{1.7, 4.0, 1};
        const std::vector<Complex> u = {Complex{0.0, 0.0}};
        const std::vector<Complex> none;
        for (double x : {0.0, 0.9})
            CHECK(rel_err(ff::field_form_factor(none, u, x, p),
                          Complex{std::sqrt(p.kappa), 0.0}) < 1e-13);
    }
    {
        bethe::ModelParams ket_p{1.0, 20.0, 3};
        bethe::ModelParams bra_p{1.0, 20.0, 2};
        const bethe::StringState ket = bethe::string_ground_state(ket_p);
        const bethe::StringState bra = bethe::string_ground_state(bra_p);

        const Complex at0 = ff::field_form_factor(bra, ket, 0.0);
        const Complex expect0 = std::sqrt(ket_p.kappa) *
                                ff::omega_Psi(bra.roots, ket.roots, Complex{0.0, 0.0},
                                              ket_p.eta());
        CHECK(rel_err(at0, expect0) < 1e-12);

        // both states carry zero total momentum, so the value is x independent
        const Complex at1 = ff::field_form_factor(bra, ket, 7.5);
        CHECK(rel_err(at0, at1) < 1e-12);

        CHECK_THROWS_AS(ff::field_form_factor(ket, ket, 0.5), CardinalityMismatch);

        const bethe::StringState raw = bethe::string_ground_state(ket_p, false);
        CHECK_THROWS_AS(ff::field_form_factor(bra, raw, 0.5), NotOnShell);

        bethe::ModelParams other_p{1.0, 21.0, 3};
        const bethe::StringState other = bethe::string_ground_state(other_p);
        CHECK_THROWS_AS(ff::field_form_factor(bra, other, 0.5), DomainError);
    }
}
