#include "doctest.h"

#include <random>

#include "bethecorr/kernel.hpp"

using namespace bethecorr;
using namespace bethecorr::kernel;

namespace {

// deterministic point generator: doubles in [-1,1) from the top 53 bits
struct PointGen {
    std::mt19937_64 rng;
    explicit PointGen(std::uint64_t seed) : rng(seed) {}
    double real() { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; }
    Complex point() { return Complex(real(), real()); }
    std::vector<Complex> set(int n) {
        std::vector<Complex> out;
        for (int j = 0; j < n; ++j) out.push_back(4.0 * point());
        return out;
    }
};

} // namespace

TEST_CASE("kernel values at fixed points") {
    const Complex eta(0.0, 1.0);
    const Complex i(0.0, 1.0);

    CHECK(g(2.0 * i, i, eta) == Complex(1.0, 0.0));
    CHECK(f(i - eta, i, eta) == Complex(0.0, 0.0));   // zero of f one string step down
    CHECK(f(i + eta, i, eta) == Complex(2.0, 0.0));   // finite on the other side
    CHECK(h(i, i, eta) == Complex(1.0, 0.0));         // h has no pole at u = v
    CHECK(rel_err(t(3.0 * i, i, eta), eta * eta / ((2.0 * i) * (3.0 * i))) < 1e-15);
}

TEST_CASE("kernel pole guards") {
    const Complex eta(0.0, 2.5);
    const Complex v(0.3, -0.7);
    const Complex nudge(1e-12, 0.0);

    CHECK_THROWS_AS(g(v + nudge, v, eta), CoincidingArguments);
    CHECK_THROWS_AS(f(v + nudge, v, eta), CoincidingArguments);
    CHECK_THROWS_AS(t(v + nudge, v, eta), CoincidingArguments);
    CHECK_THROWS_AS(t(v - eta + nudge, v, eta), CoincidingArguments); // zero of h
    CHECK_NOTHROW(h(v + nudge, v, eta));
}

TEST_CASE("kernel identities on random points") {
    const Complex eta(0.0, 1.7);
    PointGen gen(2026);
    for (int trial = 0; trial < 200; ++trial) {
        Complex u = 3.0 * gen.point(), v = 3.0 * gen.point();
        if (std::abs(u - v) < 1e-3 || std::abs(u - v + eta) < 1e-3) continue;
        CHECK(rel_err(f(u, v, eta), 1.0 + g(u, v, eta)) < 1e-14);
        CHECK(rel_err(f(u, v, eta), g(u, v, eta) * h(u, v, eta)) < 1e-14);
        CHECK(rel_err(t(u, v, eta), g(u, v, eta) / h(u, v, eta)) < 1e-14);
        CHECK(rel_err(g(u, v, eta), -g(v, u, eta)) < 1e-14);
    }
}

TEST_CASE("set products over spans") {
    const Complex eta(0.0, 1.0);
    PointGen gen(7);
    auto ub = gen.set(3);
    auto vb = gen.set(2);

    Complex direct{1.0, 0.0};
    for (const Complex& u : ub)
        for (const Complex& v : vb) direct *= f(u, v, eta);
    CHECK(rel_err(prod_f(ub, vb, eta), direct) < 1e-14);

    CHECK(prod_g(std::span<const Complex>{}, vb, eta) == Complex(1.0, 0.0));
    CHECK(rel_err(prod_h(ub, vb[0], eta) * prod_h(ub, vb[1], eta), prod_h(ub, vb, eta)) < 1e-14);
}

TEST_CASE("delta products and their sign relation") {
    const Complex eta(0.0, 1.3);
    PointGen gen(11);
    for (int n = 0; n <= 5; ++n) {
        auto ub = gen.set(n);
        Complex d{1.0, 0.0}, dp{1.0, 0.0};
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                d *= g(ub[static_cast<std::size_t>(k)], ub[static_cast<std::size_t>(j)], eta);
                dp *= g(ub[static_cast<std::size_t>(j)], ub[static_cast<std::size_t>(k)], eta);
            }
        CHECK(rel_err(delta(ub, eta), d) < 1e-13);
        CHECK(rel_err(delta_prime(ub, eta), dp) < 1e-13);
        double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        CHECK(rel_err(delta_prime(ub, eta), sign * delta(ub, eta)) < 1e-13);
    }
}

TEST_CASE("bipartition enumeration") {
    auto parts = enumerate_bipartitions(5, 2);
    CHECK(parts.size() == 10);
    for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1].mask < parts[i].mask);
    for (const auto& bp : parts) {
        CHECK(bp.part_I().size() == 2);
        CHECK(bp.part_II().size() == 3);
    }

    auto all = enumerate_all_bipartitions(4);
    CHECK(all.size() == 16);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].mask == i);

    CHECK(enumerate_bipartitions(3, 0).size() == 1);
    CHECK(enumerate_bipartitions(3, 3).size() == 1);
    CHECK_THROWS_AS(enumerate_bipartitions(15, 7), CapExceeded);
    CHECK_THROWS_AS(enumerate_all_bipartitions(15), CapExceeded);
}

TEST_CASE("subset helpers agree with bipartition indexing") {
    PointGen gen(13);
    auto ub = gen.set(5);
    for (const auto& bp : enumerate_bipartitions(5, 3)) {
        auto sel = subset_by_mask(ub, bp.mask);
        auto rest = complement_by_mask(ub, bp.mask);
        CHECK(sel.size() == 3);
        CHECK(rest.size() == 2);
        auto idx = bp.part_I();
        for (std::size_t j = 0; j < sel.size(); ++j)
            CHECK(sel[j] == ub[static_cast<std::size_t>(idx[j])]);
    }
}

TEST_CASE("determinant by LU matches cofactor expansion") {
    PointGen gen(17);
    for (int n = 0; n <= 6; ++n) {
        ComplexMatrix m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = gen.point();
        Complex lu = det(m);
        Complex cof = det_cofactor(m);
        if (n == 0) CHECK(lu == Complex(1.0, 0.0));
        CHECK(rel_err(lu, cof) < 1e-11);
    }
}

TEST_CASE("determinant of singular and non-square input") {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(1.0, 2.0);
    m(0, 1) = Complex(-3.0, 0.5);
    m(1, 0) = 2.0 * m(0, 0);
    m(1, 1) = 2.0 * m(0, 1);
    CHECK(std::abs(det(m)) < 1e-14);

    ComplexMatrix bad(2, 3);
    CHECK_THROWS_AS(det(bad), NotSquare);
}

TEST_CASE("rapidity set separation guard") {
    std::vector<Complex> ok{Complex(0.0, 0.0), Complex(1.0, 0.0)};
    CHECK_NOTHROW(RapiditySet(ok, "ok"));

    std::vector<Complex> close{Complex(0.0, 0.0), Complex(1e-12, 0.0)};
    CHECK_THROWS_AS(RapiditySet(close, "close"), CoincidingArguments);
}
