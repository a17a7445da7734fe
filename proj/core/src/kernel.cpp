#include "bethecorr/kernel.hpp"

#include <cmath>
#include <utility>

namespace bethecorr::kernel {

namespace {

void check_pole(Complex num_dist, Complex eta, double sep_scale, const char* fn) {
    if (std::abs(num_dist) < sep_scale * std::abs(eta))
        throw CoincidingArguments(std::string(fn) + ": arguments within separation guard of a pole");
}

} // namespace

Complex g(Complex u, Complex v, Complex eta, double sep_scale) {
    check_pole(u - v, eta, sep_scale, "g");
    return eta / (u - v);
}

Complex f(Complex u, Complex v, Complex eta, double sep_scale) {
    check_pole(u - v, eta, sep_scale, "f");
    return (u - v + eta) / (u - v);
}

Complex h(Complex u, Complex v, Complex eta, double /*sep_scale*/) {
    return (u - v + eta) / eta;
}

Complex t(Complex u, Complex v, Complex eta, double sep_scale) {
    check_pole(u - v, eta, sep_scale, "t");
    check_pole(u - v + eta, eta, sep_scale, "t");
    return eta * eta / ((u - v) * (u - v + eta));
}

#define BETHECORR_PROD(NAME, KERNEL)                                                        \
    Complex NAME(std::span<const Complex> l, std::span<const Complex> r, Complex eta) {     \
        return set_product([eta](Complex a, Complex b) { return KERNEL(a, b, eta); }, l, r); \
    }                                                                                       \
    Complex NAME(Complex l, std::span<const Complex> r, Complex eta) {                      \
        return set_product([eta](Complex a, Complex b) { return KERNEL(a, b, eta); }, l, r); \
    }                                                                                       \
    Complex NAME(std::span<const Complex> l, Complex r, Complex eta) {                      \
        return set_product([eta](Complex a, Complex b) { return KERNEL(a, b, eta); }, l, r); \
    }

BETHECORR_PROD(prod_g, g)
BETHECORR_PROD(prod_f, f)
BETHECORR_PROD(prod_h, h)

#undef BETHECORR_PROD

Complex delta(std::span<const Complex> set, Complex eta) {
    const int n = static_cast<int>(set.size());
    Complex p{1.0, 0.0};
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            p *= g(set[static_cast<std::size_t>(k)], set[static_cast<std::size_t>(j)], eta);
    return p;
}

Complex delta_prime(std::span<const Complex> set, Complex eta) {
    const int n = static_cast<int>(set.size());
    Complex p{1.0, 0.0};
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            p *= g(set[static_cast<std::size_t>(j)], set[static_cast<std::size_t>(k)], eta);
    return p;
}

std::vector<Bipartition> enumerate_bipartitions(int n, int k, int cap) {
    if (n > cap)
        throw CapExceeded("enumerate_bipartitions: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    if (n < 0 || k < 0 || k > n) throw DomainError("enumerate_bipartitions: need 0 <= k <= n");

    std::vector<Bipartition> out;
    if (k == 0) {
        out.push_back({0u, n});
        return out;
    }
    // Gosper's hack: iterate over k-subsets of [0,n) in ascending mask order.
    std::uint32_t mask = (1u << k) - 1u;
    const std::uint32_t limit = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    while (mask <= limit) {
        out.push_back({mask, n});
        std::uint32_t c = mask & static_cast<std::uint32_t>(-static_cast<std::int32_t>(mask));
        std::uint32_t r = mask + c;
        if (c == 0) break;
        mask = (((r ^ mask) >> 2) / c) | r;
        if (r > limit) break;
    }
    return out;
}

std::vector<Bipartition> enumerate_all_bipartitions(int n, int cap) {
    if (n > cap)
        throw CapExceeded("enumerate_all_bipartitions: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    std::vector<Bipartition> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) out.push_back({mask, n});
    return out;
}

Complex det(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw NotSquare("det: matrix is not square");
    const int n = m.rows();
    if (n == 0) return {1.0, 0.0};

    Complex d{1.0, 0.0};
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(m(c, c));
        for (int r = c + 1; r < n; ++r) {
            double a = std::abs(m(r, c));
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != c) {
            for (int k = c; k < n; ++k) std::swap(m(piv, k), m(c, k));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            Complex factor = m(r, c) / m(c, c);
            for (int k = c + 1; k < n; ++k) m(r, k) -= factor * m(c, k);
        }
    }
    return d;
}

Complex det_cofactor(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("det_cofactor: matrix is not square");
    const int n = m.rows();
    if (n > 8) throw CapExceeded("det_cofactor: n > 8");
    if (n == 0) return {1.0, 0.0};
    if (n == 1) return m(0, 0);

    Complex d{0.0, 0.0};
    double sign = 1.0;
    for (int c = 0; c < n; ++c) {
        ComplexMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int k = 0; k < n; ++k) {
                if (k == c) continue;
                minor(r - 1, cc++) = m(r, k);
            }
        }
        d += sign * m(0, c) * det_cofactor(minor);
        sign = -sign;
    }
    return d;
}

} // namespace bethecorr::kernel
