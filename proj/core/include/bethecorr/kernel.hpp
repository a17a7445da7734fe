#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bethecorr/types.hpp"

// Rational building blocks of the R-matrix and the determinant/partition
// machinery on top of them.  Conventions:
//
//   g(u,v) = eta / (u - v)
//   f(u,v) = (u - v + eta) / (u - v)        ( = 1 + g )
//   h(u,v) = (u - v + eta) / eta            ( f = g h )
//   t(u,v) = eta^2 / ((u - v)(u - v + eta)) ( = g / h )
//
// g, f, t have a pole at u = v; t additionally at u - v = -eta (where h
// vanishes).  Every pole is guarded at distance sep_scale*|eta|.

namespace bethecorr::kernel {

Complex g(Complex u, Complex v, Complex eta, double sep_scale = Tolerances{}.sep_scale);
Complex f(Complex u, Complex v, Complex eta, double sep_scale = Tolerances{}.sep_scale);
Complex h(Complex u, Complex v, Complex eta, double sep_scale = Tolerances{}.sep_scale);
Complex t(Complex u, Complex v, Complex eta, double sep_scale = Tolerances{}.sep_scale);

// Products of a two-argument kernel over set arguments.  The shorthand
// fn(ubar, v) means the product of fn(u_j, v) over the set; empty sets give 1.
template <class F>
Complex set_product(F&& fn, std::span<const Complex> left, std::span<const Complex> right) {
    Complex p{1.0, 0.0};
    for (const Complex& a : left)
        for (const Complex& b : right) p *= fn(a, b);
    return p;
}

template <class F>
Complex set_product(F&& fn, std::span<const Complex> left, Complex right) {
    Complex p{1.0, 0.0};
    for (const Complex& a : left) p *= fn(a, right);
    return p;
}

template <class F>
Complex set_product(F&& fn, Complex left, std::span<const Complex> right) {
    Complex p{1.0, 0.0};
    for (const Complex& b : right) p *= fn(left, b);
    return p;
}

// Product of a one-argument function over a set (used for r, r1, r2).
template <class F>
Complex set_product1(F&& fn, std::span<const Complex> set) {
    Complex p{1.0, 0.0};
    for (const Complex& a : set) p *= fn(a);
    return p;
}

// Convenience wrappers binding eta; these are the forms used throughout.
Complex prod_g(std::span<const Complex> l, std::span<const Complex> r, Complex eta);
Complex prod_f(std::span<const Complex> l, std::span<const Complex> r, Complex eta);
Complex prod_h(std::span<const Complex> l, std::span<const Complex> r, Complex eta);
Complex prod_g(Complex l, std::span<const Complex> r, Complex eta);
Complex prod_f(Complex l, std::span<const Complex> r, Complex eta);
Complex prod_h(Complex l, std::span<const Complex> r, Complex eta);
Complex prod_g(std::span<const Complex> l, Complex r, Complex eta);
Complex prod_f(std::span<const Complex> l, Complex r, Complex eta);
Complex prod_h(std::span<const Complex> l, Complex r, Complex eta);

// Vandermonde-like products over ordered pairs within one set:
//   delta(ubar)       = prod_{j<k} g(u_k, u_j)
//   delta_prime(ubar) = prod_{j<k} g(u_j, u_k) = (-1)^{N(N-1)/2} delta(ubar)
// Sets of size 0 or 1 give 1.
Complex delta(std::span<const Complex> set, Complex eta);
Complex delta_prime(std::span<const Complex> set, Complex eta);

// ----- bipartitions -----

// A bipartition of an N-element set: bit j of mask set => element j goes to
// part I, otherwise part II.
struct Bipartition {
    std::uint32_t mask = 0;
    int n = 0;

    std::vector<int> part_I() const {
        std::vector<int> out;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) out.push_back(j);
        return out;
    }
    std::vector<int> part_II() const {
        std::vector<int> out;
        for (int j = 0; j < n; ++j)
            if (!(mask & (1u << j))) out.push_back(j);
        return out;
    }
};

// All bipartitions with |part I| = k, in ascending mask order (deterministic).
// Throws CapExceeded for n > cap.
std::vector<Bipartition> enumerate_bipartitions(int n, int k,
                                                int cap = Tolerances{}.enumeration_cap);

// All 2^n bipartitions, ascending mask order.
std::vector<Bipartition> enumerate_all_bipartitions(int n,
                                                    int cap = Tolerances{}.enumeration_cap);

// ----- dense complex matrices and determinants -----

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int r, int c) {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }
    const Complex& operator()(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

// Determinant via LU with partial pivoting.  det of the empty matrix is 1.
Complex det(ComplexMatrix m);

// Reference determinant by cofactor expansion, O(n!).  Only for tests and
// cross-checks of det(); capped at n = 8.
Complex det_cofactor(const ComplexMatrix& m);

} // namespace bethecorr::kernel
