#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "confosc/exact.hpp"

namespace confosc::specfun {

using exact::GaussianRational;
using exact::Integer;
using exact::Rational;

// Coefficients from the constant term upward.
using Polynomial = std::vector<Rational>;

// (x)_j for integer x
inline Rational pochhammer(const Rational& x, int j) {
    Rational r(1);
    for (int t = 0; t < j; ++t) r *= x + t;
    return r;
}

// 1F1(-n; b; x) as an exact polynomial of degree n.
inline Polynomial hyp1f1_poly(int n, int b) {
    if (n < 0) throw std::invalid_argument("hyp1f1_poly needs n >= 0");
    Polynomial p;
    Rational num(1), den(1);
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            num *= Rational(-n + j - 1);
            den *= Rational(b + j - 1) * j;
        }
        if (sgn(den) == 0) {
            if (sgn(num) == 0) break;
            throw std::domain_error("hyp1f1_poly: (b)_j vanishes at j = " + std::to_string(j));
        }
        Rational c = num / den;
        c.canonicalize();
        p.push_back(c);
    }
    return p;
}

// 2F1(-k, -l; c; x), terminating after min(k,l)+1 terms.
inline Polynomial hyp2f1_poly(int k, int l, int c) {
    if (k < 0 || l < 0) throw std::invalid_argument("hyp2f1_poly needs k, l >= 0");
    if (c < 1) throw std::invalid_argument("hyp2f1_poly needs c >= 1");
    Polynomial p;
    Rational term(1);
    const int top = std::min(k, l);
    for (int j = 0; j <= top; ++j) {
        if (j > 0) {
            term *= Rational(-k + j - 1) * Rational(-l + j - 1);
            term /= Rational(c + j - 1) * j;
        }
        term.canonicalize();
        p.push_back(term);
    }
    return p;
}

// c_m = 2^(2-k) / (m! Gamma(m+k-1)), with 1/Gamma = 0 at the poles.
inline std::vector<Rational> bessel_i_coeffs(int kappa, int terms) {
    if (terms < 1) throw std::invalid_argument("bessel_i_coeffs needs terms >= 1");
    std::vector<Rational> c;
    const Integer shift = Integer(1) << std::abs(2 - kappa);
    const Rational pow2 = kappa <= 2 ? Rational(shift) : Rational(Integer(1), shift);
    for (int m = 0; m < terms; ++m) {
        if (m + kappa - 1 <= 0) {
            c.emplace_back(0);
            continue;
        }
        Rational v = pow2 / Rational(exact::factorial(m) * exact::factorial(m + kappa - 2));
        v.canonicalize();
        c.push_back(v);
    }
    return c;
}

// Horner evaluation, highest coefficient first.
template <class Real>
Real evaluate(const Polynomial& p, Real x) {
    Real acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + exact::to_real<Real>(*it);
    return acc;
}

template <class Real>
std::complex<Real> evaluate(const Polynomial& p, std::complex<Real> x) {
    std::complex<Real> acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + exact::to_real<Real>(*it);
    return acc;
}

inline GaussianRational evaluate_exact(const Polynomial& p, const GaussianRational& x) {
    GaussianRational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + GaussianRational(*it);
    return acc;
}

// x y'' + (b - x) y' + n y = 0, checked coefficient by coefficient:
// (j+1)(j+b) a_{j+1} = (j-n) a_j
inline bool satisfies_kummer(const Polynomial& p, int n, int b) {
    for (std::size_t j = 0; j < p.size(); ++j) {
        const Rational next = j + 1 < p.size() ? p[j + 1] : Rational(0);
        if (Rational(int(j) + 1) * Rational(int(j) + b) * next != Rational(int(j) - n) * p[j]) return false;
    }
    return true;
}

}  // namespace confosc::specfun
