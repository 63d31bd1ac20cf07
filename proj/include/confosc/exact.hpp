#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>

namespace confosc::exact {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

template <class Real>
Real to_real(const Rational& q) {
    if constexpr (std::is_same_v<Real, double>) {
        return q.get_d();
    } else {
        // mpq_get_d would truncate to double; go through decimal strings instead
        Real num = std::stold(q.get_num().get_str());
        Real den = std::stold(q.get_den().get_str());
        return num / den;
    }
}

// Element of Q(i); both parts kept canonical by GMP.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {0, 1}; }
    static GaussianRational from_parts(long rn, long rd, long in, long id) {
        return {make_rational(rn, rd), make_rational(in, id)};
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator*=(const Rational& q) {
        re_ *= q;
        im_ *= q;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational division by zero");
        Rational n = o.norm2();
        GaussianRational t = *this * o.conj();
        re_ = t.re_ / n;
        im_ = t.im_ / n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator*(GaussianRational a, const Rational& q) { return a *= q; }
    friend GaussianRational operator*(const Rational& q, GaussianRational a) { return a *= q; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Add a*b into this without temporaries for the real-coefficient case.
    void add_product(const GaussianRational& a, const GaussianRational& b) {
        if (a.is_real() && b.is_real()) {
            re_ += a.re_ * b.re_;
            return;
        }
        *this += a * b;
    }

    template <class Real = double>
    std::complex<Real> to_complex() const {
        return {to_real<Real>(re_), to_real<Real>(im_)};
    }

    // "a", "bi", "a+bi", "a-bi" with a, b reduced fractions
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (sgn(re_) != 0) out = re_.get_str();
        if (sgn(im_) != 0) {
            Rational mag = abs(im_);
            std::string m = mag == 1 ? std::string{} : mag.get_str();
            if (sgn(im_) < 0) out += "-";
            else if (!out.empty()) out += "+";
            out += m + "i";
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussianRational pow(GaussianRational z, unsigned n) {
    GaussianRational r(1);
    while (n) {
        if (n & 1u) r *= z;
        z *= z;
        n >>= 1u;
    }
    return r;
}

class ExactMatrix4 {
public:
    ExactMatrix4() = default;
    ExactMatrix4(std::initializer_list<GaussianRational> rows) {
        if (rows.size() != 16) throw std::invalid_argument("ExactMatrix4 needs 16 entries");
        std::size_t k = 0;
        for (const auto& z : rows) e_[k++] = z;
    }

    static ExactMatrix4 identity() {
        ExactMatrix4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = GaussianRational(1);
        return m;
    }

    // 2x2 blocks [[tl, tr], [bl, br]], each given row-major
    static ExactMatrix4 blocks(const std::array<GaussianRational, 4>& tl, const std::array<GaussianRational, 4>& tr,
                               const std::array<GaussianRational, 4>& bl, const std::array<GaussianRational, 4>& br) {
        ExactMatrix4 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                m(r, c) = tl[2 * r + c];
                m(r, c + 2) = tr[2 * r + c];
                m(r + 2, c) = bl[2 * r + c];
                m(r + 2, c + 2) = br[2 * r + c];
            }
        return m;
    }

    GaussianRational& operator()(int r, int c) { return e_[4 * r + c]; }
    const GaussianRational& operator()(int r, int c) const { return e_[4 * r + c]; }

    bool is_zero() const {
        for (const auto& z : e_)
            if (!z.is_zero()) return false;
        return true;
    }

    ExactMatrix4 dagger() const {
        ExactMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = (*this)(c, r).conj();
        return m;
    }
    ExactMatrix4 transpose() const {
        ExactMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = (*this)(c, r);
        return m;
    }

    friend ExactMatrix4 operator*(const ExactMatrix4& a, const ExactMatrix4& b) {
        ExactMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                for (int k = 0; k < 4; ++k) m(r, c).add_product(a(r, k), b(k, c));
        return m;
    }
    friend ExactMatrix4 operator+(ExactMatrix4 a, const ExactMatrix4& b) {
        for (int k = 0; k < 16; ++k) a.e_[k] += b.e_[k];
        return a;
    }
    friend ExactMatrix4 operator-(ExactMatrix4 a, const ExactMatrix4& b) {
        for (int k = 0; k < 16; ++k) a.e_[k] -= b.e_[k];
        return a;
    }
    friend ExactMatrix4 operator*(const GaussianRational& s, ExactMatrix4 a) {
        for (auto& z : a.e_) z *= s;
        return a;
    }
    ExactMatrix4 operator-() const { return GaussianRational(-1) * *this; }
    friend bool operator==(const ExactMatrix4& a, const ExactMatrix4& b) { return a.e_ == b.e_; }

    friend std::ostream& operator<<(std::ostream& os, const ExactMatrix4& m) {
        for (int r = 0; r < 4; ++r) {
            os << "[";
            for (int c = 0; c < 4; ++c) os << (c ? ", " : "") << m(r, c);
            os << "]\n";
        }
        return os;
    }

private:
    std::array<GaussianRational, 16> e_{};
};

inline ExactMatrix4 commutator(const ExactMatrix4& x, const ExactMatrix4& y) { return x * y - y * x; }

}  // namespace confosc::exact
