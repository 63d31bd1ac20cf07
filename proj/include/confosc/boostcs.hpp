#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "confosc/exact.hpp"
#include "confosc/fockaux.hpp"
#include "confosc/liealg4.hpp"
#include "confosc/oscrep.hpp"
#include "confosc/parallel.hpp"
#include "confosc/report.hpp"
#include "confosc/specfun.hpp"

namespace confosc::boost {

using cd = std::complex<double>;
using CVector = std::vector<cd>;
using exact::GaussianRational;
using fock::AuxState;
using fock::BasisPtr;
using fock::GradedOperator;
using fock::Osc;

// ------------------------------------------------------------ sl(2) triples

// T+ = (1/2) a^+ b, T- = -(1/2) b^+ a, T0 = (1/2)(a^+ a + b^+ b) on one mode, and
// the transformed triple  calT- = T+ - T- - T0,  calT+ = -T+,  calT0 = T0 - 2 T+.
struct Sl2Triple {
    int mode = 1;
    GradedOperator t_plus, t_minus, t_zero;
    GradedOperator cal_plus, cal_minus, cal_zero;
};

inline Sl2Triple build_sl2_triple(const BasisPtr& basis, int mode) {
    const GaussianRational half = GaussianRational(exact::make_rational(1, 2));
    auto pair_op = [&](std::string name, std::vector<std::tuple<Osc, Osc, GaussianRational>> terms) {
        return GradedOperator::from_action(basis, std::move(name), 2, 0, [&](const AuxState& s, auto&& emit) {
            for (const auto& [l, r, c] : terms) fock::apply_pair(l, r, s, c, emit);
        });
    };
    const std::string tag = "^" + std::to_string(mode);
    Sl2Triple t;
    t.mode = mode;
    t.t_plus = pair_op("T+" + tag, {{Osc::ad(mode), Osc::b(mode), half}});
    t.t_minus = pair_op("T-" + tag, {{Osc::bd(mode), Osc::a(mode), -half}});
    t.t_zero = pair_op("T0" + tag, {{Osc::ad(mode), Osc::a(mode), half}, {Osc::bd(mode), Osc::b(mode), half}});
    const GaussianRational one(1), mone(-1), two(2);
    t.cal_plus = GradedOperator::combine(mone, t.t_plus, GaussianRational(), t.t_plus, "calT+" + tag);
    t.cal_minus = GradedOperator::combine(
        one, GradedOperator::combine(one, t.t_plus, mone, t.t_minus, ""), mone, t.t_zero, "calT-" + tag);
    t.cal_zero = GradedOperator::combine(one, t.t_zero, -two, t.t_plus, "calT0" + tag);
    return t;
}

namespace detail {

// [A,B] - sum c_i R_i on the first ncols columns; returns the first offending column or -1.
inline long commutator_mismatch(const GradedOperator& a, const GradedOperator& b,
                                const std::vector<std::pair<GaussianRational, const GradedOperator*>>& rhs,
                                std::size_t ncols, fock::ExactVector* residual = nullptr) {
    fock::Accumulator acc(a.dim());
    for (std::size_t j = 0; j < ncols; ++j) {
        fock::ExactVector d = a.apply(b.column(j), acc) - b.apply(a.column(j), acc);
        for (const auto& [c, r] : rhs) d = fock::axpy(d, -c, r->column(j));
        if (!d.empty()) {
            if (residual) *residual = d;
            return long(j);
        }
    }
    return -1;
}

}  // namespace detail

// sl(2) relations for both triples on the interior, plus the three calT actions on basis states.
inline VerificationReport verify_sl2_triple(const Sl2Triple& t) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "sl2_triple";
    const auto& basis = t.t_plus.basis();
    const int interior = basis.n_max() - 4;
    const std::size_t ncols = basis.prefix_up_to_degree(interior);
    rep.parameters = {{"mode", t.mode}, {"n_max", basis.n_max()}, {"interior_max_degree", interior}};
    const GaussianRational half(exact::make_rational(1, 2)), one(1), mone(-1);

    auto relations = [&](const std::string& tag, const GradedOperator& p, const GradedOperator& m,
                         const GradedOperator& z) {
        struct Rel {
            std::string name;
            const GradedOperator *x, *y;
            std::vector<std::pair<GaussianRational, const GradedOperator*>> rhs;
        };
        const std::vector<Rel> rels = {{"[" + tag + "+," + tag + "-] = 1/2 " + tag + "0", &p, &m, {{half, &z}}},
                                       {"[" + tag + "0," + tag + "+] = " + tag + "+", &z, &p, {{one, &p}}},
                                       {"[" + tag + "0," + tag + "-] = -" + tag + "-", &z, &m, {{mone, &m}}}};
        for (const auto& r : rels) {
            fock::ExactVector res;
            const long bad = detail::commutator_mismatch(*r.x, *r.y, r.rhs, ncols, &res);
            if (bad >= 0) {
                rep.absorb(Residual::nonzero(res.front().value));
                rep.fail(r.name + " fails on " + basis[std::size_t(bad)].str());
            }
        }
    };
    relations("T", t.t_plus, t.t_minus, t.t_zero);
    relations("calT", t.cal_plus, t.cal_minus, t.cal_zero);

    // actions on |n><m| of the active mode
    const int mode = t.mode;
    const std::size_t action_cols = basis.prefix_up_to_degree(basis.n_max() - 2);
    for (std::size_t j = 0; j < action_cols; ++j) {
        const AuxState s = basis[j];
        const long n = s.n(mode), m = s.m(mode);
        auto expect = [&](std::initializer_list<std::pair<AuxState, GaussianRational>> terms) {
            fock::Accumulator acc(basis.size());
            for (const auto& [state, z] : terms) {
                const int i = basis.index_of(state);
                if (i >= 0 && !z.is_zero()) acc.add(i, z);
            }
            return acc.take();
        };
        AuxState up = s, down = s;
        up.n(mode) += 1;
        up.m(mode) += 1;
        down.n(mode) -= 1;
        down.m(mode) -= 1;
        const auto want_minus = expect({{down, half * GaussianRational(n * m)}});
        const auto want_plus = expect({{up, -half}});
        const auto want_zero = expect({{s, half * GaussianRational(n + m + 1)}});
        const std::pair<const GradedOperator*, const fock::ExactVector*> cmp[] = {
            {&t.cal_minus, &want_minus}, {&t.cal_plus, &want_plus}, {&t.cal_zero, &want_zero}};
        for (const auto& [op, want] : cmp) {
            const fock::ExactVector d = op->column(j) - *want;
            if (!d.empty()) {
                rep.absorb(Residual::nonzero(d.front().value));
                if (rep.notes.size() < 20) rep.fail(op->name() + " action differs on " + s.str());
                rep.pass = false;
            }
        }
    }
    if (rep.pass) rep.residual = Residual::exact_zero();
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

// S03 = (T+ + T-)^1 - (T+ + T-)^2 compared entry for entry with the oscillator S03.
inline VerificationReport verify_s03_from_triples(int n_max) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "s03_from_triples";
    const auto basis = fock::make_basis({n_max});
    const Sl2Triple t1 = build_sl2_triple(basis, 1), t2 = build_sl2_triple(basis, 2);
    const GaussianRational one(1), mone(-1);
    const GradedOperator s1 = GradedOperator::combine(one, t1.t_plus, one, t1.t_minus, "");
    const GradedOperator s2 = GradedOperator::combine(one, t2.t_plus, one, t2.t_minus, "");
    const GradedOperator rebuilt = GradedOperator::combine(one, s1, mone, s2, "S03 from triples");
    const GradedOperator direct = osc::hat(lie::build_generator(lie::GenLabel::S(0, 3), lie::RepVariant::Fundamental),
                                           basis, "S03");
    rep.parameters = {{"n_max", n_max}};
    for (std::size_t j = 0; j < basis->size(); ++j) {
        const fock::ExactVector d = rebuilt.column(j) - direct.column(j);
        if (!d.empty()) {
            rep.absorb(Residual::nonzero(d.front().value));
            rep.fail("entry mismatch in column " + (*basis)[j].str());
            break;
        }
    }
    // modes commute
    const std::vector<const GradedOperator*> m1 = {&t1.t_plus, &t1.t_minus, &t1.t_zero};
    const std::vector<const GradedOperator*> m2 = {&t2.t_plus, &t2.t_minus, &t2.t_zero};
    const std::size_t ncols = basis->prefix_up_to_degree(n_max - 4);
    for (auto* x : m1)
        for (auto* y : m2) {
            fock::ExactVector res;
            if (detail::commutator_mismatch(*x, *y, {}, ncols, &res) >= 0) {
                rep.absorb(Residual::nonzero(res.front().value));
                rep.fail("[" + x->name() + "," + y->name() + "] != 0");
            }
        }
    if (rep.pass) rep.residual = Residual::exact_zero();
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

// ------------------------------------------------------------ Gauss decomposition

struct GaussCoeffs {
    double a = 0, b = 0, c = 0;
};

inline GaussCoeffs gauss_coeffs(double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
    const double t = 2 * std::tanh(beta / 2);
    return {t, -2 * std::log(std::cosh(beta / 2)), t};
}

// 2 calT+ -> [[0,1],[0,0]], 2 calT0 -> diag(1,-1), 2 calT- -> [[0,0],[1,0]]
inline double gauss_2x2_residual(double beta) {
    const GaussCoeffs g = gauss_coeffs(beta);
    using M = std::array<double, 4>;
    auto mul = [](const M& x, const M& y) {
        return M{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                 x[2] * y[1] + x[3] * y[3]};
    };
    const M upper{1, g.a / 2, 0, 1};
    const M diag{std::exp(g.b / 2), 0, 0, std::exp(-g.b / 2)};
    const M lower{1, 0, g.c / 2, 1};
    const M prod = mul(mul(upper, diag), lower);
    const double ch = std::cosh(beta / 2), sh = std::sinh(beta / 2);
    const M direct{ch, sh, sh, ch};
    double r = 0;
    for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(prod[k] - direct[k]));
    return r;
}

// ------------------------------------------------------------ numeric operators and the expm oracle

class NumericOperator {
public:
    NumericOperator() = default;
    explicit NumericOperator(const GradedOperator& op, cd scale = 1.0)
        : basis_(op.basis_ptr()), cols_(op.dim()), degree_(op.dim()) {
        max_raise_ = std::numeric_limits<int>::min();
        for (std::size_t j = 0; j < op.dim(); ++j) {
            degree_[j] = (*basis_)[j].degree();
            for (const auto& e : op.column(j)) {
                cols_[j].push_back({e.index, scale * e.value.to_complex<double>()});
                max_raise_ = std::max(max_raise_, (*basis_)[e.index].degree() - degree_[j]);
            }
        }
        if (max_raise_ == std::numeric_limits<int>::min()) max_raise_ = 0;
    }

    const fock::Basis& basis() const { return *basis_; }
    std::size_t dim() const { return cols_.size(); }
    int max_raise() const { return max_raise_; }
    int degree(std::size_t j) const { return degree_[j]; }

    CVector apply(const CVector& x) const {
        CVector y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] == cd(0)) continue;
            for (const auto& [i, z] : cols_[j]) y[std::size_t(i)] += z * x[j];
        }
        return y;
    }

    // largest column 1-norm among columns of degree <= d
    double norm_up_to_degree(int d) const {
        double best = 0;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (degree_[j] > d) continue;
            double s = 0;
            for (const auto& e : cols_[j]) s += std::abs(e.second);
            best = std::max(best, s);
        }
        return best;
    }

private:
    BasisPtr basis_;
    std::vector<std::vector<std::pair<int, cd>>> cols_;
    std::vector<int> degree_;
    int max_raise_ = 0;
};

struct ExpmResult {
    CVector v;
    double tail_estimate = 0;  // norm of the components in the top two degree shells
    bool flagged = false;
    int substeps = 1;
};

inline int max_support_degree(const fock::Basis& basis, const CVector& v) {
    int d = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != cd(0)) d = std::max(d, basis[j].degree());
    return d;
}

// Taylor series in substeps s chosen so that |beta| * (local norm) / s <= 1. For a
// degree-non-increasing operator the norm is taken over the support only; otherwise
// over the whole truncation.
inline ExpmResult expm_oracle(const NumericOperator& op, double beta, CVector v, double tail_tolerance = 1e-10,
                              int substeps = 0) {
    ExpmResult out;
    const auto& basis = op.basis();
    if (substeps <= 0) {
        const int reach = op.max_raise() <= 0 ? max_support_degree(basis, v) : basis.n_max();
        substeps = std::max(1, int(std::ceil(std::abs(beta) * op.norm_up_to_degree(reach))));
    }
    out.substeps = substeps;
    const double h = beta / substeps;
    if (beta != 0.0)
        for (int s = 0; s < substeps; ++s) {
            CVector sum = v, term = v;
            for (int k = 1; k < 1000; ++k) {
                term = op.apply(term);
                double tmax = 0, smax = 0;
                for (std::size_t i = 0; i < term.size(); ++i) {
                    term[i] *= h / k;
                    sum[i] += term[i];
                    tmax = std::max(tmax, std::abs(term[i]));
                    smax = std::max(smax, std::abs(sum[i]));
                }
                if (tmax <= 1e-18 * std::max(1.0, smax)) break;
            }
            v = std::move(sum);
        }
    double tail = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (basis[j].degree() >= basis.n_max() - 1) tail += std::norm(v[j]);
    out.tail_estimate = std::sqrt(tail);
    out.flagged = out.tail_estimate > tail_tolerance;
    out.v = std::move(v);
    return out;
}

// ------------------------------------------------------------ coherent states

namespace detail {
inline cd cpow(cd z, int n) {
    cd r = 1;
    for (int k = 0; k < n; ++k) r *= z;
    return r;
}
inline double dfact(int n) { return std::tgamma(n + 1.0); }
}  // namespace detail

// |A1,A2><B1,B2| in the monomial basis: e^{-(|A|^2+|B|^2)/2} A^n conj(B)^m / (n! m!) per mode.
inline CVector coherent_vector(const fock::Basis& basis, cd a1, cd b1, cd a2 = 0, cd b2 = 0) {
    CVector v(basis.size());
    const double norm = std::exp(-(std::norm(a1) + std::norm(b1) + std::norm(a2) + std::norm(b2)) / 2);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const AuxState& s = basis[j];
        v[j] = norm * detail::cpow(a1, s.n1) * detail::cpow(std::conj(b1), s.m1) * detail::cpow(a2, s.n2) *
               detail::cpow(std::conj(b2), s.m2) /
               (detail::dfact(s.n1) * detail::dfact(s.m1) * detail::dfact(s.n2) * detail::dfact(s.m2));
    }
    return v;
}

// <C1,C2| psi |D1,D2> with <k|n> = n! delta
inline cd cs_sandwich(const fock::Basis& basis, const CVector& v, cd c1, cd d1, cd c2 = 0, cd d2 = 0) {
    cd sum = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (v[j] == cd(0)) continue;
        const AuxState& s = basis[j];
        sum += v[j] * detail::cpow(std::conj(c1), s.n1) * detail::cpow(d1, s.m1) * detail::cpow(std::conj(c2), s.n2) *
               detail::cpow(d2, s.m2);
    }
    return sum * std::exp(-(std::norm(c1) + std::norm(d1) + std::norm(c2) + std::norm(d2)) / 2);
}

// log of <C| e^{beta(calT- + calT+)} |A><B| |D>
inline cd phi_log_matrix_element(cd a, cd b, cd c, cd d, double beta) {
    const double ch = std::cosh(beta / 2), th = std::tanh(beta / 2);
    return -std::log(ch) - (std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d)) / 2 +
           th * (a * std::conj(b) - std::conj(c) * d) + (a * std::conj(c) + std::conj(b) * d) / ch;
}

inline cd phi_matrix_element(cd a, cd b, cd c, cd d, double beta) {
    return std::exp(phi_log_matrix_element(a, b, c, d, beta));
}

inline cd n_kernel(cd a, cd ap, cd b, cd bp) { return std::exp(a * std::conj(ap) + std::conj(b) * bp); }

// ------------------------------------------------------------ quadrature

struct GaussHermite {
    std::vector<double> x, w;
};

// Nodes and weights for the weight e^{-x^2} (Newton iteration on the Hermite recurrence).
inline const GaussHermite& gauss_hermite(int n) {
    static std::mutex mutex;
    static std::map<int, GaussHermite> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_hermite needs n >= 1");
    GaussHermite g;
    g.x.assign(std::size_t(n), 0.0);
    g.w.assign(std::size_t(n), 0.0);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int half = (n + 1) / 2;
    double z = 0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(double(2 * n + 1)) - 1.85575 * std::pow(double(2 * n + 1), -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * g.x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * g.x[1];
        else
            z = 2.0 * z - g.x[std::size_t(i - 2)];
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        g.x[std::size_t(i)] = z;
        g.x[std::size_t(n - 1 - i)] = -z;
        g.w[std::size_t(i)] = 2.0 / (pp * pp);
        g.w[std::size_t(n - 1 - i)] = g.w[std::size_t(i)];
    }
    return cache.emplace(n, std::move(g)).first->second;
}

// Integral over C, D in C with measure d^2C d^2D / pi^2 of exp(log_f(C, D)), where log_f
// carries the Gaussian e^{-|C|^2-|D|^2-2 tanh(beta/2) Re(conj(C) D)}. The correlated
// Gaussian is removed by the Cholesky factor of [[1,th],[th,1]] in each of the real and
// imaginary planes.
template <class LogF>
cd correlated_quadrature(double beta, int nodes, LogF&& log_f) {
    const auto& gh = gauss_hermite(nodes);
    const double th = std::tanh(beta / 2), s = 1.0 / std::cosh(beta / 2);
    const int n = nodes;
    struct Pt {
        double c, d, w;
    };
    std::vector<Pt> plane;
    plane.reserve(std::size_t(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double d = gh.x[std::size_t(j)] / s;
            const double c = gh.x[std::size_t(i)] - th * d;
            plane.push_back({c, d, gh.w[std::size_t(i)] * gh.w[std::size_t(j)]});
        }
    cd total = 0;
    for (const auto& re : plane)
        for (const auto& im : plane) {
            const cd c(re.c, im.c), d(re.d, im.d);
            const double q = std::norm(c) + std::norm(d) + 2 * th * (std::conj(c) * d).real();
            total += re.w * im.w * std::exp(log_f(c, d) + q);
        }
    const double jac = 1.0 / (s * s);  // (cosh)^2 from both planes
    return total * jac / (std::numbers::pi * std::numbers::pi);
}

// ||e^{beta(calT- + calT+)} |A><B| ||^2 as the integral of |<C|phi|D>|^2.
inline double boost_norm_quadrature(cd a, cd b, double beta, int nodes = 40) {
    return correlated_quadrature(beta, nodes, [&](cd c, cd d) {
               return 2.0 * phi_log_matrix_element(a, b, c, d, beta).real();
           }).real();
}

// Two modes: the boost acts with +beta on mode 1 and -beta on mode 2.
inline double boost_norm_two_mode(cd a1, cd a2, cd b1, cd b2, double beta, int nodes = 40) {
    return boost_norm_quadrature(a1, b1, beta, nodes) * boost_norm_quadrature(a2, b2, -beta, nodes);
}

// Integral of conj(<C|phi'_{A'B'}|D>) <C|phi'_{AB}|D> for the unnormalized states |A)(B|.
inline cd n_kernel_quadrature(cd a, cd ap, cd b, cd bp, double beta, int nodes = 40) {
    const double na = (std::norm(a) + std::norm(b)) / 2, nap = (std::norm(ap) + std::norm(bp)) / 2;
    return correlated_quadrature(beta, nodes, [&](cd c, cd d) {
        return std::conj(phi_log_matrix_element(ap, bp, c, d, beta) + nap) +
               phi_log_matrix_element(a, b, c, d, beta) + na;
    });
}

// ------------------------------------------------------------ boosted basis matrix elements

namespace detail {

inline long double lfact(int n) { return std::tgamma(static_cast<long double>(n) + 1.0L); }

inline long double hyp2f1(int k, int l, int c, long double x) {
    return specfun::evaluate<long double>(specfun::hyp2f1_poly(k, l, c), x);
}

}  // namespace detail

// <k| e^{beta(calT- + calT+)} |n><m| |l>, nonzero only when l - k = m - n.
inline double p_matrix_element(int k, int l, int m, int n, double beta) {
    if (k < 0 || l < 0 || m < 0 || n < 0) throw std::invalid_argument("p_matrix_element needs non-negative indices");
    if (l - k != m - n) return 0.0;
    const long double ch = std::cosh(static_cast<long double>(beta) / 2);
    const long double sh = std::sinh(static_cast<long double>(beta) / 2);
    const long double th = sh / ch, x = -sh * sh;
    using detail::lfact;
    if (k <= n)
        return double(std::pow(th, n - k) / std::pow(ch, k + l + 1) * lfact(n) * lfact(m) / lfact(n - k) *
                      detail::hyp2f1(k, l, n - k + 1, x));
    const long double sign = (k - n) % 2 ? -1.0L : 1.0L;
    return double(sign * lfact(k) * lfact(l) * std::pow(sh * ch, k - n) / (lfact(k - n) * std::pow(ch, k + l + 1)) *
                  detail::hyp2f1(n, m, k - n + 1, x));
}

// Sum over nu of the derivative extraction with n = N1+N3, m = N2+N3, k = N1+N4, l = N2+N4.
inline double p_matrix_element_nu_sum(int k, int l, int m, int n, double beta) {
    if (l - k != m - n) return 0.0;
    const long double ch = std::cosh(static_cast<long double>(beta) / 2);
    const long double th = std::tanh(static_cast<long double>(beta) / 2);
    using detail::lfact;
    long double sum = 0;
    for (int nu = 0; nu <= k; ++nu) {
        const int n1 = k - nu, n2 = l - nu, n3 = n - k + nu;
        if (n1 < 0 || n2 < 0 || n3 < 0) continue;
        const long double sign = nu % 2 ? -1.0L : 1.0L;
        sum += sign * std::pow(th, n3 + nu) / std::pow(ch, n1 + n2) * lfact(n) * lfact(m) * lfact(k) * lfact(l) /
               (lfact(n1) * lfact(n2) * lfact(n3) * lfact(nu));
    }
    return double(sum / ch);
}

// Two-branch form with n and m exchanged (branch on k <= m, lower parameter
// -(2m-n)); NaN where a factorial argument is negative.
inline double p_matrix_element_swapped(int k, int l, int m, int n, double beta) {
    if (l - k != m - n) return 0.0;
    const long double ch = std::cosh(static_cast<long double>(beta) / 2);
    const long double sh = std::sinh(static_cast<long double>(beta) / 2);
    const long double th = sh / ch, x = -sh * sh;
    using detail::lfact;
    const long double pre = std::pow(th, m - k) / std::pow(ch, k + l + 1);
    if (k <= m) return double(pre * lfact(m) * lfact(n) / lfact(m - k) * detail::hyp2f1(k, l, m - k + 1, x));
    if (2 * m - n < 0) return std::numeric_limits<double>::quiet_NaN();
    return double(pre * std::pow(x, k - m) * lfact(k) * lfact(l) * lfact(n) / (lfact(k - m) * lfact(2 * m - n)) *
                  detail::hyp2f1(m, 2 * m - n, k - m + 1, x));
}

// Components of psi = (orthonormal amplitude) / sqrt(k! l!) convert between conventions.
inline double orthonormal_amplitude(double p, int k, int l) {
    return p / std::sqrt(detail::dfact(k) * detail::dfact(l));
}

// Single-mode oracle: k! l! times the (k,l) coefficient of e^{beta(calT- + calT+)} |n><m|.
class POracle {
public:
    explicit POracle(int n_max = 44)
        : basis_(fock::make_basis({n_max, std::nullopt, 1})), triple_(build_sl2_triple(basis_, 1)) {
        op_ = NumericOperator(GradedOperator::combine(GaussianRational(1), triple_.cal_minus, GaussianRational(1),
                                                      triple_.cal_plus, "calT- + calT+"));
    }

    const fock::Basis& basis() const { return *basis_; }
    const NumericOperator& generator() const { return op_; }
    const Sl2Triple& triple() const { return triple_; }

    // boosted column of |n><m|
    CVector boosted(int n, int m, double beta) const {
        CVector v(basis_->size());
        const int j = basis_->index_of({n, 0, m, 0});
        if (j < 0) throw std::out_of_range("state outside the oracle truncation");
        v[std::size_t(j)] = 1.0;
        return expm_oracle(op_, beta, std::move(v), 1e-10, 1).v;
    }

    double element(const CVector& boosted, int k, int l) const {
        const int i = basis_->index_of({k, 0, l, 0});
        if (i < 0) return 0.0;
        return (boosted[std::size_t(i)] * detail::dfact(k) * detail::dfact(l)).real();
    }

private:
    BasisPtr basis_;
    Sl2Triple triple_;
    NumericOperator op_;
};

struct NormSum {
    double value = 0;
    double last_decade = 0;
    bool converged = true;
};

// ||e^{beta(calT- + calT+)} |n><m| ||^2 = sum_k P(k,l,m,n)^2 / (k! l!), l = k + m - n.
inline NormSum boosted_basis_norm(int n, int m, double beta, int cutoff, double tolerance = 1e-8) {
    NormSum out;
    long double sum = 0, tail = 0;
    for (int k = std::max(0, n - m); k <= cutoff; ++k) {
        const int l = k + m - n;
        const long double amp = orthonormal_amplitude(p_matrix_element(k, l, m, n, beta), k, l);
        sum += amp * amp;
        if (k > cutoff - 10) tail += amp * amp;
    }
    out.value = double(sum);
    out.last_decade = double(tail);
    out.converged = out.last_decade <= tolerance;
    return out;
}

// The identity as summed in the report: both branches written out, divided by n! m!.
inline long double parseval_sum(int n, int m, double beta, int cutoff) {
    const long double ch = std::cosh(static_cast<long double>(beta) / 2);
    const long double sh = std::sinh(static_cast<long double>(beta) / 2);
    const long double th = sh / ch, x = -sh * sh;
    using detail::lfact;
    long double sum = 0;
    for (int k = std::max(0, n - m); k <= cutoff; ++k) {
        const int l = k + m - n;
        long double term;
        if (k <= n) {
            const long double f = detail::hyp2f1(k, l, n - k + 1, x);
            term = lfact(n) * lfact(m) * std::pow(std::pow(th, n - k) / lfact(n - k), 2) * f * f /
                   std::pow(ch, 2 * (k + l + 1)) / (lfact(k) * lfact(l));
        } else {
            const long double f = detail::hyp2f1(n, m, k - n + 1, x);
            term = lfact(k) * lfact(l) / (lfact(n) * lfact(m)) * std::pow(std::pow(sh * ch, k - n) / lfact(k - n), 2) *
                   f * f / std::pow(ch, 2 * (k + l + 1));
        }
        sum += term;
    }
    return sum;
}

// Partial double sum with k and l running independently up to the cutoff.
inline long double parseval_independent_double_sum(int n, int m, double beta, int cutoff) {
    const long double ch = std::cosh(static_cast<long double>(beta) / 2);
    const long double sh = std::sinh(static_cast<long double>(beta) / 2);
    const long double th = sh / ch, x = -sh * sh;
    using detail::lfact;
    long double sum = 0;
    for (int l = 0; l <= cutoff; ++l) {
        for (int k = 0; k <= std::min(m, cutoff); ++k) {
            const long double f = detail::hyp2f1(k, l, -k + m + 1, x);
            sum += lfact(n) * lfact(m) * std::pow(std::pow(th, m - k) / lfact(m - k), 2) * f * f /
                   std::pow(ch, 2 * (k + l + 1));
        }
        if (2 * m - n < 0) continue;
        for (int k = m + 1; k <= cutoff; ++k) {
            const long double f = detail::hyp2f1(m, 2 * m - n, k - m + 1, x);
            sum += lfact(k) * lfact(k) * lfact(l) * lfact(l) * lfact(n) / (lfact(m) * std::pow(lfact(2 * m - n), 2)) *
                   std::pow(std::pow(th, k - m) / lfact(k - m), 2) * f * f / std::pow(ch, 2 * (n + m + 1));
        }
    }
    return sum;
}

inline VerificationReport parseval_check(int n, int m, double beta, int cutoff, double tolerance = 1e-8) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "parseval";
    rep.parameters = {{"n", n}, {"m", m}, {"beta", beta}, {"cutoff", cutoff}, {"tolerance", tolerance}};
    const long double s = parseval_sum(n, m, beta, cutoff);
    const double err = double(std::abs(s - 1.0L));
    rep.residual = Residual::floating(err);
    rep.pass = err <= tolerance;
    const NormSum ns = boosted_basis_norm(n, m, beta, cutoff, tolerance);
    const long double independent = parseval_independent_double_sum(n, m, beta, cutoff);
    rep.details.push_back({{"sum", double(s)},
                           {"boosted_basis_norm", ns.value},
                           {"n_fact_m_fact", double(detail::dfact(n) * detail::dfact(m))},
                           {"last_decade", ns.last_decade},
                           {"independent_double_sum_partial", double(independent)}});
    if (!rep.pass) rep.notes.push_back("|sum - 1| = " + std::to_string(err));
    if (!ns.converged) rep.notes.push_back("last decade of terms exceeds tolerance");
    rep.notes.push_back(
        "summed with l = k + m - n, weight 1/(k! l!) and branch k <= n; the diverging double sum over independent "
        "k, l is reported as independent_double_sum_partial");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

// ------------------------------------------------------------ operator-level Gauss check

struct GaussOperatorCheck {
    double max_error = 0;
    double max_tail = 0;
    int vectors = 0;
};

// e^{beta S03} e_j through the oracle versus the three-factor T-triple products
// (beta on mode 1, -beta on mode 2) for all basis vectors of degree <= interior.
class BoostS03 {
public:
    explicit BoostS03(int n_max) : basis_(fock::make_basis({n_max})) {
        s03_ = NumericOperator(
            osc::hat(lie::build_generator(lie::GenLabel::S(0, 3), lie::RepVariant::Fundamental), basis_, "S03"));
        for (int mode = 1; mode <= 2; ++mode) {
            const Sl2Triple t = build_sl2_triple(basis_, mode);
            plus_[mode - 1] = NumericOperator(t.t_plus);
            zero_[mode - 1] = NumericOperator(t.t_zero);
            minus_[mode - 1] = NumericOperator(t.t_minus);
        }
    }

    const fock::Basis& basis() const { return *basis_; }
    const NumericOperator& s03() const { return s03_; }

    CVector oracle(const CVector& v, double beta) const { return expm_oracle(s03_, beta, v).v; }

    CVector factored(CVector v, double beta) const {
        for (int mode = 2; mode >= 1; --mode) {
            const GaussCoeffs g = gauss_coeffs(mode == 1 ? beta : -beta);
            v = expm_oracle(minus_[mode - 1], g.c, std::move(v), 1e-10, 1).v;
            v = expm_oracle(zero_[mode - 1], g.b, std::move(v), 1e-10, 1).v;
            v = expm_oracle(plus_[mode - 1], g.a, std::move(v), 1e-10, 1).v;
        }
        return v;
    }

    // compares on output components of degree <= compare_degree
    GaussOperatorCheck check(double beta, int interior, int compare_degree, unsigned threads = 1) const {
        const std::size_t ncols = basis_->prefix_up_to_degree(interior);
        std::vector<GaussOperatorCheck> part(ncols);
        parallel_for(ncols, threads, [&](std::size_t j) {
            CVector e(basis_->size());
            e[j] = 1.0;
            const CVector a = oracle(e, beta), b = factored(e, beta);
            auto& r = part[j];
            for (std::size_t i = 0; i < e.size(); ++i) {
                if ((*basis_)[i].degree() <= compare_degree)
                    r.max_error = std::max(r.max_error, std::abs(a[i] - b[i]));
                else
                    r.max_tail = std::max(r.max_tail, std::abs(a[i]));
            }
        });
        GaussOperatorCheck out;
        out.vectors = int(ncols);
        for (const auto& r : part) {
            out.max_error = std::max(out.max_error, r.max_error);
            out.max_tail = std::max(out.max_tail, r.max_tail);
        }
        return out;
    }

private:
    BasisPtr basis_;
    NumericOperator s03_;
    std::array<NumericOperator, 2> plus_, zero_, minus_;
};

// One mode, |0><0| input: three-factor product versus the oracle of beta (T+ + T-) on a
// single-mode truncation of degree n_max, compared on output degree <= 8.
inline double single_mode_gauss_error(int n_max, double beta) {
    const auto basis = fock::make_basis({n_max, std::nullopt, 1});
    const Sl2Triple t = build_sl2_triple(basis, 1);
    const GaussianRational one(1);
    const NumericOperator s(GradedOperator::combine(one, t.t_plus, one, t.t_minus, ""));
    const GaussCoeffs g = gauss_coeffs(beta);
    CVector v(basis->size());
    v[0] = 1.0;
    const CVector exact = expm_oracle(s, beta, v).v;
    v = expm_oracle(NumericOperator(t.t_minus), g.c, std::move(v), 1e-10, 1).v;
    v = expm_oracle(NumericOperator(t.t_zero), g.b, std::move(v), 1e-10, 1).v;
    v = expm_oracle(NumericOperator(t.t_plus), g.a, std::move(v), 1e-10, 1).v;
    double err = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if ((*basis)[i].degree() <= 8) err = std::max(err, std::abs(v[i] - exact[i]));
    return err;
}

// Boost direction: S01 = W^{-1} S03 W exactly with W = diag(V, V), V = [[1,1],[1,-1]], and
// W commutes with Gamma; V / sqrt(2) is unitary, so the oscillators a' = U a, b' = U b are
// canonical and a coherent label A maps to U A. The norm along 1 is then the 3-direction
// quadrature at rotated labels.
struct DirectionCheck {
    bool similarity_exact = false;
    bool commutes_with_gamma = false;
    double norm = 0;
};

inline DirectionCheck boost_direction_check(cd a1, cd a2, cd b1, cd b2, double beta, int nodes = 40) {
    using exact::ExactMatrix4;
    const GaussianRational one(1), mone(-1), half(exact::make_rational(1, 2));
    const ExactMatrix4 w{one, one, 0, 0, one, mone, 0, 0, 0, 0, one, one, 0, 0, one, mone};
    const ExactMatrix4 w_inv = half * w;
    DirectionCheck out;
    const auto s01 = lie::build_generator(lie::GenLabel::S(0, 1), lie::RepVariant::Fundamental);
    const auto s03 = lie::build_generator(lie::GenLabel::S(0, 3), lie::RepVariant::Fundamental);
    out.similarity_exact = (w_inv * s03 * w == s01) && (w_inv * w == ExactMatrix4::identity());
    const ExactMatrix4 g = lie::su22_metric();
    out.commutes_with_gamma = (g * w == w * g);
    const double r = 1.0 / std::sqrt(2.0);
    const cd ra1 = r * (a1 + a2), ra2 = r * (a1 - a2), rb1 = r * (b1 + b2), rb2 = r * (b1 - b2);
    out.norm = boost_norm_two_mode(ra1, ra2, rb1, rb2, beta, nodes);
    return out;
}

}  // namespace confosc::boost
