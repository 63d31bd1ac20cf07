#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confosc/exact.hpp"
#include "confosc/report.hpp"

namespace confosc::lie {

using exact::ExactMatrix4;
using exact::GaussianRational;

// so(2,4) metric, signature (+,-,-,-,-,+)
inline constexpr std::array<int, 6> eta_diag{1, -1, -1, -1, -1, 1};
inline constexpr int eta(int a, int b) { return a == b ? eta_diag[a] : 0; }

enum class RepVariant { Fundamental, Dual };

inline const char* variant_name(RepVariant v) { return v == RepVariant::Fundamental ? "fundamental" : "dual"; }

struct GenLabel {
    enum class Kind { S, P, K, D };
    Kind kind = Kind::S;
    int a = 0;
    int b = 0;

    static GenLabel S(int a, int b) {
        if (a < 0 || b > 5 || a >= b) throw std::invalid_argument("S(a,b) needs 0 <= a < b <= 5");
        return {Kind::S, a, b};
    }
    static GenLabel P(int mu) { return {Kind::P, check_mu(mu), 0}; }
    static GenLabel K(int mu) { return {Kind::K, check_mu(mu), 0}; }
    static GenLabel D() { return {Kind::D, 0, 0}; }

    auto operator<=>(const GenLabel&) const = default;

    std::string name() const {
        switch (kind) {
            case Kind::S: return "S" + std::to_string(a) + std::to_string(b);
            case Kind::P: return "P" + std::to_string(a);
            case Kind::K: return "K" + std::to_string(a);
            case Kind::D: return "D";
        }
        return "?";
    }

private:
    static int check_mu(int mu) {
        if (mu < 0 || mu > 3) throw std::invalid_argument("four-vector index out of range");
        return mu;
    }
};

// Linear combination of generator labels.
using Combination = std::map<GenLabel, GaussianRational>;

inline void accumulate(Combination& c, const GenLabel& l, const GaussianRational& z) {
    auto [it, fresh] = c.try_emplace(l, z);
    if (!fresh) it->second += z;
    if (it->second.is_zero()) c.erase(it);
}

// S(a,b) for any ordered pair, with antisymmetry resolved here.
inline Combination s_signed(int a, int b) {
    if (a == b) return {};
    if (a < b) return {{GenLabel::S(a, b), GaussianRational(1)}};
    return {{GenLabel::S(b, a), GaussianRational(-1)}};
}

// The 15 canonical S labels, ordered (0,1),(0,2),...,(4,5).
inline const std::vector<GenLabel>& s_labels() {
    static const std::vector<GenLabel> labels = [] {
        std::vector<GenLabel> v;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) v.push_back(GenLabel::S(a, b));
        return v;
    }();
    return labels;
}

inline int s_index(int a, int b) {
    // position of (a,b), a<b, in s_labels()
    int idx = 0;
    for (int r = 0; r < a; ++r) idx += 5 - r;
    return idx + (b - a - 1);
}

// Momenta, special conformal generators and dilatation in the S basis.
inline Combination to_s_basis(const GenLabel& l) {
    using K = GenLabel::Kind;
    switch (l.kind) {
        case K::S: return {{l, GaussianRational(1)}};
        case K::P: return {{GenLabel::S(l.a, 5), GaussianRational(1)}, {GenLabel::S(l.a, 4), GaussianRational(1)}};
        case K::K: return {{GenLabel::S(l.a, 5), GaussianRational(1)}, {GenLabel::S(l.a, 4), GaussianRational(-1)}};
        case K::D: return {{GenLabel::S(4, 5), GaussianRational(1)}};
    }
    return {};
}

inline Combination to_s_basis(const Combination& c) {
    Combination out;
    for (const auto& [l, z] : c)
        for (const auto& [s, w] : to_s_basis(l)) accumulate(out, s, z * w);
    return out;
}

// Rewrite S_mu4, S_mu5, S_45 in terms of P, K, D.
inline Combination to_conformal_basis(const Combination& c) {
    Combination out;
    const GaussianRational half = exact::make_rational(1, 2);
    for (const auto& [l, z] : to_s_basis(c)) {
        if (l.b < 4) {
            accumulate(out, l, z);
        } else if (l.a == 4) {
            accumulate(out, GenLabel::D(), z);
        } else if (l.b == 5) {
            accumulate(out, GenLabel::P(l.a), z * half);
            accumulate(out, GenLabel::K(l.a), z * half);
        } else {
            accumulate(out, GenLabel::P(l.a), z * half);
            accumulate(out, GenLabel::K(l.a), -(z * half));
        }
    }
    return out;
}

// [S_ab, S_cd] = eta_ac S_bd - eta_ad S_bc - eta_bc S_ad + eta_bd S_ac, extended bilinearly.
inline Combination structure_expand(const GenLabel& x, const GenLabel& y) {
    Combination out;
    for (const auto& [l1, z1] : to_s_basis(x))
        for (const auto& [l2, z2] : to_s_basis(y)) {
            const int a = l1.a, b = l1.b, c = l2.a, d = l2.b;
            const GaussianRational zz = z1 * z2;
            auto add = [&](int sign, int p, int q) {
                if (sign == 0) return;
                for (const auto& [l, w] : s_signed(p, q)) accumulate(out, l, zz * w * GaussianRational(sign));
            };
            add(eta(a, c), b, d);
            add(-eta(a, d), b, c);
            add(-eta(b, c), a, d);
            add(eta(b, d), a, c);
        }
    return out;
}

struct Gammas {
    std::array<ExactMatrix4, 4> upper;  // gamma^mu
    ExactMatrix4 upper5;                // gamma^5
    std::array<ExactMatrix4, 4> lower;  // gamma_mu
    ExactMatrix4 lower5;                // gamma_5
};

inline Gammas build_gamma() {
    using Z = GaussianRational;
    const Z o(0), l(1), m(-1), i = Z::i(), mi = -Z::i();
    const std::array<Z, 4> id{l, o, o, l}, zero{o, o, o, o};
    const std::array<std::array<Z, 4>, 3> sigma{{{o, l, l, o}, {o, mi, i, o}, {l, o, o, m}}};
    auto neg = [](std::array<Z, 4> s) {
        for (auto& z : s) z = -z;
        return s;
    };
    Gammas g;
    g.upper[0] = ExactMatrix4::blocks(id, zero, zero, neg(id));
    for (int k = 0; k < 3; ++k) g.upper[k + 1] = ExactMatrix4::blocks(zero, sigma[k], neg(sigma[k]), zero);
    g.upper5 = Z::i() * (g.upper[0] * g.upper[1] * g.upper[2] * g.upper[3]);
    g.lower[0] = g.upper[0];
    for (int k = 1; k < 4; ++k) g.lower[k] = -g.upper[k];
    g.lower5 = -g.upper5;
    return g;
}

namespace detail {

inline std::array<ExactMatrix4, 15> fundamental_s_matrices() {
    const Gammas g = build_gamma();
    const GaussianRational quarter = exact::make_rational(1, 4);
    const GaussianRational half = exact::make_rational(1, 2);
    const GaussianRational ihalf = GaussianRational(0, exact::make_rational(1, 2));
    std::array<ExactMatrix4, 15> s;
    for (const auto& l : s_labels()) {
        ExactMatrix4 m;
        if (l.b < 4) m = -(quarter * exact::commutator(g.lower[l.a], g.lower[l.b]));
        else if (l.a == 4) m = half * g.lower5;
        else if (l.b == 4) m = ihalf * (g.lower5 * g.lower[l.a]);
        else m = -(ihalf * g.lower[l.a]);
        s[s_index(l.a, l.b)] = m;
    }
    return s;
}

}  // namespace detail

// The 15 S_ab matrices for one variant, indexed by s_index.
using GeneratorTable = std::array<ExactMatrix4, 15>;

inline const GeneratorTable& generator_table(RepVariant v) {
    static const GeneratorTable fund = detail::fundamental_s_matrices();
    static const GeneratorTable dual = [] {
        GeneratorTable t;
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = -fund[k].transpose();
        return t;
    }();
    return v == RepVariant::Fundamental ? fund : dual;
}

inline ExactMatrix4 evaluate(const Combination& c, const GeneratorTable& table) {
    ExactMatrix4 m;
    for (const auto& [l, z] : to_s_basis(c)) m = m + z * table[s_index(l.a, l.b)];
    return m;
}

inline ExactMatrix4 build_generator(const GenLabel& label, RepVariant v) {
    return evaluate(Combination{{label, GaussianRational(1)}}, generator_table(v));
}

// Physical-convention generator, i times the mathematical one.
inline ExactMatrix4 to_physical(const ExactMatrix4& x) { return GaussianRational::i() * x; }

// One instance of the conformal-basis commutation relations, with its right-hand
// side written directly rather than derived from structure_expand.
struct ConformalRelation {
    std::string name;
    GenLabel x, y;
    Combination rhs;
};

inline std::vector<ConformalRelation> conformal_relations() {
    std::vector<ConformalRelation> rel;
    const GaussianRational one(1), two(2);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) rel.push_back({"[S_mn,D]=0", GenLabel::S(mu, nu), GenLabel::D(), {}});
    for (int mu = 0; mu < 4; ++mu) {
        rel.push_back({"[P_m,D]=P_m", GenLabel::P(mu), GenLabel::D(), {{GenLabel::P(mu), one}}});
        rel.push_back({"[K_m,D]=-K_m", GenLabel::K(mu), GenLabel::D(), {{GenLabel::K(mu), -one}}});
    }
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            rel.push_back({"[P_m,P_n]=0", GenLabel::P(mu), GenLabel::P(nu), {}});
            rel.push_back({"[K_m,K_n]=0", GenLabel::K(mu), GenLabel::K(nu), {}});
        }
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Combination r;
            for (const auto& [l, z] : s_signed(mu, nu)) accumulate(r, l, two * z);
            if (mu == nu) accumulate(r, GenLabel::D(), -(two * GaussianRational(eta(mu, nu))));
            rel.push_back({"[K_m,P_n]=2(S_mn-eta_mn D)", GenLabel::K(mu), GenLabel::P(nu), r});
        }
    return rel;
}

inline std::string pair_name(const GenLabel& x, const GenLabel& y) { return "[" + x.name() + "," + y.name() + "]"; }

inline VerificationReport verify_matrix_algebra(const GeneratorTable& table, const std::string& variant_tag) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "matrix_algebra";
    rep.parameters = {{"variant", variant_tag}};
    int pairs = 0;
    const auto& labels = s_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            ++pairs;
            const ExactMatrix4 lhs = exact::commutator(table[i], table[j]);
            const ExactMatrix4 diff = lhs - evaluate(structure_expand(labels[i], labels[j]), table);
            if (!diff.is_zero()) {
                rep.fail("mismatch at " + pair_name(labels[i], labels[j]));
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c)
                        if (!diff(r, c).is_zero()) rep.absorb(Residual::nonzero(diff(r, c)));
            }
        }
    int relations = 0;
    for (const auto& rel : conformal_relations()) {
        ++relations;
        const ExactMatrix4 lhs = exact::commutator(evaluate({{rel.x, 1}}, table), evaluate({{rel.y, 1}}, table));
        const ExactMatrix4 diff = lhs - evaluate(rel.rhs, table);
        if (!diff.is_zero()) {
            rep.fail("conformal relation " + rel.name + " fails at " + pair_name(rel.x, rel.y));
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    if (!diff(r, c).is_zero()) rep.absorb(Residual::nonzero(diff(r, c)));
        }
    }
    rep.details.push_back({{"pairs", pairs}, {"conformal_relation_instances", relations}});
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport verify_matrix_algebra(RepVariant v) {
    return verify_matrix_algebra(generator_table(v), variant_name(v));
}

// Gamma = diag(1,1,-1,-1)
inline ExactMatrix4 su22_metric() {
    ExactMatrix4 m = ExactMatrix4::identity();
    m(2, 2) = GaussianRational(-1);
    m(3, 3) = GaussianRational(-1);
    return m;
}

inline VerificationReport verify_gamma_condition(const std::vector<std::pair<std::string, ExactMatrix4>>& mats) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "gamma_condition";
    const ExactMatrix4 gam = su22_metric();
    bool diag_skew = true, offdiag_herm = true;
    for (const auto& [name, s] : mats) {
        const ExactMatrix4 r = s.dagger() * gam + gam * s;
        if (!r.is_zero()) {
            rep.fail("S^dagger Gamma + Gamma S != 0 for " + name);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (!r(i, j).is_zero()) rep.absorb(Residual::nonzero(r(i, j)));
        }
        const ExactMatrix4 d = s.dagger();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const bool same_block = (i < 2) == (j < 2);
                if (same_block && !(d(i, j) == -s(i, j))) diag_skew = false;
                if (!same_block && !(d(i, j) == s(i, j))) offdiag_herm = false;
            }
    }
    rep.details.push_back({{"generators", mats.size()},
                           {"diagonal_blocks_skew_hermitian", diag_skew},
                           {"off_diagonal_blocks_hermitian", offdiag_herm}});
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport verify_gamma_condition(RepVariant v) {
    std::vector<std::pair<std::string, ExactMatrix4>> mats;
    const auto& table = generator_table(v);
    for (const auto& l : s_labels()) mats.emplace_back(l.name(), table[s_index(l.a, l.b)]);
    auto rep = verify_gamma_condition(mats);
    rep.parameters = {{"variant", variant_name(v)}};
    return rep;
}

}  // namespace confosc::lie
