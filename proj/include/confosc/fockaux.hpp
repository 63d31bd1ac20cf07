#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "confosc/exact.hpp"

namespace confosc::fock {

using exact::GaussianRational;
using exact::Rational;

struct FockState {
    int n1 = 0;
    int n2 = 0;
    int operator[](int mode) const { return mode == 1 ? n1 : n2; }
    auto operator<=>(const FockState&) const = default;
};

// |n1,n2><m1,m2|, equivalently the normal-ordered monomial
// (a1^+)^n1 (a2^+)^n2 a1^m1 a2^m2.
struct AuxState {
    int n1 = 0, n2 = 0, m1 = 0, m2 = 0;

    int chirality() const { return (n1 + n2) - (m1 + m2); }
    int degree() const { return n1 + n2 + m1 + m2; }
    int n(int mode) const { return mode == 1 ? n1 : n2; }
    int m(int mode) const { return mode == 1 ? m1 : m2; }
    int& n(int mode) { return mode == 1 ? n1 : n2; }
    int& m(int mode) { return mode == 1 ? m1 : m2; }

    auto operator<=>(const AuxState&) const = default;

    std::uint64_t key() const {
        return (std::uint64_t(n1) << 48) | (std::uint64_t(n2) << 32) | (std::uint64_t(m1) << 16) | std::uint64_t(m2);
    }
    std::string str() const {
        return "(" + std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(m1) + "," +
               std::to_string(m2) + ")";
    }
};

inline int chirality(const AuxState& s) { return s.chirality(); }

struct TruncationSpec {
    int n_max = 0;
    std::optional<int> kappa;
    // keep only states whose other mode is empty
    std::optional<int> only_mode;
};

// Degree first, then descending lexicographic order in (n1,n2,m1,m2).
inline bool basis_order(const AuxState& a, const AuxState& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return b < a;
}

class Basis {
public:
    explicit Basis(TruncationSpec spec) : spec_(spec) {
        if (spec.n_max < 0) throw std::invalid_argument("n_max must be non-negative");
        const int N = spec.n_max;
        for (int n1 = 0; n1 <= N; ++n1)
            for (int n2 = 0; n1 + n2 <= N; ++n2)
                for (int m1 = 0; n1 + n2 + m1 <= N; ++m1)
                    for (int m2 = 0; n1 + n2 + m1 + m2 <= N; ++m2) {
                        AuxState s{n1, n2, m1, m2};
                        if (spec.kappa && s.chirality() != *spec.kappa) continue;
                        if (spec.only_mode) {
                            const int other = *spec.only_mode == 1 ? 2 : 1;
                            if (s.n(other) != 0 || s.m(other) != 0) continue;
                        }
                        states_.push_back(s);
                    }
        std::sort(states_.begin(), states_.end(), basis_order);
        index_.reserve(states_.size());
        for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k].key(), int(k));
    }

    const TruncationSpec& spec() const { return spec_; }
    int n_max() const { return spec_.n_max; }
    std::size_t size() const { return states_.size(); }
    const AuxState& operator[](std::size_t k) const { return states_[k]; }
    const std::vector<AuxState>& states() const { return states_; }

    // -1 when the state lies outside the truncation
    int index_of(const AuxState& s) const {
        if (s.n1 < 0 || s.n2 < 0 || s.m1 < 0 || s.m2 < 0) return -1;
        auto it = index_.find(s.key());
        return it == index_.end() ? -1 : it->second;
    }

    // States are sorted by degree, so those of degree <= d form a prefix.
    std::size_t prefix_up_to_degree(int d) const {
        return std::size_t(std::upper_bound(states_.begin(), states_.end(), d,
                                            [](int deg, const AuxState& s) { return deg < s.degree(); }) -
                           states_.begin());
    }

private:
    TruncationSpec spec_;
    std::vector<AuxState> states_;
    std::unordered_map<std::uint64_t, int> index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr make_basis(TruncationSpec spec) { return std::make_shared<const Basis>(spec); }

inline std::vector<AuxState> enumerate_basis(TruncationSpec spec) { return Basis(spec).states(); }

// ---------------------------------------------------------------- oscillators

struct Osc {
    // A: a_alpha, Ad: a^+alpha, B: b^alpha, Bd: b^+_alpha
    enum class Kind { A, Ad, B, Bd };
    Kind kind;
    int mode;  // 1 or 2

    static Osc a(int mode) { return {Kind::A, mode}; }
    static Osc ad(int mode) { return {Kind::Ad, mode}; }
    static Osc b(int mode) { return {Kind::B, mode}; }
    static Osc bd(int mode) { return {Kind::Bd, mode}; }

    int kappa_shift() const { return (kind == Kind::Ad || kind == Kind::Bd) ? 1 : -1; }
};

struct Term {
    AuxState state;
    long coeff;
};

// At most two terms per action.
struct OscImage {
    std::array<Term, 2> terms{};
    int count = 0;
    void push(const AuxState& s, long c) {
        if (c != 0) terms[count++] = {s, c};
    }
    const Term* begin() const { return terms.data(); }
    const Term* end() const { return terms.data() + count; }
};

// Left action a (left multiplication) and right action b (right multiplication)
// on normal-ordered monomials.
inline OscImage apply_osc(Osc o, const AuxState& s) {
    OscImage img;
    AuxState t = s;
    const int n = s.n(o.mode), m = s.m(o.mode);
    switch (o.kind) {
        case Osc::Kind::Ad:
            t.n(o.mode) = n + 1;
            img.push(t, 1);
            break;
        case Osc::Kind::A:
            t.m(o.mode) = m + 1;
            img.push(t, 1);
            if (n > 0) {
                AuxState u = s;
                u.n(o.mode) = n - 1;
                img.push(u, n);
            }
            break;
        case Osc::Kind::B:
            t.m(o.mode) = m + 1;
            img.push(t, 1);
            break;
        case Osc::Kind::Bd:
            t.n(o.mode) = n + 1;
            img.push(t, 1);
            if (m > 0) {
                AuxState u = s;
                u.m(o.mode) = m - 1;
                img.push(u, m);
            }
            break;
    }
    return img;
}

// ------------------------------------------------------------- sparse vectors

struct Entry {
    int index;
    GaussianRational value;
};

// Sorted by index, no explicit zeros.
using ExactVector = std::vector<Entry>;

class Accumulator {
public:
    explicit Accumulator(std::size_t dim) : slots_(dim), used_(dim, 0) {}

    void add(int idx, const GaussianRational& z) {
        if (!used_[idx]) {
            used_[idx] = 1;
            touched_.push_back(idx);
            slots_[idx] = z;
        } else {
            slots_[idx] += z;
        }
    }
    void add_product(int idx, const GaussianRational& a, const GaussianRational& b) {
        if (!used_[idx]) {
            used_[idx] = 1;
            touched_.push_back(idx);
            slots_[idx] = a * b;
        } else {
            slots_[idx].add_product(a, b);
        }
    }

    ExactVector take() {
        std::sort(touched_.begin(), touched_.end());
        ExactVector out;
        out.reserve(touched_.size());
        for (int idx : touched_) {
            if (!slots_[idx].is_zero()) out.push_back({idx, std::move(slots_[idx])});
            slots_[idx] = GaussianRational();
            used_[idx] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    std::vector<GaussianRational> slots_;
    std::vector<char> used_;
    std::vector<int> touched_;
};

inline ExactVector scaled(const ExactVector& v, const GaussianRational& s) {
    ExactVector out;
    if (s.is_zero()) return out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back({e.index, e.value * s});
    return out;
}

inline ExactVector axpy(const ExactVector& x, const GaussianRational& s, const ExactVector& y) {
    // x + s*y
    ExactVector out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].index < x[i].index) {
            GaussianRational z = y[j].value * s;
            if (!z.is_zero()) out.push_back({y[j].index, std::move(z)});
            ++j;
        } else {
            GaussianRational z = x[i].value + y[j].value * s;
            if (!z.is_zero()) out.push_back({x[i].index, std::move(z)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline ExactVector operator-(const ExactVector& x, const ExactVector& y) { return axpy(x, GaussianRational(-1), y); }
inline ExactVector operator+(const ExactVector& x, const ExactVector& y) { return axpy(x, GaussianRational(1), y); }

// ------------------------------------------------------------ graded operators

class GradedOperator {
public:
    GradedOperator() = default;
    GradedOperator(BasisPtr basis, std::string name, int degree_shift_bound, int kappa_shift)
        : basis_(std::move(basis)),
          name_(std::move(name)),
          degree_shift_bound_(degree_shift_bound),
          kappa_shift_(kappa_shift),
          domain_max_degree_(basis_->n_max()),
          columns_(basis_->size()) {}

    // Build column by column from an action on states; images outside the basis are dropped.
    template <class Action>
    static GradedOperator from_action(BasisPtr basis, std::string name, int degree_shift_bound, int kappa_shift,
                                      Action&& action, std::optional<int> domain_max_degree = std::nullopt) {
        GradedOperator op(basis, std::move(name), degree_shift_bound, kappa_shift);
        if (domain_max_degree) op.domain_max_degree_ = *domain_max_degree;
        const std::size_t ncols = basis->prefix_up_to_degree(op.domain_max_degree_);
        Accumulator acc(basis->size());
        for (std::size_t j = 0; j < ncols; ++j) {
            const AuxState& s = (*basis)[j];
            action(s, [&](const AuxState& t, const GaussianRational& z) {
                const int i = basis->index_of(t);
                if (i >= 0) acc.add(i, z);
            });
            op.columns_[j] = acc.take();
        }
        op.check_grading();
        return op;
    }

    const Basis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    int degree_shift_bound() const { return degree_shift_bound_; }
    int kappa_shift() const { return kappa_shift_; }
    // Columns of states with degree above this are not materialized.
    int domain_max_degree() const { return domain_max_degree_; }
    std::size_t dim() const { return columns_.size(); }

    const ExactVector& column(std::size_t j) const { return columns_[j]; }
    ExactVector& column(std::size_t j) { return columns_[j]; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    ExactVector apply(const ExactVector& v, Accumulator& acc) const {
        for (const auto& e : v) {
            if ((*basis_)[e.index].degree() > domain_max_degree_)
                throw std::logic_error("operator " + name_ + " applied outside its materialized domain");
            for (const auto& c : columns_[e.index]) acc.add_product(c.index, c.value, e.value);
        }
        return acc.take();
    }
    ExactVector apply(const ExactVector& v) const {
        Accumulator acc(dim());
        return apply(v, acc);
    }

    GaussianRational entry(std::size_t row, std::size_t col) const {
        for (const auto& e : columns_[col])
            if (std::size_t(e.index) == row) return e.value;
        return {};
    }

    // x*A + y*B on the common domain
    static GradedOperator combine(const GaussianRational& x, const GradedOperator& a, const GaussianRational& y,
                                  const GradedOperator& b, std::string name) {
        if (a.basis_ != b.basis_) throw std::invalid_argument("operators live on different bases");
        GradedOperator out(a.basis_, std::move(name), std::max(a.degree_shift_bound_, b.degree_shift_bound_),
                           a.kappa_shift_);
        out.domain_max_degree_ = std::min(a.domain_max_degree_, b.domain_max_degree_);
        for (std::size_t j = 0; j < out.dim(); ++j) out.columns_[j] = axpy(scaled(a.columns_[j], x), y, b.columns_[j]);
        return out;
    }

    // Truncated product A*B; only exact on states whose images stay inside the truncation.
    static GradedOperator compose(const GradedOperator& a, const GradedOperator& b, std::string name) {
        if (a.basis_ != b.basis_) throw std::invalid_argument("operators live on different bases");
        GradedOperator out(a.basis_, std::move(name), a.degree_shift_bound_ + b.degree_shift_bound_,
                           a.kappa_shift_ + b.kappa_shift_);
        out.domain_max_degree_ = std::min(b.domain_max_degree_, a.domain_max_degree_ - b.degree_shift_bound_);
        Accumulator acc(out.dim());
        const std::size_t ncols = out.basis_->prefix_up_to_degree(out.domain_max_degree_);
        for (std::size_t j = 0; j < ncols; ++j) out.columns_[j] = a.apply(b.columns_[j], acc);
        return out;
    }

    // Throws if any stored entry violates the declared kappa shift or degree bound.
    void check_grading() const {
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& e : columns_[j]) {
                const AuxState& in = (*basis_)[j];
                const AuxState& out = (*basis_)[e.index];
                if (out.chirality() - in.chirality() != kappa_shift_)
                    throw std::logic_error(name_ + ": entry violates kappa shift at " + in.str());
                if (std::abs(out.degree() - in.degree()) > degree_shift_bound_)
                    throw std::logic_error(name_ + ": entry violates degree bound at " + in.str());
            }
    }

private:
    BasisPtr basis_;
    std::string name_;
    int degree_shift_bound_ = 0;
    int kappa_shift_ = 0;
    int domain_max_degree_ = 0;
    std::vector<ExactVector> columns_;
};

// Identity on the basis.
inline GradedOperator identity_operator(const BasisPtr& basis) {
    return GradedOperator::from_action(basis, "id", 0, 0,
                                       [](const AuxState& s, auto&& emit) { emit(s, GaussianRational(1)); });
}

// Apply right oscillator then left oscillator, with no truncation in between.
template <class Emit>
void apply_pair(Osc left, Osc right, const AuxState& s, const GaussianRational& coeff, Emit&& emit) {
    for (const Term& t1 : apply_osc(right, s))
        for (const Term& t2 : apply_osc(left, t1.state)) emit(t2.state, coeff * GaussianRational(t1.coeff * t2.coeff));
}

// ------------------------------------------------------------ fuzzy functions

using FuzzyFunction = std::map<AuxState, GaussianRational>;

inline ExactVector to_vector(const FuzzyFunction& f, const Basis& basis) {
    Accumulator acc(basis.size());
    for (const auto& [s, z] : f) {
        const int i = basis.index_of(s);
        if (i >= 0) acc.add(i, z);
    }
    return acc.take();
}

inline FuzzyFunction to_fuzzy(const ExactVector& v, const Basis& basis) {
    FuzzyFunction f;
    for (const auto& e : v) f.emplace(basis[e.index], e.value);
    return f;
}

struct MonomialAction {
    Rational factor_squared;  // square of the real, non-negative amplitude
    FockState target;
};

// (a^+)^n a^m |mu>, per mode, with H_F-orthonormal Fock states.
inline std::optional<MonomialAction> monomial_on_fock(const AuxState& mono, const FockState& mu) {
    MonomialAction out{Rational(1), {}};
    for (int mode = 1; mode <= 2; ++mode) {
        const int n = mono.n(mode), m = mono.m(mode), k = mu[mode];
        if (k < m) return std::nullopt;
        const int t = k - m + n;
        const exact::Integer num = exact::factorial(t) * exact::factorial(k);
        const exact::Integer den = exact::factorial(k - m) * exact::factorial(k - m);
        Rational ratio(num, den);
        ratio.canonicalize();
        out.factor_squared *= ratio;
        (mode == 1 ? out.target.n1 : out.target.n2) = t;
    }
    out.factor_squared.canonicalize();
    return out;
}

enum class HsWeight {
    InverseFactorial,  // sum_k 1/(k1! k2!) <k|Psi^+ Phi|k>
    Unit               // plain trace
};

struct HsResult {
    std::complex<double> value;
    // contribution of the outermost shell of the trace
    double tail_estimate = 0.0;
};

// Truncated trace over |k1,k2> with k1,k2 <= cutoff.
inline HsResult hs_inner_product(const FuzzyFunction& psi, const FuzzyFunction& phi, int cutoff, HsWeight weight) {
    using C = std::complex<double>;
    HsResult res{};
    for (int k1 = 0; k1 <= cutoff; ++k1)
        for (int k2 = 0; k2 <= cutoff; ++k2) {
            const FockState k{k1, k2};
            auto amplitudes = [&](const FuzzyFunction& f) {
                std::map<FockState, C> amp;
                for (const auto& [mono, z] : f)
                    if (auto act = monomial_on_fock(mono, k))
                        amp[act->target] += z.to_complex() * std::sqrt(act->factor_squared.get_d());
                return amp;
            };
            const auto a = amplitudes(psi);
            const auto b = amplitudes(phi);
            C term = 0;
            for (const auto& [t, x] : a)
                if (auto it = b.find(t); it != b.end()) term += std::conj(x) * it->second;
            if (weight == HsWeight::InverseFactorial)
                term /= std::tgamma(k1 + 1.0) * std::tgamma(k2 + 1.0);
            res.value += term;
            if (k1 == cutoff || k2 == cutoff) res.tail_estimate += std::abs(term);
        }
    return res;
}

// ------------------------------------------------------------ operator dumps

inline void write_dump(std::ostream& os, const GradedOperator& op) {
    const auto& spec = op.basis().spec();
    os << "# n_max " << spec.n_max << "\n";
    os << "# kappa " << (spec.kappa ? std::to_string(*spec.kappa) : std::string("all")) << "\n";
    os << "# operator " << op.name() << "\n";
    os << "# order degree-then-descending-lex\n";
    for (std::size_t j = 0; j < op.dim(); ++j)
        for (const auto& e : op.column(j))
            os << j << ' ' << e.index << ' ' << e.value.re().get_num() << ' ' << e.value.re().get_den() << ' '
               << e.value.im().get_num() << ' ' << e.value.im().get_den() << "\n";
}

struct DumpEntry {
    int in;
    int out;
    GaussianRational value;
};

struct OperatorDump {
    int n_max = 0;
    std::optional<int> kappa;
    std::string name;
    std::vector<DumpEntry> entries;
};

inline OperatorDump read_dump(std::istream& is) {
    OperatorDump d;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, key, val;
            ls >> hash >> key >> val;
            if (key == "n_max") d.n_max = std::stoi(val);
            else if (key == "kappa" && val != "all") d.kappa = std::stoi(val);
            else if (key == "operator") d.name = val;
            continue;
        }
        int in, out;
        std::string rn, rd, in_, id;
        if (!(ls >> in >> out >> rn >> rd >> in_ >> id)) throw std::runtime_error("malformed dump line: " + line);
        Rational re{exact::Integer(rn), exact::Integer(rd)}, im{exact::Integer(in_), exact::Integer(id)};
        d.entries.push_back({in, out, GaussianRational(re, im)});
    }
    return d;
}

}  // namespace confosc::fock
