#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "confosc/boostcs.hpp"
#include "confosc/exact.hpp"
#include "confosc/liealg4.hpp"
#include "confosc/massive.hpp"
#include "confosc/oscrep.hpp"
#include "confosc/report.hpp"

namespace confosc::suites {

using exact::Rational;
using lie::RepVariant;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Keys of the flat config file, one "key = value" per line, '#' starts a comment:
//   n_max          overrides every suite's truncation (default: per suite, see below)
//   beta           comma list, default 0.25,0.5,1,2
//   kappa          comma list, default 0..6
//   kappa_prime    comma list, default 0,1,2
//   epsilon        rational P/Q, default 3/7
//   tolerance      default 1e-8
//   cutoff         default 40
//   out            output directory, default confosc-out
//   threads        default 1
//   epsilon6_sign  sign of epsilon_012345, default -1
struct RunConfig {
    std::optional<int> n_max;
    std::vector<double> betas{0.25, 0.5, 1.0, 2.0};
    std::vector<int> kappas{0, 1, 2, 3, 4, 5, 6};
    std::vector<int> kappa_primes{0, 1, 2};
    Rational epsilon = exact::make_rational(3, 7);
    double tolerance = 1e-8;
    int cutoff = 40;
    std::string out = "confosc-out";
    unsigned threads = 1;
    int epsilon6_sign = osc::default_epsilon6_sign;

    int n_or(int fallback) const { return n_max.value_or(fallback); }
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::istringstream is(item);
        T x;
        if (!(is >> x) || !is.eof()) throw ConfigError("bad list entry for " + key + ": " + item);
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    try {
        q = Rational(trim(text));
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad rational: " + text);
    }
    if (q.get_den() == 0) throw ConfigError("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline void set_key(RunConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    auto as_int = [&] {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(value, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad integer for " + key + ": " + value);
        }
        if (used != value.size()) throw ConfigError("bad integer for " + key + ": " + value);
        return v;
    };
    if (key == "n_max") {
        cfg.n_max = as_int();
        if (*cfg.n_max < 6) throw ConfigError("n_max must be >= 6");
    } else if (key == "beta") {
        cfg.betas = parse_list<double>(key, value);
    } else if (key == "kappa") {
        cfg.kappas = parse_list<int>(key, value);
    } else if (key == "kappa_prime") {
        cfg.kappa_primes = parse_list<int>(key, value);
    } else if (key == "epsilon") {
        cfg.epsilon = parse_rational(value);
        if (sgn(cfg.epsilon) <= 0) throw ConfigError("epsilon must be positive");
    } else if (key == "tolerance") {
        try {
            cfg.tolerance = std::stod(value);
        } catch (const std::exception&) {
            throw ConfigError("bad tolerance: " + value);
        }
        if (!(cfg.tolerance > 0)) throw ConfigError("tolerance must be positive");
    } else if (key == "cutoff") {
        cfg.cutoff = as_int();
        if (cfg.cutoff < 1) throw ConfigError("cutoff must be positive");
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "threads") {
        const int t = as_int();
        if (t < 1) throw ConfigError("threads must be >= 1");
        cfg.threads = unsigned(t);
    } else if (key == "epsilon6_sign") {
        cfg.epsilon6_sign = as_int();
        if (cfg.epsilon6_sign != 1 && cfg.epsilon6_sign != -1) throw ConfigError("epsilon6_sign must be +1 or -1");
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

inline void read_config(RunConfig& cfg, std::istream& is) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set_key(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    read_config(cfg, f);
    return cfg;
}

// ------------------------------------------------------------ results

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::string s;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
            s += "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return s;
    }
};

struct SuiteResult {
    std::vector<VerificationReport> reports;
    std::vector<Table> tables;

    bool pass() const {
        return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    }
    void add(VerificationReport r) { reports.push_back(std::move(r)); }
    void merge(SuiteResult other) {
        for (auto& r : other.reports) reports.push_back(std::move(r));
        for (auto& t : other.tables) tables.push_back(std::move(t));
    }
};

inline std::vector<double> betas_up_to(const std::vector<double>& betas, double limit) {
    std::vector<double> out;
    for (double b : betas)
        if (std::abs(b) <= limit) out.push_back(b);
    return out;
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ------------------------------------------------------------ matrix level

inline SuiteResult matrix_algebra() {
    SuiteResult s;
    s.add(lie::verify_matrix_algebra(RepVariant::Fundamental));
    s.add(lie::verify_matrix_algebra(RepVariant::Dual));
    s.add(lie::verify_gamma_condition(RepVariant::Fundamental));
    return s;
}

// ------------------------------------------------------------ oscillator level

inline SuiteResult osc_algebra(int n_max, unsigned threads) {
    SuiteResult s;
    s.add(osc::verify_osc_algebra(RepVariant::Fundamental, {n_max}, threads));
    s.add(osc::verify_osc_algebra(RepVariant::Dual, {n_max}, threads));
    s.add(osc::nc_coordinate_check(exact::make_rational(1, 3), {std::min(n_max, 8)}, threads));
    return s;
}

inline SuiteResult casimir_table(int n_max, const std::vector<int>& kappas, unsigned threads, int eps6_sign) {
    SuiteResult s;
    for (RepVariant v : {RepVariant::Fundamental, RepVariant::Dual})
        s.add(osc::verify_casimirs(v, {n_max}, threads, eps6_sign));
    Table t{"casimirs", {"kappa", "lambda1", "lambda2", "lambda3", "lambda4", "variant"}, {}};
    for (RepVariant v : {RepVariant::Fundamental, RepVariant::Dual})
        for (const auto& row : osc::casimir_table(kappas, v))
            t.rows.push_back({std::to_string(row.kappa), row.lambda1.get_str(), row.lambda2.get_str(), row.lambda3.str(),
                              row.lambda4.get_str(), lie::variant_name(v)});
    s.tables.push_back(std::move(t));
    return s;
}

inline VerificationReport s05_spectrum_report(int n_max, int max_kappa) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "s05_spectrum";
    const auto sp = osc::s05_spectrum({n_max});
    if (!sp.triangular) rep.fail("i S05 is not triangular in the degree order");
    if (!sp.diagonal_matches_formula) rep.fail("diagonal differs from 1 + deg/2");
    nlohmann::json minima = nlohmann::json::array();
    for (int k = 0; k <= max_kappa; ++k) {
        const auto it = sp.lowest_by_kappa.find(k);
        const Rational d = osc::classify_doubleton(k).d;
        if (it == sp.lowest_by_kappa.end()) {
            rep.fail("no states with kappa = " + std::to_string(k));
            continue;
        }
        if (it->second != d) {
            rep.fail("lowest value at kappa = " + std::to_string(k) + " is " + it->second.get_str());
            rep.absorb(Residual::nonzero(exact::GaussianRational(it->second - d)));
        }
        minima.push_back({{"kappa", k}, {"lowest", it->second.get_str()}, {"d", d.get_str()}});
    }
    rep.parameters = {{"n_max", n_max}, {"max_kappa", max_kappa}};
    rep.details.push_back({{"lowest_by_kappa", minima}, {"distinct_values", sp.multiplicities.size()}});
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport product_spectrum_report(int n_left, int n_right) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "product_s05_spectrum";
    const auto sp = massive::product_s05_spectrum({n_left}, {n_right});
    if (!sp.triangular) rep.fail("a factor of i S05 is not triangular");
    if (!sp.left_diagonal_match) rep.fail("left diagonal differs from 1 + deg/2");
    if (!sp.dual_diagonal_match) rep.fail("dual diagonal differs from -(1 + deg/2)");
    nlohmann::json sectors = nlohmann::json::array();
    for (const auto& [key, low] : sp.lowest_by_sector) {
        const auto [k, kp] = key;
        if (k < 0 || kp < 0 || k > n_left - 2 || kp > n_right - 2) continue;
        const Rational d = massive::classify_massive(k, kp).d;
        if (low != d) {
            rep.fail("sector (" + std::to_string(k) + "," + std::to_string(kp) + ") lowest " + low.get_str());
            rep.absorb(Residual::nonzero(exact::GaussianRational(low - d)));
        }
        sectors.push_back({{"kappa", k},
                           {"kappa_prime", kp},
                           {"lowest", low.get_str()},
                           {"literal_sum_lowest", sp.literal_lowest_by_sector.at(key).get_str()},
                           {"d", d.get_str()}});
    }
    rep.parameters = {{"n_max_left", n_left}, {"n_max_right", n_right}};
    rep.details.push_back({{"sectors", sectors}});
    rep.notes.push_back("the dual generator S'05 = -S05 gives i S~05 = -(1 + deg/2); the dual energy is -i S~05");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline SuiteResult spectrum(int n_max, int n_product) {
    SuiteResult s;
    const int max_kappa = std::min(8, n_max);
    s.add(s05_spectrum_report(n_max, max_kappa));
    s.add(product_spectrum_report(n_product, n_product));
    const auto sp = osc::s05_spectrum({n_max});
    Table values{"s05_spectrum", {"value", "multiplicity"}, {}};
    for (const auto& [v, m] : sp.multiplicities) values.rows.push_back({v.get_str(), std::to_string(m)});
    Table doubleton{"doubleton", {"kappa", "d", "j1", "j2", "class"}, {}};
    for (int k = 0; k <= max_kappa; ++k) {
        const auto c = osc::classify_doubleton(k);
        doubleton.rows.push_back({std::to_string(k), c.d.get_str(), c.j1.get_str(), c.j2.get_str(), c.tag});
    }
    s.tables.push_back(std::move(values));
    s.tables.push_back(std::move(doubleton));
    return s;
}

// ------------------------------------------------------------ boosts

inline VerificationReport sl2_report(int n_max) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "sl2_structure";
    const auto basis = fock::make_basis({n_max});
    for (int mode = 1; mode <= 2; ++mode) {
        auto r = boost::verify_sl2_triple(boost::build_sl2_triple(basis, mode));
        if (!r.pass)
            for (const auto& n : r.notes) rep.fail("mode " + std::to_string(mode) + ": " + n);
        rep.absorb(r.residual);
    }
    auto s03 = boost::verify_s03_from_triples(n_max);
    if (!s03.pass)
        for (const auto& n : s03.notes) rep.fail(n);
    rep.absorb(s03.residual);
    rep.parameters = {{"n_max", n_max}};
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport gauss_2x2_report(const std::vector<double>& betas) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "gauss_2x2";
    const double tol = 1e-14;
    for (double b : betas) {
        const double r = boost::gauss_2x2_residual(b);
        rep.absorb(Residual::floating(r));
        if (!(r <= tol)) rep.fail("beta = " + fmt(b) + ": residual " + fmt(r));
        const auto g = boost::gauss_coeffs(b);
        rep.details.push_back({{"beta", b}, {"a", g.a}, {"b", g.b}, {"c", g.c}, {"residual", r}});
    }
    rep.parameters = {{"tolerance", tol}};
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

// Three-factor product per mode against the oracle of beta S03, input vectors of degree <= interior,
// compared on output degree <= compare_degree.
inline std::vector<VerificationReport> gauss_operator_reports(int n_max, const std::vector<double>& betas,
                                                              double tolerance, unsigned threads, int interior = 2,
                                                              int compare_degree = 8) {
    std::vector<VerificationReport> out;
    const boost::BoostS03 bs(n_max);
    for (double b : betas) {
        Stopwatch clock;
        VerificationReport rep;
        rep.check_name = "gauss_decomposition";
        const auto c = bs.check(b, interior, compare_degree, threads);
        rep.absorb(Residual::floating(c.max_error));
        if (!(c.max_error <= tolerance)) rep.fail("max error " + fmt(c.max_error) + " exceeds " + fmt(tolerance));
        rep.parameters = {{"beta", b},
                          {"n_max", n_max},
                          {"interior_max_degree", interior},
                          {"compare_max_degree", compare_degree},
                          {"tolerance", tolerance}};
        nlohmann::json single = nlohmann::json::array();
        for (int n : {n_max, 2 * n_max, 3 * n_max})
            single.push_back({{"n_max", n},
                              {"plus_beta", boost::single_mode_gauss_error(n, b)},
                              {"minus_beta", boost::single_mode_gauss_error(n, -b)}});
        rep.details.push_back({{"vectors", c.vectors}, {"oracle_tail_max", c.max_tail}, {"single_mode_vacuum", single}});
        if (!rep.pass)
            rep.notes.push_back("the single-mode vacuum errors show how the factorized product converges with n_max");
        rep.runtime_ms = clock.elapsed_ms();
        out.push_back(std::move(rep));
    }
    return out;
}

struct Label {
    boost::cd a1, a2, b1, b2;
};

// Deterministic labels in the closed unit disk.
inline std::vector<Label> coherent_labels(int count, unsigned seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&] { return std::polar(std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng)); };
    std::vector<Label> out;
    for (int i = 0; i < count; ++i) {
        Label l;
        l.a1 = draw();
        l.a2 = draw();
        l.b1 = draw();
        l.b2 = draw();
        out.push_back(l);
    }
    return out;
}

inline VerificationReport coherent_norm_report(const std::vector<double>& betas, double tolerance, int labels = 10) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "coherent_boost_norm";
    const auto ls = coherent_labels(labels);
    nlohmann::json rows = nlohmann::json::array();
    for (double b : betas)
        for (const auto& l : ls) {
            const double n = boost::boost_norm_two_mode(l.a1, l.a2, l.b1, l.b2, b);
            const double err = std::abs(n - 1.0);
            rep.absorb(Residual::floating(err));
            if (!(err <= tolerance)) rep.fail("beta = " + fmt(b) + ": norm " + fmt(n));
            rows.push_back({{"beta", b}, {"norm_minus_one", n - 1.0}});
        }
    const auto dc = boost::boost_direction_check(ls[0].a1, ls[0].a2, ls[0].b1, ls[0].b2, betas.empty() ? 0.5 : betas.back());
    if (!dc.similarity_exact) rep.fail("S01 is not similar to S03 through W");
    if (!dc.commutes_with_gamma) rep.fail("W does not commute with Gamma");
    if (!(std::abs(dc.norm - 1) <= tolerance)) rep.fail("direction-1 norm " + fmt(dc.norm));
    rep.parameters = {{"labels", labels}, {"betas", betas}, {"tolerance", tolerance}, {"nodes", 40}};
    rep.details.push_back({{"samples", rows}, {"direction_1_norm", dc.norm}});
    rep.notes.push_back("the boost is exp(beta(calT- + calT+)) on mode 1 and its -beta counterpart on mode 2");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport basis_norm_report(const std::vector<double>& betas, int cutoff, double tolerance,
                                            int max_label = 3) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "boosted_basis_norm";
    for (double b : betas)
        for (int n = 0; n <= max_label; ++n)
            for (int m = 0; m <= max_label; ++m) {
                const auto ns = boost::boosted_basis_norm(n, m, b, cutoff, tolerance);
                const double target = std::tgamma(n + 1.0) * std::tgamma(m + 1.0);
                const double err = std::abs(ns.value - target);
                rep.absorb(Residual::floating(err));
                if (!(err <= tolerance))
                    rep.fail("(n,m) = (" + std::to_string(n) + "," + std::to_string(m) + "), beta = " + fmt(b));
                if (!ns.converged) rep.notes.push_back("slow tail at n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
    rep.parameters = {{"betas", betas}, {"cutoff", cutoff}, {"tolerance", tolerance}, {"max_label", max_label}};
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport p_formula_report(const std::vector<double>& betas, double tolerance = 1e-9, int max_index = 4) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "p_matrix_element";
    const boost::POracle oracle(44);
    double worst_nu = 0, worst_swapped = 0;
    int swapped_undefined = 0, compared = 0;
    for (double b : betas)
        for (int n = 0; n <= max_index; ++n)
            for (int m = 0; m <= max_index; ++m) {
                const auto v = oracle.boosted(n, m, b);
                for (int k = 0; k <= max_index; ++k) {
                    const int l = k + m - n;
                    if (l < 0 || l > max_index) continue;
                    ++compared;
                    const double o = oracle.element(v, k, l);
                    const double err = std::abs(o - boost::p_matrix_element(k, l, m, n, b));
                    rep.absorb(Residual::floating(err));
                    if (!(err <= tolerance))
                        rep.fail("(k,l,m,n) = (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                 std::to_string(m) + "," + std::to_string(n) + "), beta = " + fmt(b));
                    worst_nu = std::max(worst_nu, std::abs(o - boost::p_matrix_element_nu_sum(k, l, m, n, b)));
                    const double pr = boost::p_matrix_element_swapped(k, l, m, n, b);
                    if (std::isfinite(pr)) worst_swapped = std::max(worst_swapped, std::abs(o - pr));
                    else ++swapped_undefined;
                }
            }
    rep.parameters = {{"betas", betas}, {"tolerance", tolerance}, {"max_index", max_index}, {"oracle_n_max", 44}};
    rep.details.push_back({{"elements", compared},
                           {"nu_sum_max_error", worst_nu},
                           {"swapped_max_error", worst_swapped},
                           {"swapped_undefined", swapped_undefined}});
    rep.notes.push_back("closed form with the roles of n and m exchanged relative to the swapped branch form");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline VerificationReport coherent_element_report(double tolerance) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "coherent_matrix_element";
    using boost::cd;
    const boost::POracle oracle(30);
    const auto v = boost::coherent_vector(oracle.basis(), cd(1), cd(0, 1));
    double worst = 0;
    for (double b : {0.5, 1.0}) {
        const auto w = boost::expm_oracle(oracle.generator(), b, v);
        for (const auto& [c, d] : {std::pair{cd(0.5), cd(-0.5)}, std::pair{cd(0, 0.3), cd(0.2, 0.1)}}) {
            const double err = std::abs(boost::cs_sandwich(oracle.basis(), w.v, c, d) -
                                        boost::phi_matrix_element(cd(1), cd(0, 1), c, d, b));
            worst = std::max(worst, err);
        }
    }
    const double kernel = std::abs(boost::n_kernel_quadrature(0.3, cd(0, 0.7), -0.2, 0.1, 0.8) -
                                   boost::n_kernel(0.3, cd(0, 0.7), -0.2, 0.1));
    rep.absorb(Residual::floating(std::max(worst, kernel)));
    if (!(worst <= tolerance)) rep.fail("matrix element differs from the oracle by " + fmt(worst));
    if (!(kernel <= tolerance)) rep.fail("kernel quadrature differs by " + fmt(kernel));
    rep.parameters = {{"tolerance", tolerance}};
    rep.details.push_back({{"matrix_element_error", worst}, {"kernel_error", kernel}});
    rep.notes.push_back("the exponent carries +tanh(beta/2)(A conj(B) - conj(C) D)");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline SuiteResult boost_check(int n_max, const std::vector<double>& betas, double tolerance, int cutoff,
                               unsigned threads) {
    SuiteResult s;
    const auto small = betas_up_to(betas, 1.0);
    s.add(sl2_report(8));
    s.add(gauss_2x2_report(betas));
    for (auto& r : gauss_operator_reports(n_max, betas, 1e-10, threads)) s.add(std::move(r));
    s.add(coherent_element_report(tolerance));
    s.add(coherent_norm_report(small, tolerance));
    s.add(basis_norm_report(small, cutoff, tolerance));
    s.add(p_formula_report(small, std::min(tolerance, 1e-9)));
    return s;
}

inline SuiteResult parseval(const std::vector<double>& betas, int cutoff, double tolerance) {
    SuiteResult s;
    for (double b : betas_up_to(betas, 1.0))
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) s.add(boost::parseval_check(n, m, b, cutoff, tolerance));
    return s;
}

// ------------------------------------------------------------ massless fields

inline VerificationReport fock_closed_form_report(const Rational& epsilon, int kappa_max = 6, int n_max = 6) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "fock_closed_form";
    using massive::EigenKind;
    int compared = 0;
    for (EigenKind kind : {EigenKind::BesselSeries, EigenKind::PEigen})
        for (int k = kind == EigenKind::BesselSeries ? 2 : 0; k <= kappa_max; ++k) {
            const auto f = massive::build_eigenfunction(k, epsilon, 1, n_max + 1, kind);
            for (int n = 0; n <= n_max; ++n) {
                const auto series = massive::eigenfunction_on_fock_series(f, n);
                const auto closed = massive::eigenfunction_on_fock(k, epsilon, n, 1, kind);
                ++compared;
                if (!closed || !(closed->coefficient == series.coefficient) ||
                    closed->norm_squared != series.norm_squared || !(closed->target == series.target)) {
                    rep.fail(std::string(massive::kind_name(kind)) + " kappa=" + std::to_string(k) +
                             " n=" + std::to_string(n));
                    if (closed) rep.absorb(Residual::nonzero(closed->coefficient - series.coefficient));
                }
            }
        }
    rep.parameters = {{"epsilon", epsilon.get_str()}, {"kappa_max", kappa_max}, {"n_max", n_max}};
    rep.details.push_back({{"compared", compared}});
    rep.notes.push_back("bessel-series closed form 2^{2-k}/(k-2)! 1F1(-n; k-1; -2 i eps), k >= 2");
    rep.notes.push_back("p-eigen closed form 1/k! 1F1(-n; k+1; 2 i eps)");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline SuiteResult massless_field(int n_invariants, int n_eigen, const std::vector<int>& kappas,
                                  const Rational& epsilon) {
    SuiteResult s;
    s.add(osc::verify_massless_invariants({n_invariants}, RepVariant::Fundamental));
    s.add(osc::verify_massless_invariants({n_invariants}, RepVariant::Dual));
    s.add(osc::verify_w0_formula({n_invariants}, osc::W0Formula::ShiftedKappa));
    s.add(osc::verify_w0_formula({n_invariants}, osc::W0Formula::Computed));
    using massive::EigenKind;
    for (int k : kappas)
        for (EigenKind kind : {EigenKind::BesselSeries, EigenKind::PEigen})
            s.add(massive::verify_bessel_ode(massive::build_eigenfunction(k, epsilon, 1, 12, kind)));
    for (int k : kappas)
        for (int mode = 1; mode <= 2; ++mode) {
            const int terms = std::max(1, (n_eigen - k) / 2 + 1);
            auto rep = massive::verify_p_eigenvalue(
                massive::build_eigenfunction(k, epsilon, mode, terms, EigenKind::PEigen), {n_eigen});
            const bool bessel = massive::verify_p_eigenvalue(
                                   massive::build_eigenfunction(k, epsilon, mode, terms, EigenKind::BesselSeries),
                                   {n_eigen})
                                   .pass;
            rep.details.push_back({{"bessel_series_is_eigenfunction", bessel}});
            s.add(std::move(rep));
        }
    s.add(fock_closed_form_report(epsilon));
    return s;
}

// ------------------------------------------------------------ massive fields

inline VerificationReport classification_report(int kappa_max, int n_product) {
    Stopwatch clock;
    VerificationReport rep;
    rep.check_name = "massive_classification";
    const auto sp = massive::product_s05_spectrum({n_product}, {n_product});
    for (int k = 0; k <= kappa_max; ++k)
        for (int kp = 0; kp <= kappa_max; ++kp) {
            const auto c = massive::classify_massive(k, kp);
            const Rational s = exact::make_rational(k + kp, 2), d = Rational(2) + s;
            if (c.d != d || c.s != s || c.j1 + c.j2 != c.s) rep.fail("formula mismatch at " + std::to_string(k) + "," + std::to_string(kp));
            const auto it = sp.lowest_by_sector.find({k, kp});
            if (it == sp.lowest_by_sector.end()) rep.fail("sector missing from the product spectrum");
            else if (it->second != c.d) {
                rep.fail("product spectrum lowest " + it->second.get_str() + " at (" + std::to_string(k) + "," +
                         std::to_string(kp) + ")");
                rep.absorb(Residual::nonzero(exact::GaussianRational(it->second - c.d)));
            }
        }
    const auto ar = massive::reconcile_arguments(exact::make_rational(1, 2));
    if (!ar.bessel_argument) rep.fail("4 i m != 8 i eps");
    if (!ar.hypergeometric_argument) rep.fail("-i m != -2 i eps");
    rep.parameters = {{"kappa_max", kappa_max}, {"n_max_product", n_product}};
    rep.notes.push_back("d is compared with the lowest value of i S05 (x) 1 - 1 (x) i S~05 in each sector");
    rep.runtime_ms = clock.elapsed_ms();
    return rep;
}

inline Table classification_table(int kappa_max) {
    Table t{"massive_classification", {"kappa", "kappa_prime", "d", "j1", "j2", "s"}, {}};
    for (int k = 0; k <= kappa_max; ++k)
        for (int kp = 0; kp <= kappa_max; ++kp) {
            const auto c = massive::classify_massive(k, kp);
            t.rows.push_back({std::to_string(k), std::to_string(kp), c.d.get_str(), c.j1.get_str(), c.j2.get_str(),
                              c.s.get_str()});
        }
    return t;
}

inline SuiteResult massive_field(int n_max, const std::vector<int>& kappas, const std::vector<int>& kappa_primes,
                                 const Rational& epsilon, unsigned threads) {
    SuiteResult s;
    s.add(massive::verify_product_algebra(6, 6, threads));
    for (int k : kappas)
        for (int kp : kappa_primes)
            for (int sign : {1, -1}) s.add(massive::verify_massive(k, kp, epsilon, sign, {n_max}, {n_max}));
    s.add(classification_report(4, 6));
    s.tables.push_back(classification_table(4));
    return s;
}

// ------------------------------------------------------------ everything

inline SuiteResult run_all(const RunConfig& c) {
    SuiteResult s = matrix_algebra();
    s.merge(osc_algebra(c.n_or(10), c.threads));
    s.merge(casimir_table(c.n_or(12), c.kappas, c.threads, c.epsilon6_sign));
    s.merge(spectrum(c.n_or(12), 6));
    s.merge(boost_check(c.n_or(24), c.betas, c.tolerance, c.cutoff, c.threads));
    s.merge(parseval(c.betas, c.cutoff, c.tolerance));
    s.merge(massless_field(c.n_or(10), c.n_or(16), c.kappas, c.epsilon));
    s.merge(massive_field(c.n_or(10), c.kappas, c.kappa_primes, c.epsilon, c.threads));
    return s;
}

}  // namespace confosc::suites
