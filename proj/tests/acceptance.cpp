// Acceptance gate: `acceptance <id>` runs one criterion and prints a single PASS/FAIL line.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "confosc/suites.hpp"

using namespace confosc;
namespace su = confosc::suites;
using exact::Rational;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

// worst residual and first failure note over a set of reports
Outcome summarize(const std::vector<VerificationReport>& reps) {
    Outcome o;
    VerificationReport worst;
    std::string first;
    double ms = 0;
    for (const auto& r : reps) {
        ms += r.runtime_ms;
        worst.absorb(r.residual);
        if (!r.pass) {
            o.pass = false;
            if (first.empty()) first = r.check_name + ": " + (r.notes.empty() ? "failed" : r.notes.front());
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f ms", ms);
    o.summary = std::to_string(reps.size()) + (reps.size() == 1 ? " report" : " reports") + ", worst residual " +
                worst.residual.str() + ", " + buf;
    if (!first.empty()) o.summary += "; " + first;
    return o;
}

void require_runtime(Outcome& o, const std::vector<VerificationReport>& reps, double limit_ms) {
    double ms = 0;
    for (const auto& r : reps) ms += r.runtime_ms;
    if (ms > limit_ms) {
        o.pass = false;
        o.summary += "; runtime above " + std::to_string(int(limit_ms)) + " ms";
    }
}

Outcome c1() {
    std::vector<VerificationReport> reps{lie::verify_matrix_algebra(lie::RepVariant::Fundamental),
                                         lie::verify_matrix_algebra(lie::RepVariant::Dual)};
    Outcome o = summarize(reps);
    for (const auto& r : reps)
        if (r.details.at(0).at("pairs") != 105 || !r.residual.is_exact_zero()) o.pass = false;
    require_runtime(o, reps, 1000);
    return o;
}

Outcome c2() {
    std::vector<VerificationReport> reps{lie::verify_gamma_condition(lie::RepVariant::Fundamental)};
    Outcome o = summarize(reps);
    if (reps[0].details.at(0).at("generators") != 15 || !reps[0].residual.is_exact_zero()) o.pass = false;
    require_runtime(o, reps, 1000);
    return o;
}

Outcome c3() {
    std::vector<VerificationReport> reps{osc::verify_osc_algebra(lie::RepVariant::Fundamental, {10}),
                                         osc::verify_osc_algebra(lie::RepVariant::Dual, {10})};
    Outcome o = summarize(reps);
    for (const auto& r : reps) {
        if (!r.residual.is_exact_zero()) o.pass = false;
        if (r.parameters.value("interior_max_degree", -1) < 6) {
            o.pass = false;
            o.summary += "; interior below degree 6";
        }
    }
    require_runtime(o, reps, 120000);
    return o;
}

Outcome c4() {
    std::vector<VerificationReport> reps{osc::verify_massless_invariants({10}),
                                         osc::verify_w0_formula({10}, osc::W0Formula::ShiftedKappa, 50)};
    return summarize(reps);
}

Outcome c5() {
    std::vector<VerificationReport> reps{osc::verify_casimirs(lie::RepVariant::Fundamental, {12})};
    Outcome o = summarize(reps);
    std::vector<int> seen;
    for (const auto& d : reps[0].details)
        if (d.contains("c3_diagonal"))
            for (const auto& row : d.at("c3_diagonal")) seen.push_back(row.at("kappa").get<int>());
    for (int k = -6; k <= 6; ++k)
        if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
            o.pass = false;
            o.summary += "; kappa " + std::to_string(k) + " missing from the cubic diagonal";
        }
    o.summary += "; " + reps[0].notes.front();
    require_runtime(o, reps, 600000);
    return o;
}

Outcome c6() { return summarize({su::s05_spectrum_report(12, 8)}); }

Outcome c7() {
    auto reps = su::gauss_operator_reports(24, {0.25, 0.5, 1.0, 2.0}, 1e-10, 1);
    Outcome o = summarize(reps);
    for (const auto& r : reps)
        o.summary += "; beta " + su::fmt(r.parameters.at("beta").get<double>()) + " error " + r.residual.str();
    return o;
}

Outcome c8() {
    const std::vector<double> betas{0.25, 0.5, 1.0};
    std::vector<VerificationReport> reps{su::coherent_norm_report(betas, 1e-8, 10),
                                         su::basis_norm_report(betas, 40, 1e-8, 3)};
    return summarize(reps);
}

Outcome c9() { return summarize({su::p_formula_report({0.5, 1.0}, 1e-9, 4)}); }

Outcome c10() {
    auto res = su::parseval({0.5, 1.0}, 40, 1e-8);
    Outcome o = summarize(res.reports);
    if (res.reports.size() != 32) o.pass = false;
    require_runtime(o, res.reports, 60000);
    return o;
}

Outcome c11() {
    const Rational eps = exact::make_rational(3, 7);
    std::vector<VerificationReport> reps;
    for (int k = 0; k <= 6; ++k)
        reps.push_back(massive::verify_bessel_ode(massive::build_eigenfunction(k, eps, 1, 12)));
    for (int k = 0; k <= 6; ++k)
        for (int mode = 1; mode <= 2; ++mode)
            reps.push_back(massive::verify_p_eigenvalue(
                massive::build_eigenfunction(k, eps, mode, (16 - k) / 2 + 1, massive::EigenKind::PEigen), {16}));
    reps.push_back(su::fock_closed_form_report(eps, 6, 6));
    Outcome o = summarize(reps);
    for (const auto& r : reps)
        if (!r.residual.is_exact_zero()) o.pass = false;
    return o;
}

Outcome c12() {
    const Rational eps = exact::make_rational(1, 2);
    std::vector<VerificationReport> reps;
    for (int k = 0; k <= 2; ++k)
        for (int kp = 0; kp <= 2; ++kp)
            for (int sign : {1, -1}) reps.push_back(massive::verify_massive(k, kp, eps, sign, {10}, {10}));
    reps.push_back(su::classification_report(4, 6));
    Outcome o = summarize(reps);
    const auto table = su::classification_table(4);
    for (const auto& row : table.rows) {
        const int k = std::stoi(row[0]), kp = std::stoi(row[1]);
        if (Rational(row[2]) != Rational(2) + exact::make_rational(k + kp, 2) ||
            Rational(row[5]) != exact::make_rational(k + kp, 2))
            o.pass = false;
    }
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"4x4 generator algebra, fundamental and dual", c1},
    {"Gamma condition for the fifteen fundamental generators", c2},
    {"oscillator algebra at n_max 10, fundamental and dual", c3},
    {"P^2 = W^2 = 0 and the kappa-shifted W0 action", c4},
    {"Casimir reductions at n_max 12", c5},
    {"i S05 spectrum and doubleton dimensions", c6},
    {"three-factor boost against the oracle at n_max 24", c7},
    {"boost invariance of norms", c8},
    {"boosted matrix element closed form", c9},
    {"norm identity of boosted basis states", c10},
    {"massless eigenfunctions", c11},
    {"massive fields and classification", c12},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <1-12>\n";
        return 2;
    }
    const int id = std::atoi(argv[1]);
    if (id < 1 || id > int(criteria.size())) {
        std::cerr << "criterion id out of range\n";
        return 2;
    }
    const auto& [title, run] = criteria[std::size_t(id - 1)];
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << ": " << title << " (" << o.summary << ")"
              << std::endl;
    return o.pass ? 0 : 1;
}
