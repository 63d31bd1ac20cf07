#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "confosc/suites.hpp"

namespace fs = std::filesystem;
using namespace confosc;
using suites::RunConfig;
using suites::SuiteResult;

namespace {

struct Overrides {
    std::string config;
    std::optional<int> n_max;
    std::string beta, kappa, kappa_prime, epsilon;
    std::optional<double> tolerance;
    std::optional<int> cutoff;
    std::string out;
    std::optional<int> threads;
};

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : suites::load_config(o.config);
    if (o.n_max) suites::set_key(cfg, "n_max", std::to_string(*o.n_max));
    if (!o.beta.empty()) suites::set_key(cfg, "beta", o.beta);
    if (!o.kappa.empty()) suites::set_key(cfg, "kappa", o.kappa);
    if (!o.kappa_prime.empty()) suites::set_key(cfg, "kappa_prime", o.kappa_prime);
    if (!o.epsilon.empty()) suites::set_key(cfg, "epsilon", o.epsilon);
    if (o.tolerance) suites::set_key(cfg, "tolerance", suites::fmt(*o.tolerance));
    if (o.cutoff) suites::set_key(cfg, "cutoff", std::to_string(*o.cutoff));
    if (!o.out.empty()) suites::set_key(cfg, "out", o.out);
    if (o.threads) suites::set_key(cfg, "threads", std::to_string(*o.threads));
    return cfg;
}

SuiteResult run(const std::string& name, const RunConfig& c) {
    if (name == "verify-matrix-algebra") return suites::matrix_algebra();
    if (name == "verify-osc-algebra") return suites::osc_algebra(c.n_or(10), c.threads);
    if (name == "casimir-table") return suites::casimir_table(c.n_or(12), c.kappas, c.threads, c.epsilon6_sign);
    if (name == "spectrum") return suites::spectrum(c.n_or(12), 6);
    if (name == "boost-check") return suites::boost_check(c.n_or(24), c.betas, c.tolerance, c.cutoff, c.threads);
    if (name == "parseval") return suites::parseval(c.betas, c.cutoff, c.tolerance);
    if (name == "massless-field") return suites::massless_field(c.n_or(10), c.n_or(16), c.kappas, c.epsilon);
    if (name == "massive-field")
        return suites::massive_field(c.n_or(10), c.kappas, c.kappa_primes, c.epsilon, c.threads);
    return suites::run_all(c);
}

void write_outputs(const SuiteResult& res, const fs::path& out) {
    fs::create_directories(out / "reports");
    std::map<std::string, std::vector<const VerificationReport*>> by_check;
    for (const auto& r : res.reports) by_check[r.check_name].push_back(&r);
    for (const auto& [check, reps] : by_check) {
        nlohmann::json runs = nlohmann::json::array();
        bool pass = true;
        for (const auto* r : reps) {
            runs.push_back(r->to_json());
            pass = pass && r->pass;
        }
        const nlohmann::json doc{{"schema", 1}, {"check", check}, {"pass", pass}, {"runs", runs}};
        std::ofstream(out / "reports" / (check + ".json")) << doc.dump(2) << "\n";
    }
    if (!res.tables.empty()) fs::create_directories(out / "tables");
    for (const auto& t : res.tables) std::ofstream(out / "tables" / (t.name + ".csv")) << t.csv();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical checks of oscillator representations of su(2,2)"};
    app.require_subcommand(1);
    Overrides o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"verify-matrix-algebra", "4x4 generator algebra and the Gamma condition"},
        {"verify-osc-algebra", "oscillator generator algebra, fundamental and dual"},
        {"casimir-table", "Casimir reductions and eigenvalue table"},
        {"spectrum", "i S05 spectrum and doubleton classification"},
        {"boost-check", "Gauss decomposition, coherent-state boosts and matrix elements"},
        {"parseval", "norm identity of boosted basis states"},
        {"massless-field", "massless invariants and momentum eigenfunctions"},
        {"massive-field", "tensor-product momentum eigenfunctions and classification"},
        {"all", "every suite"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "flat key = value config file");
        sub->add_option("--nmax", o.n_max, "truncation degree for every suite");
        sub->add_option("--beta", o.beta, "comma-separated rapidities");
        sub->add_option("--kappa", o.kappa, "comma-separated chiral parameters");
        sub->add_option("--kappa-prime", o.kappa_prime, "comma-separated dual chiral parameters");
        sub->add_option("--epsilon", o.epsilon, "momentum scale P/Q");
        sub->add_option("--tolerance", o.tolerance, "floating tolerance");
        sub->add_option("--cutoff", o.cutoff, "series cutoff");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--threads", o.threads, "worker threads");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    RunConfig cfg;
    try {
        cfg = resolve(o);
    } catch (const suites::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    SuiteResult res;
    try {
        res = run(name, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    }
    write_outputs(res, cfg.out);
    for (const auto& r : res.reports)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check_name << " " << r.parameters.dump() << " residual "
                  << r.residual.str() << "\n";
    std::cout << (res.pass() ? "all checks passed" : "some checks failed") << "; reports in " << cfg.out << "\n";
    return res.pass() ? 0 : 1;
}
