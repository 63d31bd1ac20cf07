#include <gtest/gtest.h>

#include <sstream>

#include "confosc/suites.hpp"

using namespace confosc;
using namespace confosc::suites;
using exact::make_rational;

namespace {

RunConfig parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    read_config(cfg, is);
    return cfg;
}

}  // namespace

TEST(Config, Defaults) {
    const RunConfig cfg;
    EXPECT_FALSE(cfg.n_max);
    EXPECT_EQ(cfg.n_or(12), 12);
    EXPECT_EQ(cfg.betas, (std::vector<double>{0.25, 0.5, 1.0, 2.0}));
    EXPECT_EQ(cfg.epsilon, make_rational(3, 7));
    EXPECT_EQ(cfg.epsilon6_sign, -1);
}

TEST(Config, ParsesEveryKey) {
    const auto cfg = parse(
        "# comment\n"
        "n_max = 14\n"
        "beta = 0.5, 1   # trailing comment\n"
        "kappa = 0,2\n"
        "kappa_prime=1\n"
        "epsilon = 6/4\n"
        "tolerance = 1e-9\n"
        "cutoff = 30\n"
        "out = somewhere\n"
        "threads = 3\n"
        "epsilon6_sign = 1\n"
        "\n");
    EXPECT_EQ(cfg.n_or(0), 14);
    EXPECT_EQ(cfg.betas, (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(cfg.kappas, (std::vector<int>{0, 2}));
    EXPECT_EQ(cfg.kappa_primes, (std::vector<int>{1}));
    EXPECT_EQ(cfg.epsilon, make_rational(3, 2));
    EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-9);
    EXPECT_EQ(cfg.cutoff, 30);
    EXPECT_EQ(cfg.out, "somewhere");
    EXPECT_EQ(cfg.threads, 3u);
    EXPECT_EQ(cfg.epsilon6_sign, 1);
}

TEST(Config, Rejections) {
    for (const char* bad : {"colour = red\n", "n_max = 4\n", "n_max = ten\n", "beta = \n", "beta = 0.5x\n",
                            "epsilon = -1/2\n", "epsilon = 1/0\n", "tolerance = 0\n", "threads = 0\n",
                            "epsilon6_sign = 2\n", "just words\n"})
        EXPECT_THROW(parse(bad), ConfigError) << bad;
    EXPECT_THROW(load_config("/nonexistent/confosc.cfg"), ConfigError);
}

TEST(Tables, Csv) {
    const Table t{"t", {"a", "b"}, {{"1", "2"}, {"3", "4"}}};
    EXPECT_EQ(t.csv(), "a,b\n1,2\n3,4\n");
    const auto ct = classification_table(1);
    EXPECT_EQ(ct.rows.size(), 4u);
    EXPECT_EQ(ct.rows.back(), (std::vector<std::string>{"1", "1", "3", "1/2", "1/2", "1"}));
}

TEST(Suites, SmallRunsPass) {
    EXPECT_TRUE(matrix_algebra().pass());
    EXPECT_TRUE(parseval({0.5}, 40, 1e-8).pass());
    EXPECT_TRUE(gauss_2x2_report({0.25, 1, 2}).pass);
    EXPECT_TRUE(coherent_element_report(1e-9).pass);
    EXPECT_TRUE(fock_closed_form_report(make_rational(3, 7), 4, 4).pass);
    EXPECT_TRUE(classification_report(2, 4).pass);
}

TEST(Suites, BetaFilter) {
    EXPECT_EQ(betas_up_to({0.25, 1.0, 2.0, -0.5}, 1.0), (std::vector<double>{0.25, 1.0, -0.5}));
}

TEST(Suites, SeededLabelsAreReproducible) {
    const auto a = coherent_labels(5), b = coherent_labels(5);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].a1, b[i].a1);
}
