// Walk through one chiral sector: Casimir values, the lowest conformal energy, a boosted
// matrix element checked against the exponential series, and a massive tensor product.

#include <cstdio>
#include <cstdlib>

#include "confosc/confosc.hpp"

using namespace confosc;

int main(int argc, char** argv) {
    const int kappa = argc > 1 ? std::atoi(argv[1]) : 2;
    const double beta = argc > 2 ? std::atof(argv[2]) : 0.5;
    if (kappa < 0) {
        std::fprintf(stderr, "kappa must be non-negative\n");
        return 2;
    }

    const auto row = osc::casimir_eigenvalues(kappa, lie::RepVariant::Fundamental);
    std::printf("kappa %d: C1 = %s, C2 = %s, C3 = %s, C4 = %s\n", kappa, row.lambda1.get_str().c_str(),
                row.lambda2.get_str().c_str(), row.lambda3.str().c_str(), row.lambda4.get_str().c_str());

    const auto sp = osc::s05_spectrum({kappa + 4, kappa});
    const auto cls = osc::classify_doubleton(kappa);
    std::printf("lowest i S05 = %s, d = %s, (j1, j2) = (%s, %s)\n", sp.lowest_by_kappa.at(kappa).get_str().c_str(),
                cls.d.get_str().c_str(), cls.j1.get_str().c_str(), cls.j2.get_str().c_str());

    const boost::POracle oracle(40);
    const auto v = oracle.boosted(kappa, 0, beta);
    std::printf("beta %.3g: <k|boost|%d><0|l>\n", beta, kappa);
    for (int k = 0; k <= kappa + 3; ++k) {
        const int l = k - kappa;
        if (l < 0) continue;
        std::printf("  k=%d l=%d closed %.12f series %.12f\n", k, l, boost::p_matrix_element(k, l, 0, kappa, beta),
                    oracle.element(v, k, l));
    }
    const auto norm = boost::boosted_basis_norm(kappa, 0, beta, 60);
    std::printf("  norm^2 %.12f (expected %d!)\n", norm.value, kappa);

    const auto eps = exact::make_rational(1, 2);
    const auto rep = massive::verify_massive(kappa, 0, eps, 1, {8}, {8});
    const auto m = massive::classify_massive(kappa, 0);
    std::printf("massive kappa'=0, eps=1/2: P eigen-equations %s, d = %s, s = %s\n", rep.pass ? "hold" : "fail",
                m.d.get_str().c_str(), m.s.get_str().c_str());
    return rep.pass ? 0 : 1;
}
