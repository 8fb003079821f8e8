#include <doctest.h>

#include "test_support.hpp"

using namespace honeycomb;
using testsupport::match_distance;
using testsupport::random_edges;
using testsupport::random_momenta;

TEST_CASE("alpha_pair: known angles and residual") {
    auto [a1, a2] = alpha_pair(1.0, 1.0);
    CHECK(a1 == doctest::Approx(two_pi / 3.0).epsilon(1e-14));
    CHECK(a2 == doctest::Approx(-two_pi / 3.0).epsilon(1e-14));

    auto [b1, b2] = alpha_pair(0.3, 0.7); // degenerate triangle rho1+rho2 = 1
    CHECK(b1 == doctest::Approx(pi).epsilon(1e-12));
    CHECK(b2 == doctest::Approx(-pi).epsilon(1e-12));

    auto [c1, c2] = alpha_pair(0.9, 0.8);
    cplx res = 1.0 + 0.9 * std::polar(1.0, c1) + 0.8 * std::polar(1.0, c2);
    CHECK(std::abs(res) < 1e-12);

    CHECK_THROWS_AS(alpha_pair(0.2, 0.3), Unsolvable);
}

TEST_CASE("rho_critical: closed form at kappa = 1/2") {
    double rc = rho_critical(0.5);
    CHECK(rc == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-11));
    for (double kappa : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        double r = rho_critical(kappa);
        CHECK(std::abs(std::pow(r, kappa) + r - 1.0) < 1e-13);
    }
}

TEST_CASE("m_profile: endpoint values and domain") {
    for (double kappa : {0.2, 0.5, 0.8}) {
        double rc = rho_critical(kappa);
        CHECK(std::abs(m_profile(kappa, rc) - pi * (1.0 + kappa)) < 1e-12);
        CHECK(std::abs(m_profile(kappa, 1.0) - (two_pi / 3.0) * (1.0 + kappa)) <
              1e-12);
        CHECK_THROWS_AS(m_profile(kappa, rc / 2.0), DomainError);
    }
}

TEST_CASE("m_profile: strictly decreasing, derivative matches finite differences") {
    for (double kappa : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double rc = rho_critical(kappa);
        double prev = m_profile(kappa, rc);
        for (int i = 1; i <= 100; ++i) {
            double rho = rc + (1.0 - rc) * i / 100.0;
            double cur = m_profile(kappa, rho);
            CHECK(cur < prev);
            prev = cur;
        }
        for (int i = 2; i <= 8; ++i) {
            double rho = rc + (1.0 - rc) * i / 10.0;
            double h = 1e-4 * (1.0 - rc);
            double fd = (-m_profile(kappa, rho + 2 * h) + 8 * m_profile(kappa, rho + h) -
                         8 * m_profile(kappa, rho - h) + m_profile(kappa, rho - 2 * h)) /
                        (12.0 * h);
            double an = m_profile_derivative(kappa, rho);
            CHECK(an < 0.0);
            CHECK(std::abs(fd - an) < 1e-6 * std::abs(an));
        }
    }
}

TEST_CASE("roots_analytic: (3,1) inside counts") {
    NeighborOffsets off = neighbor_offsets(canonicalize(3, 1));
    HepParams p = hep_plus(off);
    CHECK(p.gamma1 == 3);
    CHECK(p.gamma2 == 4);
    CHECK(roots_analytic(p, pi).inside.size() == 3);
    CHECK(roots_analytic(p, 0.1).inside.size() == 2);
    CHECK_THROWS_AS(roots_analytic(p, two_pi / 3.0), ExceptionalQuasimomentum);
    CHECK_THROWS_AS(roots_analytic(p, 0.0), ExceptionalQuasimomentum);
}

TEST_CASE("roots_numeric: circle root rejected") {
    CHECK_THROWS_AS(roots_numeric({cplx(-1.0), cplx(0.0), cplx(1.0)}), RootOnCircle);
}

TEST_CASE("roots_numeric vs roots_analytic: (3,1) and random spot checks") {
    NeighborOffsets off = neighbor_offsets(canonicalize(3, 1));
    for (HepParams p : {hep_plus(off), hep_minus(off)}) {
        for (double k : {0.1, 1.3, pi, 5.0}) {
            DiscRoots na = roots_analytic(p, k);
            DiscRoots nn = roots_numeric(hep_coefficients(p, k));
            CHECK(match_distance(na.inside, nn.inside) < 1e-9);
            CHECK(match_distance(na.outside, nn.outside) < 1e-9);
        }
    }
}

TEST_CASE("count_p / count_q: (3,1) values and degree identity") {
    EdgeConfig cfg = canonicalize(3, 1);
    CHECK(count_p(cfg, pi) == 3);
    CHECK(count_q(cfg, pi) == 1);
    CHECK(count_p(cfg, 0.1) == 2);
    CHECK(count_q(cfg, 0.1) == 2);
    CHECK_THROWS_AS(count_p(cfg, two_pi / 3.0), ExceptionalQuasimomentum);

    for (const EdgeConfig& e : random_edges(25, 99)) {
        NeighborOffsets off = neighbor_offsets(e);
        for (double k : random_momenta(4, 5))
            CHECK(count_p(off, k, e.s2) + count_q(off, k, e.s2) == off.span());
    }
}

TEST_CASE("conjugate-reciprocal pairing of the two polynomials") {
    // p_minus(z) = 0 iff p_plus(1/conj(z)) = 0.
    for (const EdgeConfig& cfg : random_edges(8, 42, 8)) {
        NeighborOffsets off = neighbor_offsets(cfg);
        for (double k : random_momenta(3, 17)) {
            DiscRoots rp = roots_numeric(hep_coefficients(hep_plus(off), k));
            DiscRoots rm = roots_numeric(hep_coefficients(hep_minus(off), k));
            std::vector<cplx> mirrored;
            for (cplx z : rp.outside) mirrored.push_back(1.0 / std::conj(z));
            CHECK(match_distance(rm.inside, mirrored) < 1e-9);
            CHECK(min_pairwise_distance(rp.all()) > 1e-8);
        }
    }
}
