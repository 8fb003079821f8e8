#include <doctest.h>

#include "test_support.hpp"

using namespace honeycomb;
using testsupport::match_distance;

TEST_CASE("mode_basis: (4,1) at E = 0.1, k = 3") {
    EdgeConfig cfg = canonicalize(4, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    REQUIRE(off.span() == 5);
    ModeBasis basis = mode_basis(off, 3.0, cplx(0.1));
    CHECK(basis.inside.size() == 5);
    CHECK(basis.outside.size() == 5);

    // Reference moduli of the decaying family for this edge and energy.
    std::vector<double> expect = {0.836637, 0.851391, 0.857332, 0.908684, 0.914316};
    std::vector<double> got;
    for (cplx z : basis.inside) got.push_back(std::abs(z));
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-3));
}

TEST_CASE("mode_basis: reference moduli for (5,1) and (6,1) at E = 0.1, k = 3") {
    struct Case {
        int a11, a12;
        std::vector<double> moduli;
    };
    const std::vector<Case> cases = {
        {5, 1, {0.77897, 0.88179, 0.90929, 0.91215, 0.96890, 0.98043}},
        {6, 1, {0.84809, 0.85710, 0.89912, 0.91560, 0.91726, 0.98366, 0.99113}},
    };
    for (const Case& c : cases) {
        NeighborOffsets off = neighbor_offsets(canonicalize(c.a11, c.a12));
        ModeBasis basis = mode_basis(off, 3.0, cplx(0.1));
        std::vector<double> got;
        for (cplx z : basis.inside) got.push_back(std::abs(z));
        std::sort(got.begin(), got.end());
        REQUIRE(got.size() == c.moduli.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i] == doctest::Approx(c.moduli[i]).epsilon(1e-3));
    }
}

TEST_CASE("mode_basis: E = 0 factorizes into the two trinomial families") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    ModeBasis basis = mode_basis(off, pi, cplx(0.0));
    DiscRoots rp = roots_numeric(hep_coefficients(hep_plus(off), pi));
    DiscRoots rm = roots_numeric(hep_coefficients(hep_minus(off), pi));
    std::vector<cplx> expected = rp.inside;
    expected.insert(expected.end(), rm.inside.begin(), rm.inside.end());
    CHECK(match_distance(basis.inside, expected) < 1e-9);
}

TEST_CASE("mode_basis: rejected inside the essential spectrum") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    SpectrumSlice s = essential_slice(off, pi);
    double mid = 0.5 * (s.bandMin + s.bandMax);
    CHECK_THROWS_AS(mode_basis(off, pi, cplx(mid)), InEssentialSpectrum);
}

TEST_CASE("boundary_matrix: row layout for (3,1)") {
    EdgeConfig cfg = canonicalize(3, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    ModeBasis basis = mode_basis(off, 1.2, cplx(0.2));
    Eigen::MatrixXcd m = boundary_matrix(cfg, off, basis);
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 4);
}

TEST_CASE("delta: flat-band zero vs armchair non-vanishing at E = 0") {
    EdgeConfig zz = canonicalize(6, 1);
    NeighborOffsets zoff = neighbor_offsets(zz);
    DeltaValue on = delta(zz, zoff, pi, cplx(0.0));
    CHECK(on.normalizedAbs() < 1e-8);
    DeltaValue offband = delta(zz, zoff, 0.5, cplx(0.0));
    CHECK(offband.normalizedAbs() > 1e-3);

    EdgeConfig ac = canonicalize(4, 1);
    NeighborOffsets aoff = neighbor_offsets(ac);
    CHECK(delta(ac, aoff, 3.0, cplx(0.0)).normalizedAbs() > 1e-3);
}

TEST_CASE("delta: +-E pairing") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    double e = refine_zero(cfg, off, 1.0, 0.11);
    CHECK(e == doctest::Approx(0.11).epsilon(0.1));
    double eneg = refine_zero(cfg, off, 1.0, -e);
    CHECK(eneg == doctest::Approx(-e).epsilon(1e-6));
    double emirror = refine_zero(cfg, off, two_pi - 1.0, e);
    CHECK(emirror == doctest::Approx(e).epsilon(1e-6));
}

TEST_CASE("delta zeros ignore the eigenvector normalization") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    const double k0 = 1.0;
    const double estar = refine_zero(cfg, off, k0, 0.11);

    // Rescale each mode vector by an arbitrary nonzero constant and rebuild
    // the boundary matrix by hand: the determinant zero must not move.
    auto scaled_abs = [&](double e) {
        ModeBasis basis = mode_basis(off, k0, cplx(e));
        for (std::size_t j = 0; j < basis.vectors.size(); ++j) {
            cplx c = std::polar(0.5 + 0.25 * double(j + 1), 0.7 * double(j));
            basis.vectors[j][0] *= c;
            basis.vectors[j][1] *= c;
        }
        return std::abs(
            Eigen::PartialPivLU<Eigen::MatrixXcd>(boundary_matrix(cfg, off, basis))
                .determinant());
    };
    double refined = detail::golden_min(scaled_abs, estar - 0.01, estar + 0.01, 1e-10);
    CHECK(refined == doctest::Approx(estar).epsilon(1e-7));
}

TEST_CASE("winding: unit circulation at a known zero, zero elsewhere") {
    EdgeConfig cfg = canonicalize(4, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    WindingResult w = winding(cfg, off, 3.0, cplx(0.33), 0.01, 50);
    CHECK(w.winding == 1);

    WindingResult w2 = winding(cfg, off, 3.0, cplx(0.33), 0.01, 100);
    CHECK(w2.winding == 1);

    // A nearby circle that encloses no zero.
    WindingResult empty = winding(cfg, off, 3.0, cplx(0.45), 0.01, 50);
    CHECK(empty.winding == 0);
}

TEST_CASE("winding: circle through the bands is refused") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    SpectrumSlice s = essential_slice(off, pi);
    CHECK_THROWS_AS(
        winding(cfg, off, pi, cplx(s.bandMin + 0.05), 0.1, 64),
        CircleHitsEssentialSpectrum);
}

TEST_CASE("refine_zero: certified localization") {
    EdgeConfig cfg = canonicalize(5, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    double e = refine_zero(cfg, off, 0.27, 0.24);
    CHECK(e == doctest::Approx(0.24).epsilon(0.1));
    DeltaValue dv = delta(cfg, off, 0.27, cplx(e));
    CHECK(dv.normalizedAbs() < 1e-8);

    // Flat-band zero certified and pinned at E = 0.
    EdgeConfig zz = canonicalize(6, 1);
    NeighborOffsets zoff = neighbor_offsets(zz);
    double e0 = refine_zero(zz, zoff, pi, 0.0);
    CHECK(std::abs(e0) < 1e-10);

    CHECK_THROWS_AS(refine_zero(cfg, off, 0.27, 0.05), NotCertified);
}

TEST_CASE("fft_pow2: forward/backward roundtrip") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> x(256), orig;
    for (cplx& v : x) v = cplx(u(rng), u(rng));
    orig = x;
    detail::fft_pow2(x, +1);
    detail::fft_pow2(x, -1);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(x[i] / 256.0 - orig[i]) < 1e-13);
}

TEST_CASE("trace_loci: connectivity on a synthetic grid") {
    DeltaGrid grid;
    grid.kValues = {0.0, 1.0, 2.0, 3.0};
    grid.eValues = {-1.0, 0.0, 1.0};
    grid.logAbsDelta.assign(12, 0.0);
    grid.essMask.assign(12, 0);
    // Two separate troughs: a diagonal pair and an isolated cell.
    grid.logAbsDelta[grid.index(0, 0)] = -10.0;
    grid.logAbsDelta[grid.index(1, 1)] = -10.0; // diagonal neighbor of (0,0)
    grid.logAbsDelta[grid.index(3, 2)] = -10.0;
    auto loci = trace_loci(grid, -5.0);
    REQUIRE(loci.size() == 2);
    CHECK(loci[0].cells.size() + loci[1].cells.size() == 3);
}

TEST_CASE("scan: mask consistency on a small grid") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    DeltaGrid grid = scan(cfg, off, 40, 40, 0.4);
    REQUIRE(grid.kValues.size() == 41);
    REQUIRE(grid.eValues.size() == 41);
    for (std::size_t ik = 0; ik < grid.kValues.size(); ++ik) {
        SpectrumSlice s = essential_slice(off, grid.kValues[ik]);
        for (std::size_t ie = 0; ie < grid.eValues.size(); ++ie) {
            std::size_t at = grid.index(ik, ie);
            bool masked = grid.essMask[at] != 0;
            CHECK(masked == s.covers(grid.eValues[ie], 1e-6));
            CHECK(masked == !std::isfinite(grid.logAbsDelta[at]));
        }
    }
    // Single-threaded result is bit-identical.
    DeltaGrid serial = scan(cfg, off, 40, 40, 0.4, 1);
    for (std::size_t i = 0; i < grid.logAbsDelta.size(); ++i) {
        bool bothNaN = std::isnan(grid.logAbsDelta[i]) && std::isnan(serial.logAbsDelta[i]);
        CHECK((bothNaN || grid.logAbsDelta[i] == serial.logAbsDelta[i]));
    }
}
