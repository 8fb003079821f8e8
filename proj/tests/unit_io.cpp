#include <doctest.h>

#include "test_support.hpp"

using namespace honeycomb;

TEST_CASE("fmt: fixed 17-significant-digit formatting") {
    CHECK(fmt(0.5) == "0.5");
    CHECK(fmt(1.0 / 3.0) == "0.33333333333333331");
    CHECK(fmt(pi) == "3.1415926535897931");
}

TEST_CASE("classify report carries the metadata fields") {
    std::string rep = classify_report(canonicalize(6, 1));
    CHECK(rep.find("\"kind\": \"zigzag\"") != std::string::npos);
    CHECK(rep.find("\"edge\": [6, 1]") != std::string::npos);
    CHECK(rep.find("\"gauge\": [5, 1]") != std::string::npos);
    CHECK(rep.find("\"sublattice\": \"B\"") != std::string::npos);

    std::string ac = classify_report(canonicalize(1, 1));
    CHECK(ac.find("\"kind\": \"armchair\"") != std::string::npos);
    CHECK(ac.find("\"sublattice\": \"none\"") != std::string::npos);
}

TEST_CASE("scan outputs: determinism and PGM layout") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    DeltaGrid grid = scan(cfg, off, 12, 12, 0.4);

    std::string csv1 = scan_csv(cfg, grid);
    std::string csv2 = scan_csv(cfg, grid);
    CHECK(csv1 == csv2);
    CHECK(csv1.find("# honeycomb-edge") == 0);
    CHECK(csv1.find("k\\E") != std::string::npos);

    std::string pgm = scan_pgm(cfg, grid);
    CHECK(pgm.rfind("P5\n", 0) == 0);
    auto dims = pgm.find("13 13\n255\n");
    REQUIRE(dims != std::string::npos);
    std::size_t payload = pgm.size() - (dims + std::string("13 13\n255\n").size());
    CHECK(payload == 13u * 13u);
}

TEST_CASE("flatband json embeds norm and residual") {
    EdgeConfig cfg = canonicalize(6, 1);
    NeighborOffsets off = neighbor_offsets(cfg);
    FlatBandState st = build_state(cfg, off, pi);
    std::string body = flatband_json(cfg, st, flatband_residual(cfg, off, st));
    CHECK(body.find("\"sublattice\": \"B\"") != std::string::npos);
    CHECK(body.find("\"base_index\": -4") != std::string::npos);
    CHECK(body.find("\"norm\": ") != std::string::npos);
    CHECK(body.find("\"residual\": ") != std::string::npos);
}
