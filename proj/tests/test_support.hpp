#pragma once

#include <random>
#include <vector>

#include "honeycomb/honeycomb.hpp"

namespace testsupport {

using namespace honeycomb;

// Deterministic corpus of valid non-classical edges with |a11|, |a12| <= bound.
inline std::vector<EdgeConfig> random_edges(std::size_t count, unsigned seed,
                                            int bound = 12) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-bound, bound);
    std::vector<EdgeConfig> out;
    while (out.size() < count) {
        int a11 = dist(rng), a12 = dist(rng);
        if (a11 == 0 && a12 == 0) continue;
        if (std::gcd(std::abs(a11), std::abs(a12)) != 1) continue;
        if (is_classical_direction(a11, a12)) continue;
        out.push_back(canonicalize(a11, a12));
    }
    return out;
}

// Momentum samples staying clear of {0, 2pi/3, pi?, 4pi/3, 2pi} by `margin`.
// pi is kept unless exclude_pi is set.
inline std::vector<double> random_momenta(std::size_t count, unsigned seed,
                                          double margin = 0.05) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, two_pi);
    std::vector<double> ks;
    while (ks.size() < count) {
        double k = dist(rng);
        bool ok = true;
        for (double x : {0.0, two_pi / 3.0, 2.0 * two_pi / 3.0, two_pi})
            if (std::abs(k - x) < margin) ok = false;
        if (ok) ks.push_back(k);
    }
    return ks;
}

// Greedy minimum-distance matching between two root sets; returns the largest
// matched distance (infinite if sizes differ).
inline double match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    while (!a.empty()) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                double d = std::abs(a[i] - b[j]);
                if (d < best) { best = d; bi = i; bj = j; }
            }
        worst = std::max(worst, best);
        a.erase(a.begin() + long(bi));
        b.erase(b.begin() + long(bj));
    }
    return worst;
}

} // namespace testsupport
