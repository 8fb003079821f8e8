#pragma once

#include <algorithm>
#include <vector>

#include "honeycomb/edge.hpp"
#include "honeycomb/numeric.hpp"

namespace honeycomb {

// One fiber of the bulk spectrum: at parallel momentum k the essential
// spectrum is [-bandMax, -bandMin] U [bandMin, bandMax], where the band
// limits are the extrema of |h(kperp, k)| over the transverse momentum.
struct SpectrumSlice {
    double k = 0.0;
    double bandMin = 0.0;
    double bandMax = 0.0;
    bool gapped = false;

    // True if E (with essentially real E) lies within `margin` of the bands.
    bool covers(double e, double margin) const noexcept {
        double a = std::abs(e);
        return a >= bandMin - margin && a <= bandMax + margin;
    }
};

// Crossing momenta of the two bulk bands at E = 0, together with the
// transverse momenta where the symbol vanishes.
struct GapClosings {
    std::vector<double> k;
    std::vector<double> kperp;
};

// Bloch symbol h(kperp, k) = sum_nu exp(i k m_nu) exp(i kperp n_nu).
inline cplx bloch_symbol(const NeighborOffsets& off, double k, double kperp) {
    cplx h = 0.0;
    for (int nu = 0; nu < 3; ++nu)
        h += std::polar(1.0, k * off.m[nu] + kperp * off.n[nu]);
    return h;
}

namespace detail {

inline double abs2_symbol(const NeighborOffsets& off, double k, double kperp) {
    cplx h = bloch_symbol(off, k, kperp);
    return std::norm(h);
}

} // namespace detail

inline int default_kperp_samples(const NeighborOffsets& off) {
    return 64 * std::max(1, off.span());
}

// Band limits at fixed k: sample |h|^2 on nKperp uniform transverse momenta,
// then refine every local extremum by golden section to 1e-12.
inline SpectrumSlice essential_slice(const NeighborOffsets& off, double k,
                                     int nKperp = 0) {
    if (nKperp <= 0) nKperp = default_kperp_samples(off);
    if (nKperp < 64) nKperp = 64;

    std::vector<double> val(nKperp);
    const double step = two_pi / nKperp;
    for (int i = 0; i < nKperp; ++i)
        val[i] = detail::abs2_symbol(off, k, i * step);

    double lo = val[0], hi = val[0];
    constexpr double tol = 1e-12;
    for (int i = 0; i < nKperp; ++i) {
        double prev = val[(i + nKperp - 1) % nKperp];
        double next = val[(i + 1) % nKperp];
        double a = (i - 1) * step, b = (i + 1) * step;
        if (val[i] <= prev && val[i] <= next) {
            double x = detail::golden_min(
                [&](double t) { return detail::abs2_symbol(off, k, t); }, a, b, tol);
            lo = std::min(lo, detail::abs2_symbol(off, k, x));
        }
        if (val[i] >= prev && val[i] >= next) {
            double x = detail::golden_min(
                [&](double t) { return -detail::abs2_symbol(off, k, t); }, a, b, tol);
            hi = std::max(hi, detail::abs2_symbol(off, k, x));
        }
    }

    SpectrumSlice s;
    s.k = k;
    s.bandMin = std::sqrt(std::max(0.0, lo));
    s.bandMax = std::sqrt(hi);
    s.gapped = s.bandMin > 1e-9;
    return s;
}

// Momenta where the gap at E = 0 closes: {0, 2pi} for armchair-type edges
// (s2 = 0), {2pi/3, 4pi/3} for zigzag-type (s2 = +-1). The matching kperp
// come from the equilateral-triangle solution of h = 0.
inline GapClosings gap_closing_quasimomenta(const EdgeConfig& cfg) {
    NeighborOffsets off = bloch_offsets(cfg);
    const int b1 = off.m[1] - off.m[0], b2 = off.m[2] - off.m[0];
    const int g1 = off.n[1] - off.n[0], g2 = off.n[2] - off.n[0];
    const int det = b1 * g2 - b2 * g1; // +-1

    GapClosings out;
    if (cfg.s2 == 0) {
        out.k = {0.0, two_pi};
        for (int sigma : {+1, -1})
            out.kperp.push_back(mod_two_pi(-(two_pi / 3.0) * sigma * (b1 + b2) * det));
        std::sort(out.kperp.begin(), out.kperp.end());
    } else {
        for (int sigma : {+1, -1}) {
            double kc = mod_two_pi((two_pi / 3.0) * sigma * (g1 + g2) * det);
            double kp = mod_two_pi(-(two_pi / 3.0) * sigma * (b1 + b2) * det);
            out.k.push_back(kc);
            out.kperp.push_back(kp);
        }
        if (out.k[0] > out.k[1]) {
            std::swap(out.k[0], out.k[1]);
            std::swap(out.kperp[0], out.kperp[1]);
        }
    }
    return out;
}

// Opening rate of the essential-spectrum boundary at a band crossing:
// (sqrt(3)/2) / sqrt(a11^2 + a11*a12 + a12^2).
inline double wedge_slope(const EdgeConfig& cfg) {
    return 0.5 * std::sqrt(3.0) / std::sqrt(cfg.edge_period_sq());
}

} // namespace honeycomb
