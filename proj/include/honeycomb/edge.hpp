#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "honeycomb/errors.hpp"

namespace honeycomb {

// How the half-plane cut is placed relative to the two sublattice rows.
// Balanced: the frontier A-row and B-row sit in the same cell row.
// UnbalancedAFrontier: the A-row is strictly closer to the cut (only for s2 = -1).
// UnbalancedBFrontier: the B-row is strictly closer to the cut (only for s2 = +1).
enum class Termination { Balanced, UnbalancedAFrontier, UnbalancedBFrontier };

// A rational edge of the honeycomb together with a transverse lattice vector.
// v1 = a11*e1 + a12*e2 runs along the edge, v2 = a21*e1 + a22*e2 points into
// the kept half-plane, and a11*a22 - a12*a21 = +1 so {v1, v2} is a lattice
// basis. The residues s1, s2 and quotients k1, k2 are defined by
//   a22 - a21 = 3*k1 + s1,   a11 - a12 = 3*k2 + s2,   s1, s2 in {-1, 0, 1}.
// nAmin / nBmin are the smallest transverse indices of kept A / B sites.
struct EdgeConfig {
    int a11 = 0, a12 = 0;
    int a21 = 0, a22 = 0;
    int k1 = 0, k2 = 0;
    int s1 = 0, s2 = 0;
    int nAmin = 0, nBmin = 0;

    bool balanced() const noexcept { return nAmin == nBmin; }
    // Squared length of the edge period vector in units of the lattice constant.
    double edge_period_sq() const noexcept {
        return double(a11) * a11 + double(a11) * a12 + double(a12) * a12;
    }
};

// The three hopping offsets (m_nu, n_nu) between a site and its neighbors,
// expressed in the {v1, v2} basis and sorted so n1 <= n2 <= n3. For the six
// classical zigzag directions the n_nu are not distinct and `strict` is false;
// everything downstream of the trinomial machinery requires strict ordering.
struct NeighborOffsets {
    std::array<int, 3> m{};
    std::array<int, 3> n{};
    bool strict = true;

    int span() const noexcept { return n[2] - n[0]; } // polynomial degree n3 - n1
};

enum class EdgeKind { ZigzagType, ArmchairType, ClassicalZigzag };
enum class Balance { Balanced, Unbalanced };

struct EdgeClass {
    EdgeKind kind = EdgeKind::ZigzagType;
    Balance balance = Balance::Balanced;
    // Signed frontier distance difference D_B - D_A, in units of the lattice
    // constant: (sqrt(3)/2) * |v1|^-1 * (s2/3 + nBmin - nAmin).
    double dBminusDA = 0.0;
};

namespace detail {

// x = 3*k + s with s in {-1,0,1}.
inline void split_mod3(int x, int& k, int& s) {
    int r = x % 3;
    if (r < 0) r += 3;
    if (r == 2) {
        s = -1;
        k = (x + 1) / 3;
    } else {
        s = r;
        k = (x - s) / 3;
    }
}

// Extended Euclid: returns (g, u, v) with a*u + b*v = g = gcd(a,b) >= 0.
inline void ext_gcd(long a, long b, long& g, long& u, long& v) {
    long old_r = a, r = b;
    long old_u = 1, uu = 0;
    long old_v = 0, vv = 1;
    while (r != 0) {
        long q = old_r / r;
        long t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * uu; old_u = uu; uu = t;
        t = old_v - q * vv; old_v = vv; vv = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    g = old_r; u = old_u; v = old_v;
}

inline void fill_derived(EdgeConfig& cfg) {
    split_mod3(cfg.a22 - cfg.a21, cfg.k1, cfg.s1);
    split_mod3(cfg.a11 - cfg.a12, cfg.k2, cfg.s2);
}

} // namespace detail

// The six edge directions for which the transverse offsets degenerate
// (a11 = 0, a12 = 0, or a11 = -a12); these are the classical zigzag cuts.
inline bool is_classical_direction(int a11, int a12) noexcept {
    return a11 == 0 || a12 == 0 || a11 == -a12;
}

// Build an EdgeConfig from an explicit unimodular basis completion. Callers
// normally want `canonicalize`; this entry point exists for exploring the
// gauge freedom (a21, a22) -> (a21 + j*a11, a22 + j*a12).
inline EdgeConfig make_edge(int a11, int a12, int a21, int a22,
                            Termination termination = Termination::Balanced) {
    if (a11 == 0 && a12 == 0)
        throw NotCoprime("edge direction (0,0) is not a lattice direction");
    if (std::gcd(std::abs(a11), std::abs(a12)) != 1)
        throw NotCoprime("edge direction must have coprime components");
    if (a11 * a22 - a12 * a21 != 1)
        throw DomainError("transverse vector must complete a det=+1 basis");

    EdgeConfig cfg;
    cfg.a11 = a11; cfg.a12 = a12; cfg.a21 = a21; cfg.a22 = a22;
    detail::fill_derived(cfg);

    cfg.nAmin = 0;
    switch (termination) {
    case Termination::Balanced:
        cfg.nBmin = 0;
        break;
    case Termination::UnbalancedAFrontier:
        if (cfg.s2 != -1)
            throw IncompatibleTermination(
                "A-frontier unbalanced cut requires a11 - a12 = -1 mod 3");
        cfg.nBmin = 1;
        break;
    case Termination::UnbalancedBFrontier:
        if (cfg.s2 != 1)
            throw IncompatibleTermination(
                "B-frontier unbalanced cut requires a11 - a12 = +1 mod 3");
        cfg.nBmin = -1;
        break;
    }
    return cfg;
}

// Canonical representative of the edge (a11, a12): (a21, a22) is produced by
// extended Euclid and reduced so that 0 <= a21 < |a11| (when a11 = 0, the
// reduction acts on a22 instead). nAmin is pinned to 0.
inline EdgeConfig canonicalize(int a11, int a12,
                               Termination termination = Termination::Balanced) {
    if (a11 == 0 && a12 == 0)
        throw NotCoprime("edge direction (0,0) is not a lattice direction");
    if (std::gcd(std::abs(a11), std::abs(a12)) != 1)
        throw NotCoprime("edge direction must have coprime components");

    long g, u, v;
    detail::ext_gcd(a11, a12, g, u, v); // a11*u + a12*v = 1
    long a22 = u, a21 = -v;             // a11*a22 - a12*a21 = 1

    if (a11 != 0) {
        long mod = std::labs(a11);
        long r = ((a21 % mod) + mod) % mod;
        long j = (r - a21) / a11;
        a21 = r;
        a22 += j * a12;
    } else {
        long mod = std::labs(a12); // == 1
        long r = ((a22 % mod) + mod) % mod;
        long j = (r - a22) / a12;
        a22 = r;
        a21 += j * a11; // no-op, kept for symmetry
    }
    return make_edge(a11, a12, int(a21), int(a22), termination);
}

// Shift the transverse vector by j periods of the edge direction. Spectral
// results are invariant under this change of gauge.
inline EdgeConfig gauge_shift(const EdgeConfig& cfg, int j) {
    EdgeConfig out = cfg;
    out.a21 += j * cfg.a11;
    out.a22 += j * cfg.a12;
    detail::fill_derived(out);
    return out;
}

// Hopping offsets sorted by transverse index, ties allowed. Always valid as
// input to the Bloch symbol, which is symmetric in the three offsets.
inline NeighborOffsets bloch_offsets(const EdgeConfig& cfg) {
    std::array<int, 3> nt = {cfg.k2, cfg.k2 - cfg.a11, cfg.k2 + cfg.a12};
    std::array<int, 3> mt = {cfg.k1, cfg.k1 + cfg.a21, cfg.k1 - cfg.a22};

    std::array<int, 3> idx = {0, 1, 2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2 - i; ++j)
            if (nt[idx[j]] > nt[idx[j + 1]]) std::swap(idx[j], idx[j + 1]);

    NeighborOffsets off;
    for (int i = 0; i < 3; ++i) {
        off.m[i] = mt[idx[i]];
        off.n[i] = nt[idx[i]];
    }
    off.strict = off.n[0] < off.n[1] && off.n[1] < off.n[2];
    return off;
}

// Strictly sorted offsets; rejects the classical zigzag directions whose
// transverse indices coincide.
inline NeighborOffsets neighbor_offsets(const EdgeConfig& cfg) {
    NeighborOffsets off = bloch_offsets(cfg);
    if (!off.strict)
        throw ClassicalZigzagUnsupported(
            "classical zigzag cut has degenerate offsets; use the dedicated "
            "flat-band path");
    return off;
}

inline EdgeClass classify(const EdgeConfig& cfg) {
    EdgeClass cls;
    if (is_classical_direction(cfg.a11, cfg.a12))
        cls.kind = EdgeKind::ClassicalZigzag;
    else
        cls.kind = cfg.s2 == 0 ? EdgeKind::ArmchairType : EdgeKind::ZigzagType;
    cls.balance = cfg.balanced() ? Balance::Balanced : Balance::Unbalanced;
    double inv_len = 1.0 / std::sqrt(cfg.edge_period_sq());
    cls.dBminusDA = 0.5 * std::sqrt(3.0) * inv_len *
                    (cfg.s2 / 3.0 + cfg.nBmin - cfg.nAmin);
    return cls;
}

} // namespace honeycomb
