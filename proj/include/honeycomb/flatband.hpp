#pragma once

#include <vector>

#include "honeycomb/bloch.hpp"
#include "honeycomb/hep.hpp"

namespace honeycomb {

enum class Site { A, B, None };
enum class KInterval { Inner, Outer, Empty }; // (2pi/3, 4pi/3) / complement / none
enum class StateFormula { Convolution, Fourier, PartialFractions };

// Roots with modulus beyond this bound make the state decay too slowly for
// comfortable truncation; such states are constructed but flagged.
inline constexpr double slow_decay_threshold = 1.0 - 1e-4;

struct FlatBandVerdict {
    bool exists = false;
    Site sublattice = Site::None;
    KInterval kInterval = KInterval::Empty;
    int dimension = 0;
};

// A zero-energy edge state supported on one sublattice: psi(n) for
// n >= baseIndex (zero below), together with its l2 norm.
struct FlatBandState {
    int baseIndex = 0;
    std::vector<cplx> amplitudes;
    Site sublattice = Site::None;
    double k = 0.0;
    double norm = 0.0;
    bool slowDecay = false;

    cplx at(long n) const noexcept {
        long i = n - baseIndex;
        if (i < 0 || i >= long(amplitudes.size())) return 0.0;
        return amplitudes[std::size_t(i)];
    }
};

// Existence table for zero-energy states. The deciding comparison is
// s2 * [k inner] against nAmin - nBmin: B-site states need "<", A-site
// states need ">", armchair edges (s2 = 0, balanced) admit neither.
// Classical zigzag cuts are special-cased to the textbook states: balanced
// supports the A-site family on the inner arc, unbalanced the B-site family
// on the outer arc.
inline FlatBandVerdict verdict(const EdgeClass& cls, const EdgeConfig& cfg,
                               double k) {
    FlatBandVerdict v;
    if (cls.kind == EdgeKind::ArmchairType) {
        v.kInterval = KInterval::Empty;
        return v;
    }
    const bool balanced = cls.balance == Balance::Balanced;
    v.kInterval = balanced ? KInterval::Inner : KInterval::Outer;
    if (is_exceptional_k_for_edge(k, cfg.s2)) return v;

    const bool inner = in_inner_interval(k);
    if (cls.kind == EdgeKind::ClassicalZigzag) {
        if (balanced == inner) {
            v.exists = true;
            v.dimension = 1;
            v.sublattice = balanced ? Site::A : Site::B;
        }
        return v;
    }

    const int ind = inner ? cfg.s2 : 0;
    const int diff = cfg.nAmin - cfg.nBmin;
    if (ind < diff) {
        v.exists = true;
        v.dimension = diff - ind;
        v.sublattice = Site::B;
    } else if (ind > diff) {
        v.exists = true;
        v.dimension = ind - diff;
        v.sublattice = Site::A;
    }
    return v;
}

namespace detail {

inline std::size_t truncation_length(double max_abs, std::size_t r) {
    if (max_abs <= 0.0) return 1;
    if (max_abs >= 1.0)
        throw NumericalFailure("state roots must lie inside the unit disc");
    double decay = 1.0 / (-std::log(max_abs));
    double tail = std::ceil(40.0 * decay) + 64.0;
    tail = std::min(tail, 4.0e6);
    return r + std::size_t(tail);
}

inline double max_modulus(const std::vector<cplx>& z) {
    double m = 0.0;
    for (cplx w : z) m = std::max(m, std::abs(w));
    return m;
}

// Drop the tail once amplitudes fall below 1e-16 of the peak.
inline void trim(std::vector<cplx>& a) {
    double peak = 0.0;
    for (cplx v : a) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    std::size_t last = a.size();
    while (last > 1 && std::abs(a[last - 1]) < 1e-16 * peak) --last;
    a.resize(last);
}

} // namespace detail

// Amplitudes of the canonical state with unit-disc roots zeta_1..zeta_r,
// starting at the base index: the first r-1 entries vanish, entry r-1+t is
// the complete homogeneous symmetric polynomial h_t(zeta). Computed by the
// r-fold composition sum, accumulated one root at a time.
inline std::vector<cplx> state_convolution(const std::vector<cplx>& roots,
                                           std::size_t length = 0) {
    const std::size_t r = roots.size();
    if (r == 0) throw DomainError("state needs at least one root");
    if (length == 0)
        length = detail::truncation_length(detail::max_modulus(roots), r);
    if (length < r) length = r;
    const std::size_t tail = length - (r - 1);

    std::vector<cplx> h(tail, 0.0);
    h[0] = 1.0;
    for (cplx z : roots)
        for (std::size_t t = 1; t < tail; ++t) h[t] += z * h[t - 1];

    std::vector<cplx> amp(length, 0.0);
    for (std::size_t t = 0; t < tail; ++t) amp[r - 1 + t] = h[t];
    detail::trim(amp);
    return amp;
}

// Same state via periodic-trapezoid quadrature of the resolvent-product
// integral, evaluated for all rows at once by an inverse FFT of the node
// values. The node count starts at 4096 and doubles until the aliasing term
// max|zeta|^Q Q^{r-1} is negligible; near-unit roots are what drive Q up.
inline std::vector<cplx> state_fourier(const std::vector<cplx>& roots,
                                       std::size_t length = 0) {
    const std::size_t r = roots.size();
    if (r == 0) throw DomainError("state needs at least one root");
    const double max_abs = detail::max_modulus(roots);
    if (length == 0) length = detail::truncation_length(max_abs, r);

    const double log_tol = std::log(1e-16);
    std::size_t q = 4096;
    auto alias_log = [&](std::size_t n) {
        return double(n) * std::log(std::min(max_abs, 1.0 - 1e-12)) +
               double(r - 1) * std::log(double(n));
    };
    while (q < (std::size_t(1) << 21) && (q <= length || alias_log(q) > log_tol))
        q *= 2;
    // Entries at t >= q would wrap around the transform; extremely slow decay
    // (already flagged upstream) is truncated at the node count instead.
    if (length >= q) length = q - 1;

    std::vector<cplx> node(q);
    for (std::size_t s = 0; s < q; ++s) {
        const cplx e = std::polar(1.0, two_pi * double(s) / double(q));
        cplx w = 1.0;
        for (cplx z : roots) w /= (e - z);
        node[s] = w;
    }
    detail::fft_pow2(node, +1); // node[u] = sum_s w_s e^{+i omega_s u}

    std::vector<cplx> amp(length, 0.0);
    for (std::size_t t = 0; t < length; ++t)
        amp[t] = node[(t + 1) % q] / double(q);
    detail::trim(amp);
    return amp;
}

// Residue form: psi(base + t) = sum_j zeta_j^t / prod_{l != j}(zeta_j - zeta_l).
// Near-coincident roots make the weights blow up; below 1e-10 separation the
// evaluation falls back to the composition sum.
inline std::vector<cplx> state_partial_fractions(const std::vector<cplx>& roots,
                                                 std::size_t length = 0,
                                                 bool* fell_back = nullptr) {
    const std::size_t r = roots.size();
    if (r == 0) throw DomainError("state needs at least one root");
    if (length == 0)
        length = detail::truncation_length(detail::max_modulus(roots), r);
    if (fell_back) *fell_back = false;

    if (r > 1 && min_pairwise_distance(roots) < 1e-10) {
        if (fell_back) *fell_back = true;
        return state_convolution(roots, length);
    }

    std::vector<cplx> weight(r);
    for (std::size_t j = 0; j < r; ++j) {
        cplx p = 1.0;
        for (std::size_t l = 0; l < r; ++l)
            if (l != j) p *= roots[j] - roots[l];
        weight[j] = 1.0 / p;
    }
    std::vector<cplx> amp(length, 0.0);
    for (std::size_t j = 0; j < r; ++j) {
        cplx pw = weight[j];
        for (std::size_t t = 0; t < length; ++t) {
            amp[t] += pw;
            pw *= roots[j];
        }
    }
    detail::trim(amp);
    return amp;
}

// Closed form for the squared l2 norm of the canonical state, by residues of
// the autocorrelation integral.
inline double norm_sq_formula(const std::vector<cplx>& roots) {
    const std::size_t r = roots.size();
    cplx total = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        cplx term = detail::pow_int(roots[j], long(r) - 1) /
                    (1.0 - std::norm(roots[j]));
        for (std::size_t l = 0; l < r; ++l) {
            if (l == j) continue;
            term /= (roots[j] - roots[l]) *
                    (1.0 - std::conj(roots[l]) * roots[j]);
        }
        total += term;
    }
    if (std::abs(total.imag()) > 1e-8 * std::abs(total))
        throw NumericalFailure("norm formula returned a non-real value");
    return total.real();
}

inline double direct_norm(const std::vector<cplx>& amplitudes) {
    double s = 0.0;
    for (cplx v : amplitudes) s += std::norm(v);
    return std::sqrt(s);
}

// Construct the zero-energy state for a non-classical zigzag edge at
// momentum k. B-site states use the unit-disc roots of p_plus and start at
// nAmin + n1; A-site states use p_minus and start at nBmin - n3.
inline FlatBandState build_state(const EdgeConfig& cfg, const NeighborOffsets& off,
                                 double k,
                                 StateFormula formula = StateFormula::Convolution) {
    const EdgeClass cls = classify(cfg);
    if (cls.kind == EdgeKind::ClassicalZigzag)
        throw ClassicalZigzagUnsupported(
            "use classical_zigzag_state for the degenerate cuts");
    const FlatBandVerdict v = verdict(cls, cfg, k);
    if (!v.exists)
        throw NoState("no zero-energy edge state at this momentum");

    const HepParams p = v.sublattice == Site::B ? hep_plus(off) : hep_minus(off);
    const DiscRoots roots = roots_numeric(hep_coefficients(p, k));
    const std::vector<cplx>& zeta = roots.inside;

    FlatBandState st;
    st.sublattice = v.sublattice;
    st.k = k;
    st.baseIndex = v.sublattice == Site::B ? cfg.nAmin + off.n[0]
                                           : cfg.nBmin - off.n[2];
    st.slowDecay = detail::max_modulus(zeta) > slow_decay_threshold;
    switch (formula) {
    case StateFormula::Convolution:
        st.amplitudes = state_convolution(zeta);
        break;
    case StateFormula::Fourier:
        st.amplitudes = state_fourier(zeta);
        break;
    case StateFormula::PartialFractions:
        st.amplitudes = state_partial_fractions(zeta);
        break;
    }
    st.norm = direct_norm(st.amplitudes);
    return st;
}

// Relative residual of the fiber eigenproblem at E = 0: the hopping sums on
// the opposite sublattice plus the boundary zeros, both of which the state
// must annihilate.
inline double flatband_residual(const EdgeConfig& cfg, const NeighborOffsets& off,
                                const FlatBandState& st) {
    const long last = st.baseIndex + long(st.amplitudes.size()) - 1;
    double sum = 0.0;

    if (st.sublattice == Site::B) {
        for (long n = cfg.nAmin; n <= last - off.n[0]; ++n) {
            cplx row = 0.0;
            for (int nu = 0; nu < 3; ++nu)
                row += std::polar(1.0, st.k * off.m[nu]) * st.at(n + off.n[nu]);
            sum += std::norm(row);
        }
        for (long n = st.baseIndex; n < cfg.nBmin; ++n) sum += std::norm(st.at(n));
    } else {
        for (long n = cfg.nBmin; n <= last + off.n[2]; ++n) {
            cplx row = 0.0;
            for (int nu = 0; nu < 3; ++nu)
                row += std::polar(1.0, -st.k * off.m[nu]) * st.at(n - off.n[nu]);
            sum += std::norm(row);
        }
        for (long n = st.baseIndex; n < cfg.nAmin; ++n) sum += std::norm(st.at(n));
    }
    return std::sqrt(sum) / st.norm;
}

// Textbook states for the six classical zigzag cuts. Balanced cuts carry
// psi(n) = (-(1+e^{ik}))^n on the A rows for k in the inner arc, with the
// k = pi limit reducing to a delta at the frontier row; unbalanced cuts carry
// psi(n) = (-1/(1+e^{-ik}))^n on the B rows for k in the outer arc.
inline FlatBandState classical_zigzag_state(const EdgeConfig& cfg, double k) {
    const EdgeClass cls = classify(cfg);
    if (cls.kind != EdgeKind::ClassicalZigzag)
        throw DomainError("edge is not a classical zigzag cut");

    FlatBandState st;
    st.k = k;
    st.baseIndex = 0;

    const bool balanced = cls.balance == Balance::Balanced;
    const double r = mod_two_pi(k);
    cplx ratio;
    if (balanced) {
        if (!in_inner_interval(k))
            throw OutOfBand("balanced classical state needs k in (2pi/3, 4pi/3)");
        st.sublattice = Site::A;
        ratio = -(1.0 + std::polar(1.0, k));
        if (std::abs(ratio) < 1e-12) { // k = pi: delta state
            st.amplitudes = {1.0};
            st.norm = 1.0;
            return st;
        }
    } else {
        const bool outer = r < two_pi / 3.0 || r > 2.0 * two_pi / 3.0;
        if (!outer)
            throw OutOfBand("unbalanced classical state needs k outside [2pi/3, 4pi/3]");
        st.sublattice = Site::B;
        ratio = -1.0 / (1.0 + std::polar(1.0, -k));
    }

    const std::size_t len = detail::truncation_length(std::abs(ratio), 1);
    st.amplitudes.resize(len);
    cplx v = 1.0;
    for (std::size_t i = 0; i < len; ++i) {
        st.amplitudes[i] = v;
        v *= ratio;
    }
    detail::trim(st.amplitudes);
    st.slowDecay = std::abs(ratio) > slow_decay_threshold;
    st.norm = direct_norm(st.amplitudes);
    return st;
}

// Residual of the defining two-term recursion of a classical state.
inline double classical_residual(const FlatBandState& st) {
    const cplx c = st.sublattice == Site::A ? 1.0 + std::polar(1.0, st.k)
                                            : 1.0 + std::polar(1.0, -st.k);
    double sum = 0.0;
    const long last = st.baseIndex + long(st.amplitudes.size()) - 1;
    if (st.sublattice == Site::A) {
        // psi(n+1) + (1 + e^{ik}) psi(n) = 0 for n >= 0
        for (long n = 0; n <= last; ++n)
            sum += std::norm(st.at(n + 1) + c * st.at(n));
    } else {
        // psi(n) + (1 + e^{-ik}) psi(n+1) = 0 for n >= 0
        for (long n = 0; n <= last; ++n)
            sum += std::norm(st.at(n) + c * st.at(n + 1));
    }
    return std::sqrt(sum) / st.norm;
}

} // namespace honeycomb
