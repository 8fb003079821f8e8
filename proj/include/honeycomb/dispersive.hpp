#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "honeycomb/bloch.hpp"
#include "honeycomb/hep.hpp"

namespace honeycomb {

// Decaying/growing exponential mode families at fixed (k, E): the roots of
// the degree-2(n3-n1) characteristic polynomial split evenly against the unit
// circle, and each unit-disc root carries a two-component amplitude vector.
struct ModeBasis {
    std::vector<cplx> inside;  // |zeta| < 1, the decaying family
    std::vector<cplx> outside; // |zeta| > 1
    std::vector<std::array<cplx, 2>> vectors; // per inside mode, (A, B) components
    double k = 0.0;
    cplx E = 0.0;
    bool usedFallbackVectors = false;
};

struct DeltaValue {
    cplx value = 0.0;
    double scale = 0.0; // Hadamard bound on |value| from the row norms

    double normalizedAbs() const noexcept {
        return scale > 0.0 ? std::abs(value) / scale : 0.0;
    }
};

struct DeltaGrid {
    std::vector<double> kValues;
    std::vector<double> eValues;
    std::vector<double> logAbsDelta; // row-major, NaN where masked
    std::vector<unsigned char> essMask;

    std::size_t index(std::size_t ik, std::size_t ie) const noexcept {
        return ik * eValues.size() + ie;
    }
};

struct WindingResult {
    double k0 = 0.0;
    cplx E0 = 0.0;
    double radius = 0.0;
    int samples = 0;
    int winding = 0;
    double minAbsDelta = 0.0;
};

inline cplx eval_p_plus(const NeighborOffsets& off, double k, cplx zeta) {
    cplx s = 0.0;
    for (int nu = 0; nu < 3; ++nu)
        s += std::polar(1.0, k * off.m[nu]) * detail::pow_int(zeta, off.n[nu]);
    return s;
}

inline cplx eval_p_minus(const NeighborOffsets& off, double k, cplx zeta) {
    cplx s = 0.0;
    for (int nu = 0; nu < 3; ++nu)
        s += std::polar(1.0, -k * off.m[nu]) * detail::pow_int(zeta, -off.n[nu]);
    return s;
}

// Coefficients of q_k(z, E) = p_plus * p_minus - e^{ik(m3-m1)} z^{n3-n1} E^2,
// the polynomial whose roots generate the exponential bulk solutions.
inline std::vector<cplx> characteristic_coefficients(const NeighborOffsets& off,
                                                     double k, cplx E) {
    const auto cp = hep_coefficients(hep_plus(off), k);
    const auto cm = hep_coefficients(hep_minus(off), k);
    std::vector<cplx> q(cp.size() + cm.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < cp.size(); ++i)
        for (std::size_t j = 0; j < cm.size(); ++j) q[i + j] += cp[i] * cm[j];
    q[std::size_t(off.span())] -=
        std::polar(1.0, k * (off.m[2] - off.m[0])) * E * E;
    return q;
}

// Margin used when checking that E stays clear of the essential spectrum.
inline constexpr double essential_margin = 1e-9;

namespace detail {

// Validation and eigenvector assembly shared by all mode-basis paths.
inline ModeBasis assemble_basis(const NeighborOffsets& off, double k, cplx E,
                                const DiscRoots& roots, bool fallback_vectors);

} // namespace detail

// Build the mode basis at (k, E). E must avoid the essential spectrum; for
// essentially real E this is checked against the band limits. A precomputed
// slice can be passed to skip that computation.
inline ModeBasis mode_basis(const NeighborOffsets& off, double k, cplx E,
                            const SpectrumSlice* slice = nullptr,
                            bool fallback_vectors = false) {
    if (std::abs(E.imag()) < essential_margin) {
        SpectrumSlice local;
        if (!slice) {
            local = essential_slice(off, k);
            slice = &local;
        }
        if (slice->covers(E.real(), essential_margin))
            throw InEssentialSpectrum("E lies in the essential spectrum at this k");
    }

    DiscRoots roots;
    try {
        roots = roots_numeric(characteristic_coefficients(off, k, E));
    } catch (const RootOnCircle&) {
        throw InEssentialSpectrum(
            "characteristic root on the unit circle: E touches the spectrum");
    }
    return detail::assemble_basis(off, k, E, roots, fallback_vectors);
}

namespace detail {

inline ModeBasis assemble_basis(const NeighborOffsets& off, double k, cplx E,
                                const DiscRoots& roots, bool fallback_vectors) {
    const int span = off.span();
    if (int(roots.inside.size()) != span || int(roots.outside.size()) != span)
        throw NumericalFailure("characteristic roots did not split evenly");

    // For real E the root set is closed under z -> 1/conj(z).
    if (std::abs(E.imag()) < 1e-12) {
        for (cplx z : roots.inside) {
            cplx mirror = 1.0 / std::conj(z);
            double best = std::numeric_limits<double>::infinity();
            for (cplx w : roots.outside) best = std::min(best, std::abs(w - mirror));
            if (best > 1e-9 * std::abs(mirror))
                throw NumericalFailure("root reflection symmetry violated");
        }
    }

    ModeBasis basis;
    basis.inside = roots.inside;
    basis.outside = roots.outside;
    basis.k = k;
    basis.E = E;
    basis.vectors.reserve(roots.inside.size());
    for (cplx z : roots.inside) {
        const cplx pp = eval_p_plus(off, k, z);
        const cplx pm = eval_p_minus(off, k, z);
        std::array<cplx, 2> xi{pp + E, pm + E};
        double nrm = std::hypot(std::abs(xi[0]), std::abs(xi[1]));
        if (nrm < 1e-12 * (1.0 + std::abs(E))) {
            if (!fallback_vectors)
                throw ZeroEigenvector(
                    "analytic eigenvector vanished; rerun with fallback vectors");
            xi = {pp, E};
            basis.usedFallbackVectors = true;
            nrm = std::hypot(std::abs(xi[0]), std::abs(xi[1]));
            if (nrm == 0.0)
                throw ZeroEigenvector("fallback eigenvector vanished as well");
        }
        // Kernel residual of the 2x2 fiber matrix, relative to the vector and
        // to the size of the matrix entries feeding the cancellation.
        const cplx r1 = -E * xi[0] + pp * xi[1];
        const cplx r2 = pm * xi[0] - E * xi[1];
        const double entry_scale =
            std::max(1.0, std::abs(pp) + std::abs(pm) + std::abs(E));
        if (std::hypot(std::abs(r1), std::abs(r2)) > 1e-10 * nrm * entry_scale)
            throw NumericalFailure("mode vector fails the kernel equation");
        basis.vectors.push_back(xi);
    }
    return basis;
}

} // namespace detail

// Boundary-condition matrix: one column per decaying mode, one row per
// boundary constraint. A-site rows run over n in [nBmin - n3, nAmin), B-site
// rows over n in [nAmin + n1, nBmin); together that is n3 - n1 rows.
inline Eigen::MatrixXcd boundary_matrix(const EdgeConfig& cfg,
                                        const NeighborOffsets& off,
                                        const ModeBasis& basis) {
    const int span = off.span();
    Eigen::MatrixXcd m(span, span);
    int row = 0;
    for (long n = cfg.nBmin - off.n[2]; n < cfg.nAmin; ++n, ++row)
        for (int j = 0; j < span; ++j)
            m(row, j) = detail::pow_int(basis.inside[j], n) * basis.vectors[j][0];
    for (long n = cfg.nAmin + off.n[0]; n < cfg.nBmin; ++n, ++row)
        for (int j = 0; j < span; ++j)
            m(row, j) = detail::pow_int(basis.inside[j], n) * basis.vectors[j][1];
    if (row != span)
        throw NumericalFailure("boundary constraint count mismatch");
    return m;
}

// Determinant of the boundary-condition matrix. Its zeros in E, off the
// essential spectrum, are the edge-state eigenvalues at momentum k.
inline DeltaValue delta(const EdgeConfig& cfg, const NeighborOffsets& off,
                        double k, cplx E, const SpectrumSlice* slice = nullptr) {
    const ModeBasis basis = mode_basis(off, k, E, slice);
    const Eigen::MatrixXcd m = boundary_matrix(cfg, off, basis);
    DeltaValue dv;
    dv.value = Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
    dv.scale = 1.0;
    for (int i = 0; i < m.rows(); ++i) dv.scale *= m.row(i).norm();
    return dv;
}

inline int resolve_threads(int requested = 0) {
    int n = requested > 0 ? requested : int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("HONEYCOMB_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

// log|Delta| over the uniform grid k = l*2pi/Nk, E = -Elim + j*2Elim/NE,
// masked (NaN) where E falls within 1e-6 of the essential spectrum. Rows are
// distributed over worker threads; the result does not depend on the count.
inline DeltaGrid scan(const EdgeConfig& cfg, const NeighborOffsets& off, int nk,
                      int ne, double elim, int threads = 0) {
    if (nk < 2 || ne < 2) throw DomainError("grid needs at least 2 intervals");
    if (!(elim > 0.0)) throw DomainError("energy window must be positive");

    DeltaGrid grid;
    grid.kValues.resize(std::size_t(nk) + 1);
    grid.eValues.resize(std::size_t(ne) + 1);
    for (int l = 0; l <= nk; ++l) grid.kValues[l] = two_pi * l / nk;
    for (int j = 0; j <= ne; ++j) grid.eValues[j] = -elim + 2.0 * elim * j / ne;
    grid.logAbsDelta.assign(grid.kValues.size() * grid.eValues.size(),
                            std::numeric_limits<double>::quiet_NaN());
    grid.essMask.assign(grid.logAbsDelta.size(), 0);

    const int nthreads = resolve_threads(threads);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));

    auto work = [&](int tid) {
        try {
            for (;;) {
                const int l = next.fetch_add(1);
                if (l > nk) break;
                const double k = grid.kValues[std::size_t(l)];
                const SpectrumSlice slice = essential_slice(off, k);
                // The E-independent part of the characteristic polynomial is
                // shared by the whole column, and consecutive cells reuse the
                // previous root set as a warm start.
                const std::vector<cplx> base =
                    characteristic_coefficients(off, k, cplx(0.0));
                const cplx e2coef = std::polar(1.0, k * (off.m[2] - off.m[0]));
                std::vector<cplx> coeffs = base;
                std::vector<cplx> warm;
                for (int j = 0; j <= ne; ++j) {
                    const double e = grid.eValues[std::size_t(j)];
                    const std::size_t at = grid.index(std::size_t(l), std::size_t(j));
                    if (slice.covers(e, 1e-6)) {
                        grid.essMask[at] = 1;
                        continue;
                    }
                    coeffs[std::size_t(off.span())] =
                        base[std::size_t(off.span())] - e2coef * e * e;
                    const DiscRoots roots = roots_numeric_warm(coeffs, warm);
                    const ModeBasis basis =
                        detail::assemble_basis(off, k, e, roots, false);
                    const cplx det = Eigen::PartialPivLU<Eigen::MatrixXcd>(
                                         boundary_matrix(cfg, off, basis))
                                         .determinant();
                    grid.logAbsDelta[at] =
                        std::log(std::max(std::abs(det), 1e-300));
                }
            }
        } catch (...) {
            errors[std::size_t(tid)] = std::current_exception();
        }
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return grid;
}

// Threshold separating "on a zero curve" from background on a scan grid:
// two natural-log units below the first percentile of the finite values.
// Cells on the zero-energy grid line are excluded from the percentile: a
// flat band fills that line with exact zeros, which would otherwise drag
// the background estimate down to the flat-band floor.
inline double locus_threshold(const DeltaGrid& grid) {
    const double estep =
        grid.eValues.size() > 1 ? grid.eValues[1] - grid.eValues[0] : 0.0;
    std::vector<double> finite;
    finite.reserve(grid.logAbsDelta.size());
    for (std::size_t ik = 0; ik < grid.kValues.size(); ++ik)
        for (std::size_t ie = 0; ie < grid.eValues.size(); ++ie) {
            if (std::abs(grid.eValues[ie]) < 0.5 * estep) continue;
            double v = grid.logAbsDelta[grid.index(ik, ie)];
            if (std::isfinite(v)) finite.push_back(v);
        }
    if (finite.empty())
        throw NumericalFailure("scan grid is fully masked");
    std::sort(finite.begin(), finite.end());
    const std::size_t at = finite.size() / 100;
    return finite[std::min(at, finite.size() - 1)] - 2.0;
}

// One connected low-|Delta| curve on the grid: cell indices plus its energy
// extent.
struct DeltaLocus {
    std::vector<std::pair<std::size_t, std::size_t>> cells; // (ik, ie)
    double minAbsE = 0.0;
    double maxAbsE = 0.0;
};

// Cells below the threshold grouped by 8-neighbor connectivity.
inline std::vector<DeltaLocus> trace_loci(const DeltaGrid& grid, double threshold) {
    const std::size_t nk = grid.kValues.size(), ne = grid.eValues.size();
    std::vector<int> label(nk * ne, -1);
    auto below = [&](std::size_t ik, std::size_t ie) {
        double v = grid.logAbsDelta[grid.index(ik, ie)];
        return std::isfinite(v) && v < threshold;
    };

    std::vector<DeltaLocus> loci;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t ik = 0; ik < nk; ++ik)
        for (std::size_t ie = 0; ie < ne; ++ie) {
            if (label[grid.index(ik, ie)] >= 0 || !below(ik, ie)) continue;
            DeltaLocus locus;
            locus.minAbsE = std::numeric_limits<double>::infinity();
            stack.push_back({ik, ie});
            label[grid.index(ik, ie)] = int(loci.size());
            while (!stack.empty()) {
                auto [ck, ce] = stack.back();
                stack.pop_back();
                locus.cells.push_back({ck, ce});
                double ae = std::abs(grid.eValues[ce]);
                locus.minAbsE = std::min(locus.minAbsE, ae);
                locus.maxAbsE = std::max(locus.maxAbsE, ae);
                for (int dk = -1; dk <= 1; ++dk)
                    for (int de = -1; de <= 1; ++de) {
                        if (dk == 0 && de == 0) continue;
                        long jk = long(ck) + dk, je = long(ce) + de;
                        if (jk < 0 || je < 0 || jk >= long(nk) || je >= long(ne))
                            continue;
                        std::size_t at = grid.index(std::size_t(jk), std::size_t(je));
                        if (label[at] >= 0 || !below(std::size_t(jk), std::size_t(je)))
                            continue;
                        label[at] = int(loci.size());
                        stack.push_back({std::size_t(jk), std::size_t(je)});
                    }
            }
            loci.push_back(std::move(locus));
        }
    return loci;
}

namespace detail {

// Permute the decaying modes of `basis` so that mode i is the nearest
// continuation of reference root i. Without this, the arbitrary eigenvalue
// ordering permutes determinant columns between samples and scrambles the
// sign of Delta along a path.
inline void track_modes(ModeBasis& basis, const std::vector<cplx>& reference) {
    const std::size_t n = reference.size();
    std::vector<cplx> roots(n);
    std::vector<std::array<cplx, 2>> vecs(n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t pick = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            double d = std::abs(basis.inside[j] - reference[i]);
            if (d < best) { best = d; pick = j; }
        }
        used[pick] = true;
        roots[i] = basis.inside[pick];
        vecs[i] = basis.vectors[pick];
    }
    basis.inside = std::move(roots);
    basis.vectors = std::move(vecs);
}

} // namespace detail

// Integer phase circulation of Delta around the circle E0 + rE*e^{i theta}.
// Adjacent samples must stay within pi/2 in phase; otherwise the sampling is
// declared too coarse and the caller should double Nc. Modes are tracked
// around the circle so the sampled Delta is one continuous analytic branch.
inline WindingResult winding(const EdgeConfig& cfg, const NeighborOffsets& off,
                             double k0, cplx e0, double rE, int nc) {
    if (!(rE > 0.0)) throw DomainError("winding radius must be positive");
    if (nc < 16) throw DomainError("winding needs at least 16 samples");

    const SpectrumSlice slice = essential_slice(off, k0);
    std::vector<cplx> values(static_cast<std::size_t>(nc));
    std::vector<cplx> reference;
    for (int j = 0; j < nc; ++j) {
        const cplx e = e0 + rE * std::polar(1.0, two_pi * j / nc);
        if (std::abs(e.imag()) < essential_margin && slice.covers(e.real(), 1e-6))
            throw CircleHitsEssentialSpectrum(
                "winding circle intersects the essential spectrum");
        ModeBasis basis = mode_basis(off, k0, e, &slice);
        if (j == 0)
            reference = basis.inside;
        else
            detail::track_modes(basis, reference);
        reference = basis.inside;
        values[std::size_t(j)] =
            Eigen::PartialPivLU<Eigen::MatrixXcd>(boundary_matrix(cfg, off, basis))
                .determinant();
    }

    WindingResult res;
    res.k0 = k0;
    res.E0 = e0;
    res.radius = rE;
    res.samples = nc;
    res.minAbsDelta = std::numeric_limits<double>::infinity();
    for (cplx v : values) res.minAbsDelta = std::min(res.minAbsDelta, std::abs(v));
    if (res.minAbsDelta == 0.0)
        throw NumericalFailure("Delta vanished on the winding circle");

    double total = 0.0;
    for (int j = 0; j < nc; ++j) {
        const cplx a = values[std::size_t(j)];
        const cplx b = values[std::size_t((j + 1) % nc)];
        double step = std::arg(b / a);
        if (std::abs(step) >= pi / 2.0)
            throw PhaseStepTooLarge(
                "phase step >= pi/2 between samples; double Nc and retry");
        total += step;
    }
    res.winding = int(std::lround(total / two_pi));
    return res;
}

// Localize a real eigenvalue certified by a unit winding number: golden
// section on |Delta(k0, .)| inside the certified interval, to 1e-10.
inline double refine_zero(const EdgeConfig& cfg, const NeighborOffsets& off,
                          double k0, double eGuess, double radius = 0.01,
                          int nc = 64) {
    const WindingResult w = winding(cfg, off, k0, cplx(eGuess), radius, nc);
    if (w.winding != 1)
        throw NotCertified("winding number is not 1 around the guess");
    const SpectrumSlice slice = essential_slice(off, k0);
    return detail::golden_min(
        [&](double e) { return std::abs(delta(cfg, off, k0, e, &slice).value); },
        eGuess - radius, eGuess + radius, 1e-10);
}

} // namespace honeycomb
