#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <vector>

#include "honeycomb/errors.hpp"
#include "honeycomb/numeric.hpp"

namespace honeycomb {

// Distance below which a root is considered to sit on the unit circle; roots
// cross the circle only at exceptional momenta or for E inside the bands, so
// hitting the threshold is reported rather than classified.
inline constexpr double circle_threshold = 1e-8;

// Minimum pairwise root separation tolerated before declaring a multiple root.
inline constexpr double simple_root_threshold = 1e-8;

// Roots of a polynomial split against the unit circle.
struct DiscRoots {
    std::vector<cplx> inside;  // |z| < 1
    std::vector<cplx> outside; // |z| > 1
    double minCircleDistance = 0.0; // min over roots of ||z| - 1|

    std::size_t degree() const noexcept { return inside.size() + outside.size(); }

    std::vector<cplx> all() const {
        std::vector<cplx> r = inside;
        r.insert(r.end(), outside.begin(), outside.end());
        return r;
    }
};

namespace detail {

// Horner evaluation together with the running magnitude sum used as the
// backward-error scale: |p(z)| <= eps * sum_d |c_d| |z|^d for exact roots.
inline void eval_poly(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp,
                      double& scale) {
    p = 0.0;
    dp = 0.0;
    scale = 0.0;
    double az = std::abs(z);
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
        scale = scale * az + std::abs(c[i]);
    }
}

// Parlett-Reinsch style balancing by powers of two; companion matrices of
// polynomials with widely scaled coefficients benefit noticeably.
inline void balance(Eigen::MatrixXcd& a) {
    const int n = int(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            double s = r + c;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (r + c < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

inline std::vector<cplx> companion_eigenvalues(const std::vector<cplx>& coeffs) {
    const int d = int(coeffs.size()) - 1;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -coeffs[i] / coeffs[d];
    balance(c);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(c, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NumericalFailure("companion-matrix Schur factorization failed");
    std::vector<cplx> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = schur.matrixT()(i, i);
    return roots;
}

} // namespace detail

inline double min_pairwise_distance(const std::vector<cplx>& z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            d = std::min(d, std::abs(z[i] - z[j]));
    return d;
}

namespace detail {

// Classification and certification shared by both root-finding paths.
inline DiscRoots split_roots(const std::vector<cplx>& coeffs,
                             const std::vector<cplx>& roots) {
    DiscRoots out;
    out.minCircleDistance = std::numeric_limits<double>::infinity();
    for (cplx z : roots) {
        cplx p, dp;
        double scale;
        eval_poly(coeffs, z, p, dp, scale);
        if (std::abs(p) > 1e-12 * scale)
            throw NumericalFailure("root residual exceeds 1e-12 after polishing");
        double dist = std::abs(std::abs(z) - 1.0);
        out.minCircleDistance = std::min(out.minCircleDistance, dist);
        if (dist < circle_threshold)
            throw RootOnCircle("polynomial root within 1e-8 of the unit circle");
        (std::abs(z) < 1.0 ? out.inside : out.outside).push_back(z);
    }
    if (min_pairwise_distance(roots) < simple_root_threshold)
        throw MultipleRoot("polynomial roots closer than 1e-8");
    return out;
}

// Aberth-Ehrlich refinement from warm starts (all roots updated jointly).
// Returns false instead of throwing when the starts are not good enough;
// callers then fall back to the companion matrix.
inline bool refine_warm(const std::vector<cplx>& coeffs, std::vector<cplx>& z) {
    const std::size_t d = coeffs.size() - 1;
    if (z.size() != d) return false;
    std::vector<cplx> step(d);
    for (int iter = 0; iter < 40; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cplx p, dp;
            double scale;
            eval_poly(coeffs, z[i], p, dp, scale);
            worst = std::max(worst, std::abs(p) / scale);
            if (std::abs(dp) == 0.0) return false;
            cplx newton = p / dp;
            cplx repulse = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (std::abs(diff) < 1e-14) return false;
                repulse += 1.0 / diff;
            }
            cplx denom = 1.0 - newton * repulse;
            if (std::abs(denom) < 1e-14) return false;
            step[i] = newton / denom;
            if (!std::isfinite(step[i].real()) || !std::isfinite(step[i].imag()))
                return false;
        }
        if (worst < 1e-13) {
            // Final Newton polish per root, down to the evaluation floor.
            for (std::size_t i = 0; i < d; ++i)
                for (int s = 0; s < 2; ++s) {
                    cplx p, dp;
                    double scale;
                    eval_poly(coeffs, z[i], p, dp, scale);
                    if (std::abs(dp) == 0.0) break;
                    z[i] -= p / dp;
                }
            return true;
        }
        for (std::size_t i = 0; i < d; ++i) z[i] -= step[i];
    }
    return false;
}

} // namespace detail

// All roots of sum_d coeffs[d] z^d via the balanced companion matrix, each
// polished by three Newton steps, classified against the unit circle.
// Throws RootOnCircle if any root lies within `circle_threshold` of |z| = 1.
inline DiscRoots roots_numeric(const std::vector<cplx>& coeffs) {
    if (coeffs.size() < 2)
        throw DomainError("polynomial must have positive degree");
    if (std::abs(coeffs.back()) == 0.0)
        throw DomainError("leading coefficient must be nonzero");

    std::vector<cplx> roots = detail::companion_eigenvalues(coeffs);
    for (cplx& z : roots) {
        for (int step = 0; step < 3; ++step) {
            cplx p, dp;
            double scale;
            detail::eval_poly(coeffs, z, p, dp, scale);
            if (std::abs(dp) == 0.0) break;
            z -= p / dp;
        }
    }
    return detail::split_roots(coeffs, roots);
}

// Warm-start variant for paths along which the coefficients drift slowly
// (e.g. the energy sweep of a scan column): Aberth refinement seeded with the
// previous root set, with the companion matrix as fallback. `warm` is updated
// with the roots found.
inline DiscRoots roots_numeric_warm(const std::vector<cplx>& coeffs,
                                    std::vector<cplx>& warm) {
    if (warm.size() + 1 == coeffs.size()) {
        std::vector<cplx> z = warm;
        if (detail::refine_warm(coeffs, z)) {
            try {
                DiscRoots out = detail::split_roots(coeffs, z);
                warm = z;
                return out;
            } catch (const Error&) {
                // fall through to the certified path
            }
        }
    }
    DiscRoots out = roots_numeric(coeffs);
    warm = out.all();
    return out;
}

} // namespace honeycomb
