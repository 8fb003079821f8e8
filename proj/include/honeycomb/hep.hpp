#pragma once

#include <utility>
#include <vector>

#include "honeycomb/edge.hpp"
#include "honeycomb/polyroots.hpp"

namespace honeycomb {

// Momenta within this distance of an exceptional value are rejected: there a
// root sits exactly on the unit circle and the inside/outside split is not
// defined.
inline constexpr double exceptional_k_tolerance = 1e-6;

// Trinomial family 1 + e^{i beta1 k} z^gamma1 + e^{i beta2 k} z^gamma2 with
// 0 < gamma1 < gamma2 and beta1*gamma2 - beta2*gamma1 = +-1.
struct HepParams {
    int beta1 = 0, beta2 = 0;
    int gamma1 = 0, gamma2 = 0;

    double kappa() const noexcept { return double(gamma1) / double(gamma2); }
    int det() const noexcept { return beta1 * gamma2 - beta2 * gamma1; }

    void validate() const {
        if (!(0 < gamma1 && gamma1 < gamma2))
            throw DomainError("trinomial exponents must satisfy 0 < gamma1 < gamma2");
        if (det() != 1 && det() != -1)
            throw DomainError("trinomial phase/exponent matrix must be unimodular");
    }
};

// The E = 0 indicial polynomial on the deeper sublattice rows:
// p_plus(z, k) = 1 + e^{i(m2-m1)k} z^{n2-n1} + e^{i(m3-m1)k} z^{n3-n1}.
inline HepParams hep_plus(const NeighborOffsets& off) {
    if (!off.strict)
        throw ClassicalZigzagUnsupported("degenerate offsets have no trinomial form");
    HepParams p{off.m[1] - off.m[0], off.m[2] - off.m[0],
                off.n[1] - off.n[0], off.n[2] - off.n[0]};
    p.validate();
    return p;
}

// p_minus(z, k) = 1 + e^{i(m3-m2)k} z^{n3-n2} + e^{i(m3-m1)k} z^{n3-n1}.
inline HepParams hep_minus(const NeighborOffsets& off) {
    if (!off.strict)
        throw ClassicalZigzagUnsupported("degenerate offsets have no trinomial form");
    HepParams p{off.m[2] - off.m[1], off.m[2] - off.m[0],
                off.n[2] - off.n[1], off.n[2] - off.n[0]};
    p.validate();
    return p;
}

// z^gamma2 * p(1/z) up to a unit factor; its unit-disc roots are the
// reciprocals of the roots of p outside the closed disc.
inline HepParams hep_reversed(const HepParams& p) {
    HepParams r{p.beta1 - p.beta2, -p.beta2, p.gamma2 - p.gamma1, p.gamma2};
    r.validate();
    return r;
}

inline std::vector<cplx> hep_coefficients(const HepParams& p, double k) {
    std::vector<cplx> c(std::size_t(p.gamma2) + 1, cplx(0.0));
    c[0] = 1.0;
    c[std::size_t(p.gamma1)] += std::polar(1.0, p.beta1 * k);
    c[std::size_t(p.gamma2)] += std::polar(1.0, p.beta2 * k);
    return c;
}

// Exceptional momenta for the trinomial family as a whole.
inline bool is_exceptional_k(double k, double tol = exceptional_k_tolerance) {
    double r = mod_two_pi(k);
    for (double x : {0.0, two_pi / 3.0, 2.0 * two_pi / 3.0, two_pi})
        if (std::abs(r - x) < tol) return true;
    return false;
}

// Exceptional momenta of a specific edge: {0, 2pi} when s2 = 0, otherwise
// {2pi/3, 4pi/3}.
inline bool is_exceptional_k_for_edge(double k, int s2,
                                      double tol = exceptional_k_tolerance) {
    double r = mod_two_pi(k);
    if (s2 == 0)
        return r < tol || r > two_pi - tol;
    return std::abs(r - two_pi / 3.0) < tol || std::abs(r - 2.0 * two_pi / 3.0) < tol;
}

// Phases solving 1 + rho1 e^{i a1} + rho2 e^{i a2} = 0 with a1 in [0, pi],
// a2 in [-pi, 0]; the three terms close a triangle, hence the preconditions.
inline std::pair<double, double> alpha_pair(double rho1, double rho2) {
    constexpr double slack = 1e-12;
    if (std::abs(rho1 - rho2) > 1.0 + slack || rho1 + rho2 < 1.0 - slack)
        throw Unsolvable("side lengths violate the triangle inequality");
    auto clamped_acos = [](double x) {
        return std::acos(std::min(1.0, std::max(-1.0, x)));
    };
    double a1 = clamped_acos((rho2 * rho2 - rho1 * rho1 - 1.0) / (2.0 * rho1));
    double a2 = -clamped_acos((rho1 * rho1 - rho2 * rho2 - 1.0) / (2.0 * rho2));
    return {a1, a2};
}

// Unique rho in (0, 1) with rho^kappa + rho = 1.
inline double rho_critical(double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw DomainError("kappa must lie in (0, 1)");
    return detail::bisect(
        [kappa](double r) { return std::pow(r, kappa) + r - 1.0; }, 0.0, 1.0,
        1e-14);
}

// M(rho) = alpha1(rho^kappa, rho) - kappa * alpha2(rho^kappa, rho), strictly
// decreasing from pi*(1+kappa) at rho_critical down to (2pi/3)*(1+kappa) at 1.
inline double m_profile(double kappa, double rho) {
    double rc = rho_critical(kappa);
    if (rho < rc - 1e-12 || rho > 1.0 + 1e-12)
        throw DomainError("rho outside [rho_critical, 1]");
    rho = std::min(1.0, std::max(rc, rho));
    auto [a1, a2] = alpha_pair(std::pow(rho, kappa), rho);
    return a1 - kappa * a2;
}

// Closed-form derivative of M, negative on (rho_critical, 1).
inline double m_profile_derivative(double kappa, double rho) {
    double r2k = std::pow(rho, 2.0 * kappa);
    double rr = 2.0 * (1.0 + rho * rho) * r2k - r2k * r2k -
                (1.0 - rho * rho) * (1.0 - rho * rho);
    if (rr <= 0.0)
        throw DomainError("derivative undefined at the interval edge");
    double bracket = kappa * ((1.0 - kappa) * r2k - 1.0) + (kappa - 1.0) * rho * rho;
    return 2.0 / rho / std::sqrt(rr) * bracket;
}

namespace detail {

// Inverse of M on [rho_critical, 1] by bisection. M has a square-root
// singularity at rho_critical, so the bisection runs in u = sqrt(rho - rc),
// where M is Lipschitz; this keeps the inverse accurate near the endpoint.
inline double solve_m(double kappa, double rc, double t) {
    auto m_value = [kappa, rc](double u) {
        double rho = std::min(1.0, rc + u * u);
        auto [a1, a2] = alpha_pair(std::pow(rho, kappa), rho);
        return a1 - kappa * a2;
    };
    double umax = std::sqrt(1.0 - rc);
    double u = bisect([&](double v) { return t - m_value(v); }, 0.0, umax, 1e-13);
    return std::min(1.0, rc + u * u);
}

// Unit-disc roots from the phase construction: enumerate branch pairs
// (sigma, l) whose reduced angle lands in ((2pi/3)(1+kappa), pi(1+kappa)],
// solve M(rho) = t for the radius and read the angle off the phase system.
inline std::vector<cplx> analytic_inside_roots(const HepParams& p, double k) {
    const double kappa = p.kappa();
    const double rc = rho_critical(kappa);
    const int det = p.det();
    const double sum = double(p.gamma1 + p.gamma2);
    const double lo = (two_pi / 3.0) * sum; // exclusive
    const double hi = pi * sum;             // inclusive
    constexpr double edge_eps = 1e-9;

    // At k = pi (with gamma1 + gamma2 odd) both sign branches land exactly on
    // the closed endpoint of the angle interval and describe one and the same
    // real root at rho_critical; it is emitted once.
    bool endpoint_used = false;

    std::vector<cplx> roots;
    for (int sigma : {+1, -1}) {
        const double base = det * sigma * k;
        long lmin = long(std::floor((lo - base) / two_pi)) + 1;
        long lmax = long(std::floor((hi - base) / two_pi + edge_eps));
        for (long l = lmin; l <= lmax; ++l) {
            double tp = base + two_pi * double(l);
            if (tp <= lo + edge_eps || tp > hi + edge_eps) continue;
            double rho, a2;
            if (tp > hi - edge_eps) {
                if (endpoint_used) continue;
                endpoint_used = true;
                rho = rc;
                a2 = -pi;
            } else {
                rho = solve_m(kappa, rc, tp / p.gamma2);
                a2 = alpha_pair(std::pow(rho, kappa), rho).second;
            }
            double theta = (sigma * a2 - p.beta2 * (k + two_pi * det * sigma * double(l))) /
                           double(p.gamma2);
            roots.push_back(std::polar(std::pow(rho, 1.0 / p.gamma2), mod_two_pi(theta)));
        }
    }
    return roots;
}

} // namespace detail

// Number of unit-disc roots of the trinomial: with gamma1 + gamma2 = 3K + S,
// the count is K + S * [k in (2pi/3, 4pi/3)].
inline int count_inside(const HepParams& p, double k) {
    int kk, ss;
    detail::split_mod3(p.gamma1 + p.gamma2, kk, ss);
    return kk + (in_inner_interval(k) ? ss : 0);
}

// Closed-form root construction, split against the unit circle. Outside roots
// are recovered as reciprocals of the unit-disc roots of the reversed
// trinomial. Rejects momenta within 1e-6 of {0, 2pi/3, 4pi/3, 2pi}.
inline DiscRoots roots_analytic(const HepParams& p, double k) {
    p.validate();
    if (is_exceptional_k(k))
        throw ExceptionalQuasimomentum(
            "root construction undefined within 1e-6 of an exceptional momentum");

    DiscRoots out;
    out.inside = detail::analytic_inside_roots(p, k);
    for (cplx w : detail::analytic_inside_roots(hep_reversed(p), k))
        out.outside.push_back(1.0 / w);

    if (int(out.degree()) != p.gamma2)
        throw NumericalFailure("analytic root enumeration missed a branch");
    out.minCircleDistance = std::numeric_limits<double>::infinity();
    for (cplx z : out.all())
        out.minCircleDistance =
            std::min(out.minCircleDistance, std::abs(std::abs(z) - 1.0));
    if (count_inside(p, k) != int(out.inside.size()))
        throw NumericalFailure("analytic inside-root count mismatch");
    return out;
}

// Unit-disc root count of p_plus: -n1 - s2 * [k in (2pi/3, 4pi/3)].
inline int count_p(const NeighborOffsets& off, double k, int s2) {
    if (is_exceptional_k_for_edge(k, s2))
        throw ExceptionalQuasimomentum("root count jumps at exceptional momentum");
    return -off.n[0] - (in_inner_interval(k) ? s2 : 0);
}

// Unit-disc root count of p_minus: n3 + s2 * [k in (2pi/3, 4pi/3)].
inline int count_q(const NeighborOffsets& off, double k, int s2) {
    if (is_exceptional_k_for_edge(k, s2))
        throw ExceptionalQuasimomentum("root count jumps at exceptional momentum");
    return off.n[2] + (in_inner_interval(k) ? s2 : 0);
}

inline int count_p(const EdgeConfig& cfg, double k) {
    return count_p(neighbor_offsets(cfg), k, cfg.s2);
}

inline int count_q(const EdgeConfig& cfg, double k) {
    return count_q(neighbor_offsets(cfg), k, cfg.s2);
}

} // namespace honeycomb
