#include "lochom/scales.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lochom {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::string fmt(double v)
{
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// Open-interval membership of an explicit choice.
void require_inside(const char* what, double v, double lo, double hi)
{
    if (!(v > lo && v < hi)) {
        throw InfeasibleScales(std::string(what) + " = " + fmt(v) + " outside (" + fmt(lo) + ", " + fmt(hi) + ")",
                               v <= lo ? lo - v : v - hi);
    }
}

}  // namespace

ScaleConstants ScaleConstants::make(bool noisy, ComplexFlavor flavor, bool euclidean)
{
    ScaleConstants cc;
    cc.t = noisy ? 1 : 0;
    cc.s = euclidean ? sqrt2 : 2.0;
    cc.c = flavor == ComplexFlavor::cech ? 1.0 : cc.s;
    return cc;
}

ComplexFlavor ScaleConstants::flavor() const { return c == 1.0 ? ComplexFlavor::cech : ComplexFlavor::rips; }

void ScaleConstants::validate() const
{
    if (t != 0 && t != 1) throw std::invalid_argument("t must be 0 or 1");
    if (!same(s, sqrt2) && s != 2.0) throw std::invalid_argument("s must be sqrt(2) or 2");
    if (c != 1.0 && !same(c, s)) throw std::invalid_argument("c must be 1 or s");
}

double g(const ScaleConstants& cc, double a, double b) { return cc.c * a + (cc.c + cc.t) * b; }

double f(const ScaleConstants& cc, double a, double b) { return (1 + cc.c) * a + (1 + cc.c + 2 * cc.t) * b; }

double g1(const ScaleConstants& cc, double a, double b) { return a + (1.0 + cc.t) * b; }

StrongCoefficients strong_coefficients(const ScaleConstants& cc)
{
    const double c = cc.c;
    const double t = cc.t;
    return {c * c + (t + 1) * c + t, c * c + (t + 3) * c + 5 * t + 2};
}

SelectedScales select_strong(const ScaleConstants& cc, double eps, double rbar_beta, double Rbar_beta,
                             std::optional<ScaleChoice> choice)
{
    cc.validate();
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (rbar_beta < 0 || !(Rbar_beta > 0)) throw std::invalid_argument("r-bar must be >= 0 and R-bar > 0");
    auto [bc, gc] = strong_coefficients(cc);
    const double beta = bc * eps;
    const double gamma = gc * eps;
    const double tau = Rbar_beta - rbar_beta;
    if (!(tau > gamma)) {
        throw InfeasibleScales("tau = R-bar - r-bar = " + fmt(tau) + " does not exceed gamma = " + fmt(gamma),
                               gamma - tau);
    }
    const double big_lo = rbar_beta + gamma;
    const double big_hi = Rbar_beta;
    double big = 0.5 * (big_lo + big_hi);
    if (choice) {
        big = choice->big;
        require_inside("R'", big, big_lo, big_hi);
    }
    const double small_lo = rbar_beta;
    const double small_hi = big - gamma;
    double small = 0.5 * (small_lo + small_hi);
    if (choice) {
        small = choice->small;
        require_inside("r'", small, small_lo, small_hi);
    }
    SelectedScales out;
    out.scale1 = eps;
    out.scale2 = (1 + cc.c + cc.t) * eps;
    out.ball_R = big - (1 + cc.t) * eps;
    out.ball_r = small + beta;
    out.regime = "strong";
    return out;
}

SelectedScales select_bounded(const ScaleConstants& cc, double eps, const SeemlinessBound& sb,
                              std::optional<ScaleChoice> choice)
{
    if (!(sb.M > 0) || !(sb.m > 0) || !(sb.M0 > 0)) throw std::invalid_argument("M, m, M0 must be positive");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    auto [bc, gc] = strong_coefficients(cc);
    const double rbar = sb.M * std::pow(bc * eps, sb.m);
    const double need = rbar + gc * eps;
    if (!(need < sb.M0)) {
        throw InfeasibleScales("M (beta eps)^m + gamma eps = " + fmt(need) + " is not below M0 = " + fmt(sb.M0),
                               need - sb.M0);
    }
    SelectedScales out = select_strong(cc, eps, rbar, sb.M0, choice);
    out.regime = "bounded";
    return out;
}

double bounded_eps_threshold(const ScaleConstants& cc, const SeemlinessBound& sb)
{
    auto [bc, gc] = strong_coefficients(cc);
    if (sb.m == 1.0) return sb.M0 / (sb.M * bc + gc);
    auto lhs = [&](double e) { return sb.M * std::pow(bc * e, sb.m) + gc * e; };
    double lo = 0.0;
    double hi = 1.0;
    while (lhs(hi) < sb.M0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (lhs(mid) < sb.M0 ? lo : hi) = mid;
    }
    return lo;
}

double manifold_eps_bound(const ScaleConstants& cc, double nu)
{
    auto [bc, gc] = strong_coefficients(cc);
    return 2.0 * nu / (2.0 * bc + gc);
}

SelectedScales select_manifold(const ScaleConstants& cc, double eps, const ReachBound& rb,
                               std::optional<ScaleChoice> choice)
{
    cc.validate();
    if (!same(cc.s, sqrt2)) throw std::invalid_argument("manifold scales need a Euclidean ambient space (s = sqrt 2)");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(rb.nu > 0)) throw std::invalid_argument("reach must be positive");
    auto [bc, gc] = strong_coefficients(cc);
    const double t = cc.t;
    const double bound = manifold_eps_bound(cc, rb.nu);
    if (!(eps < bound)) {
        throw InfeasibleScales("eps = " + fmt(eps) + " is not below 2 nu / (2 beta + gamma) = " + fmt(bound),
                               eps - bound);
    }
    const double big_lo = (bc + gc - t - 1) * eps;
    double big_hi = 2.0 * rb.nu - (bc + t + 1) * eps;
    if (rb.boundary_margin) {
        const double w = *rb.boundary_margin;
        const double w_lo = (2 * bc + gc) * eps;
        const double w_hi = 2.0 * rb.nu;
        if (!(w > w_lo && w < w_hi)) {
            throw InfeasibleScales("boundary margin w = " + fmt(w) + " outside (" + fmt(w_lo) + ", " + fmt(w_hi) + ")",
                                   w <= w_lo ? w_lo - w : w - w_hi);
        }
        big_hi = std::min(big_hi, w);
    }
    if (!(big_hi > big_lo)) throw InfeasibleScales("empty interval for R", big_lo - big_hi);
    double big = 0.5 * (big_lo + big_hi);
    if (choice) {
        big = choice->big;
        require_inside("R", big, big_lo, big_hi);
    }
    const double small_lo = 2 * bc * eps;
    const double small_hi = big - (gc - bc) * eps;
    if (!(small_hi > small_lo)) throw InfeasibleScales("empty interval for r", small_lo - small_hi);
    double small = 0.5 * (small_lo + small_hi);
    if (choice) {
        small = choice->small;
        require_inside("r", small, small_lo, small_hi);
    }
    SelectedScales out;
    out.scale1 = eps;
    out.scale2 = (1 + cc.c + cc.t) * eps;
    out.ball_R = big;
    out.ball_r = small;
    out.regime = rb.boundary_margin ? "manifold-boundary" : "manifold";
    return out;
}

std::vector<ScaleWarning> validate_manual(const ScaleConstants& cc, double eps, const SelectedScales& s)
{
    cc.validate();
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(s.scale1 > 0) || !(s.scale2 > 0)) throw std::invalid_argument("complex scales must be positive");
    if (!(s.ball_R > 0) || s.ball_r < 0) throw std::invalid_argument("ball radii must be positive");
    if (s.scale1 > s.scale2) throw std::invalid_argument("nesting violation: scale1 > scale2");
    if (s.ball_r > s.ball_R) throw std::invalid_argument("nesting violation: ball_r > ball_R");

    auto [bc, gc] = strong_coefficients(cc);
    std::vector<ScaleWarning> out;
    auto check = [&](const std::string& text, double lhs, double rhs, bool strict) {
        double slack = 1e-9 * std::max(1.0, std::abs(rhs));
        bool ok = strict ? lhs > rhs : lhs + slack >= rhs;
        if (!ok) out.push_back({text, rhs - lhs});
    };
    check("scale1 >= eps", s.scale1, eps, false);
    check("scale2 - scale1 >= g_c(0, eps) = (c + t) eps", s.scale2 - s.scale1, g(cc, 0, eps), false);
    check("ball_R > f_c(0, eps) = (1 + c + 2t) eps", s.ball_R, f(cc, 0, eps), true);
    check("ball_R - ball_r > (gamma - beta - 1 - t) eps", s.ball_R - s.ball_r, (gc - bc - 1 - cc.t) * eps, true);
    check("ball_r > beta eps", s.ball_r, bc * eps, true);
    return out;
}

SelectedScales manual_scales(const ScaleConstants& cc, double eps, double scale1, double scale2, double ball_R,
                             double ball_r)
{
    SelectedScales s{scale1, scale2, ball_R, ball_r, "manual", {}};
    s.warnings = validate_manual(cc, eps, s);
    return s;
}

}  // namespace lochom
