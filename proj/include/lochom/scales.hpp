// Scale arithmetic and scale selection for local homology queries.
//
// A query compares two pairs: (complex scale a1, deleted-ball radius b1) and
// (a2, b2) with a1 <= a2, b2 <= b1. The selectors below produce such levels
// from a sampling bound eps and regularity information about the shape.

#ifndef LOCHOM_SCALES_HPP
#define LOCHOM_SCALES_HPP

#include "lochom/complexes.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lochom {

/// t = 1 for noisy samples, 0 for noise-free ones; s = sqrt(2) in Euclidean
/// space, 2 otherwise; c = 1 pairs with Cech complexes, c = s with Rips.
struct ScaleConstants
{
    int t = 0;
    double s = 0.0;
    double c = 0.0;

    static ScaleConstants make(bool noisy, ComplexFlavor flavor, bool euclidean = true);
    ComplexFlavor flavor() const;
    /// Throws std::invalid_argument unless t in {0,1}, s in {sqrt2, 2}, c in {1, s}.
    void validate() const;
};

/// g_c(a, b) = c a + (c + t) b
double g(const ScaleConstants& cc, double a, double b);
/// f_c(a, b) = (1 + c) a + (1 + c + 2t) b
double f(const ScaleConstants& cc, double a, double b);
/// The same with c = 1.
double g1(const ScaleConstants& cc, double a, double b);

struct StrongCoefficients
{
    double beta = 0.0;   // c^2 + (t+1)c + t
    double gamma = 0.0;  // c^2 + (t+3)c + 5t + 2
};

StrongCoefficients strong_coefficients(const ScaleConstants& cc);

/// r-bar(beta) <= M beta^m and M0 = R-bar(eps_x).
struct SeemlinessBound
{
    double M = 0.0;
    double m = 0.0;
    double M0 = 0.0;
};

/// Reach nu of a manifold (with boundary: min of reach(K) and reach(dK)) and
/// an optional margin w around the boundary.
struct ReachBound
{
    double nu = 0.0;
    std::optional<double> boundary_margin;
};

/// Explicit local-scale choice, or nullopt for the midpoints of the
/// admissible intervals.
struct ScaleChoice
{
    double big = 0.0;    // R' (strong/bounded) or R (manifold)
    double small = 0.0;  // r' (strong/bounded) or r (manifold)
};

struct ScaleWarning
{
    std::string inequality;
    double deficit = 0.0;
};

struct SelectedScales
{
    double scale1 = 0.0;  // a1
    double scale2 = 0.0;  // a2
    double ball_R = 0.0;  // b1
    double ball_r = 0.0;  // b2
    std::string regime;
    std::vector<ScaleWarning> warnings;
};

/// No admissible scales; `deficit` says by how much the governing inequality
/// fails.
class InfeasibleScales : public std::runtime_error
{
  public:
    InfeasibleScales(const std::string& what, double deficit) : std::runtime_error(what), deficit_(deficit) {}
    double deficit() const { return deficit_; }

  private:
    double deficit_;
};

/// Strongly seemly regime: given r-bar(beta) and R-bar(beta) at
/// beta = beta_coef * eps, requires R-bar - r-bar > gamma and returns
/// a1 = eps, a2 = (1+c+t) eps, b1 = R' - (1+t) eps, b2 = r' + beta.
SelectedScales select_strong(const ScaleConstants& cc, double eps, double rbar_beta, double Rbar_beta,
                             std::optional<ScaleChoice> choice = std::nullopt);

/// Strong regime with r-bar(beta) <= M beta^m and R-bar >= M0.
SelectedScales select_bounded(const ScaleConstants& cc, double eps, const SeemlinessBound& sb,
                              std::optional<ScaleChoice> choice = std::nullopt);

/// Largest eps accepted by select_bounded (the feasibility inequality is
/// monotone in eps); closed form for m = 1.
double bounded_eps_threshold(const ScaleConstants& cc, const SeemlinessBound& sb);

/// Smooth closed submanifold of R^n with reach nu (Cech: c = 1, Rips:
/// c = sqrt 2). With a boundary margin w, also enforces
/// w in ((2 beta + gamma) eps, 2 nu) and R < w.
SelectedScales select_manifold(const ScaleConstants& cc, double eps, const ReachBound& rb,
                               std::optional<ScaleChoice> choice = std::nullopt);

/// Upper bound 2 nu / (2 beta + gamma) on eps for select_manifold.
double manifold_eps_bound(const ScaleConstants& cc, double nu);

/// Advisory checks of hand-picked scales against the gaps the recovery
/// guarantees need. Throws std::invalid_argument only if the levels do not
/// nest or are not positive.
std::vector<ScaleWarning> validate_manual(const ScaleConstants& cc, double eps, const SelectedScales& scales);

SelectedScales manual_scales(const ScaleConstants& cc, double eps, double scale1, double scale2, double ball_R,
                             double ball_r);

}  // namespace lochom

#endif
