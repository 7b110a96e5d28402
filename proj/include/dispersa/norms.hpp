#pragma once

#include <limits>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"
#include "dispersa/spacetime.hpp"

namespace dispersa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Z_{s,r} = H^s intersected with L^2(|x|^{2r} dx).
struct WeightedNormSpec {
    double s = 0.0;
    double r = 0.0;

    void validate() const;
};

/// ||J^s f||_2 + || |x|^r f ||_2, the weight tapered at the window edges.
double weighted_norm(const GridFunction& f, const WeightedNormSpec& spec, Warnings* warnings = nullptr);

enum class MixedOrder {
    XOuter,  ///< L_x^p L_T^q: time norm at each point, then space
    TOuter,  ///< L_T^q L_x^p: space norm at each time, then time
};

/**
 * Mixed Lebesgue norm of |w|. Time integrals use the trapezoid rule over the
 * stored frames, space integrals the dx-weighted sum; infinite exponents are
 * maxima over samples.
 */
double mixed_norm(const SpaceTimeField& w, double p, double q, MixedOrder order);

/// The five terms of mu1 in the order
/// ||D^1/4 w||_{L^inf_T L^2_x}, ||w_x||_{L^20_x L^5/2_T}, ||D^1/4 w||_{L^5_x L^10_T},
/// ||D^1/4 w_x||_{L^inf_x L^2_T}, ||w||_{L^4_x L^inf_T}.
struct Mu1Terms {
    double d14_linf_l2 = 0.0;
    double dx_l20_l52 = 0.0;
    double d14_l5_l10 = 0.0;
    double d14dx_linf_l2 = 0.0;
    double w_l4_linf = 0.0;

    double total() const { return d14_linf_l2 + dx_l20_l52 + d14_l5_l10 + d14dx_linf_l2 + w_l4_linf; }
};

struct Mu2Extra {
    double w_linf_l2 = 0.0;    ///< ||w||_{L^inf_T L^2_x}
    double dx_linf_l2 = 0.0;   ///< ||w_x||_{L^inf_x L^2_T}
    double w_l6_linf = 0.0;    ///< ||w||_{L^6_T L^inf_x}

    double total() const { return w_linf_l2 + dx_linf_l2 + w_l6_linf; }
};

/// Window actually used by a mu evaluation.
struct TimeWindow {
    double from = 0.0;
    double to = 0.0;
    std::size_t frames = 0;
};

/// Frames of w on [0, T], or on [-T, T] when w starts before zero.
SpaceTimeField mu_window(const SpaceTimeField& w, double T, TimeWindow* window = nullptr);

Mu1Terms mu1_terms(const SpaceTimeField& w, double T);
Mu2Extra mu2_extra(const SpaceTimeField& w, double T);

double mu1(const SpaceTimeField& w, double T);
double mu2(const SpaceTimeField& w, double T);
double mu3(const SpaceTimeField& w, double T, double r = 0.125);

}  // namespace dispersa
