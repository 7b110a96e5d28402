#include "dispersa/spacetime.hpp"

#include <algorithm>
#include <cmath>

#include "dispersa/errors.hpp"

namespace dispersa {

SpaceTimeField::SpaceTimeField(Grid1D grid, double t0, double dt) : grid_(grid), t0_(t0), dt_(dt) {
    if (!(dt > 0.0)) throw InvalidArgument("SpaceTimeField: dt must be positive");
}

SpaceTimeField::SpaceTimeField(Grid1D grid, double t0, double dt, std::vector<GridFunction> frames)
    : SpaceTimeField(grid, t0, dt) {
    for (auto& f : frames) push_back(std::move(f));
}

void SpaceTimeField::push_back(GridFunction frame) {
    require_same_grid(grid_, frame.grid(), "SpaceTimeField::push_back");
    frames_.push_back(std::move(frame));
}

SpaceTimeField SpaceTimeField::window(double t_from, double t_to) const {
    const double slack = 1e-9 * dt_;
    SpaceTimeField out(grid_, t0_, dt_);
    bool first = true;
    for (std::size_t m = 0; m < frames_.size(); ++m) {
        const double t = time(m);
        if (t < t_from - slack || t > t_to + slack) continue;
        if (first) {
            out.t0_ = t;
            first = false;
        }
        out.frames_.push_back(frames_[m]);
    }
    return out;
}

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (a.size() != b.size()) throw InvalidArgument("SpaceTimeField difference: frame count mismatch");
    SpaceTimeField out(a.grid(), a.t0(), a.dt());
    for (std::size_t m = 0; m < a.size(); ++m) out.push_back(a[m] - b[m]);
    return out;
}

SpaceTimeField operator*(double scale, const SpaceTimeField& w) {
    return w.map([scale](const GridFunction& f) { return scale * f; });
}

double linf_l2(const SpaceTimeField& w) {
    double m = 0.0;
    for (const auto& f : w.frames()) m = std::max(m, l2_norm(f));
    return m;
}

double relative_linf_l2(const SpaceTimeField& a, const SpaceTimeField& b) {
    const double diff = linf_l2(a - b);
    const double scale = linf_l2(b);
    return scale == 0.0 ? diff : diff / scale;
}

double max_imag(const SpaceTimeField& w) {
    double m = 0.0;
    for (const auto& f : w.frames()) m = std::max(m, sup_imag(f));
    return m;
}

}  // namespace dispersa
