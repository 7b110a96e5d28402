#pragma once

#include <vector>

#include "dispersa/grid.hpp"

namespace dispersa {

/// Frames u(., t_m) at uniformly spaced times t_m = t0 + m dt, all on one grid.
class SpaceTimeField {
public:
    SpaceTimeField(Grid1D grid, double t0, double dt);
    SpaceTimeField(Grid1D grid, double t0, double dt, std::vector<GridFunction> frames);

    const Grid1D& grid() const { return grid_; }
    double t0() const { return t0_; }
    double dt() const { return dt_; }
    double time(std::size_t m) const { return t0_ + dt_ * static_cast<double>(m); }
    double t_end() const { return frames_.empty() ? t0_ : time(frames_.size() - 1); }

    std::size_t size() const { return frames_.size(); }
    bool empty() const { return frames_.empty(); }
    const GridFunction& operator[](std::size_t m) const { return frames_[m]; }
    GridFunction& operator[](std::size_t m) { return frames_[m]; }
    const std::vector<GridFunction>& frames() const { return frames_; }

    void push_back(GridFunction frame);

    /// Frames with t0 <= t <= t_end restricted to [t_from, t_to] (inclusive).
    SpaceTimeField window(double t_from, double t_to) const;
    /// Applies f to every frame.
    template <typename F>
    SpaceTimeField map(F&& f) const {
        SpaceTimeField out(grid_, t0_, dt_);
        for (const auto& frame : frames_) out.push_back(f(frame));
        return out;
    }

private:
    Grid1D grid_;
    double t0_;
    double dt_;
    std::vector<GridFunction> frames_;
};

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator*(double scale, const SpaceTimeField& w);

/// sup_t ||w(t)||_2.
double linf_l2(const SpaceTimeField& w);
/// sup_t ||a(t) - b(t)||_2 / sup_t ||b(t)||_2 (absolute when b vanishes).
double relative_linf_l2(const SpaceTimeField& a, const SpaceTimeField& b);
/// Largest imaginary part over all frames.
double max_imag(const SpaceTimeField& w);

}  // namespace dispersa
