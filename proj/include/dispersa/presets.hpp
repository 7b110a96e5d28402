#pragma once

#include <string>
#include <vector>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"

namespace dispersa {

/**
 * Closed-form initial data.
 *
 *   gaussian: amplitude * exp(-(x - center)^2 / (2 width^2))
 *   sech:     amplitude * sech(scale * (x - speed * t)), sampled at t = 0
 *   cosine:   cos(2 pi mode x / L), exactly one periodic mode
 *   zero
 */
struct PresetDatum {
    enum class Kind { Zero, Gaussian, Sech, Cosine };

    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    double width = 1.0;   // gaussian
    double center = 0.0;  // gaussian
    double scale = 1.0;   // sech
    double speed = 0.0;   // sech
    long mode = 1;        // cosine

    static PresetDatum zero() { return {}; }
    static PresetDatum gaussian(double amplitude, double width, double center = 0.0);
    static PresetDatum sech(double amplitude, double scale, double speed = 0.0);
    static PresetDatum cosine(long mode);

    /// Throws InvalidArgument when the parameters are inadmissible on grid.
    void validate(const Grid1D& grid) const;
    /// Closed-form value at (x, t); only sech carries time dependence.
    double evaluate(double x, double t = 0.0) const;

    std::string name() const;
};

PresetDatum::Kind parse_preset_kind(const std::string& text);
std::string to_string(PresetDatum::Kind kind);
/// Inverse of PresetDatum::name(): "zero", "gaussian(a,w[,c])", "sech(a,s[,v])", "cosine(m)".
PresetDatum parse_preset(const std::string& text);

struct Sampled {
    GridFunction function;
    Warnings warnings;
};

/// Samples the preset at the grid points; decaying kinds get a wrap-around
/// warning when their edge values are not below 1e-14 of the peak.
Sampled sample(const PresetDatum& preset, const Grid1D& grid);

/**
 * Solitary wave of u_t + u_xxx + u^2 u_x = 0:
 *   u(x, t) = sqrt(6) b sech(b (x - b^2 t)).
 */
PresetDatum mkdv_solitary_wave(double b);

/// Decaying data used for constant calibration: four gaussians and one sech.
std::vector<PresetDatum> default_battery();

}  // namespace dispersa
