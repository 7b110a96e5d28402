#include "dispersa/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "dispersa/fourier.hpp"

namespace dispersa {

PresetDatum PresetDatum::gaussian(double amplitude, double width, double center) {
    PresetDatum p;
    p.kind = Kind::Gaussian;
    p.amplitude = amplitude;
    p.width = width;
    p.center = center;
    return p;
}

PresetDatum PresetDatum::sech(double amplitude, double scale, double speed) {
    PresetDatum p;
    p.kind = Kind::Sech;
    p.amplitude = amplitude;
    p.scale = scale;
    p.speed = speed;
    return p;
}

PresetDatum PresetDatum::cosine(long mode) {
    PresetDatum p;
    p.kind = Kind::Cosine;
    p.mode = mode;
    return p;
}

PresetDatum mkdv_solitary_wave(double b) {
    return PresetDatum::sech(std::sqrt(6.0) * b, b, b * b);
}

PresetDatum parse_preset(const std::string& text) {
    const auto open = text.find('(');
    const std::string head = text.substr(0, open);
    const PresetDatum::Kind kind = parse_preset_kind(head);
    std::vector<double> args;
    if (open != std::string::npos) {
        const auto close = text.find(')', open);
        if (close == std::string::npos || close + 1 != text.size())
            throw InvalidArgument("malformed datum '" + text + "'");
        std::istringstream in(text.substr(open + 1, close - open - 1));
        std::string item;
        while (std::getline(in, item, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
                throw InvalidArgument("malformed number '" + item + "' in datum '" + text + "'");
            args.push_back(v);
        }
    }
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw InvalidArgument("wrong number of parameters in datum '" + text + "'");
    };
    switch (kind) {
        case PresetDatum::Kind::Zero:
            need(0, 0);
            return PresetDatum::zero();
        case PresetDatum::Kind::Gaussian:
            need(2, 3);
            return PresetDatum::gaussian(args[0], args[1], args.size() > 2 ? args[2] : 0.0);
        case PresetDatum::Kind::Sech:
            need(2, 3);
            return PresetDatum::sech(args[0], args[1], args.size() > 2 ? args[2] : 0.0);
        case PresetDatum::Kind::Cosine:
            need(1, 1);
            if (args[0] != std::round(args[0])) throw InvalidArgument("cosine mode must be an integer");
            return PresetDatum::cosine(static_cast<long>(args[0]));
    }
    throw InvalidArgument("unknown datum '" + text + "'");
}

std::vector<PresetDatum> default_battery() {
    return {PresetDatum::gaussian(1.0, 1.0), PresetDatum::gaussian(0.1, 1.0), PresetDatum::gaussian(1.0, 2.0),
            PresetDatum::gaussian(1.0, 0.5), PresetDatum::sech(1.0, 1.0)};
}

void PresetDatum::validate(const Grid1D& grid) const {
    switch (kind) {
        case Kind::Gaussian:
            if (!(width > 0.0)) throw InvalidArgument("datum.width must be > 0");
            break;
        case Kind::Sech:
            if (!(scale > 0.0)) throw InvalidArgument("datum.scale must be > 0");
            break;
        case Kind::Cosine:
            if (std::labs(mode) >= static_cast<long>(grid.size() / 2)) {
                throw InvalidArgument("datum.mode must satisfy |mode| < n/2");
            }
            break;
        case Kind::Zero:
            break;
    }
    if (!std::isfinite(amplitude)) throw InvalidArgument("datum.amplitude must be finite");
}

double PresetDatum::evaluate(double x, double t) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Gaussian: {
            const double z = (x - center) / width;
            return amplitude * std::exp(-0.5 * z * z);
        }
        case Kind::Sech:
            return amplitude / std::cosh(scale * (x - speed * t));
        case Kind::Cosine:
            // Only meaningful through sample(), which knows L.
            return std::cos(static_cast<double>(mode) * x);
    }
    return 0.0;
}

std::string PresetDatum::name() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case Kind::Zero:
            os << "zero";
            break;
        case Kind::Gaussian:
            os << "gaussian(" << amplitude << "," << width << "," << center << ")";
            break;
        case Kind::Sech:
            os << "sech(" << amplitude << "," << scale << "," << speed << ")";
            break;
        case Kind::Cosine:
            os << "cosine(" << mode << ")";
            break;
    }
    return os.str();
}

PresetDatum::Kind parse_preset_kind(const std::string& text) {
    if (text == "zero") return PresetDatum::Kind::Zero;
    if (text == "gaussian") return PresetDatum::Kind::Gaussian;
    if (text == "sech") return PresetDatum::Kind::Sech;
    if (text == "cosine") return PresetDatum::Kind::Cosine;
    throw InvalidArgument("unknown datum kind '" + text + "'");
}

std::string to_string(PresetDatum::Kind kind) {
    switch (kind) {
        case PresetDatum::Kind::Zero:
            return "zero";
        case PresetDatum::Kind::Gaussian:
            return "gaussian";
        case PresetDatum::Kind::Sech:
            return "sech";
        case PresetDatum::Kind::Cosine:
            return "cosine";
    }
    return "zero";
}

Sampled sample(const PresetDatum& preset, const Grid1D& grid) {
    preset.validate(grid);
    const std::size_t n = grid.size();
    GridFunction f(grid);
    f.set_real_valued(true);
    for (std::size_t j = 0; j < n; ++j) {
        if (preset.kind == PresetDatum::Kind::Cosine) {
            // Periodic phase from j directly, so the mode is exact on the grid.
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(preset.mode) *
                                 static_cast<double>(j) / static_cast<double>(n);
            f[j] = std::cos(phase + std::numbers::pi * static_cast<double>(preset.mode));
        } else {
            f[j] = preset.evaluate(grid.point(j));
        }
    }
    Sampled out{std::move(f), {}};
    if (preset.kind == PresetDatum::Kind::Gaussian || preset.kind == PresetDatum::Kind::Sech) {
        check_edge_decay(out.function, preset.name().c_str(), out.warnings);
    }
    return out;
}

}  // namespace dispersa
