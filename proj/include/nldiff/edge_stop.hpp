#pragma once

#include <algorithm>
#include <cmath>

#include "nldiff/errors.hpp"

namespace nldiff {

/// Diffusivity profile g: [0,1] -> [eps_g, 1], nonincreasing, g(0)=1, g(1)=eps_g.
struct EdgeStopSpec {
    enum class Form { polynomial, perona_malik };

    Form form = Form::polynomial;
    double eps_g = 0.05;  // floor value, in (0,1)
    double lambda = 0.1;  // contrast parameter (perona_malik form only)

    void validate() const {
        if (!(eps_g > 0.0 && eps_g < 1.0))
            throw argument_error("edge_stop: eps_g must be in (0,1)");
        if (form == Form::perona_malik && !(lambda > 0.0))
            throw argument_error("edge_stop: lambda must be positive");
    }
};

// Ratio arguments can leave [0,1] only by rounding; clamp rather than fail.
inline double edge_stop(const EdgeStopSpec& spec, double s) {
    s = std::clamp(s, 0.0, 1.0);
    switch (spec.form) {
    case EdgeStopSpec::Form::polynomial: {
        const double t = 1.0 - s * s;
        return spec.eps_g + (1.0 - spec.eps_g) * t * t;
    }
    case EdgeStopSpec::Form::perona_malik: {
        // raw profile 1/(1+(s/lambda)^2), affinely rescaled so the endpoint
        // values match the polynomial form: g(0)=1, g(1)=eps_g.
        const double raw = 1.0 / (1.0 + (s / spec.lambda) * (s / spec.lambda));
        const double raw1 = 1.0 / (1.0 + 1.0 / (spec.lambda * spec.lambda));
        return spec.eps_g + (1.0 - spec.eps_g) * (raw - raw1) / (1.0 - raw1);
    }
    }
    return 1.0; // unreachable
}

/// Unrescaled Perona-Malik diffusivity on a raw gradient magnitude s >= 0.
inline double perona_malik_g(double s, double lambda) {
    const double r = s / lambda;
    return 1.0 / (1.0 + r * r);
}

} // namespace nldiff
