#pragma once

namespace spinem {

/// Particle and unit constants carried through every formula. Defaults are
/// the normalized units hbar = m = c = 1 with the electron's charge sign.
struct Constants {
    double hbar = 1.0;
    double m = 1.0;
    double c = 1.0;
    double e = -1.0;

    bool operator==(const Constants&) const = default;
};

}  // namespace spinem
