#pragma once

#include <cmath>
#include <stdexcept>

namespace oolct {

/// Digamma for x > 0: upward recurrence past 12, then the asymptotic
/// Bernoulli series.  Truncation error below 1e-15 at the switch point.
inline double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: requires x > 0");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double u = inv * inv;
    const double series =
        u * (1.0 / 12 -
             u * (1.0 / 120 -
                  u * (1.0 / 252 -
                       u * (1.0 / 240 - u * (1.0 / 132 - u * (691.0 / 32760 - u * (1.0 / 12)))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

/// Gamma function on the positive reals (library implementation is well
/// under 1e-12 relative error on the arguments used here).
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: requires x > 0");
    return std::tgamma(x);
}

}  // namespace oolct
