#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "oolct/algebra.hpp"
#include "oolct/grid.hpp"

namespace oolct {

enum class SignalKind { Gaussian, ChirpedGaussian, ParityProbe, RandomSmooth };

/// Test-signal description.  `components` is a bitmask over s0..s7.
struct SignalSpec {
    SignalKind kind = SignalKind::Gaussian;
    double sigma = 1.0;
    std::uint8_t components = 0x01;
    std::uint64_t seed = 1;
    double chirp_beta = 0.5;
    std::array<bool, 3> parity_odd{true, false, false};  // ParityProbe pattern
};

namespace detail {

inline void pencil_bases_plain(const Grid3D& g, int axis, std::vector<std::size_t>& bases) {
    const int o1 = axis == 0 ? 1 : 0;
    const int o2 = axis == 2 ? 1 : 2;
    bases.clear();
    for (int i = 0; i < g.n(o1); ++i)
        for (int j = 0; j < g.n(o2); ++j)
            bases.push_back(std::size_t(i) * g.stride(o1) + std::size_t(j) * g.stride(o2));
}

inline void smooth_axis(std::vector<double>& vol, const Grid3D& g, int axis) {
    // 1-4-6-4-1 binomial pass with zero boundary
    const std::size_t stride = g.stride(axis);
    const int n = g.n(axis);
    std::vector<std::size_t> bases;
    pencil_bases_plain(g, axis, bases);
    std::vector<double> line(n);
    for (std::size_t b : bases) {
        for (int i = 0; i < n; ++i) line[i] = vol[b + i * stride];
        for (int i = 0; i < n; ++i) {
            const auto at = [&](int k) { return (k < 0 || k >= n) ? 0.0 : line[k]; };
            vol[b + i * stride] =
                (at(i - 2) + 4.0 * at(i - 1) + 6.0 * at(i) + 4.0 * at(i + 1) + at(i + 2)) / 16.0;
        }
    }
}

}  // namespace detail

/// Deterministic signal generator used by the CLI and the test suites.
inline OctField3D make_signal(const Grid3D& g, const SignalSpec& spec) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("make_signal: sigma must be positive");
    if (spec.components == 0) throw std::invalid_argument("make_signal: no components selected");

    OctField3D f = OctField3D::zeros(g);
    const auto selected = [&](int c) { return (spec.components >> c) & 1; };

    switch (spec.kind) {
        case SignalKind::Gaussian:
        case SignalKind::ChirpedGaussian: {
            std::size_t v = 0;
            for (int i = 0; i < g.n(0); ++i)
                for (int j = 0; j < g.n(1); ++j)
                    for (int l = 0; l < g.n(2); ++l, ++v) {
                        const double x = g.coord(0, i), y = g.coord(1, j), z = g.coord(2, l);
                        const double val =
                            std::exp(-0.5 * (x * x + y * y + z * z) / (spec.sigma * spec.sigma));
                        for (int c = 0; c < 8; ++c)
                            if (selected(c)) f.comp[c][v] = val;
                    }
            if (spec.kind == SignalKind::ChirpedGaussian) {
                std::size_t w = 0;
                for (int i = 0; i < g.n(0); ++i) {
                    const double x1 = g.coord(0, i);
                    const Octonion chirp = unit_exp(4, spec.chirp_beta * x1 * x1);
                    const std::size_t block = std::size_t(g.n(1)) * g.n(2);
                    for (std::size_t t = 0; t < block; ++t, ++w) f.set(w, oct_mul(f.at(w), chirp));
                }
            }
            break;
        }
        case SignalKind::ParityProbe: {
            std::size_t v = 0;
            for (int i = 0; i < g.n(0); ++i)
                for (int j = 0; j < g.n(1); ++j)
                    for (int l = 0; l < g.n(2); ++l, ++v) {
                        const double x[3] = {g.coord(0, i), g.coord(1, j), g.coord(2, l)};
                        double val = std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) /
                                              (spec.sigma * spec.sigma));
                        for (int k = 0; k < 3; ++k)
                            if (spec.parity_odd[k]) val *= x[k];
                        for (int c = 0; c < 8; ++c)
                            if (selected(c)) f.comp[c][v] = val;
                    }
            break;
        }
        case SignalKind::RandomSmooth: {
            std::mt19937_64 rng(spec.seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int c = 0; c < 8; ++c) {
                if (!selected(c)) continue;
                for (double& v : f.comp[c]) v = gauss(rng);
                for (int pass = 0; pass < 4; ++pass)
                    for (int axis = 0; axis < 3; ++axis) detail::smooth_axis(f.comp[c], g, axis);
            }
            // taper so the field is domain-limited on the sampled box
            std::size_t v = 0;
            for (int i = 0; i < g.n(0); ++i)
                for (int j = 0; j < g.n(1); ++j)
                    for (int l = 0; l < g.n(2); ++l, ++v) {
                        double env = 1.0;
                        const double xs[3] = {g.coord(0, i), g.coord(1, j), g.coord(2, l)};
                        for (int k = 0; k < 3; ++k) {
                            const double se = g.axes[k].halfwidth() / 3.0;
                            env *= std::exp(-0.5 * xs[k] * xs[k] / (se * se));
                        }
                        for (int c = 0; c < 8; ++c)
                            if (selected(c)) f.comp[c][v] *= env;
                    }
            double peak = 0.0;
            for (std::size_t w = 0; w < f.comp[0].size(); ++w)
                peak = std::max(peak, oct_norm_sq(f.at(w)));
            peak = std::sqrt(peak);
            if (peak > 0.0)
                for (auto& c : f.comp)
                    for (double& val : c) val /= peak;
            break;
        }
    }
    return f;
}

}  // namespace oolct
