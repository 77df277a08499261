#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "oolct/grid.hpp"
#include "oolct/io.hpp"
#include "oolct/special_functions.hpp"
#include "oolct/transform.hpp"

namespace oolct {

struct invalid_check : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// C_alpha = (4 pi^2 / 2^alpha) [Gamma((2-alpha)/4) / Gamma((2+alpha)/4)]^2
/// for 0 <= alpha < 2 (the domain where both Gamma arguments stay positive).
inline double pitt_constant(double alpha) {
    if (!(alpha >= 0.0 && alpha < 2.0))
        throw invalid_check("pitt_constant: alpha must be in [0, 2)");
    const double ratio = gamma_fn((2.0 - alpha) / 4.0) / gamma_fn((2.0 + alpha) / 4.0);
    return 4.0 * M_PI * M_PI / std::pow(2.0, alpha) * ratio * ratio;
}

/// D = ln 2 + psi(1/2).
inline double log_constant() { return std::log(2.0) + digamma(0.5); }

/// Two-branch local-uncertainty constant M_alpha (alpha > 0, alpha != 1).
inline double local_constant(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw invalid_check("local_constant: alpha must be positive and != 1");
    if (alpha < 1.0)
        return (1.0 + alpha * alpha) / std::pow(alpha, 2.0 * alpha) *
               std::pow(2.0 - 2.0 * alpha, alpha - 2.0);
    return M_PI / (alpha * gamma_fn(0.5)) * gamma_fn(1.0 / alpha) * gamma_fn(1.0 - 1.0 / alpha) *
           std::pow(alpha - 1.0, alpha) / (1.0 - 1.0 / alpha);
}

enum class CheckName { Pitt, Log, HausdorffYoung, Local1, Local2, Energy };

inline const char* to_string(CheckName n) {
    switch (n) {
        case CheckName::Pitt: return "pitt";
        case CheckName::Log: return "log";
        case CheckName::HausdorffYoung: return "hausdorff_young";
        case CheckName::Local1: return "local_1";
        case CheckName::Local2: return "local_2";
        case CheckName::Energy: return "energy";
    }
    return "?";
}

/// One inequality evaluation.  `slack` is the margin in the inequality's
/// stated direction (rhs - lhs for <= checks, lhs - rhs for the
/// logarithmic >= check); holds means slack >= -1e-12 * max(|lhs|, |rhs|).
struct InequalityReport {
    CheckName name = CheckName::Energy;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    std::optional<double> secondary_constant{};  // two-axis bound variant, hy only
    std::optional<double> alpha{}, p{}, q{}, e_measure{};
    PhaseConvention convention = PhaseConvention::Unitary;
    bool holds = false;
    double slack = 0.0;
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    int grid_n = 0;
    double grid_halfwidth = 0.0;
};

namespace detail {

inline bool slack_holds(double slack, double lhs, double rhs) {
    return slack >= -1e-12 * std::max(std::abs(lhs), std::abs(rhs));
}

inline void fill_meta(InequalityReport& r, const OctField3D& f, const OLCTParamsTriple& P,
                      const TransformOptions& opts) {
    r.convention = opts.convention;
    r.b1 = P.A1.b;
    r.b2 = P.A2.b;
    r.b3 = P.A3.b;
    r.grid_n = f.grid.n(0);
    r.grid_halfwidth = f.grid.axes[0].halfwidth();
}

inline void require_nonzero(const OctField3D& f, const char* op) {
    for (const auto& c : f.comp)
        for (double v : c)
            if (v != 0.0) return;
    throw invalid_check(std::string(op) + ": zero signal");
}

/// |w/b|: Euclidean norm of the componentwise-rescaled frequency vector.
/// Interprets the scalar-b notation of the bounds componentwise; the
/// per-axis reading reduces correctly to each 1D convention.
inline double wb_norm_sq(const Grid3D& g, const OLCTParamsTriple& P, int i, int j, int l) {
    const double u = g.coord(0, i) / P.A1.b;
    const double v = g.coord(1, j) / P.A2.b;
    const double w = g.coord(2, l) / P.A3.b;
    return u * u + v * v + w * w;
}

/// Sum over the output grid of |w/b|^{-alpha} |F(w)|^2 dV.  At alpha = 0
/// the weight evaluates to exactly 1.0, so the energy integral and the
/// Pitt left side share one code path bit for bit.
inline double output_weighted_energy(const OctField3D& F, const OLCTParamsTriple& P,
                                     double alpha) {
    std::vector<double> terms = norm_sq_terms(F.comp);
    const Grid3D& g = F.grid;
    const double dV = g.cell_volume();
    std::size_t v = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int l = 0; l < g.n(2); ++l, ++v)
                terms[v] *= std::pow(wb_norm_sq(g, P, i, j, l), -0.5 * alpha) * dV;
    return pairwise_sum(terms);
}

inline double output_log_energy(const OctField3D& F, const OLCTParamsTriple& P) {
    std::vector<double> terms = norm_sq_terms(F.comp);
    const Grid3D& g = F.grid;
    const double dV = g.cell_volume();
    std::size_t v = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int l = 0; l < g.n(2); ++l, ++v)
                terms[v] *= 0.5 * std::log(wb_norm_sq(g, P, i, j, l)) * dV;
    return pairwise_sum(terms);
}

}  // namespace detail

/// Energy row: lhs = ||O f||_2^2, rhs = ||f||_2^2 (the unitary expectation);
/// the reference normalization 1/(2 pi |b3|) is carried in `constant` for
/// comparison without being asserted.
inline InequalityReport energy_check(const OctField3D& f, const OLCTParamsTriple& P,
                                     const TransformOptions& opts = {}) {
    detail::require_nonzero(f, "energy_check");
    const OctField3D F = oolct3d(f, P, opts);
    InequalityReport r;
    r.name = CheckName::Energy;
    detail::fill_meta(r, f, P, opts);
    r.lhs = detail::output_weighted_energy(F, P, 0.0);
    r.rhs = weighted_sq_norm(f, Weight::power(0.0));
    r.constant = 1.0 / (2.0 * M_PI * std::abs(P.A3.b));
    r.slack = r.rhs - r.lhs;
    r.holds = detail::slack_holds(r.slack, r.lhs, r.rhs);
    return r;
}

/// Pitt: sum |w/b|^-alpha |O f|^2 dw against
/// C_alpha/(8 pi^3 |b3|) * sum |x|^alpha |f|^2 dx.
inline InequalityReport pitt_check(const OctField3D& f, const OLCTParamsTriple& P, double alpha,
                                   const TransformOptions& opts = {}) {
    if (!(alpha >= 0.0 && alpha < 2.0)) throw invalid_check("pitt_check: alpha must be in [0, 2)");
    detail::require_nonzero(f, "pitt_check");
    const OctField3D F = oolct3d(f, P, opts);
    InequalityReport r;
    r.name = CheckName::Pitt;
    detail::fill_meta(r, f, P, opts);
    r.alpha = alpha;
    r.constant = pitt_constant(alpha);
    r.lhs = detail::output_weighted_energy(F, P, alpha);
    r.rhs = r.constant / (8.0 * M_PI * M_PI * M_PI * std::abs(P.A3.b)) *
            weighted_sq_norm(f, Weight::power(alpha));
    r.slack = r.rhs - r.lhs;
    r.holds = detail::slack_holds(r.slack, r.lhs, r.rhs);
    return r;
}

/// Logarithmic: 2 pi |b3| * sum ln|w/b| |O f|^2 dw + sum ln|x| |f|^2 dx
/// >= D ||f||_2^2.
inline InequalityReport log_check(const OctField3D& f, const OLCTParamsTriple& P,
                                  const TransformOptions& opts = {}) {
    detail::require_nonzero(f, "log_check");
    const OctField3D F = oolct3d(f, P, opts);
    InequalityReport r;
    r.name = CheckName::Log;
    detail::fill_meta(r, f, P, opts);
    r.constant = log_constant();
    r.lhs = 2.0 * M_PI * std::abs(P.A3.b) * detail::output_log_energy(F, P) +
            weighted_sq_norm(f, Weight::log());
    r.rhs = r.constant * weighted_sq_norm(f, Weight::power(0.0));
    r.slack = r.lhs - r.rhs;  // stated direction is >=
    r.holds = detail::slack_holds(r.slack, r.lhs, r.rhs);
    return r;
}

/// Hausdorff-Young: ||O f||_q <= (2 pi)^(1/2q - 1/p) |b1 b2|^(1/q - 1/2)
/// |b3|^(-1/2q) ||f||_p, with 1/p + 1/q = 1 and p in [1, 2].
inline InequalityReport hy_check(const OctField3D& f, const OLCTParamsTriple& P, double p,
                                 const TransformOptions& opts = {}) {
    if (!(p >= 1.0 && p <= 2.0)) throw invalid_check("hy_check: p must be in [1, 2]");
    detail::require_nonzero(f, "hy_check");
    const double q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
    const double inv_q = p == 1.0 ? 0.0 : 1.0 / q;
    const OctField3D F = oolct3d(f, P, opts);
    InequalityReport r;
    r.name = CheckName::HausdorffYoung;
    detail::fill_meta(r, f, P, opts);
    r.p = p;
    r.q = q;
    const double b12 = std::abs(P.A1.b * P.A2.b);
    r.constant = std::pow(2.0 * M_PI, 0.5 * inv_q - 1.0 / p) * std::pow(b12, inv_q - 0.5) *
                 std::pow(std::abs(P.A3.b), -0.5 * inv_q);
    r.secondary_constant =
        std::pow(2.0 * M_PI, inv_q - 1.0 / p) * std::pow(b12, inv_q - 0.5);
    r.lhs = lp_norm(F, q);
    r.rhs = r.constant * lp_norm(f, p);
    r.slack = r.rhs - r.lhs;
    r.holds = detail::slack_holds(r.slack, r.lhs, r.rhs);
    return r;
}

/// Local uncertainty: integral of |O f|^2 over the dilated set
/// bE = {(b1 w1, b2 w2, b3 w3) : w in E} against the branch bound.
inline InequalityReport local_check(const OctField3D& f, const OLCTParamsTriple& P, double alpha,
                                    const VoxelMask& E, const TransformOptions& opts = {}) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw invalid_check("local_check: alpha must be positive and != 1");
    const double measure = mask_measure(E);
    if (measure == 0.0) throw invalid_check("local_check: empty mask");
    detail::require_nonzero(f, "local_check");

    const OctField3D F = oolct3d(f, P, opts);
    const Grid3D& g = F.grid;

    // dilate voxel centers by b componentwise and re-bin on the output grid
    std::vector<std::uint8_t> marked(g.size(), 0);
    std::size_t v = 0;
    for (int i = 0; i < E.grid.n(0); ++i)
        for (int j = 0; j < E.grid.n(1); ++j)
            for (int l = 0; l < E.grid.n(2); ++l, ++v) {
                if (!E.flags[v]) continue;
                const double w[3] = {E.grid.coord(0, i) * P.A1.b, E.grid.coord(1, j) * P.A2.b,
                                     E.grid.coord(2, l) * P.A3.b};
                int idx[3];
                bool inside = true;
                for (int k = 0; k < 3; ++k) {
                    idx[k] = int(std::lround((w[k] - g.axes[k].x0) / g.axes[k].dx));
                    if (idx[k] < 0 || idx[k] >= g.n(k)) inside = false;
                }
                if (inside) marked[g.index(idx[0], idx[1], idx[2])] = 1;
            }
    std::vector<double> terms = detail::norm_sq_terms(F.comp);
    const double dV = g.cell_volume();
    for (std::size_t t = 0; t < terms.size(); ++t) terms[t] *= marked[t] ? dV : 0.0;

    InequalityReport r;
    r.name = alpha < 1.0 ? CheckName::Local1 : CheckName::Local2;
    detail::fill_meta(r, f, P, opts);
    r.alpha = alpha;
    r.e_measure = measure;
    r.constant = local_constant(alpha);
    r.lhs = pairwise_sum(terms);
    const double moment_sq = weighted_sq_norm(f, Weight::power(2.0 * alpha));
    const double pref = 1.0 / (2.0 * M_PI * std::abs(P.A3.b));
    if (alpha < 1.0) {
        r.rhs = pref * r.constant * std::pow(measure, alpha) * moment_sq;
    } else {
        const double l2 = std::sqrt(weighted_sq_norm(f, Weight::power(0.0)));
        r.rhs = pref * r.constant *
                std::pow(std::abs(P.A1.b * P.A2.b), alpha - 1.0 / alpha) *
                std::pow(measure, alpha) * std::pow(l2, 2.0 - 2.0 * alpha) *
                std::pow(std::sqrt(moment_sq), 2.0 / alpha);
    }
    r.slack = r.rhs - r.lhs;
    r.holds = detail::slack_holds(r.slack, r.lhs, r.rhs);
    return r;
}

// --- CSV serialization (stable schema, shortest round-trip numbers) ---

inline std::string csv_header() {
    return "check,alpha,p,q,E_measure,convention,lhs,rhs,constant,slack,holds,grid_n,"
           "grid_halfwidth,b1,b2,b3";
}

inline std::string csv_row(const InequalityReport& r) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    std::string row;
    row += to_string(r.name);
    row += ',';
    row += opt(r.alpha);
    row += ',';
    row += opt(r.p);
    row += ',';
    row += opt(r.q);
    row += ',';
    row += opt(r.e_measure);
    row += ',';
    row += to_string(r.convention);
    row += ',';
    row += format_double(r.lhs);
    row += ',';
    row += format_double(r.rhs);
    row += ',';
    row += format_double(r.constant);
    row += ',';
    row += format_double(r.slack);
    row += ',';
    row += r.holds ? "true" : "false";
    row += ',';
    row += std::to_string(r.grid_n);
    row += ',';
    row += format_double(r.grid_halfwidth);
    row += ',';
    row += format_double(r.b1);
    row += ',';
    row += format_double(r.b2);
    row += ',';
    row += format_double(r.b3);
    return row;
}

}  // namespace oolct
