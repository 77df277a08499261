#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oolct/algebra.hpp"

namespace oolct {

/// Deterministic fixed-shape pairwise summation.  Reduction order depends
/// only on the length, so identical inputs give bit-identical sums.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

/// Uniform centered 1D grid with half-sample offset: x_i = x0 + i*dx and
/// x0 = -(n/2 - 1/2)*dx.  Samples are symmetric about zero and never hit it.
struct Grid1D {
    int n = 0;
    double dx = 0.0;
    double x0 = 0.0;

    static Grid1D centered(int n, double dx) {
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("Grid1D: n must be even and >= 2");
        if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("Grid1D: dx must be positive");
        return Grid1D{n, dx, -(n / 2 - 0.5) * dx};
    }
    static Grid1D from_halfwidth(int n, double halfwidth) {
        if (!(halfwidth > 0.0)) throw std::invalid_argument("Grid1D: halfwidth must be positive");
        if (n < 2) throw std::invalid_argument("Grid1D: n must be even and >= 2");
        return centered(n, 2.0 * halfwidth / n);
    }

    // (i - (n-1)/2)*dx rather than x0 + i*dx: negation symmetry
    // coord(n-1-i) == -coord(i) is then exact in floating point.
    double coord(int i) const { return (i - 0.5 * (n - 1)) * dx; }
    double halfwidth() const { return 0.5 * n * dx; }
};

inline bool same_grid(const Grid1D& a, const Grid1D& b, double tol = 1e-12) {
    return a.n == b.n && std::abs(a.dx - b.dx) <= tol * a.dx && std::abs(a.x0 - b.x0) <= tol * a.dx;
}

struct Grid2D {
    std::array<Grid1D, 2> axes;

    static Grid2D centered(std::array<int, 2> n, std::array<double, 2> dx) {
        return Grid2D{{Grid1D::centered(n[0], dx[0]), Grid1D::centered(n[1], dx[1])}};
    }
    std::size_t size() const { return std::size_t(axes[0].n) * axes[1].n; }
    std::size_t index(int i, int j) const { return std::size_t(i) * axes[1].n + j; }
    double cell_area() const { return axes[0].dx * axes[1].dx; }
};

struct Grid3D {
    std::array<Grid1D, 3> axes;

    static Grid3D centered(std::array<int, 3> n, std::array<double, 3> dx) {
        return Grid3D{{Grid1D::centered(n[0], dx[0]), Grid1D::centered(n[1], dx[1]),
                       Grid1D::centered(n[2], dx[2])}};
    }
    static Grid3D cubic(int n, double halfwidth) {
        const Grid1D g = Grid1D::from_halfwidth(n, halfwidth);
        return Grid3D{{g, g, g}};
    }

    int n(int axis) const { return axes[axis].n; }
    double dx(int axis) const { return axes[axis].dx; }
    std::size_t size() const { return std::size_t(axes[0].n) * axes[1].n * axes[2].n; }
    std::size_t index(int i, int j, int l) const {
        return (std::size_t(i) * axes[1].n + j) * axes[2].n + l;
    }
    std::size_t stride(int axis) const {
        switch (axis) {
            case 0: return std::size_t(axes[1].n) * axes[2].n;
            case 1: return axes[2].n;
            default: return 1;
        }
    }
    double coord(int axis, int i) const { return axes[axis].coord(i); }
    double cell_volume() const { return axes[0].dx * axes[1].dx * axes[2].dx; }
    Grid3D with_axis(int axis, const Grid1D& g) const {
        Grid3D out = *this;
        out.axes[axis] = g;
        return out;
    }
};

inline bool same_grid(const Grid3D& a, const Grid3D& b, double tol = 1e-12) {
    for (int k = 0; k < 3; ++k)
        if (!same_grid(a.axes[k], b.axes[k], tol)) return false;
    return true;
}

/// Sampled octonion-valued signal on a 1D grid, stored as 8 real arrays.
struct OctSignal1D {
    Grid1D grid;
    std::array<std::vector<double>, 8> comp;

    static OctSignal1D zeros(const Grid1D& g) {
        OctSignal1D f;
        f.grid = g;
        for (auto& c : f.comp) c.assign(std::size_t(g.n), 0.0);
        return f;
    }
    Octonion at(std::size_t i) const {
        Octonion o;
        for (int c = 0; c < 8; ++c) o.s[c] = comp[c][i];
        return o;
    }
    void set(std::size_t i, const Octonion& o) {
        for (int c = 0; c < 8; ++c) comp[c][i] = o.s[c];
    }
};

/// Sampled octonion-valued field on a 3D grid, stored as 8 real volumes in
/// row-major order (axis 3 fastest).  Immutable by convention once built.
struct OctField3D {
    Grid3D grid;
    std::array<std::vector<double>, 8> comp;

    static OctField3D zeros(const Grid3D& g) {
        OctField3D f;
        f.grid = g;
        for (auto& c : f.comp) c.assign(g.size(), 0.0);
        return f;
    }
    Octonion at(std::size_t i) const {
        Octonion o;
        for (int c = 0; c < 8; ++c) o.s[c] = comp[c][i];
        return o;
    }
    void set(std::size_t i, const Octonion& o) {
        for (int c = 0; c < 8; ++c) comp[c][i] = o.s[c];
    }
};

struct QuatField3D {
    Grid3D grid;
    std::array<std::vector<double>, 4> comp;

    static QuatField3D zeros(const Grid3D& g) {
        QuatField3D f;
        f.grid = g;
        for (auto& c : f.comp) c.assign(g.size(), 0.0);
        return f;
    }
};

struct QuatField2D {
    Grid2D grid;
    std::array<std::vector<double>, 4> comp;

    static QuatField2D zeros(const Grid2D& g) {
        QuatField2D f;
        f.grid = g;
        for (auto& c : f.comp) c.assign(g.size(), 0.0);
        return f;
    }
};

/// Measurable set on a (frequency-domain) grid as a boolean volume.
struct VoxelMask {
    Grid3D grid;
    std::vector<std::uint8_t> flags;

    static VoxelMask empty(const Grid3D& g) { return VoxelMask{g, std::vector<std::uint8_t>(g.size(), 0)}; }
};

inline double mask_measure(const VoxelMask& m) {
    std::size_t count = 0;
    for (std::uint8_t f : m.flags) count += (f != 0);
    return double(count) * m.grid.cell_volume();
}

/// Voxel-center ball of the given radius, centered at the origin.
inline VoxelMask ball_mask(const Grid3D& g, double radius) {
    VoxelMask m = VoxelMask::empty(g);
    const double r2 = radius * radius;
    std::size_t v = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int l = 0; l < g.n(2); ++l, ++v) {
                const double x = g.coord(0, i), y = g.coord(1, j), z = g.coord(2, l);
                m.flags[v] = (x * x + y * y + z * z <= r2) ? 1 : 0;
            }
    return m;
}

namespace detail {

template <std::size_t N>
inline std::vector<double> norm_sq_terms(const std::array<std::vector<double>, N>& comp) {
    std::vector<double> terms(comp[0].size(), 0.0);
    for (const auto& c : comp)
        for (std::size_t i = 0; i < c.size(); ++i) terms[i] += c[i] * c[i];
    return terms;
}

}  // namespace detail

/// L^p norm with the midpoint quadrature weight; p = infinity gives the
/// sample maximum of the pointwise octonion norm.
inline double lp_norm(const OctField3D& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> t = detail::norm_sq_terms(f.comp);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : t) m = std::max(m, v);
        return std::sqrt(m);
    }
    const double dV = f.grid.cell_volume();
    for (double& v : t) v = std::pow(v, 0.5 * p) * dV;
    return std::pow(pairwise_sum(t), 1.0 / p);
}

inline double lp_norm(const OctSignal1D& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> t = detail::norm_sq_terms(f.comp);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : t) m = std::max(m, v);
        return std::sqrt(m);
    }
    for (double& v : t) v = std::pow(v, 0.5 * p) * f.grid.dx;
    return std::pow(pairwise_sum(t), 1.0 / p);
}

inline double lp_norm(const QuatField2D& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> t = detail::norm_sq_terms(f.comp);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : t) m = std::max(m, v);
        return std::sqrt(m);
    }
    const double dA = f.grid.cell_area();
    for (double& v : t) v = std::pow(v, 0.5 * p) * dA;
    return std::pow(pairwise_sum(t), 1.0 / p);
}

inline double lp_norm(const QuatField3D& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> t = detail::norm_sq_terms(f.comp);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : t) m = std::max(m, v);
        return std::sqrt(m);
    }
    const double dV = f.grid.cell_volume();
    for (double& v : t) v = std::pow(v, 0.5 * p) * dV;
    return std::pow(pairwise_sum(t), 1.0 / p);
}

/// Radial weight for the moment and logarithmic integrals.
struct Weight {
    enum class Kind { Power, Log } kind = Kind::Power;
    double alpha = 0.0;

    static Weight power(double a) { return Weight{Kind::Power, a}; }
    static Weight log() { return Weight{Kind::Log, 0.0}; }
};

/// Riemann sum of weight(|x|) * |f(x)|^2 over the grid.  The half-sample
/// grid keeps |x| > 0 at every sample, so both weights stay finite.
inline double weighted_sq_norm(const OctField3D& f, const Weight& w) {
    std::vector<double> t = detail::norm_sq_terms(f.comp);
    const Grid3D& g = f.grid;
    const double dV = g.cell_volume();
    std::size_t v = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int l = 0; l < g.n(2); ++l, ++v) {
                const double x = g.coord(0, i), y = g.coord(1, j), z = g.coord(2, l);
                const double r2 = x * x + y * y + z * z;
                const double wt = w.kind == Weight::Kind::Power ? std::pow(r2, 0.5 * w.alpha)
                                                                : 0.5 * std::log(r2);
                t[v] *= wt * dV;
            }
    return pairwise_sum(t);
}

/// Reflect per-axis: sign -1 on axis k maps sample i to n_k-1-i (x -> -x
/// exactly on the half-sample grid).  An involution for any sign choice.
inline OctField3D reflect(const OctField3D& f, std::array<int, 3> signs) {
    const Grid3D& g = f.grid;
    OctField3D out = OctField3D::zeros(g);
    for (int i = 0; i < g.n(0); ++i) {
        const int si = signs[0] < 0 ? g.n(0) - 1 - i : i;
        for (int j = 0; j < g.n(1); ++j) {
            const int sj = signs[1] < 0 ? g.n(1) - 1 - j : j;
            for (int l = 0; l < g.n(2); ++l) {
                const int sl = signs[2] < 0 ? g.n(2) - 1 - l : l;
                const std::size_t src = g.index(si, sj, sl);
                const std::size_t dst = g.index(i, j, l);
                for (int c = 0; c < 8; ++c) out.comp[c][dst] = f.comp[c][src];
            }
        }
    }
    return out;
}

namespace detail {

/// Even/odd projection along one axis: out_even/odd = (f(x) +/- f(-x_k))/2.
inline void even_odd_axis(const OctField3D& f, int axis, OctField3D& even, OctField3D& odd) {
    const Grid3D& g = f.grid;
    even = OctField3D::zeros(g);
    odd = OctField3D::zeros(g);
    const int n[3] = {g.n(0), g.n(1), g.n(2)};
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l) {
                int ri = i, rj = j, rl = l;
                if (axis == 0) ri = n[0] - 1 - i;
                if (axis == 1) rj = n[1] - 1 - j;
                if (axis == 2) rl = n[2] - 1 - l;
                const std::size_t a = g.index(i, j, l);
                const std::size_t b = g.index(ri, rj, rl);
                for (int c = 0; c < 8; ++c) {
                    even.comp[c][a] = 0.5 * (f.comp[c][a] + f.comp[c][b]);
                    odd.comp[c][a] = 0.5 * (f.comp[c][a] - f.comp[c][b]);
                }
            }
}

}  // namespace detail

/// The eight parity projections, indexed by bit k = odd along axis k+1:
/// index 0 is eee, 1 is oee, 2 is eoe, 3 is ooe, 4 is eeo, 5 is oeo,
/// 6 is eoo, 7 is ooo.  They sum to f and are pairwise L2-orthogonal.
inline std::array<OctField3D, 8> parity8(const OctField3D& f) {
    OctField3D e0, o0;
    detail::even_odd_axis(f, 0, e0, o0);
    std::array<OctField3D, 8> out;
    OctField3D tmp_e, tmp_o;
    for (int b0 = 0; b0 < 2; ++b0) {
        const OctField3D& s0 = b0 ? o0 : e0;
        detail::even_odd_axis(s0, 1, tmp_e, tmp_o);
        for (int b1 = 0; b1 < 2; ++b1) {
            const OctField3D& s1 = b1 ? tmp_o : tmp_e;
            OctField3D e2, o2;
            detail::even_odd_axis(s1, 2, e2, o2);
            out[b0 + 2 * b1 + 0] = std::move(e2);
            out[b0 + 2 * b1 + 4] = std::move(o2);
        }
    }
    return out;
}

/// Even/odd split along the third axis: f = f_e + f_o.
inline std::pair<OctField3D, OctField3D> even_odd_axis3(const OctField3D& f) {
    OctField3D e, o;
    detail::even_odd_axis(f, 2, e, o);
    return {std::move(e), std::move(o)};
}

/// f = g + h e4 with quaternion-valued g (s0..s3) and h (s4..s7).
inline std::pair<QuatField3D, QuatField3D> quat_split_field(const OctField3D& f) {
    QuatField3D g, h;
    g.grid = h.grid = f.grid;
    for (int c = 0; c < 4; ++c) {
        g.comp[c] = f.comp[c];
        h.comp[c] = f.comp[c + 4];
    }
    return {std::move(g), std::move(h)};
}

inline OctField3D quat_recompose_field(const QuatField3D& g, const QuatField3D& h) {
    OctField3D f;
    f.grid = g.grid;
    for (int c = 0; c < 4; ++c) {
        f.comp[c] = g.comp[c];
        f.comp[c + 4] = h.comp[c];
    }
    return f;
}

/// Quaternion pair used by the local uncertainty argument:
///   f_m(x) = g_e(x) + h_o(x1,-x2,x3) e2
///   f_n(x) = h_e(x) - g_o(x1,-x2,x3) e2
/// with g, h the quaternion split and e/o the axis-3 parity split.
/// Their grid L2 norms satisfy |f_m|^2 + |f_n|^2 = |f|^2.
inline std::pair<QuatField3D, QuatField3D> local_pair_split(const OctField3D& f) {
    auto [e, o] = even_odd_axis3(f);
    const OctField3D or_ = reflect(o, {1, -1, 1});
    auto [ge, he] = quat_split_field(e);
    auto [gor, hor] = quat_split_field(or_);

    QuatField3D fm = QuatField3D::zeros(f.grid);
    QuatField3D fn = QuatField3D::zeros(f.grid);
    const std::size_t nvox = f.grid.size();
    for (std::size_t v = 0; v < nvox; ++v) {
        const Quaternion gev{ge.comp[0][v], ge.comp[1][v], ge.comp[2][v], ge.comp[3][v]};
        const Quaternion hev{he.comp[0][v], he.comp[1][v], he.comp[2][v], he.comp[3][v]};
        const Quaternion gov{gor.comp[0][v], gor.comp[1][v], gor.comp[2][v], gor.comp[3][v]};
        const Quaternion hov{hor.comp[0][v], hor.comp[1][v], hor.comp[2][v], hor.comp[3][v]};
        const Quaternion e2 = Quaternion::unit(2);
        const Quaternion m = gev + quat_mul(hov, e2);
        const Quaternion n = hev - quat_mul(gov, e2);
        for (int c = 0; c < 4; ++c) {
            fm.comp[c][v] = m.s[c];
            fn.comp[c][v] = n.s[c];
        }
    }
    return {std::move(fm), std::move(fn)};
}

// --- field arithmetic plumbing ---

inline OctField3D add(const OctField3D& a, const OctField3D& b) {
    if (!same_grid(a.grid, b.grid)) throw std::invalid_argument("add: mismatched grids");
    OctField3D out = a;
    for (int c = 0; c < 8; ++c)
        for (std::size_t i = 0; i < out.comp[c].size(); ++i) out.comp[c][i] += b.comp[c][i];
    return out;
}

inline OctField3D sub(const OctField3D& a, const OctField3D& b) {
    if (!same_grid(a.grid, b.grid)) throw std::invalid_argument("sub: mismatched grids");
    OctField3D out = a;
    for (int c = 0; c < 8; ++c)
        for (std::size_t i = 0; i < out.comp[c].size(); ++i) out.comp[c][i] -= b.comp[c][i];
    return out;
}

inline OctField3D scale(const OctField3D& a, double r) {
    OctField3D out = a;
    for (auto& c : out.comp)
        for (double& v : c) v *= r;
    return out;
}

/// Pointwise f(x) * q; the left/right distinction matters since octonions
/// do not commute.
inline OctField3D mul_right_const(const OctField3D& f, const Octonion& q) {
    OctField3D out = OctField3D::zeros(f.grid);
    for (std::size_t i = 0; i < f.comp[0].size(); ++i) out.set(i, oct_mul(f.at(i), q));
    return out;
}

inline OctField3D mul_left_const(const Octonion& q, const OctField3D& f) {
    OctField3D out = OctField3D::zeros(f.grid);
    for (std::size_t i = 0; i < f.comp[0].size(); ++i) out.set(i, oct_mul(q, f.at(i)));
    return out;
}

template <typename Field>
inline double rel_l2_error(const Field& got, const Field& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < got.comp.size(); ++c)
        for (std::size_t i = 0; i < got.comp[c].size(); ++i) {
            const double d = got.comp[c][i] - want.comp[c][i];
            num += d * d;
            den += want.comp[c][i] * want.comp[c][i];
        }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace oolct
