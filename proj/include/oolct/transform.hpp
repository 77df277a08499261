#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstring>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "oolct/algebra.hpp"
#include "oolct/grid.hpp"

namespace oolct {

struct invalid_params : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One axis's offset linear canonical transform parameter set
/// (a, b, c, d, tau, eta) with ad - bc = 1 and b != 0.
struct OLCTParams {
    double a = 0.0, b = 1.0, c = -1.0, d = 0.0;
    double tau = 0.0, eta = 0.0;

    static OLCTParams make(double a, double b, double c, double d, double tau = 0.0,
                           double eta = 0.0, double det_tol = 1e-12, const char* label = "A") {
        for (double v : {a, b, c, d, tau, eta})
            if (!std::isfinite(v)) throw invalid_params(std::string(label) + ": non-finite parameter");
        if (b == 0.0) throw invalid_params(std::string(label) + ": b must be nonzero");
        const double det = a * d - b * c;
        if (std::abs(det - 1.0) > det_tol)
            throw invalid_params(std::string(label) + ": ad-bc = " + std::to_string(det) +
                                 ", expected 1");
        return OLCTParams{a, b, c, d, tau, eta};
    }

    /// (0, 1, -1, 0, 0, 0): the plain Fourier-type special case.
    static OLCTParams fourier() { return OLCTParams{0.0, 1.0, -1.0, 0.0, 0.0, 0.0}; }
};

/// Per-axis parameters; axes 1, 2, 3 are bound to units e1, e2, e4.
struct OLCTParamsTriple {
    OLCTParams A1, A2, A3;

    static OLCTParamsTriple fourier() {
        return {OLCTParams::fourier(), OLCTParams::fourier(), OLCTParams::fourier()};
    }
    const OLCTParams& axis(int k) const { return k == 0 ? A1 : (k == 1 ? A2 : A3); }
};

/// Kernel phase-constant convention.  `Literal` folds the -pi/2 term into
/// the phase bracket, giving the constant phase -pi/(4b).  `Unitary`
/// replaces it by -sgn(b)*pi/4 (the principal branch of 1/sqrt(2*pi*mu*b)),
/// which makes each 1D kernel exactly unitary and the inversion exact.
enum class PhaseConvention { Unitary, Literal };

enum class TransformPath { Direct, Fft, ClosedForm };

inline const char* to_string(PhaseConvention c) {
    return c == PhaseConvention::Unitary ? "unitary" : "literal";
}
inline const char* to_string(TransformPath p) {
    switch (p) {
        case TransformPath::Direct: return "direct";
        case TransformPath::Fft: return "fft";
        default: return "closed_form";
    }
}

/// Options for the 3D transform.  When output_grid is unset the transform
/// writes onto the conjugate grid induced by the input grid and parameters
/// (w_k = 2*pi*b_k*nu_k with nu the critically sampled frequencies); on that
/// grid the discrete forward/inverse pair is exact to rounding.
struct TransformOptions {
    PhaseConvention convention = PhaseConvention::Unitary;
    TransformPath path = TransformPath::Direct;
    std::optional<Grid3D> output_grid{};
};

struct TransformOptions1D {
    PhaseConvention convention = PhaseConvention::Unitary;
    TransformPath path = TransformPath::Direct;
    std::optional<Grid1D> output_grid{};
};

struct TransformOptions2D {
    PhaseConvention convention = PhaseConvention::Unitary;
    TransformPath path = TransformPath::Direct;
    std::optional<Grid2D> output_grid{};
};

/// Phase of the 1D kernel:
///   literal: (1/2b)[a x^2 - 2x(w - tau) - 2w(d tau - b eta) + d(w^2 + tau^2) - pi/2]
///   unitary: same bracket without -pi/2, plus the constant -sgn(b)*pi/4.
inline double kernel_phase(const OLCTParams& A, double x, double w, PhaseConvention conv) {
    if (A.b == 0.0) throw invalid_params("kernel_phase: b must be nonzero");
    const double bracket = A.a * x * x - 2.0 * x * (w - A.tau) - 2.0 * w * (A.d * A.tau - A.b * A.eta) +
                           A.d * (w * w + A.tau * A.tau);
    if (conv == PhaseConvention::Literal) return (bracket - M_PI / 2.0) / (2.0 * A.b);
    return bracket / (2.0 * A.b) - std::copysign(M_PI / 4.0, A.b);
}

/// Kernel value (1/sqrt(2*pi*|b|)) * (cos(phase) + e_unit * sin(phase)).
inline Octonion kernel_eval(const OLCTParams& A, int unit, double x, double w,
                            PhaseConvention conv) {
    const double amp = 1.0 / std::sqrt(2.0 * M_PI * std::abs(A.b));
    return amp * unit_exp(unit, kernel_phase(A, x, w, conv));
}

/// Conjugate grid of a centered grid under the pairing w = scale * nu:
/// same sample count, spacing |scale|/(n*dx).  Involutive.
inline Grid1D conjugate_grid(const Grid1D& g, double scale) {
    return Grid1D::centered(g.n, std::abs(scale) / (g.n * g.dx));
}

inline Grid1D olct_conjugate_grid(const Grid1D& g, const OLCTParams& A) {
    if (A.b == 0.0) throw invalid_params("conjugate grid: b must be nonzero");
    return conjugate_grid(g, 2.0 * M_PI * A.b);
}

inline Grid3D olct_conjugate_grid(const Grid3D& g, const OLCTParamsTriple& P) {
    Grid3D out = g;
    for (int k = 0; k < 3; ++k) out.axes[k] = olct_conjugate_grid(g.axes[k], P.axis(k));
    return out;
}

inline Grid1D oft_conjugate_grid(const Grid1D& g) { return conjugate_grid(g, 1.0); }

inline Grid3D oft_conjugate_grid(const Grid3D& g) {
    Grid3D out = g;
    for (int k = 0; k < 3; ++k) out.axes[k] = oft_conjugate_grid(g.axes[k]);
    return out;
}

namespace detail {

/// Separable kernel phase xi(x, w) = c2x x^2 + c1x x + cxw x w + c2w w^2
/// + c1w w + c0, together with the amplitude and the w = scale * nu pairing
/// used by the fast path.
struct PhasePoly {
    double amp = 1.0;
    double c2x = 0.0, c1x = 0.0, cxw = 0.0, c2w = 0.0, c1w = 0.0, c0 = 0.0;
    double scale = 1.0;
};

inline PhasePoly olct_phase_poly(const OLCTParams& A, PhaseConvention conv) {
    if (A.b == 0.0 || !std::isfinite(A.b)) throw invalid_params("transform: b must be nonzero");
    PhasePoly p;
    p.amp = 1.0 / std::sqrt(2.0 * M_PI * std::abs(A.b));
    p.c2x = A.a / (2.0 * A.b);
    p.c1x = A.tau / A.b;
    p.cxw = -1.0 / A.b;
    p.c2w = A.d / (2.0 * A.b);
    p.c1w = A.eta - A.d * A.tau / A.b;
    p.c0 = A.d * A.tau * A.tau / (2.0 * A.b) +
           (conv == PhaseConvention::Literal ? -M_PI / (4.0 * A.b)
                                             : -std::copysign(M_PI / 4.0, A.b));
    p.scale = 2.0 * M_PI * A.b;
    return p;
}

inline PhasePoly oft_phase_poly() {
    PhasePoly p;
    p.cxw = -2.0 * M_PI;
    p.scale = 1.0;
    return p;
}

inline double phase_at(const PhasePoly& p, double x, double w) {
    return p.c2x * x * x + p.c1x * x + p.cxw * x * w + p.c2w * w * w + p.c1w * w + p.c0;
}

using cplx = std::complex<double>;

/// Dense kernel matrix for one axis: out m, in i, value
/// amp * exp(sgn*i*xi(x, w)) * d_in, where (x, w) = (in, out) when the axis
/// integrates the signal variable and (out, in) for the inverse direction.
inline std::vector<cplx> kernel_matrix(const PhasePoly& p, bool conj, bool in_is_x,
                                       const Grid1D& gin, const Grid1D& gout) {
    std::vector<cplx> K(std::size_t(gout.n) * gin.n);
    const double sgn = conj ? -1.0 : 1.0;
    for (int m = 0; m < gout.n; ++m) {
        const double vo = gout.coord(m);
        for (int i = 0; i < gin.n; ++i) {
            const double vi = gin.coord(i);
            const double xi = in_is_x ? phase_at(p, vi, vo) : phase_at(p, vo, vi);
            K[std::size_t(m) * gin.n + i] =
                std::polar(p.amp * gin.dx, sgn * xi);
        }
    }
    return K;
}

/// Precomputed chirp-DFT-chirp steps for one axis pencil.  The half-sample
/// offsets of both grids become pre/post twiddle factors around a standard
/// DFT; a negative scale flips the frequency index on the w side.
struct FftPencil {
    int n = 0;
    int fft_sign = FFTW_FORWARD;
    std::vector<int> in_map;    // DFT slot -> input sample index
    std::vector<int> out_map;   // DFT slot -> output sample index
    std::vector<cplx> pre;      // per DFT slot, applied to the gathered input
    std::vector<cplx> post;     // per DFT slot, applied after the DFT
};

inline FftPencil make_fft_pencil(const PhasePoly& p, bool conj, bool in_is_x, const Grid1D& gin,
                                 const Grid1D& gout) {
    const Grid1D expect = conjugate_grid(gin, p.scale);
    if (gout.n != gin.n || std::abs(gout.dx - expect.dx) > 1e-9 * expect.dx)
        throw std::invalid_argument("fft path requires the conjugate output grid");

    FftPencil fp;
    const int n = gin.n;
    fp.n = n;
    const double sgn = conj ? -1.0 : 1.0;
    fp.fft_sign = conj ? FFTW_BACKWARD : FFTW_FORWARD;
    fp.in_map.resize(n);
    fp.out_map.resize(n);
    fp.pre.resize(n);
    fp.post.resize(n);

    const double c = 0.5 * (n - 1);
    const bool flip = p.scale < 0.0;
    const Grid1D& gx = in_is_x ? gin : gout;   // signal-side grid
    const Grid1D& gw = in_is_x ? gout : gin;   // frequency-side grid

    // Half-sample offset DFT as pre/post twiddles around a plain DFT:
    // exp(-sgn*2*pi*i*(p-c)(q-c)/n) splits into the slot factors below.
    for (int slot = 0; slot < n; ++slot) {
        fp.pre[slot] = std::polar(1.0, sgn * 2.0 * M_PI * c * slot / n);
        fp.post[slot] = std::polar(1.0, sgn * 2.0 * M_PI * c * (slot - c) / n);
    }
    // fold the x- and w-side chirps plus quadrature weight and amplitude
    for (int slot = 0; slot < n; ++slot) {
        if (in_is_x) {
            fp.in_map[slot] = slot;
            const double x = gx.coord(slot);
            fp.pre[slot] *= std::polar(1.0, sgn * (p.c2x * x * x + p.c1x * x));
            const int j = flip ? n - 1 - slot : slot;
            fp.out_map[slot] = j;
            const double w = gw.coord(j);
            fp.post[slot] *=
                std::polar(p.amp * gin.dx, sgn * (p.c2w * w * w + p.c1w * w + p.c0));
        } else {
            const int j = flip ? n - 1 - slot : slot;
            fp.in_map[slot] = j;
            const double w = gw.coord(j);
            fp.pre[slot] *= std::polar(1.0, sgn * (p.c2w * w * w + p.c1w * w + p.c0));
            fp.out_map[slot] = slot;
            const double x = gx.coord(slot);
            fp.post[slot] *= std::polar(p.amp * gin.dx, sgn * (p.c2x * x * x + p.c1x * x));
        }
    }
    return fp;
}

/// RAII FFTW buffer + plan reused across all pencils of one axis pass.
class FftWorkspace {
public:
    FftWorkspace(int n, int sign)
        : n_(n), buf_(fftw_alloc_complex(std::size_t(n))),
          plan_(fftw_plan_dft_1d(n, buf_, buf_, sign, FFTW_ESTIMATE)) {
        if (!buf_ || !plan_) throw std::runtime_error("fftw initialization failed");
    }
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;
    ~FftWorkspace() {
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }

    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void execute() { fftw_execute(plan_); }
    int size() const { return n_; }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

/// Pencil enumeration: base offsets over the non-transformed axes, in the
/// same outer order for input and output shapes.
inline void pencil_bases(const Grid3D& gin, const Grid3D& gout, int axis,
                         std::vector<std::size_t>& in_base, std::vector<std::size_t>& out_base) {
    const int o1 = axis == 0 ? 1 : 0;
    const int o2 = axis == 2 ? 1 : 2;
    in_base.clear();
    out_base.clear();
    for (int i = 0; i < gin.n(o1); ++i)
        for (int j = 0; j < gin.n(o2); ++j) {
            in_base.push_back(std::size_t(i) * gin.stride(o1) + std::size_t(j) * gin.stride(o2));
            out_base.push_back(std::size_t(i) * gout.stride(o1) + std::size_t(j) * gout.stride(o2));
        }
}

/// One axis pass over all pencils of a multi-component field, in the pair
/// representation induced by right multiplication with the axis unit.
template <std::size_t N>
void apply_axis_pairs(const std::array<std::vector<double>, N>& in,
                      std::array<std::vector<double>, N>& out, std::span<const UnitPair> pairs,
                      std::span<const std::size_t> in_base, std::span<const std::size_t> out_base,
                      std::size_t in_stride, std::size_t out_stride, int n_in, int n_out,
                      const std::vector<cplx>* K, const FftPencil* fp) {
    std::vector<cplx> zin(n_in), zout(n_out);
    std::optional<FftWorkspace> ws;
    if (fp) ws.emplace(fp->n, fp->fft_sign);

    for (std::size_t pidx = 0; pidx < in_base.size(); ++pidx) {
        const std::size_t ib = in_base[pidx];
        const std::size_t ob = out_base[pidx];
        for (const UnitPair& pr : pairs) {
            const double* lo = in[pr.lo].data();
            const double* hi = in[pr.hi].data();
            if (K) {
                for (int i = 0; i < n_in; ++i)
                    zin[i] = cplx(lo[ib + i * in_stride], pr.sigma * hi[ib + i * in_stride]);
                for (int m = 0; m < n_out; ++m) {
                    cplx acc(0.0, 0.0);
                    const cplx* row = K->data() + std::size_t(m) * n_in;
                    for (int i = 0; i < n_in; ++i) acc += row[i] * zin[i];
                    zout[m] = acc;
                }
            } else {
                cplx* buf = ws->data();
                for (int slot = 0; slot < fp->n; ++slot) {
                    const std::size_t src = ib + std::size_t(fp->in_map[slot]) * in_stride;
                    buf[slot] =
                        fp->pre[slot] * cplx(lo[src], pr.sigma * hi[src]);
                }
                ws->execute();
                for (int slot = 0; slot < fp->n; ++slot)
                    zout[fp->out_map[slot]] = buf[slot] * fp->post[slot];
            }
            double* olo = out[pr.lo].data();
            double* ohi = out[pr.hi].data();
            for (int m = 0; m < n_out; ++m) {
                olo[ob + m * out_stride] = zout[m].real();
                ohi[ob + m * out_stride] = pr.sigma * zout[m].imag();
            }
        }
    }
}

/// One axis of an octonion field: quadrature against the axis kernel with
/// unit e_k, via the dense matrix (direct) or the chirp-DFT-chirp fast path.
inline OctField3D apply_axis_oct(const OctField3D& f, int axis, const PhasePoly& pp, int unit,
                                 bool conj, bool in_is_x, const Grid1D& out_axis, bool use_fft) {
    const Grid3D gout = f.grid.with_axis(axis, out_axis);
    OctField3D out = OctField3D::zeros(gout);
    const auto pairs = unit_pairs(unit);

    std::vector<std::size_t> in_base, out_base;
    pencil_bases(f.grid, gout, axis, in_base, out_base);

    if (use_fft) {
        const FftPencil fp = make_fft_pencil(pp, conj, in_is_x, f.grid.axes[axis], out_axis);
        apply_axis_pairs<8>(f.comp, out.comp, pairs, in_base, out_base, f.grid.stride(axis),
                            gout.stride(axis), f.grid.n(axis), out_axis.n, nullptr, &fp);
    } else {
        const auto K = kernel_matrix(pp, conj, in_is_x, f.grid.axes[axis], out_axis);
        apply_axis_pairs<8>(f.comp, out.comp, pairs, in_base, out_base, f.grid.stride(axis),
                            gout.stride(axis), f.grid.n(axis), out_axis.n, &K, nullptr);
    }
    return out;
}

/// Real-volume trig quadrature along one axis (closed-form path):
/// out(w) = sum_i vol(x_i) * trig(xi(x_i, w)) * dx.
inline std::vector<double> trig_axis_matrix(const PhasePoly& p, bool use_sin, bool conj,
                                            bool in_is_x, const Grid1D& gin, const Grid1D& gout) {
    std::vector<double> M(std::size_t(gout.n) * gin.n);
    for (int m = 0; m < gout.n; ++m) {
        const double vo = gout.coord(m);
        for (int i = 0; i < gin.n; ++i) {
            const double vi = gin.coord(i);
            double xi = in_is_x ? phase_at(p, vi, vo) : phase_at(p, vo, vi);
            if (conj) xi = -xi;
            M[std::size_t(m) * gin.n + i] = (use_sin ? std::sin(xi) : std::cos(xi)) * gin.dx;
        }
    }
    return M;
}

inline std::vector<double> apply_trig_axis(const std::vector<double>& vol, const Grid3D& gin,
                                           int axis, const std::vector<double>& M,
                                           const Grid1D& out_axis) {
    const Grid3D gout = gin.with_axis(axis, out_axis);
    std::vector<double> out(gout.size(), 0.0);
    std::vector<std::size_t> in_base, out_base;
    pencil_bases(gin, gout, axis, in_base, out_base);
    const std::size_t is = gin.stride(axis), os = gout.stride(axis);
    const int nin = gin.n(axis), nout = out_axis.n;
    std::vector<double> pin(nin);
    for (std::size_t pidx = 0; pidx < in_base.size(); ++pidx) {
        for (int i = 0; i < nin; ++i) pin[i] = vol[in_base[pidx] + i * is];
        for (int m = 0; m < nout; ++m) {
            const double* row = M.data() + std::size_t(m) * nin;
            double acc = 0.0;
            for (int i = 0; i < nin; ++i) acc += row[i] * pin[i];
            out[out_base[pidx] + m * os] = acc;
        }
    }
    return out;
}

}  // namespace detail

// --------------------------------------------------------------------------
// 1D transforms
// --------------------------------------------------------------------------

namespace detail {

inline OctSignal1D apply_signal(const OctSignal1D& f, const PhasePoly& pp, int unit, bool conj,
                                bool in_is_x, const Grid1D& out_g, bool use_fft) {
    OctSignal1D out = OctSignal1D::zeros(out_g);
    const auto pairs = unit_pairs(unit);
    const std::size_t base[1] = {0};
    if (use_fft) {
        const FftPencil fp = make_fft_pencil(pp, conj, in_is_x, f.grid, out_g);
        apply_axis_pairs<8>(f.comp, out.comp, pairs, base, base, 1, 1, f.grid.n, out_g.n, nullptr,
                            &fp);
    } else {
        const auto K = kernel_matrix(pp, conj, in_is_x, f.grid, out_g);
        apply_axis_pairs<8>(f.comp, out.comp, pairs, base, base, 1, 1, f.grid.n, out_g.n, &K,
                            nullptr);
    }
    return out;
}

}  // namespace detail

/// 1D transform with unit e4: quadrature of f(x) * K(x, w), f on the left.
inline OctSignal1D oolct1d(const OctSignal1D& f, const OLCTParams& A,
                           const TransformOptions1D& opts = {}) {
    const auto pp = detail::olct_phase_poly(A, opts.convention);
    const Grid1D out_g = opts.output_grid.value_or(olct_conjugate_grid(f.grid, A));
    return detail::apply_signal(f, pp, 4, false, true, out_g, opts.path == TransformPath::Fft);
}

/// Inverse 1D transform: quadrature against the conjugate kernel over w.
inline OctSignal1D oolct1d_inverse(const OctSignal1D& F, const OLCTParams& A,
                                   const TransformOptions1D& opts = {}) {
    const auto pp = detail::olct_phase_poly(A, opts.convention);
    const Grid1D out_g = opts.output_grid.value_or(olct_conjugate_grid(F.grid, A));
    return detail::apply_signal(F, pp, 4, true, false, out_g, opts.path == TransformPath::Fft);
}

/// Chirp-multiply / DFT / chirp-multiply evaluation on the induced grid
/// w = 2*pi*b*nu (signed b: a negative b reflects the frequency axis).
inline OctSignal1D oolct1d_via_oft(const OctSignal1D& f, const OLCTParams& A,
                                   PhaseConvention conv = PhaseConvention::Unitary) {
    const auto pp = detail::olct_phase_poly(A, conv);
    const Grid1D out_g = olct_conjugate_grid(f.grid, A);
    return detail::apply_signal(f, pp, 4, false, true, out_g, true);
}

/// 1D octonion Fourier transform, kernel exp(-e4*2*pi*x*w).
inline OctSignal1D oft1d(const OctSignal1D& f) {
    return detail::apply_signal(f, detail::oft_phase_poly(), 4, false, true,
                                oft_conjugate_grid(f.grid), true);
}

inline OctSignal1D oft1d_inverse(const OctSignal1D& F) {
    return detail::apply_signal(F, detail::oft_phase_poly(), 4, true, false,
                                oft_conjugate_grid(F.grid), true);
}

// --------------------------------------------------------------------------
// 3D transforms
// --------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<int, 3> kAxisUnits = {1, 2, 4};

inline void require_valid(const OLCTParamsTriple& P) {
    const char* names[3] = {"A1", "A2", "A3"};
    for (int k = 0; k < 3; ++k) {
        const OLCTParams& A = P.axis(k);
        if (A.b == 0.0 || !std::isfinite(A.b))
            throw invalid_params(std::string(names[k]) + ": b must be nonzero");
    }
}

/// Exact 8-term expansion of ((f*K1)*K2)*K3 over {cos, sin} patterns.
/// Each sin slot contributes one right multiplication by the axis unit,
/// applied in traversal order (the iterated product is order-sensitive);
/// the remaining factors are separable real cos/sin quadratures.
inline OctField3D closed_form_engine(const OctField3D& f, const OLCTParamsTriple& P,
                                     PhaseConvention conv, const Grid3D& gout, bool inverse) {
    const std::array<int, 3> order = inverse ? std::array<int, 3>{2, 1, 0}
                                             : std::array<int, 3>{0, 1, 2};
    std::array<PhasePoly, 3> pp;
    double amp = 1.0;
    for (int k = 0; k < 3; ++k) {
        pp[k] = olct_phase_poly(P.axis(k), conv);
        amp *= pp[k].amp;
    }
    // trig matrices per axis (quadrature weight folded in, amplitude not);
    // conjugation is handled by the per-pattern sign factor below
    std::array<std::vector<double>, 3> cosM, sinM;
    for (int k = 0; k < 3; ++k) {
        cosM[k] = trig_axis_matrix(pp[k], false, false, !inverse, f.grid.axes[k], gout.axes[k]);
        sinM[k] = trig_axis_matrix(pp[k], true, false, !inverse, f.grid.axes[k], gout.axes[k]);
    }

    OctField3D out = OctField3D::zeros(gout);
    for (int pattern = 0; pattern < 8; ++pattern) {
        SignedPerm perm = SignedPerm::identity();
        double sign_factor = 1.0;
        for (int step = 0; step < 3; ++step) {
            if (pattern & (1 << step)) {
                perm.right_mul_unit(kAxisUnits[order[step]]);
                if (inverse) sign_factor = -sign_factor;  // conj kernel: -sin per unit slot
            }
        }
        for (int j = 0; j < 8; ++j) {
            std::vector<double> vol = f.comp[j];
            Grid3D cur = f.grid;
            for (int step = 0; step < 3; ++step) {
                const int ax = order[step];
                const bool use_sin = (pattern & (1 << step)) != 0;
                vol = apply_trig_axis(vol, cur, ax, use_sin ? sinM[ax] : cosM[ax], gout.axes[ax]);
                cur.axes[ax] = gout.axes[ax];
            }
            const double w = perm.sign[j] * sign_factor * amp;
            double* dst = out.comp[perm.dst[j]].data();
            for (std::size_t v = 0; v < vol.size(); ++v) dst[v] += w * vol[v];
        }
    }
    return out;
}

/// Nearest-sample resample of one axis (fft path onto an explicit grid).
inline OctField3D resample_nearest(const OctField3D& f, const Grid3D& gout) {
    OctField3D out = OctField3D::zeros(gout);
    std::array<std::vector<int>, 3> map;
    for (int k = 0; k < 3; ++k) {
        map[k].resize(gout.n(k));
        for (int i = 0; i < gout.n(k); ++i) {
            const double w = gout.coord(k, i);
            const int j = int(std::lround((w - f.grid.axes[k].x0) / f.grid.axes[k].dx));
            map[k][i] = std::clamp(j, 0, f.grid.n(k) - 1);
        }
    }
    for (int i = 0; i < gout.n(0); ++i)
        for (int j = 0; j < gout.n(1); ++j)
            for (int l = 0; l < gout.n(2); ++l) {
                const std::size_t src = f.grid.index(map[0][i], map[1][j], map[2][l]);
                const std::size_t dst = gout.index(i, j, l);
                for (int c = 0; c < 8; ++c) out.comp[c][dst] = f.comp[c][src];
            }
    return out;
}

}  // namespace detail

/// 3D transform: per-axis kernels with units e1, e2, e4 applied in strict
/// left-to-right order, ((f*K1)*K2)*K3, integrated by midpoint quadrature.
inline OctField3D oolct3d(const OctField3D& f, const OLCTParamsTriple& P,
                          const TransformOptions& opts = {}) {
    detail::require_valid(P);
    const Grid3D natural = olct_conjugate_grid(f.grid, P);
    const Grid3D gout = opts.output_grid.value_or(natural);

    if (opts.path == TransformPath::ClosedForm)
        return detail::closed_form_engine(f, P, opts.convention, gout, false);

    if (opts.path == TransformPath::Fft) {
        OctField3D cur = f;
        for (int k = 0; k < 3; ++k)
            cur = detail::apply_axis_oct(cur, k, detail::olct_phase_poly(P.axis(k), opts.convention),
                                         detail::kAxisUnits[k], false, true, natural.axes[k], true);
        if (!same_grid(gout, natural)) return detail::resample_nearest(cur, gout);
        return cur;
    }

    OctField3D cur = f;
    for (int k = 0; k < 3; ++k)
        cur = detail::apply_axis_oct(cur, k, detail::olct_phase_poly(P.axis(k), opts.convention),
                                     detail::kAxisUnits[k], false, true, gout.axes[k], false);
    return cur;
}

/// Closed-form route (pattern expansion over per-axis cos/sin quadratures
/// on real volumes).  Agrees with the direct path to rounding.
inline OctField3D oolct3d_closed_form(const OctField3D& f, const OLCTParamsTriple& P,
                                      TransformOptions opts = {}) {
    opts.path = TransformPath::ClosedForm;
    return oolct3d(f, P, opts);
}

/// Inverse: conjugate kernels applied in reversed order (axis 3 first).
inline OctField3D oolct3d_inverse(const OctField3D& F, const OLCTParamsTriple& P,
                                  const TransformOptions& opts = {}) {
    detail::require_valid(P);
    const Grid3D natural = olct_conjugate_grid(F.grid, P);
    const Grid3D gout = opts.output_grid.value_or(natural);

    if (opts.path == TransformPath::ClosedForm)
        return detail::closed_form_engine(F, P, opts.convention, gout, true);

    const bool fft = opts.path == TransformPath::Fft;
    if (fft && !same_grid(gout, natural))
        throw std::invalid_argument("oolct3d_inverse: fft path requires the conjugate grid");
    OctField3D cur = F;
    for (int k = 2; k >= 0; --k)
        cur = detail::apply_axis_oct(cur, k, detail::olct_phase_poly(P.axis(k), opts.convention),
                                     detail::kAxisUnits[k], true, false, gout.axes[k], fft);
    return cur;
}

/// One axis of the 3D octonion Fourier transform (unit e1, e2 or e4).
inline OctField3D oft3d_axis(const OctField3D& f, int axis) {
    return detail::apply_axis_oct(f, axis, detail::oft_phase_poly(), detail::kAxisUnits[axis],
                                  false, true, oft_conjugate_grid(f.grid.axes[axis]), true);
}

/// 3D octonion Fourier transform, kernels exp(-mu_k*2*pi*x_k*w_k) applied
/// left to right with units e1, e2, e4.
inline OctField3D oft3d(const OctField3D& f) {
    OctField3D cur = f;
    for (int k = 0; k < 3; ++k) cur = oft3d_axis(cur, k);
    return cur;
}

inline OctField3D oft3d_inverse(const OctField3D& F) {
    OctField3D cur = F;
    for (int k = 2; k >= 0; --k)
        cur = detail::apply_axis_oct(cur, k, detail::oft_phase_poly(), detail::kAxisUnits[k], true,
                                     false, oft_conjugate_grid(F.grid.axes[k]), true);
    return cur;
}

// --------------------------------------------------------------------------
// 2D quaternion transform
// --------------------------------------------------------------------------

/// 2D quaternion transform with kernels K^{e1}_{A1}(x1,w1) K^{e2}_{A2}(x2,w2).
inline QuatField2D qolct2d(const QuatField2D& f, const OLCTParams& A1, const OLCTParams& A2,
                           const TransformOptions2D& opts = {}) {
    const OLCTParams* As[2] = {&A1, &A2};
    QuatField2D cur = f;
    for (int k = 0; k < 2; ++k) {
        const auto pp = detail::olct_phase_poly(*As[k], opts.convention);
        const Grid1D out_axis = opts.output_grid ? opts.output_grid->axes[k]
                                                 : olct_conjugate_grid(cur.grid.axes[k], *As[k]);
        const Grid2D gout{{k == 0 ? out_axis : cur.grid.axes[0], k == 1 ? out_axis : cur.grid.axes[1]}};
        QuatField2D next = QuatField2D::zeros(gout);

        const auto pairs8 = unit_pairs(k + 1);
        std::array<UnitPair, 2> pairs{pairs8[0], pairs8[1]};  // quaternion planes

        std::vector<std::size_t> in_base, out_base;
        const int other = 1 - k;
        for (int i = 0; i < cur.grid.axes[other].n; ++i) {
            in_base.push_back(k == 0 ? std::size_t(i) : std::size_t(i) * cur.grid.axes[1].n);
            out_base.push_back(k == 0 ? std::size_t(i) : std::size_t(i) * gout.axes[1].n);
        }
        const std::size_t in_stride = k == 0 ? cur.grid.axes[1].n : 1;
        const std::size_t out_stride = k == 0 ? gout.axes[1].n : 1;

        const bool fft = opts.path == TransformPath::Fft;
        if (fft) {
            const auto fp = detail::make_fft_pencil(pp, false, true, cur.grid.axes[k], out_axis);
            detail::apply_axis_pairs<4>(cur.comp, next.comp, pairs, in_base, out_base, in_stride,
                                        out_stride, cur.grid.axes[k].n, out_axis.n, nullptr, &fp);
        } else {
            const auto K = detail::kernel_matrix(pp, false, true, cur.grid.axes[k], out_axis);
            detail::apply_axis_pairs<4>(cur.comp, next.comp, pairs, in_base, out_base, in_stride,
                                        out_stride, cur.grid.axes[k].n, out_axis.n, &K, nullptr);
        }
        cur = std::move(next);
    }
    return cur;
}

// --------------------------------------------------------------------------
// Norm split and energy
// --------------------------------------------------------------------------

struct NormSplitResult {
    std::array<double, 4> terms{};  // |I_ge|^2, |I_ho|^2, |I_he|^2, |I_go|^2
    double scaled_sum = 0.0;        // sum of terms / (2*pi*|b3|)
    double transform_sq_norm = 0.0; // |oolct3d(f)|_2^2 for comparison
};

/// Four quaternion-side integrals of the norm-split identity: axes 1 and 2
/// transformed with units +/-e1, +/-e2, axis 3 integrated against bare
/// cos/sin of the axis-3 kernel phase.  Reported against the true norm.
inline NormSplitResult norm_split(const OctField3D& f, const OLCTParamsTriple& P,
                                  const TransformOptions& opts = {}) {
    detail::require_valid(P);
    auto [e, o] = even_odd_axis3(f);
    auto [ge3, he3] = quat_split_field(e);
    auto [go3, ho3] = quat_split_field(o);

    const Grid3D wgrid = olct_conjugate_grid(f.grid, P);
    const auto pp1 = detail::olct_phase_poly(P.A1, opts.convention);
    const auto pp2 = detail::olct_phase_poly(P.A2, opts.convention);
    const auto pp3 = detail::olct_phase_poly(P.A3, opts.convention);
    const auto cos3 = detail::trig_axis_matrix(pp3, false, false, true, f.grid.axes[2], wgrid.axes[2]);
    const auto sin3 = detail::trig_axis_matrix(pp3, true, false, true, f.grid.axes[2], wgrid.axes[2]);

    const auto run = [&](const QuatField3D& q, bool conj_units, const std::vector<double>& trig3) {
        QuatField3D cur = q;
        for (int k = 0; k < 2; ++k) {
            const auto& pp = k == 0 ? pp1 : pp2;
            const Grid3D gout = cur.grid.with_axis(k, wgrid.axes[k]);
            QuatField3D next = QuatField3D::zeros(gout);
            const auto pairs8 = unit_pairs(k + 1);
            std::array<UnitPair, 2> pairs{pairs8[0], pairs8[1]};
            std::vector<std::size_t> in_base, out_base;
            detail::pencil_bases(cur.grid, gout, k, in_base, out_base);
            const auto K = detail::kernel_matrix(pp, conj_units, true, cur.grid.axes[k], wgrid.axes[k]);
            detail::apply_axis_pairs<4>(cur.comp, next.comp, pairs, in_base, out_base,
                                        cur.grid.stride(k), gout.stride(k), cur.grid.n(k),
                                        wgrid.axes[k].n, &K, nullptr);
            cur = std::move(next);
        }
        QuatField3D out;
        out.grid = cur.grid.with_axis(2, wgrid.axes[2]);
        for (int c = 0; c < 4; ++c)
            out.comp[c] = detail::apply_trig_axis(cur.comp[c], cur.grid, 2, trig3, wgrid.axes[2]);
        const double n = lp_norm(out, 2.0);
        return n * n;
    };

    NormSplitResult r;
    r.terms[0] = run(ge3, false, cos3);
    r.terms[1] = run(ho3, true, sin3);
    r.terms[2] = run(he3, true, cos3);
    r.terms[3] = run(go3, false, sin3);
    r.scaled_sum = (r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3]) /
                   (2.0 * M_PI * std::abs(P.A3.b));
    const double tn = lp_norm(oolct3d(f, P, opts), 2.0);
    r.transform_sq_norm = tn * tn;
    return r;
}

/// ||oolct3d(f)||_2^2 / ||f||_2^2; signal-independent for fixed parameters.
inline double energy_ratio(const OctField3D& f, const OLCTParamsTriple& P,
                           const TransformOptions& opts = {}) {
    const double fn = lp_norm(f, 2.0);
    if (fn == 0.0) throw std::invalid_argument("energy_ratio: zero signal");
    const double Fn = lp_norm(oolct3d(f, P, opts), 2.0);
    return (Fn * Fn) / (fn * fn);
}

}  // namespace oolct
