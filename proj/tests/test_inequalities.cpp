#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oolct/inequalities.hpp"
#include "oolct/signals.hpp"

using namespace oolct;

namespace {

// Independent Gamma oracle: Lanczos approximation (g = 7, 9 terms),
// deliberately separate from the implementation path under test.
double lanczos_gamma(double x) {
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (x < 0.5) return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
    x -= 1.0;
    double acc = coef[0];
    for (int i = 1; i < 9; ++i) acc += coef[i] / (x + i);
    const double t = x + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

const double kEulerGamma = 0.57721566490153286060;

OctField3D reference_gaussian(int n, double halfwidth, double sigma = 1.0) {
    SignalSpec spec;
    spec.kind = SignalKind::Gaussian;
    spec.sigma = sigma;
    return make_signal(Grid3D::cubic(n, halfwidth), spec);
}

// Refinement-check reference: a wide Gaussian keeps the log- and
// moment-weighted integrals away from their near-cancellation point, so
// the midpoint rule's O(dx^(3+alpha)) origin-cusp error stays well inside
// the relative tolerance.
constexpr double kRefSigma = 4.0;
constexpr double kRefHalfwidth = 16.0;
const TransformOptions kFftOpts{PhaseConvention::Unitary, TransformPath::Fft, {}};

}  // namespace

TEST_CASE("pitt constant") {
    CHECK(pitt_constant(0.0) == Catch::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));

    // alpha = 1: 2 pi^2 [Gamma(1/4)/Gamma(3/4)]^2, vs the Lanczos oracle
    const double want = 2.0 * M_PI * M_PI * std::pow(lanczos_gamma(0.25) / lanczos_gamma(0.75), 2);
    CHECK(pitt_constant(1.0) == Catch::Approx(want).epsilon(1e-10));
    CHECK(pitt_constant(1.0) == Catch::Approx(172.79).epsilon(1e-3));

    // dense evaluation over [0, 1.9]: C_alpha grows monotonically from
    // 4 pi^2 towards the Gamma((2-alpha)/4) pole at alpha = 2
    double prev = pitt_constant(0.0);
    for (int i = 1; i <= 19; ++i) {
        const double cur = pitt_constant(0.1 * i);
        CHECK(cur > prev);
        CHECK(std::isfinite(cur));
        prev = cur;
    }

    CHECK_THROWS_AS(pitt_constant(2.0), invalid_check);
    CHECK_THROWS_AS(pitt_constant(-0.1), invalid_check);
}

TEST_CASE("log constant") {
    // psi(1/2) = -gamma - 2 ln 2, so D = ln 2 + psi(1/2) = -gamma - ln 2
    CHECK(log_constant() == Catch::Approx(-kEulerGamma - std::log(2.0)).epsilon(1e-10));
    CHECK(log_constant() == Catch::Approx(-1.270363).epsilon(1e-6));

    // digamma against a central difference of lgamma
    for (double x : {0.5, 1.0, 2.3, 7.7, 15.0}) {
        const double h = 1e-6;
        const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2.0 * h);
        CHECK(digamma(x) == Catch::Approx(fd).margin(1e-8));
    }

    CHECK(log_constant() == log_constant());
}

TEST_CASE("local constant") {
    CHECK(local_constant(0.5) == Catch::Approx(2.5).margin(1e-12));
    for (double a = 0.1; a < 0.95; a += 0.1) {
        CHECK(std::isfinite(local_constant(a)));
        CHECK(local_constant(a) > 0.0);
    }
    for (double a = 1.1; a <= 3.05; a += 0.1) {
        CHECK(std::isfinite(local_constant(a)));
        CHECK(local_constant(a) > 0.0);
    }
    CHECK_THROWS_AS(local_constant(1.0), invalid_check);
    CHECK_THROWS_AS(local_constant(0.0), invalid_check);
    CHECK_THROWS_AS(local_constant(-0.5), invalid_check);
}

TEST_CASE("pitt check") {
    const OctField3D f = reference_gaussian(24, 8.0);
    const OLCTParamsTriple P = OLCTParamsTriple::fourier();

    // alpha = 0 reduces to the energy comparison with rhs ||f||^2/(2 pi |b3|)
    const InequalityReport r0 = pitt_check(f, P, 0.0);
    const InequalityReport e = energy_check(f, P);
    CHECK(r0.lhs == e.lhs);  // bitwise: same weighted accumulation
    CHECK(r0.rhs == Catch::Approx(e.rhs / (2.0 * M_PI)).epsilon(1e-12));

    const InequalityReport r = pitt_check(f, P, 0.5);
    CHECK(std::isfinite(r.lhs));
    CHECK(std::isfinite(r.rhs));
    CHECK(r.alpha == 0.5);

    // refinement oracle: half the spacing, same box
    const OctField3D fa = reference_gaussian(48, kRefHalfwidth, kRefSigma);
    const OctField3D fb = reference_gaussian(96, kRefHalfwidth, kRefSigma);
    const InequalityReport ra = pitt_check(fa, P, 0.5, kFftOpts);
    const InequalityReport rb = pitt_check(fb, P, 0.5, kFftOpts);
    CHECK(std::abs(ra.lhs - rb.lhs) <= 1e-4 * std::abs(rb.lhs));
    CHECK(std::abs(ra.rhs - rb.rhs) <= 1e-4 * std::abs(rb.rhs));

    CHECK_THROWS_AS(pitt_check(OctField3D::zeros(f.grid), P, 0.5), invalid_check);
    CHECK_THROWS_AS(pitt_check(f, P, 2.0), invalid_check);
}

TEST_CASE("log check") {
    const OctField3D f = reference_gaussian(24, 8.0);
    const OLCTParamsTriple P = OLCTParamsTriple::fourier();

    const InequalityReport r = log_check(f, P);
    CHECK(std::isfinite(r.lhs));
    CHECK(r.rhs == Catch::Approx(log_constant() * std::pow(lp_norm(f, 2.0), 2)).epsilon(1e-12));

    const OctField3D fa = reference_gaussian(48, kRefHalfwidth, kRefSigma);
    const OctField3D fb = reference_gaussian(96, kRefHalfwidth, kRefSigma);
    const InequalityReport ra = log_check(fa, P, kFftOpts);
    const InequalityReport rb = log_check(fb, P, kFftOpts);
    CHECK(std::abs(ra.lhs - rb.lhs) <= 1e-4 * std::abs(rb.lhs));
    CHECK(std::abs(ra.rhs - rb.rhs) <= 1e-4 * std::abs(rb.rhs));

    // width sweep: with the asymmetric 2 pi |b3| weighting of the frequency
    // side the normalized slack is monotone decreasing in sigma
    double slack[3];
    int i = 0;
    for (double sigma : {0.5, 1.0, 2.0}) {
        SignalSpec spec;
        spec.sigma = sigma;
        const OctField3D fs = make_signal(Grid3D::cubic(24, 8.0), spec);
        slack[i++] = log_check(fs, P).slack / std::pow(lp_norm(fs, 2.0), 2);
    }
    CHECK(slack[0] > slack[1]);
    CHECK(slack[1] > slack[2]);

    CHECK_THROWS_AS(log_check(OctField3D::zeros(f.grid), P), invalid_check);
}

TEST_CASE("hausdorff-young check") {
    const OctField3D f = reference_gaussian(24, 8.0);
    const OLCTParamsTriple P = OLCTParamsTriple::fourier();

    // p = q = 2: lhs^2/||f||^2 must agree with the energy ratio
    const InequalityReport r2 = hy_check(f, P, 2.0);
    const double er = energy_ratio(f, P);
    const double fn = lp_norm(f, 2.0);
    CHECK(r2.lhs * r2.lhs / (fn * fn) == Catch::Approx(er).epsilon(1e-10));

    // p = 1: q = inf, lhs is the sup norm
    const InequalityReport r1 = hy_check(f, P, 1.0);
    CHECK(std::isinf(*r1.q));
    CHECK(r1.lhs > 0.0);
    CHECK(r1.rhs == Catch::Approx(lp_norm(f, 1.0) / (2.0 * M_PI)).epsilon(1e-12));

    const InequalityReport r15 = hy_check(f, P, 1.5);
    CHECK(*r15.q == Catch::Approx(3.0));
    CHECK(r15.secondary_constant.has_value());
    const OctField3D fa = reference_gaussian(48, kRefHalfwidth, kRefSigma);
    const OctField3D fb = reference_gaussian(96, kRefHalfwidth, kRefSigma);
    const InequalityReport r15a = hy_check(fa, P, 1.5, kFftOpts);
    const InequalityReport r15b = hy_check(fb, P, 1.5, kFftOpts);
    CHECK(std::abs(r15a.lhs - r15b.lhs) <= 1e-4 * r15b.lhs);
    CHECK(std::abs(r15a.rhs - r15b.rhs) <= 1e-4 * r15b.rhs);

    CHECK_THROWS_AS(hy_check(f, P, 0.9), invalid_check);
    CHECK_THROWS_AS(hy_check(f, P, 2.1), invalid_check);
}

TEST_CASE("local check") {
    const OctField3D f = reference_gaussian(24, 8.0);
    const OLCTParamsTriple P = OLCTParamsTriple::fourier();
    const Grid3D wgrid = olct_conjugate_grid(f.grid, P);

    // full grid: lhs can never exceed the total output energy
    VoxelMask full = VoxelMask::empty(wgrid);
    for (auto& v : full.flags) v = 1;
    const InequalityReport rf = local_check(f, P, 0.5, full);
    const InequalityReport e = energy_check(f, P);
    CHECK(rf.lhs <= e.lhs * (1.0 + 1e-12));
    CHECK(rf.name == CheckName::Local1);

    // nested balls: lhs monotone nondecreasing with the set
    double prev = -1.0;
    for (double radius : {0.5, 1.0, 2.0}) {
        const InequalityReport r = local_check(f, P, 0.5, ball_mask(wgrid, radius));
        CHECK(r.lhs >= prev);
        prev = r.lhs;
    }

    // refinement stability (coarser tolerance for the voxelized set)
    const OctField3D fa = reference_gaussian(48, kRefHalfwidth, kRefSigma);
    const OctField3D fb = reference_gaussian(96, kRefHalfwidth, kRefSigma);
    const InequalityReport ra =
        local_check(fa, P, 0.5, ball_mask(olct_conjugate_grid(fa.grid, P), 1.0), kFftOpts);
    const InequalityReport rb =
        local_check(fb, P, 0.5, ball_mask(olct_conjugate_grid(fb.grid, P), 1.0), kFftOpts);
    CHECK(std::abs(ra.lhs - rb.lhs) <= 1e-3 * rb.lhs);
    CHECK(std::abs(ra.rhs - rb.rhs) <= 1e-3 * rb.rhs);

    // alpha > 1 branch
    const InequalityReport r2 = local_check(f, P, 2.0, ball_mask(wgrid, 1.0));
    CHECK(r2.name == CheckName::Local2);
    CHECK(std::isfinite(r2.rhs));

    CHECK_THROWS_AS(local_check(f, P, 1.0, full), invalid_check);
    CHECK_THROWS_AS(local_check(f, P, 0.5, VoxelMask::empty(wgrid)), invalid_check);
}

TEST_CASE("csv rows are stable and deterministic") {
    const OctField3D f = reference_gaussian(16, 8.0);
    const OLCTParamsTriple P = OLCTParamsTriple::fourier();

    CHECK(csv_header() ==
          "check,alpha,p,q,E_measure,convention,lhs,rhs,constant,slack,holds,grid_n,"
          "grid_halfwidth,b1,b2,b3");

    const std::string row1 = csv_row(pitt_check(f, P, 0.5));
    const std::string row2 = csv_row(pitt_check(f, P, 0.5));
    CHECK(row1 == row2);
    CHECK(row1.substr(0, 5) == "pitt,");

    // fields without a value stay empty
    const std::string erow = csv_row(energy_check(f, P));
    CHECK(erow.substr(0, 10) == "energy,,,,");
}

TEST_CASE("signal generators") {
    const Grid3D g = Grid3D::cubic(16, 8.0);

    SignalSpec bad;
    bad.sigma = -1.0;
    CHECK_THROWS_AS(make_signal(g, bad), std::invalid_argument);
    SignalSpec none;
    none.components = 0;
    CHECK_THROWS_AS(make_signal(g, none), std::invalid_argument);

    // parity probe x1 * gaussian: only the oee projection survives
    SignalSpec probe;
    probe.kind = SignalKind::ParityProbe;
    probe.parity_odd = {true, false, false};
    const OctField3D fp = make_signal(g, probe);
    const auto parts = parity8(fp);
    CHECK(lp_norm(parts[1], 2.0) > 0.0);
    for (int m = 0; m < 8; ++m)
        if (m != 1) CHECK(lp_norm(parts[m], 2.0) < 1e-13);

    // identical seeds give identical fields
    SignalSpec rs;
    rs.kind = SignalKind::RandomSmooth;
    rs.seed = 42;
    rs.components = 0xff;
    const OctField3D a = make_signal(g, rs);
    const OctField3D b = make_signal(g, rs);
    CHECK(rel_l2_error(a, b) == 0.0);
    CHECK(lp_norm(a, std::numeric_limits<double>::infinity()) == Catch::Approx(1.0));

    // chirped gaussian has unit-norm pointwise rotation: same magnitude
    SignalSpec ch;
    ch.kind = SignalKind::ChirpedGaussian;
    const OctField3D fc = make_signal(g, ch);
    SignalSpec ga;
    const OctField3D fg = make_signal(g, ga);
    for (std::size_t v = 0; v < fc.comp[0].size(); ++v)
        CHECK(oct_norm(fc.at(v)) == Catch::Approx(fg.comp[0][v]).margin(1e-13));
}
