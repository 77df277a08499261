#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "oolct/algebra.hpp"

using namespace oolct;

namespace {

// Independent transcription of the standard octonion multiplication table,
// kept deliberately separate from the library's own table.
constexpr int kExpectedTable[8][8] = {
    {1, 2, 3, 4, 5, 6, 7, 8},
    {2, -1, 4, -3, 6, -5, -8, 7},
    {3, -4, -1, 2, 7, 8, -5, -6},
    {4, 3, -2, -1, 8, -7, 6, -5},
    {5, -6, -7, -8, -1, 2, 3, 4},
    {6, 5, -8, 7, -2, -1, -4, 3},
    {7, 8, 5, -6, -3, 4, -1, -2},
    {8, -7, 6, 5, -4, -3, 2, -1},
};

// Oracle: hypercomplex product by recursive doubling over pairs,
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), down to the reals.
std::vector<double> cd_conj(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    out[0] = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

std::vector<double> cd_mul(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n == 1) return {x[0] * y[0]};
    const std::size_t h = n / 2;
    std::vector<double> a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
    std::vector<double> c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
    std::vector<double> lo = cd_mul(a, c);
    std::vector<double> lo2 = cd_mul(cd_conj(d), b);
    std::vector<double> hi = cd_mul(d, a);
    std::vector<double> hi2 = cd_mul(b, cd_conj(c));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < h; ++i) {
        out[i] = lo[i] - lo2[i];
        out[h + i] = hi[i] + hi2[i];
    }
    return out;
}

Octonion random_octonion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Octonion o;
    for (int i = 0; i < 8; ++i) o.s[i] = u(rng);
    return o;
}

Quaternion random_quaternion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}

double max_abs_diff(const Octonion& a, const Octonion& b) {
    double m = 0.0;
    for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a.s[i] - b.s[i]));
    return m;
}

}  // namespace

TEST_CASE("basis products reproduce the full multiplication table") {
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            const Octonion p = oct_mul(Octonion::unit(r), Octonion::unit(c));
            const int v = kExpectedTable[r][c];
            const int m = std::abs(v) - 1;
            const double sg = v < 0 ? -1.0 : 1.0;
            for (int i = 0; i < 8; ++i) {
                INFO("e" << r << " * e" << c << ", component " << i);
                CHECK(p.s[i] == (i == m ? sg : 0.0));
            }
        }
    }
}

TEST_CASE("table matches the recursive doubling construction") {
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            std::vector<double> x(8, 0.0), y(8, 0.0);
            x[r] = 1.0;
            y[c] = 1.0;
            const std::vector<double> p = cd_mul(x, y);
            const Octonion q = oct_mul(Octonion::unit(r), Octonion::unit(c));
            for (int i = 0; i < 8; ++i) CHECK(p[i] == q.s[i]);
        }
    }
}

TEST_CASE("product is bilinear with identity element") {
    std::mt19937_64 rng(7);
    const Octonion one(1.0);
    for (int t = 0; t < 50; ++t) {
        const Octonion o = random_octonion(rng);
        CHECK(max_abs_diff(oct_mul(one, o), o) == 0.0);
        CHECK(max_abs_diff(oct_mul(o, one), o) == 0.0);
    }
}

TEST_CASE("non-associativity witness") {
    const Octonion e1 = Octonion::unit(1), e2 = Octonion::unit(2), e4 = Octonion::unit(4);
    const Octonion left = oct_mul(oct_mul(e1, e2), e4);
    const Octonion right = oct_mul(e1, oct_mul(e2, e4));
    CHECK(left.s[7] == 1.0);
    CHECK(right.s[7] == -1.0);
    // associator (e1, e2, e4) is nonzero
    CHECK(max_abs_diff(left, right) == 2.0);
}

TEST_CASE("alternativity on random pairs") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const Octonion o = random_octonion(rng);
        const Octonion p = random_octonion(rng);
        CHECK(max_abs_diff(oct_mul(oct_mul(o, o), p), oct_mul(o, oct_mul(o, p))) < 1e-12);
        CHECK(max_abs_diff(oct_mul(oct_mul(o, p), p), oct_mul(o, oct_mul(p, p))) < 1e-12);
    }
}

TEST_CASE("conjugation") {
    Octonion o;
    o.s[0] = 1.0;
    o.s[1] = 1.0;
    const Octonion c = oct_conj(o);
    CHECK(c.s[0] == 1.0);
    CHECK(c.s[1] == -1.0);

    CHECK(oct_conj(Octonion(3.5)).s[0] == 3.5);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        const Octonion a = random_octonion(rng);
        const Octonion b = random_octonion(rng);
        CHECK(max_abs_diff(oct_conj(oct_conj(a)), a) == 0.0);
        // conj(ab) = conj(b) conj(a)
        CHECK(max_abs_diff(oct_conj(oct_mul(a, b)), oct_mul(oct_conj(b), oct_conj(a))) < 1e-12);
        // o * conj(o) is real, hence self-conjugate
        const Octonion n = oct_mul(a, oct_conj(a));
        CHECK(max_abs_diff(oct_conj(n), n) < 1e-12);
        CHECK(n.s[0] == Catch::Approx(oct_norm_sq(a)).epsilon(1e-12));
    }
}

TEST_CASE("norm") {
    Octonion o;
    o.s[0] = o.s[1] = o.s[2] = o.s[4] = 1.0;
    CHECK(oct_norm(o) == 2.0);
    CHECK(oct_norm(Octonion{}) == 0.0);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        const Octonion a = random_octonion(rng);
        const Octonion b = random_octonion(rng);
        const double lhs = oct_norm(oct_mul(a, b));
        const double rhs = oct_norm(a) * oct_norm(b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("quaternion pair compose and split") {
    CHECK(max_abs_diff(quat_pair_compose(Quaternion(1.0), Quaternion{}), Octonion(1.0)) == 0.0);
    CHECK(max_abs_diff(quat_pair_compose(Quaternion{}, Quaternion(1.0)), Octonion::unit(4)) == 0.0);

    // e5 = (0, e1)
    const auto [a5, b5] = quat_pair_split(Octonion::unit(5));
    CHECK(quat_norm(a5) == 0.0);
    CHECK(b5.s[1] == 1.0);
    const auto [a4, b4] = quat_pair_split(Octonion::unit(4));
    CHECK(quat_norm(a4) == 0.0);
    CHECK(b4.s[0] == 1.0);

    std::mt19937_64 rng(19);
    for (int t = 0; t < 50; ++t) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const Octonion o = quat_pair_compose(a, b);
        // |a + b e4|^2 = |a|^2 + |b|^2
        CHECK(oct_norm_sq(o) == Catch::Approx(quat_norm_sq(a) + quat_norm_sq(b)).epsilon(1e-14));
        const auto [ra, rb] = quat_pair_split(o);
        CHECK(max_abs_diff(quat_pair_compose(ra, rb), o) == 0.0);
        const Octonion r = random_octonion(rng);
        const auto [sa, sb] = quat_pair_split(r);
        CHECK(max_abs_diff(quat_pair_compose(sa, sb), r) == 0.0);
    }
}

TEST_CASE("pair identities") {
    // (a e4) e4 = -1 at a = b = 1
    const auto ids1 = lemma1_identities(Quaternion(1.0), Quaternion(1.0));
    CHECK(max_abs_diff(ids1[2].first, -Octonion(1.0)) == 0.0);

    // e4 * e1 = conj(e1) * e4 = -e5
    const auto ids2 = lemma1_identities(Quaternion::unit(1), Quaternion(1.0));
    CHECK(max_abs_diff(ids2[0].first, -Octonion::unit(5)) == 0.0);
    CHECK(max_abs_diff(ids2[0].second, -Octonion::unit(5)) == 0.0);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const auto ids = lemma1_identities(a, b);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            INFO("identity " << i + 1);
            CHECK(max_abs_diff(ids[i].first, ids[i].second) < 1e-12);
        }
    }
}

TEST_CASE("quaternion subalgebra closure and agreement") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 50; ++t) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const Octonion p = oct_mul(embed(a), embed(b));
        for (int i = 4; i < 8; ++i) CHECK(p.s[i] == 0.0);
        const Quaternion q = quat_mul(a, b);
        for (int i = 0; i < 4; ++i) CHECK(p.s[i] == Catch::Approx(q.s[i]).margin(1e-15));
        // associativity of quaternions
        const Quaternion c = random_quaternion(rng);
        const Quaternion l = quat_mul(quat_mul(a, b), c);
        const Quaternion r = quat_mul(a, quat_mul(b, c));
        for (int i = 0; i < 4; ++i) CHECK(l.s[i] == Catch::Approx(r.s[i]).margin(1e-13));
    }
}

TEST_CASE("unit exponential") {
    CHECK(max_abs_diff(unit_exp(4, 0.0), Octonion(1.0)) == 0.0);
    CHECK(max_abs_diff(unit_exp(4, M_PI / 2), Octonion::unit(4)) < 1e-15);
    CHECK_THROWS_AS(unit_exp(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(unit_exp(8, 1.0), std::invalid_argument);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> th(-10.0, 10.0);
    std::uniform_int_distribution<int> axis(1, 7);
    for (int t = 0; t < 100; ++t) {
        const int k = axis(rng);
        const double t1 = th(rng), t2 = th(rng);
        CHECK(oct_norm(unit_exp(k, t1)) == Catch::Approx(1.0).epsilon(1e-14));
        // one-parameter group law within a pair plane
        const Octonion prod = oct_mul(unit_exp(k, t1), unit_exp(k, t2));
        CHECK(max_abs_diff(prod, unit_exp(k, t1 + t2)) < 1e-13);
    }
}

TEST_CASE("right-unit pairing structure") {
    std::mt19937_64 rng(37);
    for (int k = 1; k <= 7; ++k) {
        const auto pairs = unit_pairs(k);
        const Octonion o = random_octonion(rng);
        const Octonion oe = oct_mul(o, Octonion::unit(k));
        for (const auto& pr : pairs) {
            CHECK(pr.lo < pr.hi);
            // z = o[lo] + sigma i o[hi] maps to i z under right e_k
            const double re = o.s[pr.lo], im = pr.sigma * o.s[pr.hi];
            CHECK(oe.s[pr.lo] == Catch::Approx(-im).margin(1e-15));
            CHECK(pr.sigma * oe.s[pr.hi] == Catch::Approx(re).margin(1e-15));
        }
    }
}

TEST_CASE("signed permutation composition matches iterated products") {
    std::mt19937_64 rng(41);
    const int units[3] = {1, 2, 4};
    for (int mask = 0; mask < 8; ++mask) {
        SignedPerm perm = SignedPerm::identity();
        for (int bit = 0; bit < 3; ++bit)
            if (mask & (1 << bit)) perm.right_mul_unit(units[bit]);
        const Octonion o = random_octonion(rng);
        Octonion expect = o;
        for (int bit = 0; bit < 3; ++bit)
            if (mask & (1 << bit)) expect = oct_mul(expect, Octonion::unit(units[bit]));
        Octonion got;
        for (int j = 0; j < 8; ++j) got.s[perm.dst[j]] = perm.sign[j] * o.s[j];
        CHECK(max_abs_diff(got, expect) == 0.0);
    }
}
