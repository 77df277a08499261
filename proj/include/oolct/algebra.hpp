#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace oolct {

/// Basis product table for the octonion algebra over {1, e1, ..., e7}.
///
/// Entry [r][c] encodes e_r * e_c = sign(v) * e_(|v|-1), i.e. the value's
/// magnitude minus one is the basis index of the product and its sign is the
/// product's sign.  This table is the single source of truth for all
/// multiplication in the library; a unit test rebuilds it once from the
/// recursive pair-of-quaternions doubling construction and compares.
inline constexpr std::array<std::array<int, 8>, 8> kBasisTable = {{
    {{1, 2, 3, 4, 5, 6, 7, 8}},
    {{2, -1, 4, -3, 6, -5, -8, 7}},
    {{3, -4, -1, 2, 7, 8, -5, -6}},
    {{4, 3, -2, -1, 8, -7, 6, -5}},
    {{5, -6, -7, -8, -1, 2, 3, 4}},
    {{6, 5, -8, 7, -2, -1, -4, 3}},
    {{7, 8, 5, -6, -3, 4, -1, -2}},
    {{8, -7, 6, 5, -4, -3, 2, -1}},
}};

/// Sign and basis index of e_r * e_c.
constexpr std::pair<double, int> basis_mul(int r, int c) {
    const int v = kBasisTable[r][c];
    return {v < 0 ? -1.0 : 1.0, (v < 0 ? -v : v) - 1};
}

/// Octonion with real components s0..s7 over the basis {1, e1, ..., e7}.
/// Plain value type; all algebra is done in double precision.
struct Octonion {
    std::array<double, 8> s{};

    constexpr Octonion() = default;
    constexpr explicit Octonion(double real) { s[0] = real; }
    constexpr explicit Octonion(const std::array<double, 8>& comps) : s(comps) {}

    static constexpr Octonion unit(int k) {
        Octonion o;
        o.s[k] = 1.0;
        return o;
    }

    constexpr double operator[](int i) const { return s[i]; }
    constexpr double& operator[](int i) { return s[i]; }

    Octonion& operator+=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) s[i] += o.s[i];
        return *this;
    }
    Octonion& operator-=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) s[i] -= o.s[i];
        return *this;
    }
    Octonion& operator*=(double r) {
        for (double& v : s) v *= r;
        return *this;
    }
};

inline Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
inline Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
inline Octonion operator*(Octonion a, double r) { return a *= r; }
inline Octonion operator*(double r, Octonion a) { return a *= r; }
inline Octonion operator-(const Octonion& a) {
    Octonion o;
    for (int i = 0; i < 8; ++i) o.s[i] = -a.s[i];
    return o;
}

/// Full octonion product per the basis table.  Non-commutative and
/// non-associative: (e1*e2)*e4 = e7 while e1*(e2*e4) = -e7.
inline Octonion oct_mul(const Octonion& a, const Octonion& b) {
    Octonion out;
    for (int r = 0; r < 8; ++r) {
        const double ar = a.s[r];
        if (ar == 0.0) continue;
        for (int c = 0; c < 8; ++c) {
            const int v = kBasisTable[r][c];
            const int m = (v < 0 ? -v : v) - 1;
            out.s[m] += (v < 0 ? -ar : ar) * b.s[c];
        }
    }
    return out;
}

inline Octonion operator*(const Octonion& a, const Octonion& b) { return oct_mul(a, b); }

/// Conjugate: fixes s0 and negates the seven imaginary components.
inline Octonion oct_conj(const Octonion& o) {
    Octonion c;
    c.s[0] = o.s[0];
    for (int i = 1; i < 8; ++i) c.s[i] = -o.s[i];
    return c;
}

inline double oct_norm_sq(const Octonion& o) {
    double n = 0.0;
    for (double v : o.s) n += v * v;
    return n;
}

/// |o| = sqrt(o * conj(o)) = sqrt(sum of squared components); multiplicative.
inline double oct_norm(const Octonion& o) { return std::sqrt(oct_norm_sq(o)); }

/// Quaternion, the associative subalgebra spanned by {1, e1, e2, e3}.
struct Quaternion {
    std::array<double, 4> s{};

    constexpr Quaternion() = default;
    constexpr explicit Quaternion(double real) { s[0] = real; }
    constexpr Quaternion(double s0, double s1, double s2, double s3) : s{s0, s1, s2, s3} {}

    static constexpr Quaternion unit(int k) {
        Quaternion q;
        q.s[k] = 1.0;
        return q;
    }

    constexpr double operator[](int i) const { return s[i]; }
    constexpr double& operator[](int i) { return s[i]; }
};

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.s[0] + b.s[0], a.s[1] + b.s[1], a.s[2] + b.s[2], a.s[3] + b.s[3]};
}
inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.s[0] - b.s[0], a.s[1] - b.s[1], a.s[2] - b.s[2], a.s[3] - b.s[3]};
}
inline Quaternion operator*(const Quaternion& a, double r) {
    return {a.s[0] * r, a.s[1] * r, a.s[2] * r, a.s[3] * r};
}
inline Quaternion operator-(const Quaternion& a) { return a * -1.0; }

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
    Quaternion out{0.0, 0.0, 0.0, 0.0};
    for (int r = 0; r < 4; ++r) {
        const double ar = a.s[r];
        if (ar == 0.0) continue;
        for (int c = 0; c < 4; ++c) {
            const int v = kBasisTable[r][c];
            const int m = (v < 0 ? -v : v) - 1;
            out.s[m] += (v < 0 ? -ar : ar) * b.s[c];
        }
    }
    return out;
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }

inline Quaternion quat_conj(const Quaternion& q) { return {q.s[0], -q.s[1], -q.s[2], -q.s[3]}; }

inline double quat_norm_sq(const Quaternion& q) {
    return q.s[0] * q.s[0] + q.s[1] * q.s[1] + q.s[2] * q.s[2] + q.s[3] * q.s[3];
}
inline double quat_norm(const Quaternion& q) { return std::sqrt(quat_norm_sq(q)); }

/// o = a + b*e4: components s0..s3 from a, s4..s7 from b.
inline Octonion quat_pair_compose(const Quaternion& a, const Quaternion& b) {
    Octonion o;
    for (int i = 0; i < 4; ++i) {
        o.s[i] = a.s[i];
        o.s[i + 4] = b.s[i];
    }
    return o;
}

/// Exact left inverse of quat_pair_compose.
inline std::pair<Quaternion, Quaternion> quat_pair_split(const Octonion& o) {
    Quaternion a, b;
    for (int i = 0; i < 4; ++i) {
        a.s[i] = o.s[i];
        b.s[i] = o.s[i + 4];
    }
    return {a, b};
}

inline Octonion embed(const Quaternion& q) { return quat_pair_compose(q, Quaternion{}); }

/// LHS/RHS pairs of the six pair-of-quaternions identities:
///   (1) e4*a = conj(a)*e4        (2) e4*(a*e4) = -conj(a)
///   (3) (a*e4)*e4 = -a           (4) a*(b*e4) = (b*a)*e4
///   (5) (a*e4)*b = (a*conj(b))*e4
///   (6) (a*e4)*(b*e4) = -conj(b)*a
/// Both sides are evaluated through the generic octonion product so the
/// identities double as a consistency check of the basis table.
inline std::array<std::pair<Octonion, Octonion>, 6> lemma1_identities(const Quaternion& a,
                                                                      const Quaternion& b) {
    const Octonion e4 = Octonion::unit(4);
    const Octonion oa = embed(a);
    const Octonion ob = embed(b);
    const Octonion ae4 = oct_mul(oa, e4);
    const Octonion be4 = oct_mul(ob, e4);
    return {{
        {oct_mul(e4, oa), oct_mul(embed(quat_conj(a)), e4)},
        {oct_mul(e4, ae4), -embed(quat_conj(a))},
        {oct_mul(ae4, e4), -oa},
        {oct_mul(oa, be4), oct_mul(embed(quat_mul(b, a)), e4)},
        {oct_mul(ae4, ob), oct_mul(embed(quat_mul(a, quat_conj(b))), e4)},
        {oct_mul(ae4, be4), -embed(quat_mul(quat_conj(b), a))},
    }};
}

/// cos(theta) + e_k sin(theta) for k in 1..7; the unit-modulus exponential
/// in the commutative plane spanned by {1, e_k}.
inline Octonion unit_exp(int axis, double theta) {
    if (axis < 1 || axis > 7) throw std::invalid_argument("unit_exp: axis must be in 1..7");
    Octonion o;
    o.s[0] = std::cos(theta);
    o.s[axis] = std::sin(theta);
    return o;
}

/// Right multiplication by a basis unit e_k is a signed permutation of the
/// eight components: (o*e_k)[dst[j]] = sign[j] * o[j].
struct SignedPerm {
    std::array<int, 8> dst{};
    std::array<double, 8> sign{};

    static SignedPerm identity() {
        SignedPerm p;
        for (int j = 0; j < 8; ++j) {
            p.dst[j] = j;
            p.sign[j] = 1.0;
        }
        return p;
    }

    /// Compose with a further right multiplication by e_k.
    void right_mul_unit(int k) {
        for (int j = 0; j < 8; ++j) {
            const auto [sg, m] = basis_mul(dst[j], k);
            dst[j] = m;
            sign[j] *= sg;
        }
    }
};

/// Component pairing induced by right multiplication with e_k:
/// z = o[lo] + sigma*i*o[hi] turns o -> o*e_k into z -> i*z.
struct UnitPair {
    int lo;
    int hi;
    double sigma;
};

/// The four pair planes of an octonion under right multiplication by e_k.
/// Restricted to components 0..3 the first two entries give the quaternion
/// pairing for k in {1, 2, 3}.
inline std::array<UnitPair, 4> unit_pairs(int k) {
    std::array<UnitPair, 4> pairs{};
    std::array<bool, 8> seen{};
    int out = 0;
    for (int j = 0; j < 8; ++j) {
        if (seen[j]) continue;
        const auto [sg, m] = basis_mul(j, k);
        seen[j] = seen[m] = true;
        pairs[out++] = UnitPair{j, m, sg};
    }
    return pairs;
}

}  // namespace oolct
