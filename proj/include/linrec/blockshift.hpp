// The diagonal-plus-backward-shift operator built from 2x2 blocks
// [[exp(2*pi*i/m^2), omega], [0, exp(4*pi*i/m^2)]] and their real 4x4
// counterparts: closed-form block powers, window bounds on the (1,2) entry,
// return-set exclusion reports and unimodular eigenvectors.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "linrec/density.hpp"
#include "linrec/sparse_vector.hpp"

namespace linrec {

/// One 2x2 block: diagonal m^2-th roots of unity exp(2*pi*i/m^2), exp(4*pi*i/m^2)
/// and the off-diagonal weight.
struct Block2 {
    std::uint64_t m = 2;
    Scalar omega{0.0, 0.0};

    Scalar mu1() const { return std::polar(1.0, 2.0 * std::numbers::pi / period()); }
    Scalar mu2() const { return std::polar(1.0, 4.0 * std::numbers::pi / period()); }
    double period() const { return static_cast<double>(m) * static_cast<double>(m); }
    std::uint64_t period_int() const { return m * m; }
};

/// Row-major 2x2 complex matrix {a00, a01, a10, a11}.
using Mat2 = std::array<Scalar, 4>;

namespace detail {

// (mu1^n - mu2^n)/(mu1 - mu2) for the roots-of-unity block, in the
// cancellation-free sine form.
inline Scalar block_offdiag_ratio(const Block2& b, std::uint64_t n) {
    // exp(3*pi*i*(n-1)/m^2) * sin(pi*n/m^2) / sin(pi/m^2); both factors are
    // 2m^2-periodic in n (only their product is m^2-periodic), so reduce n
    // once mod 2m^2 and keep the signed sine.
    const std::uint64_t p = b.period_int();
    const std::uint64_t u = n % (2 * p);
    if (u % p == 0) return {0.0, 0.0};
    const long double pi = std::numbers::pi_v<long double>;
    const long double pl = static_cast<long double>(p);
    const long double mag = std::sin(pi * static_cast<long double>(u) / pl) / std::sin(pi / pl);
    const long double a = 3.0L * pi * static_cast<long double>(u - 1) / pl;
    return {static_cast<double>(mag * std::cos(a)), static_cast<double>(mag * std::sin(a))};
}

}  // namespace detail

/// A_j^n in closed form: [[mu1^n, ratio * omega], [0, mu2^n]].
inline Mat2 block_power(const Block2& b, std::uint64_t n) {
    const std::uint64_t p = b.period_int();
    const std::uint64_t nr = n % p;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(nr) / b.period();
    Mat2 out;
    out[0] = std::polar(1.0, ang);
    out[1] = detail::block_offdiag_ratio(b, n) * b.omega;
    out[2] = {0.0, 0.0};
    out[3] = std::polar(1.0, 2.0 * ang);
    return out;
}

struct Coord12Check {
    double value = 0.0;   // |A^n(1,2)|
    double bound = 0.0;   // 2 m |omega| / pi
    bool in_window = false;  // n = l*m^2 + k with m <= k <= m^2 - m
};

inline Coord12Check coord12_bound_check(const Block2& b, std::uint64_t n) {
    Coord12Check chk;
    chk.value = std::abs(detail::block_offdiag_ratio(b, n)) * std::abs(b.omega);
    chk.bound = 2.0 * static_cast<double>(b.m) * std::abs(b.omega) / std::numbers::pi;
    const std::uint64_t k = n % b.period_int();
    chk.in_window = (k >= b.m) && (k + b.m <= b.period_int());
    return chk;
}

/// Parameters of the full operator: weights v_j dominating |omega_{2j-1}|,
/// the strictly increasing integer schedule m_j, and the scalar field.
struct BlockParams {
    SpaceConfig cfg;
    bool real_field = false;
    int J_max = 8;
    double v_rate = 0.9;
    std::vector<std::uint64_t> m;   // index j-1
    std::vector<Scalar> omega;      // omega_{2j-1}, index j-1

    double v(int j) const { return std::pow(v_rate, j); }
    double v_l1_bound() const { return v_rate / (1.0 - v_rate); }

    Block2 block(int j) const {
        return {m.at(static_cast<std::size_t>(j - 1)), omega.at(static_cast<std::size_t>(j - 1))};
    }
};

/// Builds params with the default schedule; pass an explicit m list to
/// override it (still validated).
inline BlockParams make_block_params(bool real_field = false, int J_max = 8, double v_rate = 0.9,
                                     std::vector<std::uint64_t> m_list = {},
                                     SpaceConfig cfg = {}) {
    if (J_max < 1) throw std::invalid_argument("J_max must be >= 1");
    if (v_rate <= 0.0 || v_rate >= 1.0)
        throw std::invalid_argument("v_rate must lie in (0,1) for a summable weight sequence");
    BlockParams p;
    p.cfg = cfg;
    p.real_field = real_field;
    p.J_max = J_max;
    p.v_rate = v_rate;
    if (m_list.empty()) {
        std::uint64_t prev = 0;
        for (int j = 1; j <= J_max; ++j) {
            const double target = 600.0 * std::pow(1.0 / v_rate, j) * (1.0 + 0.1 * j);
            const auto mj = std::max<std::uint64_t>(prev + 1, static_cast<std::uint64_t>(std::ceil(target)));
            p.m.push_back(mj);
            prev = mj;
        }
    } else {
        p.m = std::move(m_list);
        if (static_cast<int>(p.m.size()) < J_max)
            throw std::invalid_argument("m schedule shorter than J_max");
    }
    for (int j = 1; j <= J_max; ++j) p.omega.push_back(Scalar{p.v(j), 0.0});

    // schedule conditions
    double q_prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= J_max; ++j) {
        const auto mj = p.m[static_cast<std::size_t>(j - 1)];
        if (mj <= static_cast<std::uint64_t>(j))
            throw std::invalid_argument("schedule requires m_j > j");
        if (j > 1 && mj <= p.m[static_cast<std::size_t>(j - 2)])
            throw std::invalid_argument("schedule must be strictly increasing");
        if (std::abs(p.omega[static_cast<std::size_t>(j - 1)]) > p.v(j) + kAlgebraicTol)
            throw std::invalid_argument("|omega_{2j-1}| must not exceed v_j");
        const double q = 1.0 / (static_cast<double>(mj) * std::abs(p.omega[static_cast<std::size_t>(j - 1)]));
        if (q >= q_prev)
            throw std::invalid_argument("1/(m_j |omega_{2j-1}|) must decrease strictly");
        q_prev = q;
    }
    if (real_field && p.m.front() <= 2)
        throw std::invalid_argument("real field requires m_1 > 2");
    if (q_prev >= 1e-3)
        throw std::invalid_argument("1/(m_j |omega_{2j-1}|) must fall below 1e-3 by J_max");
    return p;
}

/// Row-major 4x4 real matrix.
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

namespace detail {

using Mat4L = std::array<std::array<long double, 4>, 4>;

inline Mat4L mat4l_mul(const Mat4L& a, const Mat4L& b) {
    Mat4L c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const long double aik = a[i][k];
            if (aik == 0.0L) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

}  // namespace detail

/// Binary exponentiation with extended-precision intermediates: the
/// off-diagonal block grows to ~m^2 before cancelling back, so doubles alone
/// lose absolute accuracy at large block orders.
inline Mat4 mat4_pow(const Mat4& a, std::uint64_t n) {
    detail::Mat4L base{};
    detail::Mat4L r{};
    for (int i = 0; i < 4; ++i) {
        r[i][i] = 1.0L;
        for (int j = 0; j < 4; ++j) base[i][j] = a[i][j];
    }
    while (n > 0) {
        if (n & 1) r = detail::mat4l_mul(r, base);
        base = detail::mat4l_mul(base, base);
        n >>= 1;
    }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = static_cast<double>(r[i][j]);
    return out;
}

/// B_j^n with the power reduced mod m_j^2 first: the block's rotation
/// eigenangles are integer multiples of 2*pi/m_j^2, so the matrix is
/// m_j^2-periodic, and reducing keeps the exponentiation chain short before
/// the off-diagonal growth (up to ~m^2 |omega|) can amplify roundoff.
inline Mat4 real_block_power(const Mat4& block, std::uint64_t period, std::uint64_t n) {
    return mat4_pow(block, n % period);
}

/// The real 4x4 block: two rotation blocks on the diagonal and the
/// realified omega coupling.
inline Mat4 real_block(const BlockParams& p, int j) {
    const Block2 b = p.block(j);
    const double a1 = 2.0 * std::numbers::pi / b.period();
    const double a2 = 2.0 * a1;
    const double wr = b.omega.real();
    const double wi = b.omega.imag();
    return Mat4{{{std::cos(a1), -std::sin(a1), wr, -wi},
                 {std::sin(a1), std::cos(a1), wi, wr},
                 {0.0, 0.0, std::cos(a2), -std::sin(a2)},
                 {0.0, 0.0, std::sin(a2), std::cos(a2)}}};
}

/// T^n x, exact per-block closed form; support stays within the touched blocks.
inline SparseVector apply_op(const BlockParams& p, const SparseVector& x, std::uint64_t n) {
    const int stride = p.real_field ? 4 : 2;
    std::vector<int> blocks;
    for (const auto& [k, v] : x) {
        if (p.real_field && v.imag() != 0.0)
            throw std::invalid_argument("real-field operator applied to a complex vector");
        const int j = (k + stride - 1) / stride;
        if (j > p.J_max) throw std::out_of_range("coordinate beyond the generated blocks");
        if (blocks.empty() || blocks.back() != j) blocks.push_back(j);
    }
    SparseVector y;
    for (const int j : blocks) {
        if (!p.real_field) {
            const Mat2 a = block_power(p.block(j), n);
            const Scalar x1 = x.at(2 * j - 1);
            const Scalar x2 = x.at(2 * j);
            y.set(2 * j - 1, a[0] * x1 + a[1] * x2);
            y.set(2 * j, a[3] * x2);
        } else {
            const Mat4 a = real_block_power(real_block(p, j), p.block(j).period_int(), n);
            std::array<double, 4> xi{};
            for (int i = 0; i < 4; ++i) xi[static_cast<std::size_t>(i)] = x.at(4 * (j - 1) + i + 1).real();
            for (int i = 0; i < 4; ++i) {
                double s = 0.0;
                for (int c = 0; c < 4; ++c) s += a[i][c] * xi[static_cast<std::size_t>(c)];
                y.set(4 * (j - 1) + i + 1, Scalar{s, 0.0});
            }
        }
    }
    return y;
}

/// Vector triggering the exclusion inequality |<e_{2j}^*, x>| > 1/(m_j |omega_{2j-1}|)
/// at every j in J (coordinate 4j in the real case).
inline SparseVector g_witness(const BlockParams& p, const std::vector<int>& J, double margin) {
    if (J.empty()) throw std::invalid_argument("g_witness: J must be nonempty");
    if (margin <= 1.0) throw std::invalid_argument("g_witness: margin must exceed 1");
    SparseVector x;
    for (const int j : J) {
        const Block2 b = p.block(j);
        const double coord = margin / (static_cast<double>(b.m) * std::abs(b.omega));
        x.set(p.real_field ? 4 * j : 2 * j, Scalar{coord, 0.0});
    }
    return x;
}

struct ExclusionReport {
    double eps = 2.0 / (3.0 * std::numbers::pi);
    std::uint64_t window = 0;            // m_j^2
    std::uint64_t hit_bound = 0;         // 2 m_j
    std::uint64_t max_window_count = 0;  // over every window position
    std::vector<std::uint64_t> window_counts;  // disjoint consecutive windows
    double bd_estimate = 0.0;            // windowed upper Banach density at m_j^2
    ReturnSet returns;
};

/// Return set of x into the ball of radius eps/K with eps = 2/(3*pi), with the
/// per-window hit counts at window length m_j^2.
inline ExclusionReport rrec_exclusion_report(const BlockParams& p, const SparseVector& x, int j,
                                             std::uint64_t horizon) {
    const Block2 b = p.block(j);
    const int witness_index = p.real_field ? 4 * j : 2 * j;
    const double threshold = 1.0 / (static_cast<double>(b.m) * std::abs(b.omega));
    if (!(std::abs(x.at(witness_index)) > threshold))
        throw std::invalid_argument("rrec_exclusion_report: vector fails the witness inequality");
    const std::uint64_t window = b.period_int();
    if (horizon < 3 * window)
        throw std::invalid_argument("rrec_exclusion_report: horizon must cover 3 m_j^2");

    ExclusionReport rep;
    rep.window = window;
    rep.hit_bound = 2 * b.m;
    const double radius = rep.eps / p.cfg.K;

    // distance to x per step, over the touched blocks only
    std::vector<int> blocks;
    {
        const int stride = p.real_field ? 4 : 2;
        for (const auto& [k, v] : x) {
            const int bj = (k + stride - 1) / stride;
            if (blocks.empty() || blocks.back() != bj) blocks.push_back(bj);
        }
    }
    rep.returns.horizon = horizon;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        double d2 = 0.0;
        for (const int bj : blocks) {
            if (!p.real_field) {
                const Mat2 a = block_power(p.block(bj), n);
                const Scalar x1 = x.at(2 * bj - 1);
                const Scalar x2 = x.at(2 * bj);
                d2 += std::norm(a[0] * x1 + a[1] * x2 - x1) + std::norm(a[3] * x2 - x2);
            } else {
                const Mat4 a = real_block_power(real_block(p, bj), p.block(bj).period_int(), n);
                for (int i = 0; i < 4; ++i) {
                    double s = 0.0;
                    for (int c = 0; c < 4; ++c) s += a[i][c] * x.at(4 * (bj - 1) + c + 1).real();
                    const double diff = s - x.at(4 * (bj - 1) + i + 1).real();
                    d2 += diff * diff;
                }
            }
        }
        if (std::sqrt(d2) < radius) rep.returns.times.push_back(n);
    }

    // max hit count over all window positions
    rep.max_window_count = static_cast<std::uint64_t>(
        upper_banach_window(rep.returns, window) * static_cast<double>(window) + 0.5);
    for (std::uint64_t start = 1; start + window - 1 <= horizon; start += window) {
        const auto lo = std::lower_bound(rep.returns.times.begin(), rep.returns.times.end(), start);
        const auto hi = std::upper_bound(rep.returns.times.begin(), rep.returns.times.end(),
                                         start + window - 1);
        rep.window_counts.push_back(static_cast<std::uint64_t>(hi - lo));
    }
    rep.bd_estimate = upper_banach_window(rep.returns, window);
    return rep;
}

struct Eigenpair {
    Scalar eigenvalue;
    SparseVector vector;
    double residual = 0.0;  // ||T v - lambda v||
};

/// The two unimodular eigenvectors of block j (complex field).
inline std::array<Eigenpair, 2> unimodular_eigenvectors(const BlockParams& p, int j) {
    if (p.real_field)
        throw std::invalid_argument("unimodular_eigenvectors requires the complex field");
    const Block2 b = p.block(j);
    Eigenpair first{b.mu1(), SparseVector::basis(2 * j - 1)};
    Eigenpair second{b.mu2(), {}};
    second.vector.set(2 * j, Scalar{1.0, 0.0});
    second.vector.set(2 * j - 1, b.omega / (b.mu2() - b.mu1()));
    for (Eigenpair* e : {&first, &second}) {
        const SparseVector r = apply_op(p, e->vector, 1) - e->eigenvalue * e->vector;
        // relative to the eigenvector norm: the coupling component scales like
        // |omega| / |mu2 - mu1| and would dominate an absolute residual
        e->residual = norm(r, p.cfg) / norm(e->vector, p.cfg);
    }
    return {first, second};
}

/// Max coordinate deviation between pairing-then-powering and
/// powering-then-pairing of random real 4-blocks at power n.
inline double conjugacy_check(const BlockParams& p, int j, std::uint64_t n, int trials = 10,
                              std::uint64_t seed = 12345) {
    const Block2 b = p.block(j);
    const Mat4 bn = real_block_power(real_block(p, j), b.period_int(), n);
    const Mat2 an = block_power(b, n);
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(j));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double dev = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::array<double, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        std::array<double, 4> bx{};
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) bx[static_cast<std::size_t>(i)] += bn[i][c] * x[static_cast<std::size_t>(c)];
        const Scalar phi1{x[0], x[1]};
        const Scalar phi2{x[2], x[3]};
        const Scalar lhs1{bx[0], bx[1]};
        const Scalar lhs2{bx[2], bx[3]};
        const Scalar rhs1 = an[0] * phi1 + an[1] * phi2;
        const Scalar rhs2 = an[3] * phi2;
        dev = std::max({dev, std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)});
    }
    return dev;
}

}  // namespace linrec
