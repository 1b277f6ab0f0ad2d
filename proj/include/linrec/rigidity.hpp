// Perturbed-rotation operator T = R + sum_{k>=3} m_{k-1}^{-1} <w_k^*, Px> e_k
// on the coordinate space: closed-form powers, recurrence certificates on the
// kernel set X_0, the non-recurrence floor on P^{-1}({z}), and arithmetic
// progression witnesses.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linrec/density.hpp"
#include "linrec/sparse_vector.hpp"

namespace linrec {

struct RigidityConfig {
    double p = 2.0;
    double K = 1.0;
    int j_max = 12;            // depth of the tail-decay certificate
    int k_max = 24;            // truncation index for stored coordinates
    double beta = 1.0;         // angle of z inside span{e_1, e_2}
    int n_part = 8;            // number of partition classes
    double growth_factor = 2.0;    // ratio multiplier past the adaptive jump
    double min_pairing = 0.2;      // functionals pairing weaker with z are skipped
    double c_target = 5e-7;        // decay target for the level-j_max tail quantity
};

class certificate_error : public std::runtime_error {
  public:
    certificate_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_minimum(achieved) {}
    double achieved_minimum;
};

/// All generated data of the construction. Immutable once built.
class RigidityOperator {
  public:
    explicit RigidityOperator(const RigidityConfig& cfg = {}) : cfg_(cfg) { build(); }

    const RigidityConfig& config() const { return cfg_; }
    const SparseVector& z() const { return z_; }
    int class_of(int k) const { return 3 + (k - 3) % cfg_.n_part; }

    /// The dense-sphere functional for partition class n (3 <= n < 3 + n_part).
    const CoordFunctional& wtilde(int n) const { return wtilde_.at(static_cast<std::size_t>(n - 3)); }
    /// w_k^* = wtilde_{class(k)} / |<wtilde_{class(k)}, z>|.
    const CoordFunctional& w_star(int k) const { return wstar_.at(static_cast<std::size_t>(k - 3)); }
    double w_norm(int k) const { return wnorm_.at(static_cast<std::size_t>(k)); }
    double w_norm_sup() const { return wnorm_sup_; }

    /// m_k; zero when the exact value no longer fits 64 bits.
    std::uint64_t m_exact(int k) const { return m_exact_.at(static_cast<std::size_t>(k)); }
    long double m_approx(int k) const { return m_ld_.at(static_cast<std::size_t>(k)); }
    std::uint64_t ratio(int k) const { return ratio_.at(static_cast<std::size_t>(k)); }

    /// Tail quantity c_j = m_{j-1} * sum_{k>j} ||w_k^*|| / m_{k-1} (with the
    /// doubling-ratio rule bounding indices past k_max).
    double c_tail(int j) const { return c_.at(static_cast<std::size_t>(j)); }

    /// Upper bound on sum_k |lambda_k - 1| over the full (infinite) range.
    double lambda_sum_bound() const { return lambda_sum_bound_; }

    std::complex<double> lambda(int k) const {
        return std::complex<double>(std::polar(1.0L, two_pi_ / m_ld_[static_cast<std::size_t>(k)]));
    }

    /// lambda_k^n with exact modular reduction when m_k fits 64 bits.
    std::complex<double> lambda_pow(int k, std::uint64_t n) const {
        const auto ku = static_cast<std::size_t>(k);
        if (m_exact_[ku] != 0) {
            const std::uint64_t nr = n % m_exact_[ku];
            if (nr == 0) return {1.0, 0.0};
            return std::complex<double>(std::polar(1.0L, two_pi_ * static_cast<long double>(nr) / m_ld_[ku]));
        }
        return std::complex<double>(std::polar(1.0L, two_pi_ * static_cast<long double>(n) / m_ld_[ku]));
    }

    /// Geometric sum lambda_{k,n} = sum_{j<n} lambda_k^j = (lambda_k^n - 1)/(lambda_k - 1).
    /// Closed form via the exact residue n mod m_k; direct summation when
    /// |lambda_k - 1| < 1e-12 and no exact residue is available.
    std::complex<double> lambda_kn(int k, std::uint64_t n) const {
        const auto ku = static_cast<std::size_t>(k);
        if (m_exact_[ku] != 0) {
            // partial sums over full periods of m_k-th roots of unity vanish
            const std::uint64_t nr = n % m_exact_[ku];
            return geom_sum_reduced(static_cast<long double>(nr) / m_ld_[ku], ku);
        }
        const long double theta = two_pi_ / m_ld_[ku];
        if (theta < 1e-12L && n <= (1u << 21)) {
            // fallback: direct summation, stable since every term is ~1
            std::complex<long double> acc{0.0L, 0.0L};
            std::complex<long double> term{1.0L, 0.0L};
            const auto step = std::polar(1.0L, theta);
            for (std::uint64_t j = 0; j < n; ++j) {
                acc += term;
                term *= step;
            }
            return std::complex<double>(acc);
        }
        return geom_sum_reduced(static_cast<long double>(n) / m_ld_[ku], ku);
    }

    /// lambda_{k,e} at e = ell * m_level, using exact ratio arithmetic; zero
    /// whenever k <= level (divisibility).
    std::complex<double> lambda_kn_at_multiple(int k, int level, std::uint64_t ell) const {
        if (k <= level) return {0.0, 0.0};
        const long double rho = m_ratio(level, k);  // m_level / m_k < 1
        const long double t = std::fmod(static_cast<long double>(ell) * rho, 2.0L);
        return geom_sum_reduced(t, static_cast<std::size_t>(k));
    }

    std::complex<double> lambda_pow_at_multiple(int k, int level, std::uint64_t ell) const {
        if (k <= level) return {1.0, 0.0};
        const long double rho = m_ratio(level, k);
        const long double t = std::fmod(static_cast<long double>(ell) * rho, 1.0L);
        return std::complex<double>(std::polar(1.0L, two_pi_ * t));
    }

    // --- operator action -----------------------------------------------------

    SparseVector project_P(const SparseVector& x) const {
        SparseVector px;
        px.set(1, x.at(1));
        px.set(2, x.at(2));
        return px;
    }

    Scalar w_pairing(int k, const SparseVector& px) const {
        return eval_functional(w_star(k), px);
    }

    /// k-th coordinate of T^n x, exact closed form.
    Scalar power_coeff(const SparseVector& x, std::uint64_t n, int k) const {
        Scalar c = lambda_pow(k, n) * x.at(k);
        if (k >= 3 && k <= cfg_.k_max) {
            const Scalar pw = w_pairing(k, project_P(x));
            c += lambda_kn(k, n) / static_cast<double>(m_ld_[static_cast<std::size_t>(k - 1)]) * pw;
        }
        return c;
    }

    struct Truncated {
        SparseVector vec;
        double tail_bound = 0.0;
    };

    /// Tx truncated to indices <= k_cap, plus the analytic bound on the
    /// functional magnitudes of the discarded coordinates.
    Truncated apply_T(const SparseVector& x, int k_cap) const {
        if (k_cap < x.max_index())
            throw std::invalid_argument("apply_T: k_cap must cover the support of x");
        k_cap = std::min(k_cap, cfg_.k_max);
        Truncated out;
        for (const auto& [k, v] : x) out.vec.set(k, lambda(k) * v);
        const SparseVector px = project_P(x);
        const double pnorm = norm(px, space());
        if (pnorm > 0.0) {
            for (int k = 3; k <= k_cap; ++k) {
                const Scalar pw = w_pairing(k, px);
                out.vec.set(k, out.vec.at(k) +
                                   pw / static_cast<double>(m_ld_[static_cast<std::size_t>(k - 1)]));
            }
        }
        long double dropped = static_cast<long double>(tail_rate_);
        for (int k = k_cap + 1; k <= cfg_.k_max; ++k)
            dropped += static_cast<long double>(wnorm_[static_cast<std::size_t>(k)]) /
                       m_ld_[static_cast<std::size_t>(k - 1)];
        out.tail_bound = pnorm * static_cast<double>(dropped);
        return out;
    }

    SpaceConfig space() const { return {cfg_.p, cfg_.K}; }

    // --- orbit analytics -----------------------------------------------------

    struct TraceRow {
        std::uint64_t n;
        double lower;  // from coordinates <= k_max via the basis-constant bound
        double upper;  // truncated norm plus tail bound
    };

    std::vector<TraceRow> orbit_distance_trace(const SparseVector& x, std::uint64_t horizon) const {
        std::vector<TraceRow> rows;
        rows.reserve(horizon);
        const SparseVector px = project_P(x);
        const double pnorm = norm(px, space());
        std::vector<Scalar> pw(static_cast<std::size_t>(cfg_.k_max) + 1, Scalar{0.0, 0.0});
        for (int k = 3; k <= cfg_.k_max; ++k) pw[static_cast<std::size_t>(k)] = w_pairing(k, px);
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            double lo = 0.0;
            double upow = 0.0;
            for (int k = 1; k <= cfg_.k_max; ++k) {
                Scalar d = (lambda_pow(k, n) - Scalar{1.0, 0.0}) * x.at(k);
                if (k >= 3)
                    d += lambda_kn(k, n) /
                         static_cast<double>(m_ld_[static_cast<std::size_t>(k - 1)]) *
                         pw[static_cast<std::size_t>(k)];
                lo = std::max(lo, std::abs(d) / cfg_.K);
                upow += std::norm(d);
            }
            const double tail = static_cast<double>(n) * tail_rate_ * pnorm;
            rows.push_back({n, lo, std::sqrt(upow) + tail});
        }
        return rows;
    }

    // --- certificates ----------------------------------------------------------

    /// Px in Ker(wtilde_n) within tolerance for some class n, else nullopt.
    std::optional<int> x0_class(const SparseVector& x, double tol = kAlgebraicTol) const {
        const SparseVector px = project_P(x);
        const double scale = std::max(1.0, norm(px, space()));
        for (int n = 3; n < 3 + cfg_.n_part; ++n) {
            if (std::abs(eval_functional(wtilde(n), px)) <= tol * scale) return n;
        }
        return std::nullopt;
    }

    /// Unit vector in span{e_1,e_2} annihilated by wtilde_n (a base point of X_0).
    SparseVector x0_base(int n) const {
        const CoordFunctional& f = wtilde(n);
        SparseVector x;
        x.set(1, f.at(2));
        x.set(2, -f.at(1));
        const double s = norm(x, space());
        x *= Scalar{1.0 / s, 0.0};
        return x;
    }

    struct Certificate {
        int k_j = 0;                  // partition element used; the time is m_{k_j - 1}
        std::uint64_t time = 0;       // m_{k_j-1}, zero when it exceeds 64 bits
        long double time_approx = 0;  // always set
        double bound = 0.0;           // 2 K ||x|| c_{k_j}
        double bracket = 0.0;         // verified upper bracket of ||T^time x - x||
    };

    /// Smallest admissible return time m_{k_j-1} with verified distance < eps
    /// for x in X_0.
    Certificate recurrence_certificate(const SparseVector& x, double eps) const {
        return progression_certificate(x, eps, 1);
    }

    struct ApWitness {
        Certificate cert;
        std::uint64_t length = 0;
        std::vector<double> brackets;  // one per progression element
        ReturnSet returns;             // {ell * m : 1 <= ell <= L} when times fit 64 bits
    };

    /// Arithmetic progression {ell * m_{k_j-1} : 1 <= ell <= L} inside the
    /// eps-ball return set of x.
    ApWitness ap_witness(const SparseVector& x, double eps, std::uint64_t length) const {
        ApWitness w;
        w.cert = progression_certificate(x, eps, length);
        w.length = length;
        for (std::uint64_t ell = 1; ell <= length; ++ell) {
            const double b = distance_bracket_at_multiple(x, w.cert.k_j - 1, ell);
            if (b >= eps)
                throw certificate_error("ap_witness: verified bracket exceeded eps", b);
            w.brackets.push_back(b);
        }
        if (w.cert.time != 0) {
            for (std::uint64_t ell = 1; ell <= length; ++ell)
                w.returns.times.push_back(ell * w.cert.time);
            w.returns.horizon = length * w.cert.time;
        }
        return w;
    }

    struct FloorReport {
        double floor = 0.0;         // min over n of the coordinate lower bracket
        std::uint64_t argmin = 0;
        double max_diag_term = 0.0; // max over n of |(lambda_{k_n}^n - 1) x_{k_n}|
        double proof_floor = 0.0;   // (1/K)(1/pi - max_diag_term)
    };

    /// Lower bracket of inf_n ||T^n x - x|| for x with Px = z, over [1, horizon].
    FloorReport nonrecurrence_floor(const SparseVector& x, std::uint64_t horizon) const {
        const SparseVector px = project_P(x);
        if (std::abs(px.at(1) - z_.at(1)) > 1e-15 || std::abs(px.at(2) - z_.at(2)) > 1e-15)
            throw std::invalid_argument("nonrecurrence_floor requires Px = z exactly");
        std::vector<Scalar> pw(static_cast<std::size_t>(cfg_.k_max) + 1);
        std::vector<Scalar> xv(static_cast<std::size_t>(cfg_.k_max) + 1);
        for (int k = 3; k <= cfg_.k_max; ++k) {
            pw[static_cast<std::size_t>(k)] = w_pairing(k, px);
            xv[static_cast<std::size_t>(k)] = x.at(k);
        }
        FloorReport rep;
        rep.floor = std::numeric_limits<double>::infinity();
        int kn = 3;
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            while (kn <= cfg_.k_max && 2.0L * static_cast<long double>(n) > m_ld_[static_cast<std::size_t>(kn)])
                ++kn;
            if (kn > cfg_.k_max)
                throw std::out_of_range("horizon exceeds the generated index range");
            const auto ku = static_cast<std::size_t>(kn);
            const Scalar diag = (lambda_pow(kn, n) - Scalar{1.0, 0.0}) * xv[ku];
            const Scalar coord =
                lambda_kn(kn, n) / static_cast<double>(m_ld_[ku - 1]) * pw[ku] + diag;
            const double lower = std::abs(coord) / cfg_.K;
            if (lower < rep.floor) {
                rep.floor = lower;
                rep.argmin = n;
            }
            rep.max_diag_term = std::max(rep.max_diag_term, std::abs(diag));
        }
        rep.proof_floor = (1.0 / cfg_.K) * (1.0 / std::numbers::pi - rep.max_diag_term);
        return rep;
    }

    /// Verified upper bracket of ||T^{ell * m_level} x - x||.
    double distance_bracket_at_multiple(const SparseVector& x, int level, std::uint64_t ell) const {
        const SparseVector px = project_P(x);
        const double pnorm = norm(px, space());
        double upow = 0.0;
        for (int k = 1; k <= cfg_.k_max; ++k) {
            Scalar d = (lambda_pow_at_multiple(k, level, ell) - Scalar{1.0, 0.0}) * x.at(k);
            if (k >= 3)
                d += lambda_kn_at_multiple(k, level, ell) /
                     static_cast<double>(m_ld_[static_cast<std::size_t>(k - 1)]) * w_pairing(k, px);
            upow += std::norm(d);
        }
        const long double e = static_cast<long double>(ell) * m_ld_[static_cast<std::size_t>(level)];
        const double tail = static_cast<double>(e * static_cast<long double>(tail_rate_)) * pnorm;
        return std::sqrt(upow) + tail;
    }

  private:
    void build();

    Certificate progression_certificate(const SparseVector& x, double eps,
                                        std::uint64_t length) const {
        const auto cls = x0_class(x);
        if (!cls)
            throw std::invalid_argument("vector is not in X_0: no partition class annihilates Px");
        const int k_x = x.max_index();
        const double xnorm = norm(x, space());
        double achieved = std::numeric_limits<double>::infinity();
        for (int k_j = *cls; k_j <= cfg_.k_max; k_j += cfg_.n_part) {
            if (k_j < 3 || k_j - 1 < k_x || k_j - 1 < 1) continue;
            const double bound = 2.0 * cfg_.K * xnorm * static_cast<double>(length) * c_[static_cast<std::size_t>(k_j)];
            achieved = std::min(achieved, bound);
            if (bound >= eps) continue;
            Certificate cert;
            cert.k_j = k_j;
            cert.bound = bound;
            cert.time_approx = m_ld_[static_cast<std::size_t>(k_j - 1)];
            cert.time = m_exact_[static_cast<std::size_t>(k_j - 1)];
            cert.bracket = distance_bracket_at_multiple(x, k_j - 1, 1);
            if (cert.bracket < eps) return cert;
            achieved = std::min(achieved, cert.bracket);
        }
        throw certificate_error("no certificate below eps within the generated range", achieved);
    }

    // m_a / m_b for a < b, from the exact integer ratios.
    long double m_ratio(int a, int b) const {
        long double rho = 1.0L;
        for (int i = a; i < b; ++i) rho /= static_cast<long double>(ratio_[static_cast<std::size_t>(i)]);
        return rho;
    }

    // e^{i pi (t - 1/m_k)} * sin(pi t) / sin(pi / m_k) for t = (n mod m_k)/m_k,
    // the cancellation-free form of (lambda^n - 1)/(lambda - 1).
    std::complex<double> geom_sum_reduced(long double t, std::size_t ku) const {
        const long double pi = std::numbers::pi_v<long double>;
        const long double invm = 1.0L / m_ld_[ku];
        const long double mag = std::sin(pi * t) / std::sin(pi * invm);
        const long double a = pi * (t - invm);
        return {static_cast<double>(mag * std::cos(a)), static_cast<double>(mag * std::sin(a))};
    }

    RigidityConfig cfg_;
    SparseVector z_;
    std::vector<CoordFunctional> wtilde_;  // per class, index n-3
    std::vector<CoordFunctional> wstar_;   // per k, index k-3
    std::vector<double> wnorm_;            // ||w_k^*||, index k (0..k_max)
    double wnorm_sup_ = 0.0;
    std::vector<std::uint64_t> ratio_;     // ratio_[k] = m_{k+1}/m_k
    std::vector<std::uint64_t> m_exact_;   // 0 past 64-bit range
    std::vector<long double> m_ld_;
    std::vector<double> c_;                // c_[j] for j = 3..k_max
    double tail_rate_ = 0.0;               // sum_{k > k_max} ||w_k^*||/m_{k-1} bound
    double lambda_sum_bound_ = 0.0;
    long double two_pi_ = 2.0L * std::numbers::pi_v<long double>;
};

// --- construction -------------------------------------------------------------

inline void RigidityOperator::build() {
    if (cfg_.n_part < 2) throw std::invalid_argument("n_part must be >= 2");
    if (cfg_.j_max < 4 || cfg_.k_max < cfg_.j_max)
        throw std::invalid_argument("need j_max >= 4 and k_max >= j_max");
    const SpaceConfig sp = space();

    // z on the unit sphere of span{e_1, e_2}
    z_.set(1, Scalar{std::cos(cfg_.beta), 0.0});
    z_.set(2, Scalar{std::sin(cfg_.beta), 0.0});
    z_ *= Scalar{1.0 / norm(z_, sp), 0.0};

    // dense-sphere functionals: Kronecker low-discrepancy angles, skipping
    // those that pair too weakly with z
    const double alpha1 = std::sqrt(2.0) - 1.0;
    const double alpha2 = std::sqrt(3.0) - 1.0;
    const double alpha3 = std::sqrt(5.0) - 2.0;
    auto frac = [](double v) { return v - std::floor(v); };
    int t = 1;
    while (static_cast<int>(wtilde_.size()) < cfg_.n_part) {
        const double theta = 0.5 * std::numbers::pi * frac(t * alpha1);
        const double phi1 = 2.0 * std::numbers::pi * frac(t * alpha2);
        const double phi2 = 2.0 * std::numbers::pi * frac(t * alpha3);
        ++t;
        CoordFunctional f;
        f.set(1, std::polar(std::cos(theta), phi1));
        f.set(2, std::polar(std::sin(theta), phi2));
        const double dn = dual_norm(f, sp);
        CoordFunctional unit;
        unit.set(1, f.at(1) / dn);
        unit.set(2, f.at(2) / dn);
        const double pairing = std::abs(eval_functional(unit, z_));
        if (pairing < cfg_.min_pairing) continue;
        wtilde_.push_back(unit);
        if (t > 10000) throw std::runtime_error("failed to enumerate sphere functionals");
    }

    // w_k^* and their dual norms
    wnorm_.assign(static_cast<std::size_t>(cfg_.k_max) + 1, 0.0);
    for (int k = 3; k <= cfg_.k_max; ++k) {
        const CoordFunctional& f = wtilde(class_of(k));
        const double pairing = std::abs(eval_functional(f, z_));
        CoordFunctional w;
        w.set(1, f.at(1) / pairing);
        w.set(2, f.at(2) / pairing);
        wstar_.push_back(w);
        wnorm_[static_cast<std::size_t>(k)] = dual_norm(w, sp);
        wnorm_sup_ = std::max(wnorm_sup_, wnorm_[static_cast<std::size_t>(k)]);
        const double pz = std::abs(eval_functional(w, z_));
        if (std::abs(pz - 1.0) > kAlgebraicTol)
            throw std::runtime_error("normalized functional must pair to modulus one with z");
    }

    // growth schedule: gentle ramp, one adaptive jump at j_max - 1 certifying
    // the tail target, then doubling ratios
    ratio_.assign(static_cast<std::size_t>(cfg_.k_max), 1);
    ratio_[1] = 1;  // m_1 = m_2 = 1
    ratio_[2] = 2;  // m_3 = 2
    const std::uint64_t ramp[] = {2, 3, 4, 5, 6, 8, 10, 12};
    for (int k = 3; k < cfg_.j_max - 1; ++k)
        ratio_[static_cast<std::size_t>(k)] =
            k - 3 < 8 ? ramp[k - 3] : ratio_[static_cast<std::size_t>(k - 1)] + 2;

    auto rebuild_m = [&]() {
        m_exact_.assign(static_cast<std::size_t>(cfg_.k_max) + 1, 0);
        m_ld_.assign(static_cast<std::size_t>(cfg_.k_max) + 1, 1.0L);
        m_exact_[1] = 1;
        std::uint64_t cur = 1;
        bool fits = true;
        for (int k = 2; k <= cfg_.k_max; ++k) {
            const std::uint64_t r = ratio_[static_cast<std::size_t>(k - 1)];
            m_ld_[static_cast<std::size_t>(k)] =
                m_ld_[static_cast<std::size_t>(k - 1)] * static_cast<long double>(r);
            if (fits && cur <= std::numeric_limits<std::uint64_t>::max() / r) {
                cur *= r;
                m_exact_[static_cast<std::size_t>(k)] = cur;
            } else {
                fits = false;
            }
        }
    };
    auto rebuild_c = [&]() {
        tail_rate_ = static_cast<double>(2.0L * static_cast<long double>(wnorm_sup_) /
                                         m_ld_[static_cast<std::size_t>(cfg_.k_max)]);
        c_.assign(static_cast<std::size_t>(cfg_.k_max) + 1, 0.0);
        for (int j = 3; j <= cfg_.k_max; ++j) {
            long double s = static_cast<long double>(tail_rate_);
            for (int k = j + 1; k <= cfg_.k_max; ++k)
                s += static_cast<long double>(wnorm_[static_cast<std::size_t>(k)]) /
                     m_ld_[static_cast<std::size_t>(k - 1)];
            c_[static_cast<std::size_t>(j)] =
                static_cast<double>(m_ld_[static_cast<std::size_t>(j - 1)] * s);
        }
    };

    // adaptive jump at index j_max - 1: double until the level-j_max tail
    // quantity is below target, with doubling ratios past it
    ratio_[static_cast<std::size_t>(cfg_.j_max - 1)] =
        std::max<std::uint64_t>(2, ratio_[static_cast<std::size_t>(cfg_.j_max - 2)]);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint64_t r = ratio_[static_cast<std::size_t>(cfg_.j_max - 1)];
        for (int k = cfg_.j_max; k < cfg_.k_max; ++k) {
            r = static_cast<std::uint64_t>(
                std::max<long double>(2.0L, std::ceil(static_cast<long double>(r) * cfg_.growth_factor)));
            ratio_[static_cast<std::size_t>(k)] = r;
        }
        rebuild_m();
        rebuild_c();
        if (c_[static_cast<std::size_t>(cfg_.j_max)] < cfg_.c_target) break;
        ratio_[static_cast<std::size_t>(cfg_.j_max - 1)] *= 2;
    }

    // repair pass: keep the tail quantity strictly decreasing through j_max
    for (int pass = 0; pass < 40; ++pass) {
        bool ok = true;
        for (int j = 3; j < cfg_.j_max; ++j) {
            if (c_[static_cast<std::size_t>(j + 1)] >= 0.98 * c_[static_cast<std::size_t>(j)]) {
                ratio_[static_cast<std::size_t>(j)] *= 2;
                rebuild_m();
                rebuild_c();
                ok = false;
            }
        }
        if (ok) break;
    }
    for (int j = 3; j < cfg_.j_max; ++j) {
        if (c_[static_cast<std::size_t>(j + 1)] >= c_[static_cast<std::size_t>(j)])
            throw std::runtime_error("tail quantity failed to decrease strictly");
    }
    if (c_[static_cast<std::size_t>(cfg_.j_max)] >= 1e-6)
        throw std::runtime_error("tail quantity above target at j_max");

    // summability of |lambda_k - 1| over the full range
    long double lsum = 0.0L;
    for (int k = 1; k <= cfg_.k_max; ++k) lsum += two_pi_ / m_ld_[static_cast<std::size_t>(k)];
    lsum += 2.0L * two_pi_ / m_ld_[static_cast<std::size_t>(cfg_.k_max)];
    lambda_sum_bound_ = static_cast<double>(lsum);
}

}  // namespace linrec
