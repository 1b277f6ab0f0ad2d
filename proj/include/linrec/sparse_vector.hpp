// Finitely supported coordinate vectors and functionals over the canonical
// biorthogonal system, with the l^p norms used throughout the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace linrec {

using Scalar = std::complex<double>;

inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;

/// Norm exponent and basis constant of the coordinate space model.
/// p may be std::numeric_limits<double>::infinity() for the sup norm.
struct SpaceConfig {
    double p = 2.0;
    double K = 1.0;
};

namespace detail {

// Shared storage for sparse index -> scalar maps in canonical form
// (no stored zeros, indices >= 1).
class SparseEntries {
  public:
    using Map = std::map<int, Scalar>;

    void set(int index, Scalar value) {
        if (index < 1) throw std::invalid_argument("index must be >= 1");
        if (value == Scalar{0.0, 0.0}) {
            entries_.erase(index);
        } else {
            entries_[index] = value;
        }
    }

    Scalar at(int index) const {
        auto it = entries_.find(index);
        return it == entries_.end() ? Scalar{0.0, 0.0} : it->second;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }

    int max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    Map::const_iterator begin() const { return entries_.begin(); }
    Map::const_iterator end() const { return entries_.end(); }

    bool operator==(const SparseEntries& other) const { return entries_ == other.entries_; }

  private:
    Map entries_;
};

}  // namespace detail

/// An element of c_00: finitely many nonzero coordinates, 1-based indices.
class SparseVector {
  public:
    SparseVector() = default;

    void set(int index, Scalar value) { entries_.set(index, value); }
    Scalar at(int index) const { return entries_.at(index); }
    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.support_size(); }
    int max_index() const { return entries_.max_index(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const SparseVector& other) const { return entries_ == other.entries_; }

    SparseVector& operator+=(const SparseVector& other) {
        for (const auto& [k, v] : other) set(k, at(k) + v);
        return *this;
    }
    SparseVector& operator-=(const SparseVector& other) {
        for (const auto& [k, v] : other) set(k, at(k) - v);
        return *this;
    }
    SparseVector& operator*=(Scalar s) {
        SparseVector scaled;
        for (const auto& [k, v] : *this) scaled.set(k, s * v);
        *this = scaled;
        return *this;
    }

    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend SparseVector operator*(Scalar s, SparseVector x) { return x *= s; }

    static SparseVector basis(int k) {
        SparseVector e;
        e.set(k, Scalar{1.0, 0.0});
        return e;
    }

  private:
    detail::SparseEntries entries_;
};

/// A finitely supported element of span{e_k^*}; evaluation is linear
/// (no conjugation) so that <e_k^*, e_j> = delta_{kj}.
class CoordFunctional {
  public:
    CoordFunctional() = default;

    void set(int index, Scalar value) { entries_.set(index, value); }
    Scalar at(int index) const { return entries_.at(index); }
    bool empty() const { return entries_.empty(); }
    int max_index() const { return entries_.max_index(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    static CoordFunctional basis(int k) {
        CoordFunctional f;
        f.set(k, Scalar{1.0, 0.0});
        return f;
    }

  private:
    detail::SparseEntries entries_;
};

inline Scalar eval_functional(const CoordFunctional& f, const SparseVector& x) {
    Scalar sum{0.0, 0.0};
    for (const auto& [k, fk] : f) sum += fk * x.at(k);
    return sum;
}

inline double norm(const SparseVector& x, const SpaceConfig& cfg = {}) {
    if (cfg.p < 1.0) throw std::invalid_argument("norm exponent must satisfy p >= 1");
    if (std::isinf(cfg.p)) {
        double m = 0.0;
        for (const auto& [k, v] : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (cfg.p == 2.0) {
        double s = 0.0;
        for (const auto& [k, v] : x) s += std::norm(v);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& [k, v] : x) s += std::pow(std::abs(v), cfg.p);
    return std::pow(s, 1.0 / cfg.p);
}

/// Dual norm of a coordinate functional: the l^q norm with 1/p + 1/q = 1.
inline double dual_norm(const CoordFunctional& f, const SpaceConfig& cfg = {}) {
    double maxabs = 0.0;
    for (const auto& [k, v] : f) maxabs = std::max(maxabs, std::abs(v));
    if (cfg.p == 1.0) return maxabs;
    if (std::isinf(cfg.p)) {
        double s = 0.0;
        for (const auto& [k, v] : f) s += std::abs(v);
        return s;
    }
    const double q = cfg.p / (cfg.p - 1.0);
    if (q == 2.0) {
        double s = 0.0;
        for (const auto& [k, v] : f) s += std::norm(v);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& [k, v] : f) s += std::pow(std::abs(v), q);
    return std::pow(s, 1.0 / q);
}

/// Checks |<e_k^*, x>| <= K ||x|| on every stored coordinate.
inline bool coord_bound_check(const SparseVector& x, const SpaceConfig& cfg = {},
                              double tol = kAlgebraicTol) {
    const double bound = cfg.K * norm(x, cfg) + tol;
    for (const auto& [k, v] : x) {
        if (std::abs(v) > bound) return false;
    }
    return true;
}

namespace detail {

inline Scalar parse_scalar(const std::string& tok) {
    // Forms: "1.5", "-2", "0+1i", "0.5-2i", "1i" is not accepted (always a+bi or a).
    if (!tok.empty() && tok.back() == 'i') {
        const std::string body = tok.substr(0, tok.size() - 1);
        // split at the last +/- that is not an exponent sign or leading sign
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            const char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos)
            throw std::invalid_argument("malformed complex literal: " + tok);
        const double re = std::stod(body.substr(0, split));
        std::string imag_part = body.substr(split);
        if (imag_part == "+") imag_part = "1";
        if (imag_part == "-") imag_part = "-1";
        const double im = std::stod(imag_part);
        return {re, im};
    }
    return {std::stod(tok), 0.0};
}

inline std::string format_scalar(Scalar v) {
    std::ostringstream os;
    os.precision(17);
    if (v.imag() == 0.0) {
        os << v.real();
    } else {
        os << v.real() << (v.imag() >= 0.0 ? "+" : "") << v.imag() << "i";
    }
    return os.str();
}

}  // namespace detail

/// Parses the whitespace-separated `index:value` form, e.g. "1:0.5 4:-1.25 2:0+1i".
inline SparseVector parse_vector(const std::string& text) {
    SparseVector x;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("expected index:value pair, got: " + tok);
        const int index = std::stoi(tok.substr(0, colon));
        x.set(index, detail::parse_scalar(tok.substr(colon + 1)));
    }
    return x;
}

inline std::string format_vector(const SparseVector& x) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : x) {
        if (!first) os << ' ';
        first = false;
        os << k << ':' << detail::format_scalar(v);
    }
    return os.str();
}

}  // namespace linrec
