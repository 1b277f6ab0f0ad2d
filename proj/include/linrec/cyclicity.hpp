// Finite-dimensional cyclicity engine: diagonalization of upper-triangular
// matrices with distinct diagonal by back-substitution, eigenvector span
// checks, Krylov ranks and the real-coefficient cyclicity test.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linrec/sparse_vector.hpp"

namespace linrec {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Upper-triangular N x N matrix; entries strictly below the diagonal are
/// exactly zero by construction.
class TriMatrix {
  public:
    explicit TriMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    }

    int dim() const { return n_; }

    void set(int i, int j, Scalar v) {
        check(i, j);
        if (i > j && v != Scalar{0.0, 0.0})
            throw std::invalid_argument("entries below the diagonal must be zero");
        a_[idx(i, j)] = v;
    }
    Scalar at(int i, int j) const {
        check(i, j);
        return a_[idx(i, j)];
    }
    Scalar diag(int k) const { return at(k, k); }

    bool distinct_diagonal(double tol = kAlgebraicTol) const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (std::abs(diag(i) - diag(j)) <= tol) return false;
        return true;
    }

    CMatrix dense() const {
        CMatrix m = CMatrix::Zero(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) m(i, j) = at(i, j);
        return m;
    }

    /// Row-major whitespace-separated entries, `#` comments, complex as a+bi.
    static TriMatrix parse(const std::string& text, int n) {
        TriMatrix t(n);
        std::istringstream in(text);
        std::string line;
        std::vector<Scalar> vals;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream row(line);
            std::string tok;
            while (row >> tok) vals.push_back(detail::parse_scalar(tok));
        }
        if (vals.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw std::invalid_argument("matrix text has wrong entry count");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.set(i, j, vals[static_cast<std::size_t>(i * n + j)]);
        return t;
    }

  private:
    void check(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("matrix index");
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    int n_;
    std::vector<Scalar> a_;
};

struct Diagonalization {
    CMatrix L;               // columns are eigenvectors
    CVector D;               // eigenvalues = the diagonal of the input
    double residual = 0.0;   // max |T L - L D| entrywise
    double min_singular = 0.0;
    bool conditioning_warning = false;  // smallest singular value of L near threshold
};

/// T = L D L^{-1} with eigenvector columns obtained by back-substitution on
/// (T - lambda_k I); requires a pairwise-distinct diagonal.
inline Diagonalization diagonalize(const TriMatrix& t) {
    if (!t.distinct_diagonal())
        throw std::invalid_argument("diagonalize requires pairwise-distinct diagonal entries");
    const int n = t.dim();
    Diagonalization out;
    out.L = CMatrix::Zero(n, n);
    out.D = CVector(n);
    for (int k = 0; k < n; ++k) {
        const Scalar lam = t.diag(k);
        out.D(k) = lam;
        out.L(k, k) = Scalar{1.0, 0.0};
        for (int i = k - 1; i >= 0; --i) {
            Scalar s{0.0, 0.0};
            for (int j = i + 1; j <= k; ++j) s += t.at(i, j) * out.L(j, k);
            out.L(i, k) = s / (lam - t.diag(i));
        }
    }
    const CMatrix dense = t.dense();
    out.residual = (dense * out.L - out.L * out.D.asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff();
    Eigen::JacobiSVD<CMatrix> svd(out.L);
    out.min_singular = svd.singularValues()(n - 1);
    const double scale = svd.singularValues()(0);
    out.conditioning_warning = out.min_singular <= 1e-6 * scale;
    return out;
}

/// True iff the eigenvectors of t span the whole space numerically: columns
/// of L are normalized first (eigenvector scale is arbitrary), then the
/// smallest singular value must exceed 1e-9 of the largest.
inline bool eigen_span_check(const TriMatrix& t) {
    Diagonalization d = diagonalize(t);
    for (int c = 0; c < t.dim(); ++c) d.L.col(c).normalize();
    Eigen::JacobiSVD<CMatrix> svd(d.L);
    const auto& sv = svd.singularValues();
    return sv(t.dim() - 1) > 1e-9 * sv(0);
}

/// Cyclicity for a diagonal operator with distinct diagonal: every coordinate
/// of x must be nonzero.
inline bool diag_cyclic_test(const std::vector<Scalar>& d, const std::vector<Scalar>& x) {
    if (d.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i] == d[j]) throw std::invalid_argument("diagonal entries must be distinct");
    for (const auto& c : x)
        if (c == Scalar{0.0, 0.0}) return false;
    return true;
}

/// Numerical rank of [x | Tx | ... | T^{N-1}x], threshold 1e-9 relative to
/// the largest singular value.
inline int krylov_rank(const TriMatrix& t, const CVector& x) {
    const int n = t.dim();
    if (x.size() != n) throw std::invalid_argument("dimension mismatch");
    const CMatrix dense = t.dense();
    CMatrix kry(n, n);
    CVector v = x;
    for (int c = 0; c < n; ++c) {
        kry.col(c) = v;
        v = dense * v;
    }
    Eigen::JacobiSVD<CMatrix> svd(kry);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9 * smax) ++rank;
    return rank;
}

/// Real rank of {x, Dx, ..., D^{deg-1}x} with the complex space viewed as a
/// real space of twice the dimension (real-coefficient polynomial images).
inline int realified_krylov_rank(const std::vector<Scalar>& d, const std::vector<Scalar>& x) {
    const int n = static_cast<int>(d.size());
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("dimension mismatch");
    const int deg = 2 * n;
    Eigen::MatrixXd kry(2 * n, deg);
    std::vector<Scalar> v = x;
    for (int c = 0; c < deg; ++c) {
        for (int i = 0; i < n; ++i) {
            kry(2 * i, c) = v[static_cast<std::size_t>(i)].real();
            kry(2 * i + 1, c) = v[static_cast<std::size_t>(i)].imag();
        }
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] *= d[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(kry);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9 * smax) ++rank;
    return rank;
}

/// Cyclicity under real-coefficient polynomials for a diagonal operator whose
/// eigenvalues come in strictly complex conjugate pairs: requires all lambda_k
/// and their conjugates pairwise distinct, then reduces to nonvanishing
/// coordinates.
inline bool real_cyclic_test(const std::vector<Scalar>& d, const std::vector<Scalar>& x,
                             double tol = kAlgebraicTol) {
    if (d.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (std::abs(d[i].imag()) <= tol)
            throw std::invalid_argument("real_cyclic_test: diagonal entry is real (conjugate collision)");
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i != j && std::abs(d[i] - d[j]) <= tol)
                throw std::invalid_argument("real_cyclic_test: repeated diagonal entry");
            if (std::abs(d[i] - std::conj(d[j])) <= tol)
                throw std::invalid_argument("real_cyclic_test: conjugate collision in the diagonal");
        }
    }
    for (const auto& c : x)
        if (c == Scalar{0.0, 0.0}) return false;
    return true;
}

}  // namespace linrec
