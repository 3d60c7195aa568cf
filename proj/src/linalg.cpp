#include "linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oqrc {

namespace {

using EigenRowMajor =
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenRowMajor> as_eigen(const ComplexMatrix& m) {
    return {m.entries().data(), static_cast<Eigen::Index>(m.rows()),
            static_cast<Eigen::Index>(m.cols())};
}

ComplexMatrix from_eigen(const EigenRowMajor& m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()),
                      static_cast<std::size_t>(m.cols()));
    std::copy(m.data(), m.data() + m.size(), out.entries().begin());
    return out;
}

std::string shape_str(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const ComplexMatrix& a, const char* op) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw std::invalid_argument(std::string(op) + ": expected a nonempty square matrix, got " +
                                    shape_str(a));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cxd> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: entry count " +
                                    std::to_string(entries_.size()) + " does not match shape " +
                                    shape_str(*this));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cxd>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer rows");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cxd>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries()[i] = std::conj(entries_[i]);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix add: shape mismatch " + shape_str(a) + " vs " +
                                    shape_str(b));
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entries().size(); ++i)
        out.entries()[i] = a.entries()[i] + b.entries()[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix subtract: shape mismatch " + shape_str(a) + " vs " +
                                    shape_str(b));
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entries().size(); ++i)
        out.entries()[i] = a.entries()[i] - b.entries()[i];
    return out;
}

ComplexMatrix operator*(const cxd& s, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] = s * a.entries()[i];
    return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cxd(s, 0.0) * a; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: dimension mismatch " + shape_str(a) + " * " +
                                    shape_str(b));
    }
    EigenRowMajor c = as_eigen(a) * as_eigen(b);
    return from_eigen(c);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cxd aij = a(i, j);
            if (aij == cxd(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexVector eig_general(const ComplexMatrix& a) {
    require_square(a, "eig_general");
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXcd m = as_eigen(a);

    // Schur form carries the eigenvalues on its diagonal; 100*n total QR
    // sweeps before giving up. Shifted QR can stall on matrices with exact
    // symmetries (structured superoperators do this); a fixed diagonal
    // phase similarity D A D^-1 leaves the spectrum untouched and breaks
    // the stall, so retry under it before reporting failure.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur;
    schur.setMaxIterations(100 * n);
    for (int attempt = 0;; ++attempt) {
        schur.compute(m, /*computeU=*/false);
        if (schur.info() == Eigen::Success) break;
        if (attempt >= 2) {
            throw std::runtime_error("eig_general: QR iteration did not converge within " +
                                     std::to_string(100 * n) + " sweeps");
        }
        std::uint64_t state = 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt + 1);
        Eigen::VectorXcd phases(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ull;
            const double theta =
                2.0 * M_PI * static_cast<double>(state >> 11) * 0x1.0p-53;
            phases(i) = std::polar(1.0, theta);
        }
        m = phases.asDiagonal() * as_eigen(a).eval() * phases.conjugate().asDiagonal();
    }

    ComplexVector eigs(a.rows());
    for (Eigen::Index i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = schur.matrixT()(i, i);
    std::sort(eigs.begin(), eigs.end(), [](const cxd& x, const cxd& y) {
        const double ax = std::abs(x);
        const double ay = std::abs(y);
        if (ax != ay) return ax > ay;
        return std::arg(x) < std::arg(y);
    });
    return eigs;
}

ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "solve_hpd");
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("solve_hpd: A is " + shape_str(a) + " but B is " +
                                    shape_str(b));
    }
    // Cholesky only reads one triangle, so a silently non-Hermitian input
    // would be solved against the wrong matrix; reject it up front.
    double herm_defect = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c)
            herm_defect = std::max(herm_defect, std::abs(a(r, c) - std::conj(a(c, r))));
    const double scale = std::max(1.0, max_abs(a));
    if (herm_defect > 1e-10 * scale) {
        throw std::invalid_argument("solve_hpd: matrix is not Hermitian (defect " +
                                    std::to_string(herm_defect) + ")");
    }

    Eigen::MatrixXcd A = as_eigen(a);
    Eigen::MatrixXcd B = as_eigen(b);
    Eigen::LLT<Eigen::MatrixXcd> llt(A);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("solve_hpd: Cholesky factorization failed, matrix is not "
                                 "positive definite");
    }
    Eigen::MatrixXcd X = llt.solve(B);
    // One step of iterative refinement tightens the residual for mildly
    // ill-conditioned systems (ridge normal equations with tiny alpha).
    Eigen::MatrixXcd R = B - A * X;
    X += llt.solve(R);

    EigenRowMajor Xr = X;
    return from_eigen(Xr);
}

double spectral_radius(const ComplexMatrix& a) {
    const ComplexVector eigs = eig_general(a);
    double r = 0.0;
    for (const auto& e : eigs) r = std::max(r, std::abs(e));
    return r;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& e : a.entries()) s += std::norm(e);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& e : a.entries()) m = std::max(m, std::abs(e));
    return m;
}

double unitarity_defect(const ComplexMatrix& u) {
    require_square(u, "unitarity_defect");
    return frobenius_norm(matmul(u.adjoint(), u) - ComplexMatrix::identity(u.rows()));
}

}  // namespace oqrc
