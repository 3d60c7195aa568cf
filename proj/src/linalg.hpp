#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace oqrc {

using cxd = std::complex<double>;

// Dense complex matrix, row-major. The single numeric carrier for unitaries,
// Kraus operators, superoperators and (real-valued) reservoir matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cxd> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cxd>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cxd>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    cxd& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cxd>& entries() const { return entries_; }
    std::vector<cxd>& entries() { return entries_; }

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> entries_;
};

using ComplexVector = std::vector<cxd>;

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const cxd& s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product: (A (x) B)[i*Br+k, j*Bc+l] = A[i,j] * B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// All eigenvalues of a general (non-Hermitian) complex square matrix, with
// algebraic multiplicity, sorted by modulus descending then argument
// ascending. Throws on non-square input and on QR non-convergence.
ComplexVector eig_general(const ComplexMatrix& a);

// Solve A X = B for Hermitian positive definite A (Cholesky plus one step of
// iterative refinement). Throws when A is not Hermitian or the factorization
// detects an indefinite matrix.
ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b);

double spectral_radius(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);

// ||U^H U - I||_F, zero for a unitary matrix.
double unitarity_defect(const ComplexMatrix& u);

}  // namespace oqrc
