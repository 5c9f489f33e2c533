// linalg.hpp — dense complex linear algebra for small Hilbert spaces.
//
// Dimensions here are tiny (d = 2..16), so matrices are dense, row-major,
// and written for clarity over throughput. Positivity checks use a
// self-contained complex Jacobi eigensolver; there is no external
// linear-algebra dependency.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kdq/errors.hpp"

namespace kdq {

using cplx = std::complex<double>;

// Absolute tolerances used by the validating constructors. Quasiprobability
// entries are O(1/d), so absolute comparisons are used throughout.
struct Tolerances {
    double structural = 1e-10; // hermiticity, trace, orthonormality, PSD slack
    double distinct = 1e-12;   // eigenvalue separation
};

// ── CMatrix ──────────────────────────────────────────────────────────────

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Row-major storage, rows*cols entries.
    std::span<const cplx> entries() const { return data_; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

CMatrix adjoint(const CMatrix& a);
cplx trace(const CMatrix& a);
// tr(a·b) in O(n^2) without forming the product.
cplx trace_product(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
CMatrix hermitian_part(const CMatrix& a); // (a + a†)/2

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x);
cplx inner(std::span<const cplx> u, std::span<const cplx> v); // <u|v>
double norm(std::span<const cplx> u);
CMatrix outer(std::span<const cplx> u, std::span<const cplx> v); // |u><v|

// ── RMatrix ──────────────────────────────────────────────────────────────

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> entries() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double max_abs(const RMatrix& a);
double max_abs_diff(const RMatrix& a, const RMatrix& b);

// ── Basis ────────────────────────────────────────────────────────────────

// Orthonormal basis of C^d. Column j of matrix() is the j-th basis vector.
// The constructor enforces ||V†V − I||_max <= tol.structural.
class Basis {
public:
    explicit Basis(CMatrix columns, std::string label = "custom", Tolerances tol = {});

    static Basis computational(std::size_t d);

    std::size_t dim() const { return columns_.rows(); }
    const CMatrix& matrix() const { return columns_; }
    const std::string& label() const { return label_; }

    std::vector<cplx> vec(std::size_t j) const;
    CMatrix projector(std::size_t j) const; // |v_j><v_j|
    double orthonormality_defect() const;   // ||V†V − I||_max

private:
    CMatrix columns_;
    std::string label_;
};

// Discrete Fourier basis: entry (i, j) = exp(2πi·ij/d)/√d. Mutually
// unbiased with the computational basis: |<f_j|a_i>| = 1/√d for all i, j.
Basis fourier_basis(std::size_t d);

// Change of representation: computational-basis matrix m expressed in b,
// i.e. V†·m·V, and back.
CMatrix to_basis(const CMatrix& m, const Basis& b);
CMatrix from_basis(const CMatrix& m, const Basis& b);

// ── ObservableSpec ───────────────────────────────────────────────────────

// Non-degenerate observable: pairwise distinct real eigenvalues attached to
// an orthonormal eigenbasis.
class ObservableSpec {
public:
    ObservableSpec(std::vector<double> eigenvalues, Basis basis, Tolerances tol = {});

    std::size_t dim() const { return basis_.dim(); }
    std::span<const double> eigenvalues() const { return eigenvalues_; }
    double eigenvalue(std::size_t i) const;
    const Basis& basis() const { return basis_; }
    CMatrix projector(std::size_t i) const { return basis_.projector(i); }
    CMatrix matrix() const; // Σ_i a_i |a_i><a_i|
    double spectrum_min() const;
    double spectrum_max() const;

private:
    std::vector<double> eigenvalues_;
    Basis basis_;
};

// ── DensityOperator ──────────────────────────────────────────────────────

// Validated density matrix in the computational basis: Hermitian, unit
// trace, positive semidefinite (all within tol.structural).
class DensityOperator {
public:
    explicit DensityOperator(CMatrix matrix, Tolerances tol = {});

    std::size_t dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }

private:
    CMatrix matrix_;
};

struct DensityDiagnostics {
    double hermiticity_defect = 0; // ||ρ − ρ†||_max
    double trace_defect = 0;       // |tr ρ − 1|
    double min_eigenvalue = 0;
    bool pass = false;
};

DensityDiagnostics validate_density(const CMatrix& m, Tolerances tol = {});
DensityDiagnostics validate_density(const DensityOperator& rho, Tolerances tol = {});

// Normalized projector onto the given amplitude vector.
DensityOperator pure_state(std::span<const cplx> amplitudes);

// Qubit state (I + x·σx + y·σy + z·σz)/2; requires x²+y²+z² <= 1.
DensityOperator bloch_state(double x, double y, double z);

// ── Hermitian eigensolver ────────────────────────────────────────────────

struct EigenSystem {
    std::vector<double> values; // ascending
    CMatrix vectors;            // column k pairs with values[k]
};

// Cyclic complex Jacobi iteration; input is hermitized first.
EigenSystem hermitian_eigensystem(const CMatrix& a);

} // namespace kdq
