// linalg.cpp — dense complex matrices, bases, states, Jacobi eigensolver.

#include "kdq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace kdq {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << op << ": shape mismatch (" << a.rows() << "x" << a.cols()
           << " vs " << b.rows() << "x" << b.cols() << ")";
        throw ValidationError(os.str());
    }
}

} // namespace

// ── CMatrix ──────────────────────────────────────────────────────────────

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("operator*: inner dimension mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

cplx trace(const CMatrix& a) {
    cplx s = 0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
    return s;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw ValidationError("trace_product: shape mismatch");
    cplx s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

double max_abs(const CMatrix& a) {
    double m = 0;
    for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    auto ea = a.entries(), eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

CMatrix hermitian_part(const CMatrix& a) {
    CMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw ValidationError("matvec: dimension mismatch");
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw ValidationError("inner: dimension mismatch");
    cplx s = 0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

double norm(std::span<const cplx> u) {
    double s = 0;
    for (const auto& v : u) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    CMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

// ── RMatrix ──────────────────────────────────────────────────────────────

double max_abs(const RMatrix& a) {
    double m = 0;
    for (double v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("max_abs_diff: shape mismatch");
    double m = 0;
    auto ea = a.entries(), eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

// ── Basis ────────────────────────────────────────────────────────────────

Basis::Basis(CMatrix columns, std::string label, Tolerances tol)
    : columns_(std::move(columns)), label_(std::move(label)) {
    if (columns_.rows() == 0 || columns_.rows() != columns_.cols())
        throw ValidationError("basis: column matrix must be square and non-empty");
    const double defect = orthonormality_defect();
    if (defect > tol.structural) {
        std::ostringstream os;
        os << "basis '" << label_ << "': orthonormality defect " << defect
           << " exceeds " << tol.structural;
        throw ValidationError(os.str());
    }
}

Basis Basis::computational(std::size_t d) {
    if (d < 1) throw ValidationError("basis: dimension must be positive");
    return Basis(CMatrix::identity(d), "computational");
}

std::vector<cplx> Basis::vec(std::size_t j) const {
    if (j >= dim()) throw ValidationError("basis: column index out of range");
    std::vector<cplx> v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = columns_(i, j);
    return v;
}

CMatrix Basis::projector(std::size_t j) const {
    const auto v = vec(j);
    return outer(v, v);
}

double Basis::orthonormality_defect() const {
    const std::size_t d = dim();
    double m = 0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            cplx s = 0;
            for (std::size_t k = 0; k < d; ++k) s += std::conj(columns_(k, a)) * columns_(k, b);
            if (a == b) s -= 1.0;
            m = std::max(m, std::abs(s));
        }
    }
    return m;
}

Basis fourier_basis(std::size_t d) {
    if (d < 2) throw ValidationError("fourier_basis: dimension must be at least 2");
    CMatrix f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // reduce i*j mod d before the trig call to keep angles small
            const std::size_t ij = (i * j) % d;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(ij) / static_cast<double>(d);
            f(i, j) = std::polar(scale, angle);
        }
    }
    return Basis(std::move(f), "fourier");
}

CMatrix to_basis(const CMatrix& m, const Basis& b) {
    return adjoint(b.matrix()) * m * b.matrix();
}

CMatrix from_basis(const CMatrix& m, const Basis& b) {
    return b.matrix() * m * adjoint(b.matrix());
}

// ── ObservableSpec ───────────────────────────────────────────────────────

ObservableSpec::ObservableSpec(std::vector<double> eigenvalues, Basis basis, Tolerances tol)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)) {
    if (eigenvalues_.size() != basis_.dim()) {
        std::ostringstream os;
        os << "observable: " << basis_.dim() << " basis vectors but "
           << eigenvalues_.size() << " eigenvalues";
        throw ValidationError(os.str());
    }
    for (double a : eigenvalues_) {
        if (!std::isfinite(a)) throw ValidationError("observable: eigenvalues must be finite");
    }
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
        for (std::size_t k = i + 1; k < eigenvalues_.size(); ++k) {
            if (std::abs(eigenvalues_[i] - eigenvalues_[k]) <= tol.distinct) {
                std::ostringstream os;
                os << "observable: eigenvalues " << i << " and " << k
                   << " are not distinct (gap <= " << tol.distinct << ")";
                throw ValidationError(os.str());
            }
        }
    }
}

double ObservableSpec::eigenvalue(std::size_t i) const {
    if (i >= eigenvalues_.size()) throw ValidationError("observable: index out of range");
    return eigenvalues_[i];
}

CMatrix ObservableSpec::matrix() const {
    CMatrix a(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        const CMatrix p = projector(i);
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c) a(r, c) += eigenvalues_[i] * p(r, c);
    }
    return a;
}

double ObservableSpec::spectrum_min() const {
    return *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
}

double ObservableSpec::spectrum_max() const {
    return *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
}

// ── DensityOperator ──────────────────────────────────────────────────────

DensityOperator::DensityOperator(CMatrix matrix, Tolerances tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
        throw ValidationError("density: matrix must be square and non-empty");
    const auto diag = validate_density(matrix_, tol);
    if (!diag.pass) {
        std::ostringstream os;
        os << "density: invalid state (hermiticity defect " << diag.hermiticity_defect
           << ", trace defect " << diag.trace_defect
           << ", min eigenvalue " << diag.min_eigenvalue << ")";
        throw ValidationError(os.str());
    }
}

DensityDiagnostics validate_density(const CMatrix& m, Tolerances tol) {
    DensityDiagnostics d;
    if (m.rows() == 0 || m.rows() != m.cols()) return d; // pass = false
    d.hermiticity_defect = max_abs_diff(m, adjoint(m));
    d.trace_defect = std::abs(trace(m) - cplx{1.0, 0.0});
    const auto eig = hermitian_eigensystem(m);
    d.min_eigenvalue = eig.values.front();
    d.pass = d.hermiticity_defect <= tol.structural && d.trace_defect <= tol.structural &&
             d.min_eigenvalue >= -tol.structural;
    return d;
}

DensityDiagnostics validate_density(const DensityOperator& rho, Tolerances tol) {
    return validate_density(rho.matrix(), tol);
}

DensityOperator pure_state(std::span<const cplx> amplitudes) {
    const double n = norm(amplitudes);
    if (!(n > 1e-12)) throw ValidationError("pure_state: degenerate state (vector norm <= 1e-12)");
    std::vector<cplx> psi(amplitudes.begin(), amplitudes.end());
    for (auto& v : psi) v /= n;
    return DensityOperator(outer(psi, psi));
}

DensityOperator bloch_state(double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    if (!(r2 <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "bloch_state: invalid state, |r|^2 = " << r2 << " > 1";
        throw ValidationError(os.str());
    }
    CMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + z);
    m(0, 1) = 0.5 * cplx{x, -y};
    m(1, 0) = 0.5 * cplx{x, y};
    m(1, 1) = 0.5 * (1.0 - z);
    return DensityOperator(std::move(m));
}

// ── Hermitian eigensolver ────────────────────────────────────────────────

EigenSystem hermitian_eigensystem(const CMatrix& input) {
    if (input.rows() == 0 || input.rows() != input.cols())
        throw ValidationError("hermitian_eigensystem: matrix must be square and non-empty");
    const std::size_t n = input.rows();
    CMatrix a = hermitian_part(input);
    CMatrix v = CMatrix::identity(n);

    const double scale = std::max(max_abs(a), 1e-300);
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                const cplx phase = apq / r;
                const double w = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                // small root of t^2 - 2wt - 1 = 0 zeroes the pivot
                const double t = (w >= 0 ? -1.0 : 1.0) / (std::abs(w) + std::sqrt(w * w + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- U† A U with U_pp = c, U_pq = -s·phase, U_qp = s·conj(phase), U_qq = c
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s * phase * aqk;
                    a(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

} // namespace kdq
