// values.cpp — expectation, ABL conditional value, weak value.

#include "kdq/values.hpp"

#include <cmath>
#include <sstream>

namespace kdq {

namespace {

void require_column(std::size_t dim, std::size_t j, const char* op) {
    if (j >= dim) {
        std::ostringstream os;
        os << op << ": postselection index " << j << " out of range for dimension " << dim;
        throw ValidationError(os.str());
    }
}

} // namespace

double expectation(const DensityOperator& rho, const ObservableSpec& obs) {
    if (rho.dim() != obs.dim()) throw ValidationError("expectation: dimension mismatch");
    const CMatrix in_a = to_basis(rho.matrix(), obs.basis());
    double s = 0;
    for (std::size_t i = 0; i < rho.dim(); ++i) s += obs.eigenvalue(i) * in_a(i, i).real();
    return s;
}

double expectation(const RMatrix& wigner, std::span<const double> eigenvalues) {
    if (wigner.rows() != eigenvalues.size() || wigner.rows() != wigner.cols())
        throw ValidationError("expectation: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < wigner.rows(); ++i)
        for (std::size_t j = 0; j < wigner.cols(); ++j) s += eigenvalues[i] * wigner(i, j);
    return s;
}

double conditional_value(const RMatrix& wigner, std::span<const double> eigenvalues,
                         std::size_t j) {
    if (wigner.rows() != eigenvalues.size() || wigner.rows() != wigner.cols())
        throw ValidationError("conditional_value: dimension mismatch");
    require_column(wigner.cols(), j, "conditional_value");
    double den = 0, num = 0;
    for (std::size_t i = 0; i < wigner.rows(); ++i) {
        den += wigner(i, j);
        num += eigenvalues[i] * wigner(i, j);
    }
    if (!(den > 1e-12)) {
        std::ostringstream os;
        os << "conditional_value: impossible postselection, Tr(rho' P_f" << j << ") = " << den
           << " <= 1e-12";
        throw PhysicalError(os.str());
    }
    return num / den;
}

double conditional_value(const DensityOperator& rho, const ObservableSpec& obs,
                         const Basis& f_basis, std::size_t j) {
    return conditional_value(wigner_table(rho, obs, f_basis), obs.eigenvalues(), j);
}

WeakValueResult weak_value(const KDTable& table, const JohansenParts& parts,
                           std::span<const double> eigenvalues, std::size_t j) {
    const std::size_t d = table.dim();
    if (eigenvalues.size() != d || parts.wigner.rows() != d)
        throw ValidationError("weak_value: dimension mismatch");
    require_column(d, j, "weak_value");

    cplx den_c = 0, num = 0;
    for (std::size_t i = 0; i < d; ++i) {
        den_c += table.entries(i, j);
        num += eigenvalues[i] * table.entries(i, j);
    }
    const double den = den_c.real();
    if (!(den > 1e-12)) {
        std::ostringstream os;
        os << "weak_value: orthogonal postselection, p(f" << j << "|rho) = " << den
           << " <= 1e-12";
        throw PhysicalError(os.str());
    }

    WeakValueResult out;
    out.numerator = num;
    out.denominator = den;
    out.value = num / den;
    cplx corr = 0;
    double wig = 0;
    for (std::size_t i = 0; i < d; ++i) {
        wig += eigenvalues[i] * parts.wigner(i, j);
        corr += eigenvalues[i] * cplx{parts.real_corr(i, j), parts.imag_corr(i, j)};
    }
    out.wigner_part = wig;
    out.correction_part = corr;
    return out;
}

WeakValueResult weak_value(const DensityOperator& rho, const ObservableSpec& obs,
                           const Basis& f_basis, std::size_t j) {
    return weak_value(kd_table(rho, obs, f_basis), johansen_decompose(rho, obs, f_basis),
                      obs.eigenvalues(), j);
}

DenominatorComparison denominator_compare(const DensityOperator& rho, const ObservableSpec& obs,
                                          const Basis& f_basis, std::size_t j) {
    if (rho.dim() != obs.dim() || rho.dim() != f_basis.dim())
        throw ValidationError("denominator_compare: dimension mismatch");
    require_column(f_basis.dim(), j, "denominator_compare");
    const CMatrix pf = f_basis.projector(j);
    DenominatorComparison out;
    out.strong_prob = trace_product(full_dephase(rho, obs).matrix(), pf).real();
    out.weak_prob = trace_product(rho.matrix(), pf).real();
    out.gap = out.weak_prob - out.strong_prob;
    return out;
}

} // namespace kdq
