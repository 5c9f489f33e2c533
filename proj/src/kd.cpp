// kd.cpp — KD table construction, marginals, reconstruction, Johansen split.

#include "kdq/kd.hpp"

#include <cmath>
#include <sstream>

namespace kdq {

namespace {

void require_dims(const DensityOperator& rho, const ObservableSpec& obs, const Basis& f,
                  const char* op) {
    if (rho.dim() != obs.dim() || rho.dim() != f.dim()) {
        std::ostringstream os;
        os << op << ": dimension mismatch (state " << rho.dim() << ", observable " << obs.dim()
           << ", f-basis " << f.dim() << ")";
        throw ValidationError(os.str());
    }
}

} // namespace

KDTable kd_table(const DensityOperator& rho, const ObservableSpec& obs, const Basis& f_basis) {
    require_dims(rho, obs, f_basis, "kd_table");
    const std::size_t d = rho.dim();
    // m(i,j) = <a_i|ρ|f_j>, g(j,i) = <f_j|a_i>
    const CMatrix m = adjoint(obs.basis().matrix()) * rho.matrix() * f_basis.matrix();
    const CMatrix g = adjoint(f_basis.matrix()) * obs.basis().matrix();
    CMatrix q(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) q(i, j) = m(i, j) * g(j, i);
    return KDTable{std::move(q), obs.basis(), f_basis};
}

Marginals kd_marginals(const KDTable& table) {
    const std::size_t d = table.dim();
    Marginals out;
    out.row_sums.resize(d);
    out.col_sums.resize(d);
    cplx total = 0;
    for (std::size_t i = 0; i < d; ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < d; ++j) s += table.entries(i, j);
        out.row_sums[i] = s.real();
        out.max_imag_residual = std::max(out.max_imag_residual, std::abs(s.imag()));
        total += s;
    }
    for (std::size_t j = 0; j < d; ++j) {
        cplx s = 0;
        for (std::size_t i = 0; i < d; ++i) s += table.entries(i, j);
        out.col_sums[j] = s.real();
        out.max_imag_residual = std::max(out.max_imag_residual, std::abs(s.imag()));
    }
    out.total = total.real();
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(total.imag()));
    if (out.max_imag_residual > 1e-8) {
        std::ostringstream os;
        os << "kd_marginals: corrupt table, imaginary marginal residue "
           << out.max_imag_residual << " exceeds 1e-8";
        throw NumericalError(os.str());
    }
    return out;
}

bool marginals_consistent(const Marginals& m, double tol) {
    return m.max_imag_residual <= tol && std::abs(m.total - 1.0) <= tol;
}

DensityOperator reconstruct_state(const KDTable& table) {
    const std::size_t d = table.dim();
    const CMatrix g = adjoint(table.f_basis.matrix()) * table.a_basis.matrix();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (std::abs(g(j, i)) <= 1e-8) {
                std::ostringstream os;
                os << "reconstruct_state: non-invertible configuration, |<f_j|a_i>| <= 1e-8 at "
                   << "(i=" << i << ", j=" << j << ")";
                throw ValidationError(os.str());
            }
        }
    }
    CMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto ai = table.a_basis.vec(i);
        for (std::size_t j = 0; j < d; ++j) {
            const auto fj = table.f_basis.vec(j);
            const cplx w = table.entries(i, j) / g(j, i);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) rho(r, c) += w * ai[r] * std::conj(fj[c]);
        }
    }
    return DensityOperator(std::move(rho));
}

DensityOperator binary_dephase(const DensityOperator& rho, const ObservableSpec& obs,
                               std::size_t i) {
    if (rho.dim() != obs.dim()) throw ValidationError("binary_dephase: dimension mismatch");
    if (i >= obs.dim()) throw ValidationError("binary_dephase: index out of range");
    const CMatrix p = obs.projector(i);
    const CMatrix c = CMatrix::identity(rho.dim()) - p;
    return DensityOperator(p * rho.matrix() * p + c * rho.matrix() * c);
}

DensityOperator full_dephase(const DensityOperator& rho, const ObservableSpec& obs) {
    if (rho.dim() != obs.dim()) throw ValidationError("full_dephase: dimension mismatch");
    CMatrix in_a = to_basis(rho.matrix(), obs.basis());
    for (std::size_t r = 0; r < in_a.rows(); ++r)
        for (std::size_t c = 0; c < in_a.cols(); ++c)
            if (r != c) in_a(r, c) = 0.0;
    return DensityOperator(from_basis(in_a, obs.basis()));
}

CMatrix phase_rotated_projector(const Basis& f_basis, std::size_t j, const ObservableSpec& obs,
                                std::size_t i) {
    if (f_basis.dim() != obs.dim())
        throw ValidationError("phase_rotated_projector: dimension mismatch");
    if (j >= f_basis.dim() || i >= obs.dim())
        throw ValidationError("phase_rotated_projector: index out of range");
    // R_i = I + (e^{iπ/2} − 1) Π_ai, with e^{iπ/2} = i exactly
    const CMatrix r = CMatrix::identity(obs.dim()) + (cplx{0.0, 1.0} - 1.0) * obs.projector(i);
    return adjoint(r) * f_basis.projector(j) * r;
}

JohansenParts johansen_decompose(const DensityOperator& rho, const ObservableSpec& obs,
                                 const Basis& f_basis) {
    require_dims(rho, obs, f_basis, "johansen_decompose");
    const std::size_t d = rho.dim();

    std::vector<CMatrix> f_proj(d);
    for (std::size_t j = 0; j < d; ++j) f_proj[j] = f_basis.projector(j);

    JohansenParts parts{RMatrix(d, d), RMatrix(d, d), RMatrix(d, d)};
    for (std::size_t i = 0; i < d; ++i) {
        const CMatrix pa = obs.projector(i);
        const CMatrix delta = rho.matrix() - binary_dephase(rho, obs, i).matrix();
        for (std::size_t j = 0; j < d; ++j) {
            const CMatrix sandwich = pa * f_proj[j] * pa;
            parts.wigner(i, j) = trace_product(rho.matrix(), sandwich).real();
            parts.real_corr(i, j) = 0.5 * trace_product(delta, f_proj[j]).real();
            const CMatrix rotated = phase_rotated_projector(f_basis, j, obs, i);
            parts.imag_corr(i, j) = -0.5 * trace_product(delta, rotated).real();
        }
    }
    return parts;
}

RMatrix wigner_table(const DensityOperator& rho, const ObservableSpec& obs, const Basis& f_basis) {
    require_dims(rho, obs, f_basis, "wigner_table");
    const std::size_t d = rho.dim();
    const CMatrix g = adjoint(f_basis.matrix()) * obs.basis().matrix(); // g(j,i) = <f_j|a_i>
    const CMatrix in_a = to_basis(rho.matrix(), obs.basis());
    RMatrix w(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const double pa = in_a(i, i).real();
        for (std::size_t j = 0; j < d; ++j) w(i, j) = pa * std::norm(g(j, i));
    }
    return w;
}

} // namespace kdq
