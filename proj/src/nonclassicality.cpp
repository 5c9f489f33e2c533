// nonclassicality.cpp — correction-magnitude measure and its decay law.

#include "kdq/nonclassicality.hpp"

#include <cmath>

namespace kdq {

NonclassicalityReport nonclassicality(const JohansenParts& parts) {
    const std::size_t d = parts.wigner.rows();
    NonclassicalityReport r;
    r.per_pair = RMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double rc = std::abs(parts.real_corr(i, j));
            const double ic = std::abs(parts.imag_corr(i, j));
            r.real_part_sum += rc;
            r.imag_part_sum += ic;
            r.per_pair(i, j) = rc + ic;
        }
    }
    r.total = r.real_part_sum + r.imag_part_sum;
    return r;
}

NonclassicalityReport nonclassicality(const DensityOperator& rho, const ObservableSpec& obs,
                                      const Basis& f_basis, Dephasing dephasing) {
    if (dephasing == Dephasing::binary)
        return nonclassicality(johansen_decompose(rho, obs, f_basis));

    // Full-dephasing variant: ρ' = Σ_k Π_ak ρ Π_ak in both trace formulas.
    const std::size_t d = rho.dim();
    const CMatrix delta = rho.matrix() - full_dephase(rho, obs).matrix();
    NonclassicalityReport r;
    r.per_pair = RMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double rc = 0.5 * std::abs(trace_product(delta, f_basis.projector(j)).real());
            const double ic =
                0.5 *
                std::abs(trace_product(delta, phase_rotated_projector(f_basis, j, obs, i)).real());
            r.real_part_sum += rc;
            r.imag_part_sum += ic;
            r.per_pair(i, j) = rc + ic;
        }
    }
    r.total = r.real_part_sum + r.imag_part_sum;
    return r;
}

double nonclassicality_from_tables(const KDTable& q, const RMatrix& wigner) {
    const std::size_t d = q.dim();
    if (wigner.rows() != d || wigner.cols() != d)
        throw ValidationError("nonclassicality_from_tables: table shapes differ");
    double total = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const cplx dq = q.entries(i, j) - wigner(i, j);
            total += std::abs(dq.real()) + std::abs(dq.imag());
        }
    }
    return total;
}

CMatrix delta_q(const KDTable& q0, const RMatrix& wigner) {
    const std::size_t d = q0.dim();
    if (wigner.rows() != d || wigner.cols() != d)
        throw ValidationError("delta_q: table shapes differ");
    CMatrix dq(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) dq(i, j) = q0.entries(i, j) - wigner(i, j);
    return dq;
}

std::vector<DecayPoint> decay_check(const DensityOperator& rho, const ObservableSpec& obs,
                                    const Basis& f_basis,
                                    std::span<const PointerConfig> cfg_grid) {
    const double n0 = nonclassicality(rho, obs, f_basis).total;
    std::vector<DecayPoint> out;
    out.reserve(cfg_grid.size());
    for (const PointerConfig& cfg : cfg_grid) {
        DecayPoint p;
        p.t = cfg.t;
        p.overlap = decoherence_factors(cfg, obs).pairwise(0, 1);
        p.n_t = nonclassicality(reduced_state(rho, obs, cfg), obs, f_basis).total;
        p.predicted = p.overlap * n0;
        p.residual = std::abs(p.n_t - p.predicted);
        out.push_back(p);
    }
    return out;
}

} // namespace kdq
