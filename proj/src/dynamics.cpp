// dynamics.cpp — pointer overlaps, reduced states, transition sweeps.

#include "kdq/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kdq/nonclassicality.hpp"

namespace kdq {

PointerConfig::PointerConfig(double sigma_, double g_, double t_) : sigma(sigma_), g(g_), t(t_) {
    if (!std::isfinite(sigma) || !(sigma > 0))
        throw ValidationError("pointer: sigma must be finite and > 0");
    if (!std::isfinite(g) || !(g > 0)) throw ValidationError("pointer: g must be finite and > 0");
    if (!std::isfinite(t) || t < 0) throw ValidationError("pointer: t must be finite and >= 0");
}

double pointer_overlap(const PointerConfig& cfg, double a_i, double a_k) {
    const double dx = cfg.g * (a_i - a_k) * cfg.t;
    return std::exp(-dx * dx / (8.0 * cfg.sigma * cfg.sigma));
}

double decoherence_time(double sigma, double g, double a_i, double a_k) {
    const double gap = std::abs(a_i - a_k);
    if (gap == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::sqrt(2.0) * sigma / (g * gap);
}

double time_for_overlap(double sigma, double g, double gap, double overlap) {
    if (!(overlap > 0.0) || overlap > 1.0)
        throw ValidationError("time_for_overlap: overlap must be in (0, 1]");
    if (gap == 0.0) throw ValidationError("time_for_overlap: eigenvalue gap must be nonzero");
    return std::sqrt(-8.0 * sigma * sigma * std::log(overlap)) / (g * std::abs(gap));
}

DecoherenceFactors decoherence_factors(const PointerConfig& cfg, const ObservableSpec& obs) {
    const std::size_t d = obs.dim();
    RMatrix f(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        f(i, i) = 1.0;
        for (std::size_t k = i + 1; k < d; ++k) {
            const double v = pointer_overlap(cfg, obs.eigenvalue(i), obs.eigenvalue(k));
            f(i, k) = v;
            f(k, i) = v;
        }
    }
    return DecoherenceFactors{std::move(f)};
}

DensityOperator reduced_state(const DensityOperator& rho, const ObservableSpec& obs,
                              const PointerConfig& cfg) {
    if (rho.dim() != obs.dim()) throw ValidationError("reduced_state: dimension mismatch");
    const DecoherenceFactors f = decoherence_factors(cfg, obs);
    CMatrix in_a = to_basis(rho.matrix(), obs.basis());
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t k = 0; k < rho.dim(); ++k) in_a(i, k) *= f.pairwise(i, k);
    return DensityOperator(from_basis(in_a, obs.basis()));
}

KDTable dynamical_kd_exact(const DensityOperator& rho, const ObservableSpec& obs,
                           const Basis& f_basis, const PointerConfig& cfg) {
    return kd_table(reduced_state(rho, obs, cfg), obs, f_basis);
}

KDTable dynamical_kd_interp(const KDTable& q0, const RMatrix& wigner, double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        std::ostringstream os;
        os << "dynamical_kd_interp: overlap " << overlap << " outside [0, 1]";
        throw ValidationError(os.str());
    }
    const std::size_t d = q0.dim();
    if (wigner.rows() != d || wigner.cols() != d)
        throw ValidationError("dynamical_kd_interp: table shapes differ");
    CMatrix q(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            q(i, j) = overlap * q0.entries(i, j) + (1.0 - overlap) * wigner(i, j);
    return KDTable{std::move(q), q0.a_basis, q0.f_basis};
}

cplx general_value_AT(const KDTable& qt, const ObservableSpec& obs, std::size_t j) {
    const std::size_t d = qt.dim();
    if (obs.dim() != d) throw ValidationError("general_value_AT: dimension mismatch");
    if (j >= d) throw ValidationError("general_value_AT: postselection index out of range");
    cplx den = 0, num = 0;
    for (std::size_t i = 0; i < d; ++i) {
        den += qt.entries(i, j);
        num += obs.eigenvalue(i) * qt.entries(i, j);
    }
    if (std::abs(den) <= 1e-12) {
        std::ostringstream os;
        os << "general_value_AT: impossible postselection, |column " << j
           << " sum| = " << std::abs(den) << " <= 1e-12";
        throw PhysicalError(os.str());
    }
    return num / den;
}

namespace {

double min_offdiagonal_overlap(const DecoherenceFactors& f) {
    double m = 1.0;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t k = 0; k < f.dim(); ++k)
            if (i != k) m = std::min(m, f.pairwise(i, k));
    return m;
}

} // namespace

std::vector<TransitionPoint> transition_sweep(const DensityOperator& rho,
                                              const ObservableSpec& obs, const Basis& f_basis,
                                              std::size_t j,
                                              std::span<const double> overlap_grid) {
    const KDTable q0 = kd_table(rho, obs, f_basis);
    const RMatrix w = wigner_table(rho, obs, f_basis);

    std::vector<TransitionPoint> points;
    points.reserve(overlap_grid.size());
    for (std::size_t k = 0; k < overlap_grid.size(); ++k) {
        TransitionPoint pt;
        pt.index = k;
        pt.overlap = overlap_grid[k];
        try {
            KDTable qt = dynamical_kd_interp(q0, w, overlap_grid[k]);
            pt.nonclassicality = nonclassicality_from_tables(qt, w);
            pt.value = general_value_AT(qt, obs, j);
            pt.table = std::move(qt);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "grid[" << k << "]: " << e.what();
            pt.error = os.str();
        }
        points.push_back(std::move(pt));
    }
    return points;
}

std::vector<TransitionPoint> transition_sweep(const DensityOperator& rho,
                                              const ObservableSpec& obs, const Basis& f_basis,
                                              std::size_t j, double sigma, double g,
                                              std::span<const double> t_grid) {
    const KDTable q0 = kd_table(rho, obs, f_basis);
    const RMatrix w = wigner_table(rho, obs, f_basis);

    std::vector<TransitionPoint> points;
    points.reserve(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        TransitionPoint pt;
        pt.index = k;
        pt.t = t_grid[k];
        try {
            const PointerConfig cfg(sigma, g, t_grid[k]);
            const DecoherenceFactors f = decoherence_factors(cfg, obs);
            pt.overlap = min_offdiagonal_overlap(f);
            const DensityOperator rho_t = reduced_state(rho, obs, cfg);
            KDTable qt = kd_table(rho_t, obs, f_basis);
            pt.nonclassicality = nonclassicality(rho_t, obs, f_basis).total;
            pt.max_interp_residual =
                max_abs_diff(qt.entries, dynamical_kd_interp(q0, w, pt.overlap).entries);
            pt.value = general_value_AT(qt, obs, j);
            pt.table = std::move(qt);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "grid[" << k << "]: " << e.what();
            pt.error = os.str();
        }
        points.push_back(std::move(pt));
    }
    return points;
}

} // namespace kdq
