// dynamics.hpp — Gaussian-pointer measurement dynamics.
//
// A von Neumann coupling g·A⊗P displaces a Gaussian pointer of width σ by
// g·t·a_i alongside each eigenvalue a_i. Tracing the pointer out leaves the
// diagonal of ρ (in the a-basis) untouched and contracts each coherence by
// the closed-form wave-packet overlap
//
//     F_ik = exp(−[g·(a_i − a_k)·t]² / (8σ²)),
//
// which interpolates the measurement from weak (F = 1, complex KD table,
// weak values) to strong (F = 0, real Wigner table, ABL values). For a
// qubit there is a single overlap and the time-dependent KD table is exactly
// the convex mix F·Q + (1−F)·W; for d > 2 with unequal eigenvalue gaps the
// single-F mix is a model whose residual against the exact evolution is
// reported rather than hidden.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdq/kd.hpp"
#include "kdq/linalg.hpp"

namespace kdq {

struct PointerConfig {
    double sigma; // pointer position spread, > 0
    double g;     // coupling strength, > 0
    double t;     // interaction duration, >= 0

    PointerConfig(double sigma, double g, double t);
};

struct DecoherenceFactors {
    RMatrix pairwise; // F_ik: unit diagonal, symmetric, entries in (0,1]

    std::size_t dim() const { return pairwise.rows(); }
};

// exp(−[g(a_i−a_k)t]²/8σ²); 1 when a_i = a_k or t = 0, strictly decreasing
// in t otherwise.
double pointer_overlap(const PointerConfig& cfg, double a_i, double a_k);

// Time at which the overlap for this eigenvalue pair reaches 1/e:
// τ_D = 2√2·σ/(g·|a_i − a_k|). Infinity for a degenerate pair.
double decoherence_time(double sigma, double g, double a_i, double a_k);

// Inverts pointer_overlap in t for a given eigenvalue gap; requires
// 0 < overlap <= 1 and gap != 0.
double time_for_overlap(double sigma, double g, double gap, double overlap);

DecoherenceFactors decoherence_factors(const PointerConfig& cfg, const ObservableSpec& obs);

// Post-measurement reduced state: diagonal (a-basis) preserved, coherence
// (i,k) multiplied by F_ik. Positivity is preserved (Gaussian kernel is PSD).
DensityOperator reduced_state(const DensityOperator& rho, const ObservableSpec& obs,
                              const PointerConfig& cfg);

// KD table of the reduced state — the exact time-dependent table.
KDTable dynamical_kd_exact(const DensityOperator& rho, const ObservableSpec& obs,
                           const Basis& f_basis, const PointerConfig& cfg);

// Single-F model: entrywise F·Q0 + (1−F)·W. Exact for d = 2 with F = F_01.
KDTable dynamical_kd_interp(const KDTable& q0, const RMatrix& wigner, double overlap);

// A_T = Σ_i a_i Qt_ij / Σ_i Qt_ij. Equals the weak value at F = 1 and the
// conditional (ABL) value at F = 0.
cplx general_value_AT(const KDTable& qt, const ObservableSpec& obs, std::size_t j);

struct TransitionPoint {
    std::size_t index = 0;
    double overlap = 1.0;             // scalar F; min off-diagonal F_ik in t-mode
    std::optional<double> t;          // grid time; absent in F-mode
    std::optional<KDTable> table;
    std::optional<cplx> value;        // A_T; absent when the point errored
    double nonclassicality = 0;
    double max_interp_residual = 0;   // |exact − single-F mix|, 0 in F-mode
    std::optional<std::string> error; // per-point failure, sweep continues
};

// F-mode sweep over explicit overlap values in [0,1].
std::vector<TransitionPoint> transition_sweep(const DensityOperator& rho,
                                              const ObservableSpec& obs, const Basis& f_basis,
                                              std::size_t j, std::span<const double> overlap_grid);

// t-mode sweep: exact pairwise evolution at each time, with the residual of
// the single-F model reported per point.
std::vector<TransitionPoint> transition_sweep(const DensityOperator& rho,
                                              const ObservableSpec& obs, const Basis& f_basis,
                                              std::size_t j, double sigma, double g,
                                              std::span<const double> t_grid);

} // namespace kdq
