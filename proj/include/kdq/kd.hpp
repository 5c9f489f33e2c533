// kd.hpp — Kirkwood–Dirac quasiprobability tables and their Johansen split.
//
// The central object is the d×d complex table
//
//     Q_ij = <a_i|ρ|f_j><f_j|a_i>,
//
// indexed by the eigenbasis {|a_i>} of the measured observable (rows) and a
// second basis {|f_j>} (columns). Row sums are the Born probabilities
// p(a_i|ρ), column sums are p(f_j|ρ), and when no pair of basis vectors is
// orthogonal the table determines ρ completely.
//
// The Johansen split separates each entry into a classical two-measurement
// joint probability (the Wigner term) plus a real and an imaginary
// measurement-disturbance correction:
//
//     Q_ij = W_ij + rc_ij + i·ic_ij,
//     W_ij  = Tr(ρ Π_ai Π_fj Π_ai),
//     rc_ij =  ½ Tr((ρ − ρ'_i) Π_fj),
//     ic_ij = −½ Tr((ρ − ρ'_i) Π_fj^{π/2}),
//
// where ρ'_i is the binary non-selective dephasing {Π_ai, 1−Π_ai} and
// Π_fj^{π/2} is Π_fj conjugated by the selective phase rotation
// R_i = I + (e^{iπ/2}−1)Π_ai. Both corrections vanish iff ρ commutes with
// Π_ai or Π_ai commutes with Π_fj.

#pragma once

#include <cstddef>
#include <vector>

#include "kdq/linalg.hpp"

namespace kdq {

struct KDTable {
    CMatrix entries; // rows: a-index i, cols: f-index j
    Basis a_basis;
    Basis f_basis;

    std::size_t dim() const { return entries.rows(); }
};

struct Marginals {
    std::vector<double> row_sums; // Re Σ_j Q_ij
    std::vector<double> col_sums; // Re Σ_i Q_ij
    double total = 0;             // Re Σ_ij Q_ij
    double max_imag_residual = 0; // largest |Im| over all row/column sums
};

struct JohansenParts {
    RMatrix wigner;    // Tr(ρ Π_ai Π_fj Π_ai), entries in [0,1]
    RMatrix real_corr; //  ½ Tr((ρ − ρ'_i) Π_fj)
    RMatrix imag_corr; // −½ Tr((ρ − ρ'_i) Π_fj^{π/2})
};

KDTable kd_table(const DensityOperator& rho, const ObservableSpec& obs, const Basis& f_basis);

// Row/column sums with their imaginary residues. Throws NumericalError when
// a residue exceeds 1e-8 (corrupt table); smaller residues are reported.
Marginals kd_marginals(const KDTable& table);

// True when all imaginary residues and |total − 1| are within tol.
bool marginals_consistent(const Marginals& m, double tol = 1e-10);

// Inverts the table: ρ = Σ_ij Q_ij |a_i><f_j| / <f_j|a_i>. Requires every
// |<f_j|a_i>| > 1e-8; the error names the first offending pair.
DensityOperator reconstruct_state(const KDTable& table);

// Non-selective binary measurement {Π_ai, 1−Π_ai}: kills coherences between
// |a_i> and its complement, keeps everything else.
DensityOperator binary_dephase(const DensityOperator& rho, const ObservableSpec& obs, std::size_t i);

// Diagonal part of ρ in the a-basis (Σ_i Π_ai ρ Π_ai). Coincides with
// binary_dephase only at d = 2.
DensityOperator full_dephase(const DensityOperator& rho, const ObservableSpec& obs);

// Π_fj conjugated by the selective phase rotation R_i = I + (e^{iπ/2}−1)Π_ai,
// applied in the Heisenberg picture (rotate the state, measure Π_fj):
// returns R_i† Π_fj R_i. Hermitian, idempotent, trace one.
CMatrix phase_rotated_projector(const Basis& f_basis, std::size_t j,
                                const ObservableSpec& obs, std::size_t i);

JohansenParts johansen_decompose(const DensityOperator& rho, const ObservableSpec& obs,
                                 const Basis& f_basis);

// Two-measurement joint probability p(a_i|ρ)·p(f_j|a_i), computed from the
// product form so rows with p(a_i|ρ) = 0 are identically zero.
RMatrix wigner_table(const DensityOperator& rho, const ObservableSpec& obs, const Basis& f_basis);

} // namespace kdq
