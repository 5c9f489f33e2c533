// values.hpp — the three canonical values of an observable, all read off a
// KD table: unconditioned expectation, conditional (ABL) value under strong
// intermediate measurement, and the complex weak value.
//
//     <A>    = Σ_i a_i p(a_i|ρ)                    (no postselection)
//     A_c(j) = Σ_i a_i W_ij / Σ_i W_ij             (strong, spectrum-confined)
//     A_w(j) = Σ_i a_i Q_ij / Σ_i Q_ij             (weak, possibly anomalous)
//
// The weak value's real part splits into a Wigner ratio plus a real
// correction ratio, and its imaginary part is carried entirely by the
// imaginary Johansen correction. Every operation has a from-scratch overload
// and a precomputed-table overload; the former delegates to the latter so
// both paths produce bit-identical results.

#pragma once

#include <cstddef>
#include <span>

#include "kdq/kd.hpp"
#include "kdq/linalg.hpp"

namespace kdq {

struct WeakValueResult {
    cplx value;                 // numerator / denominator
    cplx numerator;             // Σ_i a_i Q_ij
    double denominator = 0;     // p(f_j|ρ) = Re Σ_i Q_ij
    double wigner_part = 0;     // Σ_i a_i W_ij   (Wigner share of the numerator)
    cplx correction_part;       // Σ_i a_i (rc_ij + i·ic_ij)
};

struct DenominatorComparison {
    double strong_prob = 0; // Tr(ρ' Π_fj) with ρ' the full dephasing
    double weak_prob = 0;   // Tr(ρ Π_fj)
    double gap = 0;         // weak_prob − strong_prob
};

double expectation(const DensityOperator& rho, const ObservableSpec& obs);
// Eq-level identity route: Σ_ij a_i W_ij.
double expectation(const RMatrix& wigner, std::span<const double> eigenvalues);

double conditional_value(const DensityOperator& rho, const ObservableSpec& obs,
                         const Basis& f_basis, std::size_t j);
double conditional_value(const RMatrix& wigner, std::span<const double> eigenvalues,
                         std::size_t j);

WeakValueResult weak_value(const DensityOperator& rho, const ObservableSpec& obs,
                           const Basis& f_basis, std::size_t j);
WeakValueResult weak_value(const KDTable& table, const JohansenParts& parts,
                           std::span<const double> eigenvalues, std::size_t j);

// Postselection probability under the dephased state vs the original state;
// the gap is exactly the summed real correction of column j.
DenominatorComparison denominator_compare(const DensityOperator& rho, const ObservableSpec& obs,
                                          const Basis& f_basis, std::size_t j);

} // namespace kdq
