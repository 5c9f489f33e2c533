// nonclassicality.hpp — summed magnitude of the KD quantum corrections and
// its decay under pointer decoherence.
//
// The measure is N[ρ] = Σ_ij (|rc_ij| + |ic_ij|): zero exactly when the KD
// table is real and coincides with the Wigner table, positive whenever the
// state carries coherence in the a-basis that the f-basis can see. Pointer
// decoherence contracts each coherence pair by F_ik, so every correction
// term scales pairwise; for a qubit there is a single factor and the decay
// is exactly linear, N[ρ(t)] = F·N[ρ(0)].

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdq/dynamics.hpp"
#include "kdq/kd.hpp"
#include "kdq/linalg.hpp"

namespace kdq {

// Which non-selective dephasing enters the trace formulas. The binary form
// (i-dependent) makes the measure equal the summed Johansen correction
// magnitudes at every d; the full form coincides with it only at d = 2.
enum class Dephasing { binary, full };

struct NonclassicalityReport {
    double total = 0;         // real_part_sum + imag_part_sum
    double real_part_sum = 0; // Σ_ij |rc_ij|
    double imag_part_sum = 0; // Σ_ij |ic_ij|
    RMatrix per_pair;         // |rc_ij| + |ic_ij| per (i, j)
};

NonclassicalityReport nonclassicality(const JohansenParts& parts);
NonclassicalityReport nonclassicality(const DensityOperator& rho, const ObservableSpec& obs,
                                      const Basis& f_basis,
                                      Dephasing dephasing = Dephasing::binary);

// Table-level form Σ_ij |Re(Q−W)| + |Im(Q−W)|; lets interpolated tables that
// correspond to no state be measured too.
double nonclassicality_from_tables(const KDTable& q, const RMatrix& wigner);

// Non-classical part ΔQ = Q0 − W. Its row sums vanish (Q0 and W share row
// marginals), and the single-F model is exactly W + F·ΔQ.
CMatrix delta_q(const KDTable& q0, const RMatrix& wigner);

struct DecayPoint {
    double t = 0;
    double overlap = 1;   // F_01 of the grid point
    double n_t = 0;       // N[ρ(t)]
    double predicted = 0; // F_01 · N[ρ(0)]
    double residual = 0;  // |n_t − predicted|; 0 at d = 2, reported at d > 2
};

std::vector<DecayPoint> decay_check(const DensityOperator& rho, const ObservableSpec& obs,
                                    const Basis& f_basis,
                                    std::span<const PointerConfig> cfg_grid);

} // namespace kdq
