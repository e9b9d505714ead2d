#pragma once

#include <utility>
#include <vector>

#include "spinnet/evolve.hpp"
#include "spinnet/lattice.hpp"
#include "spinnet/linalg.hpp"

namespace spinnet {

enum class TargetKind { plus, minus, psi_s, psi_a, site, custom };

// A pure state with support on a few named sites, normalized on its support.
struct TargetState {
    TargetKind kind = TargetKind::custom;
    std::vector<int> support;
    std::vector<Complex> amplitudes;
};

TargetState target_site(int site);
// Symmetric/antisymmetric superposition over the two output-tagged sites,
// ascending site order; minus carries the sign on the higher site.
TargetState target_plus(const SpinNetwork& network);
TargetState target_minus(const SpinNetwork& network);
// Equal-weight superpositions over the four branch-end sites. psi_a carries
// a minus sign on the lower-indexed member of each branch pair and is a
// zero-energy eigenstate of the bifurcated networks.
TargetState target_psi_s(const SpinNetwork& network);
TargetState target_psi_a(const SpinNetwork& network);
TargetState target_custom(std::vector<int> support, std::vector<Complex> amplitudes);

// Dense amplitude vector for a target on an n-site network.
ExcitationState target_to_state(const TargetState& target, int sites);

std::vector<double> site_probabilities(const ExcitationState& state);

// |<target|state>|^2; insensitive to global phase.
double fidelity(const ExcitationState& state, const TargetState& target);

// 4x4 density matrix in the basis |00>,|01>,|10>,|11> of the ordered site
// pair (a carries the first slot).
using TwoQubitDensity = ComplexMatrix;

// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-12.
void validate_two_qubit_density(const TwoQubitDensity& rho);

TwoQubitDensity reduced_two_qubit_rho(const ExcitationState& state, int a, int b);

double concurrence(const TwoQubitDensity& rho);
double binary_entropy(double x);  // endpoints are 0 by continuity
double entanglement_of_formation(const TwoQubitDensity& rho);

// Each pair encodes one logical qubit: |0L> = |00>, |1L> = (|01>-|10>)/sqrt(2),
// with the pair's lower-indexed site in the first slot.
struct LogicalPairing {
    std::pair<int, int> pair1;
    std::pair<int, int> pair2;
};

LogicalPairing branch_end_pairing(const SpinNetwork& network);

struct LogicalState {
    TwoQubitDensity rho;  // renormalized projection onto the logical subspace
    double weight;        // Tr(P rho P) before renormalization
};

// Reduces the state to the four pair sites, projects onto the logical
// subspace, and renormalizes. weight <= 1e-15 falls back to |0L 0L>.
LogicalState logical_two_qubit_rho(const ExcitationState& state,
                                   const LogicalPairing& pairing);

struct FrozenEf {
    double ef;
    double weight;  // population of the stationary one-per-pair block
};

// E_F of the stationary component alone: the {|0L 1L>, |1L 0L>} block of the
// unnormalized logical projection, renormalized. That block is untouched by
// further evolution, so the readout time is immaterial once all flips are
// applied.
FrozenEf frozen_logical_ef(const ExcitationState& state, const LogicalPairing& pairing);

}  // namespace spinnet
