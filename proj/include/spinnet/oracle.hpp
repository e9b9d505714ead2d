#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "spinnet/evolve.hpp"
#include "spinnet/lattice.hpp"
#include "spinnet/linalg.hpp"

namespace spinnet {

// Hard cap on brute-force network size; beyond it the dense state no longer
// fits a sensible memory/time budget.
inline constexpr int kMaxOracleSites = 14;

// Amplitudes over all 2^N computational basis strings; bit i set means the
// excitation (down spin) sits on site i, so |site k> is index 1 << k.
using FullState = std::vector<Complex>;

// Sparse action of the full network Hamiltonian: hopping matrix elements on
// every edge within each excitation sector, on-site energies on the diagonal.
// Deliberately shares no code with the subspace engine beyond SpinNetwork.
struct FullHamiltonian {
    int sites = 0;
    std::vector<std::tuple<int, int, double>> edges;
    std::vector<double> energies;

    void apply(const FullState& x, FullState& y) const;  // y = H x
    double element(std::uint32_t row, std::uint32_t col) const;
    double norm_bound() const;  // max absolute row sum
};

FullHamiltonian full_hamiltonian(const SpinNetwork& network);  // BudgetError if too large

FullState full_site_state(int sites, int site);

// Scaled Taylor series for exp(-iHt)x, step size capped so each partial sum
// converges in a handful of terms. Same time units as evolve_state.
FullState full_evolve(const FullHamiltonian& h, const FullState& state, double t);

FullState full_apply_phase_flip(FullState state, int site);

// Exact partial trace onto the kept sites, at most four of them. Basis index
// of the reduced matrix uses keep[0] as the most significant bit.
ComplexMatrix full_partial_trace(const FullState& state, const std::vector<int>& keep);

// Largest |amplitude| outside the given excitation-number sector.
double sector_leakage(const FullState& state, int excitations);

// Expectation of the total excitation number.
double excitation_expectation(const FullState& state);

ExcitationState restrict_single_excitation(const FullState& state);
FullState embed_single_excitation(const ExcitationState& state);

// Runs the same schedule through both engines and reports the worst
// deviations over the sample grid.
struct OracleReport {
    double max_amplitude_deviation = 0.0;
    double max_density_deviation = 0.0;
    double max_leakage = 0.0;
};

OracleReport oracle_compare(const SpinNetwork& network, const ExcitationState& init,
                            const std::vector<FlipEvent>& events,
                            const std::vector<double>& sample_times,
                            std::pair<int, int> density_pair);

}  // namespace spinnet
