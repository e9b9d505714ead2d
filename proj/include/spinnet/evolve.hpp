#pragma once

#include <string>
#include <vector>

#include "spinnet/lattice.hpp"
#include "spinnet/linalg.hpp"

namespace spinnet {

// Amplitudes c_i over sites; |site k> is the unit vector at index k.
using ExcitationState = std::vector<Complex>;

// Real symmetric, entries in units of alpha: couplings off-diagonal,
// on-site energies on the diagonal.
using HamiltonianMatrix = RealMatrix;

// Eigenvalues ascending, orthonormal eigenvector columns.
using Spectrum = Eigensystem;

struct FlipEvent {
    int site = 0;
    double time = 0.0;  // units of 1/alpha, >= 0
};

struct Trajectory {
    std::vector<double> sample_times;  // as requested, units of 1/alpha
    std::vector<ExcitationState> states;
    std::vector<FlipEvent> events;  // the applied schedule, sorted
};

HamiltonianMatrix single_excitation_hamiltonian(const SpinNetwork& network);

// Residual and orthonormality are checked to 1e-10; violations raise
// NumericalError carrying the offending residual.
Spectrum diagonalize(const HamiltonianMatrix& h);

ExcitationState site_state(int dim, int site);
double state_norm(const ExcitationState& state);

// c(t) = V exp(-i diag(lambda) t) V^T c(0). t is in the same units as the
// spectrum (rescaled time when the spectrum is in units of alpha); negative
// t evolves backwards.
ExcitationState evolve_state(const Spectrum& spectrum, const ExcitationState& state,
                             double t);

// Negates c_site: the single-site phase flip restricted to this sector.
ExcitationState apply_phase_flip(ExcitationState state, int site);

double energy_expectation(const HamiltonianMatrix& h, const ExcitationState& state);

// Piecewise-exact execution: evolve to each flip time, apply the flip,
// continue. Each sample is computed in one step from the most recent
// post-flip state, never by accumulating sample-to-sample. A sample landing
// exactly on an event time records the post-flip state. Events are sorted by
// (time, site); equal-time flips are applied in site order. All times are in
// units of 1/alpha; the network's alpha converts them internally.
Trajectory run_schedule(const SpinNetwork& network, const ExcitationState& init,
                        std::vector<FlipEvent> events, std::vector<double> sample_times);
Trajectory run_schedule(const SpinNetwork& network, int init_site,
                        std::vector<FlipEvent> events, std::vector<double> sample_times);

// One row per eigenpair: eigenvalue, then the eigenvector components.
std::string spectrum_to_csv(const Spectrum& spectrum);

}  // namespace spinnet
