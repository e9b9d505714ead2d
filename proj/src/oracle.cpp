#include "spinnet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "spinnet/errors.hpp"
#include "spinnet/measures.hpp"

namespace spinnet {

void FullHamiltonian::apply(const FullState& x, FullState& y) const {
    const std::size_t dim = std::size_t{1} << sites;
    y.assign(dim, Complex{0.0, 0.0});
    for (std::size_t b = 0; b < dim; ++b) {
        if (x[b] == Complex{0.0, 0.0}) continue;
        double diag = 0.0;
        for (int i = 0; i < sites; ++i)
            if (b >> i & 1) diag += energies[static_cast<std::size_t>(i)];
        if (diag != 0.0) y[b] += diag * x[b];
        for (const auto& [i, j, w] : edges) {
            const bool bi = b >> i & 1;
            const bool bj = b >> j & 1;
            if (bi == bj) continue;
            const std::size_t target = b ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
            y[target] += w * x[b];
        }
    }
}

double FullHamiltonian::element(std::uint32_t row, std::uint32_t col) const {
    if (row == col) {
        double diag = 0.0;
        for (int i = 0; i < sites; ++i)
            if (row >> i & 1) diag += energies[static_cast<std::size_t>(i)];
        return diag;
    }
    if (std::popcount(row) != std::popcount(col)) return 0.0;
    const std::uint32_t diff = row ^ col;
    if (std::popcount(diff) != 2) return 0.0;
    for (const auto& [i, j, w] : edges) {
        const std::uint32_t mask =
            (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
        if (diff == mask) return w;
    }
    return 0.0;
}

double FullHamiltonian::norm_bound() const {
    double sum = 0.0;
    for (const auto& [i, j, w] : edges) sum += std::abs(w);
    for (double e : energies) sum += std::abs(e);
    return sum;
}

FullHamiltonian full_hamiltonian(const SpinNetwork& network) {
    if (network.sites() > kMaxOracleSites)
        throw BudgetError("brute-force engine supports at most " +
                          std::to_string(kMaxOracleSites) + " sites, got " +
                          std::to_string(network.sites()));
    FullHamiltonian h;
    h.sites = network.sites();
    h.energies = network.energies();
    for (const auto& [key, w] : network.couplings())
        h.edges.emplace_back(key.first, key.second, w);
    return h;
}

FullState full_site_state(int sites, int site) {
    if (sites < 1 || sites > kMaxOracleSites)
        throw BudgetError("brute-force engine supports 1.." +
                          std::to_string(kMaxOracleSites) + " sites");
    if (site < 0 || site >= sites)
        throw InvalidArgumentError("full_site_state: site out of range");
    FullState x(std::size_t{1} << sites, Complex{0.0, 0.0});
    x[std::size_t{1} << site] = Complex{1.0, 0.0};
    return x;
}

FullState full_evolve(const FullHamiltonian& h, const FullState& state, double t) {
    const std::size_t dim = std::size_t{1} << h.sites;
    if (state.size() != dim)
        throw InvalidArgumentError("full_evolve: state dimension mismatch");
    if (t == 0.0) return state;
    const double bound = h.norm_bound();
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * bound / 0.5)));
    const Complex step_factor = Complex{0.0, -1.0} * (t / steps);

    FullState x = state;
    FullState term(dim), scratch(dim);
    for (int s = 0; s < steps; ++s) {
        FullState acc = x;
        term = x;
        double term_norm = 1.0;
        for (int k = 1; k <= 60 && term_norm > 1e-17; ++k) {
            h.apply(term, scratch);
            const Complex factor = step_factor / static_cast<double>(k);
            term_norm = 0.0;
            for (std::size_t b = 0; b < dim; ++b) {
                term[b] = scratch[b] * factor;
                acc[b] += term[b];
                term_norm += std::norm(term[b]);
            }
            term_norm = std::sqrt(term_norm);
        }
        if (term_norm > 1e-17)
            throw NumericalError("full_evolve: series failed to converge", term_norm);
        x = std::move(acc);
    }
    return x;
}

FullState full_apply_phase_flip(FullState state, int site) {
    const std::size_t dim = state.size();
    int sites = 0;
    while ((std::size_t{1} << sites) < dim) ++sites;
    if (site < 0 || site >= sites)
        throw InvalidArgumentError("full_apply_phase_flip: site out of range");
    for (std::size_t b = 0; b < dim; ++b)
        if (b >> site & 1) state[b] = -state[b];
    return state;
}

ComplexMatrix full_partial_trace(const FullState& state, const std::vector<int>& keep) {
    if (keep.empty() || keep.size() > 4)
        throw BudgetError("partial trace keeps between one and four sites");
    int sites = 0;
    while ((std::size_t{1} << sites) < state.size()) ++sites;
    if (state.size() != (std::size_t{1} << sites))
        throw InvalidArgumentError("full_partial_trace: state length is not a power of two");
    std::set<int> kept(keep.begin(), keep.end());
    if (kept.size() != keep.size())
        throw InvalidArgumentError("full_partial_trace: repeated site in keep list");
    for (int s : keep)
        if (s < 0 || s >= sites)
            throw InvalidArgumentError("full_partial_trace: site out of range");

    std::vector<int> env;
    for (int s = 0; s < sites; ++s)
        if (!kept.count(s)) env.push_back(s);

    const int nk = static_cast<int>(keep.size());
    const std::size_t dim_k = std::size_t{1} << nk;
    const std::size_t dim_e = std::size_t{1} << env.size();

    // full-space index for a kept pattern; keep[0] is the reduced msb.
    const auto spread = [&](std::size_t pattern) {
        std::size_t full = 0;
        for (int j = 0; j < nk; ++j)
            if (pattern >> (nk - 1 - j) & 1)
                full |= std::size_t{1} << keep[static_cast<std::size_t>(j)];
        return full;
    };
    std::vector<std::size_t> kept_bits(dim_k);
    for (std::size_t a = 0; a < dim_k; ++a) kept_bits[a] = spread(a);

    ComplexMatrix rho(dim_k, dim_k);
    for (std::size_t e = 0; e < dim_e; ++e) {
        std::size_t base = 0;
        for (std::size_t j = 0; j < env.size(); ++j)
            if (e >> j & 1) base |= std::size_t{1} << env[j];
        for (std::size_t a = 0; a < dim_k; ++a) {
            const Complex xa = state[base | kept_bits[a]];
            if (xa == Complex{0.0, 0.0}) continue;
            for (std::size_t b = 0; b < dim_k; ++b)
                rho(a, b) += xa * std::conj(state[base | kept_bits[b]]);
        }
    }
    return rho;
}

double sector_leakage(const FullState& state, int excitations) {
    double worst = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b)
        if (std::popcount(b) != excitations)
            worst = std::max(worst, std::abs(state[b]));
    return worst;
}

double excitation_expectation(const FullState& state) {
    double acc = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b)
        acc += std::popcount(b) * std::norm(state[b]);
    return acc;
}

ExcitationState restrict_single_excitation(const FullState& state) {
    int sites = 0;
    while ((std::size_t{1} << sites) < state.size()) ++sites;
    ExcitationState c(static_cast<std::size_t>(sites));
    for (int k = 0; k < sites; ++k)
        c[static_cast<std::size_t>(k)] = state[std::size_t{1} << k];
    return c;
}

FullState embed_single_excitation(const ExcitationState& state) {
    const int sites = static_cast<int>(state.size());
    if (sites < 1 || sites > kMaxOracleSites)
        throw BudgetError("brute-force engine supports 1.." +
                          std::to_string(kMaxOracleSites) + " sites");
    FullState x(std::size_t{1} << sites, Complex{0.0, 0.0});
    for (int k = 0; k < sites; ++k)
        x[std::size_t{1} << k] = state[static_cast<std::size_t>(k)];
    return x;
}

OracleReport oracle_compare(const SpinNetwork& network, const ExcitationState& init,
                            const std::vector<FlipEvent>& events,
                            const std::vector<double>& sample_times,
                            std::pair<int, int> density_pair) {
    const FullHamiltonian h = full_hamiltonian(network);
    const Trajectory traj = run_schedule(network, init, events, sample_times);
    const double alpha = network.alpha();

    std::vector<FlipEvent> sorted = traj.events;
    FullState full = embed_single_excitation(init);
    double full_t = 0.0;
    std::size_t next_event = 0;

    OracleReport report;
    for (std::size_t s = 0; s < sample_times.size(); ++s) {
        const double t = sample_times[s];
        while (next_event < sorted.size() && sorted[next_event].time <= t) {
            full = full_evolve(h, full, alpha * (sorted[next_event].time - full_t));
            full_t = sorted[next_event].time;
            full = full_apply_phase_flip(std::move(full), sorted[next_event].site);
            ++next_event;
        }
        full = full_evolve(h, full, alpha * (t - full_t));
        full_t = t;

        const ExcitationState& fast = traj.states[s];
        const ExcitationState slow = restrict_single_excitation(full);
        for (std::size_t k = 0; k < fast.size(); ++k)
            report.max_amplitude_deviation =
                std::max(report.max_amplitude_deviation, std::abs(fast[k] - slow[k]));
        report.max_leakage = std::max(report.max_leakage, sector_leakage(full, 1));

        const ComplexMatrix full_rho =
            full_partial_trace(full, {density_pair.first, density_pair.second});
        const ComplexMatrix fast_rho =
            reduced_two_qubit_rho(fast, density_pair.first, density_pair.second);
        report.max_density_deviation =
            std::max(report.max_density_deviation, max_abs_diff(full_rho, fast_rho));
    }
    return report;
}

}  // namespace spinnet
