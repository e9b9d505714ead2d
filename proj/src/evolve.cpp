#include "spinnet/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spinnet/errors.hpp"

namespace spinnet {

HamiltonianMatrix single_excitation_hamiltonian(const SpinNetwork& network) {
    const std::size_t n = static_cast<std::size_t>(network.sites());
    HamiltonianMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        h(i, i) = network.energies()[i];
    for (const auto& [key, j] : network.couplings()) {
        h(static_cast<std::size_t>(key.first), static_cast<std::size_t>(key.second)) = j;
        h(static_cast<std::size_t>(key.second), static_cast<std::size_t>(key.first)) = j;
    }
    return h;
}

Spectrum diagonalize(const HamiltonianMatrix& h) {
    Spectrum s = jacobi_eigensystem(h);
    const std::size_t n = h.rows();
    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double hv = 0.0;
            for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * s.vectors(j, k);
            residual = std::max(residual, std::abs(hv - s.values[k] * s.vectors(i, k)));
        }
    }
    if (residual > 1e-10)
        throw NumericalError("diagonalize: eigenpair residual out of contract", residual);
    double ortho = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += s.vectors(i, a) * s.vectors(i, b);
            ortho = std::max(ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    if (ortho > 1e-10)
        throw NumericalError("diagonalize: eigenvectors are not orthonormal", ortho);
    return s;
}

ExcitationState site_state(int dim, int site) {
    if (site < 0 || site >= dim) throw InvalidArgumentError("site_state: site out of range");
    ExcitationState c(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
    c[static_cast<std::size_t>(site)] = Complex{1.0, 0.0};
    return c;
}

double state_norm(const ExcitationState& state) {
    double s = 0.0;
    for (const Complex& c : state) s += std::norm(c);
    return std::sqrt(s);
}

ExcitationState evolve_state(const Spectrum& spectrum, const ExcitationState& state,
                             double t) {
    const std::size_t n = spectrum.values.size();
    if (state.size() != n)
        throw InvalidArgumentError("evolve_state: state dimension does not match the spectrum");
    std::vector<Complex> y(n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        Complex dot{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) dot += spectrum.vectors(i, k) * state[i];
        y[k] = dot * std::polar(1.0, -spectrum.values[k] * t);
    }
    ExcitationState out(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) acc += spectrum.vectors(i, k) * y[k];
        out[i] = acc;
    }
    return out;
}

ExcitationState apply_phase_flip(ExcitationState state, int site) {
    if (site < 0 || static_cast<std::size_t>(site) >= state.size())
        throw InvalidArgumentError("apply_phase_flip: site out of range");
    state[static_cast<std::size_t>(site)] = -state[static_cast<std::size_t>(site)];
    return state;
}

double energy_expectation(const HamiltonianMatrix& h, const ExcitationState& state) {
    const std::size_t n = h.rows();
    if (state.size() != n)
        throw InvalidArgumentError("energy_expectation: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        Complex row{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) row += h(i, j) * state[j];
        acc += std::conj(state[i]) * row;
    }
    return acc.real();
}

Trajectory run_schedule(const SpinNetwork& network, const ExcitationState& init,
                        std::vector<FlipEvent> events, std::vector<double> sample_times) {
    const std::size_t n = static_cast<std::size_t>(network.sites());
    if (init.size() != n)
        throw InvalidArgumentError("run_schedule: init dimension does not match the network");
    if (std::abs(state_norm(init) - 1.0) > 1e-12)
        throw InvalidArgumentError("run_schedule: init state is not normalized");
    for (const FlipEvent& e : events) {
        if (e.site < 0 || static_cast<std::size_t>(e.site) >= n)
            throw InvalidArgumentError("run_schedule: event site out of range");
        if (!(e.time >= 0.0) || !std::isfinite(e.time))
            throw InvalidArgumentError("run_schedule: event time must be finite and non-negative");
    }
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw InvalidArgumentError("run_schedule: sample times must be strictly increasing");
    std::sort(events.begin(), events.end(), [](const FlipEvent& a, const FlipEvent& b) {
        return a.time != b.time ? a.time < b.time : a.site < b.site;
    });

    const double alpha = network.alpha();
    const Spectrum spectrum = diagonalize(single_excitation_hamiltonian(network));

    Trajectory traj;
    traj.sample_times = sample_times;
    traj.events = events;
    traj.states.reserve(sample_times.size());

    ExcitationState anchor = init;
    double anchor_t = 0.0;
    std::size_t next_event = 0;
    for (double t : sample_times) {
        while (next_event < events.size() && events[next_event].time <= t) {
            anchor = evolve_state(spectrum, anchor, alpha * (events[next_event].time - anchor_t));
            anchor_t = events[next_event].time;
            anchor = apply_phase_flip(std::move(anchor), events[next_event].site);
            ++next_event;
        }
        traj.states.push_back(evolve_state(spectrum, anchor, alpha * (t - anchor_t)));
    }
    return traj;
}

Trajectory run_schedule(const SpinNetwork& network, int init_site,
                        std::vector<FlipEvent> events, std::vector<double> sample_times) {
    return run_schedule(network, site_state(network.sites(), init_site), std::move(events),
                        std::move(sample_times));
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
    const std::size_t n = spectrum.values.size();
    std::string out = "eigenvalue";
    for (std::size_t i = 0; i < n; ++i) out += ",v" + std::to_string(i);
    out += "\n";
    char buf[32];
    for (std::size_t k = 0; k < n; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", spectrum.values[k]);
        out += buf;
        for (std::size_t i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", spectrum.vectors(i, k));
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace spinnet
