#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinnet/evolve.hpp"
#include "spinnet/lattice.hpp"
#include "spinnet/measures.hpp"
#include "spinnet/oracle.hpp"

namespace spinnet {

// Evenly spaced sample times; a single-point grid is just {start}.
struct SampleGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> times() const;
};

struct EventSpec {
    int site = 0;
    double time = 0.0;
    int placeholder = 0;  // 0: fixed time; 1/2: bound to the sweep's t1/t2
};

struct ObservableSpec {
    enum class Kind { all_probabilities, probability, fidelity, ef, logical_ef };
    Kind kind = Kind::all_probabilities;
    int site = -1;                 // probability
    std::pair<int, int> pair{};    // ef
    LogicalPairing pairing{};      // logical_ef
    TargetState target{};          // fidelity, resolved against the network
};

struct SweepSettings {
    std::optional<double> readout;          // default 3*pi/2
    std::optional<LogicalPairing> pairing;  // default: the branch-end pairs
};

struct Scenario {
    SpinNetwork network;
    ExcitationState init;
    std::vector<EventSpec> events;
    SampleGrid samples;
    std::vector<ObservableSpec> observables;
    std::optional<SweepSettings> sweep;
};

// Parses and fully validates a scenario document. alpha_override replaces the
// network's coupling scale. Unknown keys anywhere are rejected.
Scenario parse_scenario(const std::string& text,
                        std::optional<double> alpha_override = {});
Scenario load_scenario_file(const std::string& path,
                            std::optional<double> alpha_override = {});

// One CSV row per sample time: t_alpha first, then one column per observable
// value in scenario order. Unit-interval values are clamped to [0,1];
// clamping by more than 1e-9 raises NumericalError. Output is deterministic
// byte for byte.
std::string execute(const Scenario& scenario);

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> times() const;
};

// "start:stop:count" with count >= 1.
GridSpec parse_grid_arg(const std::string& text);

// Evaluates the frozen-component logical E_F over the flip-time grid.
// Rows: t1_alpha, t2_alpha, logical_weight, logical_ef with t1 as the outer
// loop. The scenario must carry exactly two placeholder events, one bound to
// t1 and one to t2; the readout time must not precede any grid point.
std::string sweep_flip_times(const Scenario& scenario, const GridSpec& t1,
                             const GridSpec& t2);

struct OracleCheckResult {
    OracleReport report;
    bool ok = false;
    std::string summary;
};

// Replays the scenario through the brute-force engine and compares.
OracleCheckResult oracle_check(const Scenario& scenario, int max_sites);

}  // namespace spinnet
