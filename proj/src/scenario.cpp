#include "spinnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "spinnet/errors.hpp"
#include "spinnet/network_json.hpp"

namespace spinnet {

namespace {

constexpr double kDefaultReadout = 4.71238898038468985769;  // 3*pi/2

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    return out;
}

void check_grid(double start, double stop, int count, const std::string& what) {
    if (count < 1) throw ValidationError(what + ": count must be at least 1");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw ValidationError(what + ": bounds must be finite");
    if (count > 1 && !(stop > start))
        throw ValidationError(what + ": stop must exceed start");
}

Complex parse_complex(const nlohmann::json& j, const std::string& locus) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j.at(0).is_number() && j.at(1).is_number())
        return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
    throw ParseError("expected a number or [re, im]", locus);
}

std::pair<int, int> parse_site_pair(const nlohmann::json& j, const std::string& locus) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected [site, site]", locus);
    return {require_int(j.at(0), locus), require_int(j.at(1), locus)};
}

void check_site(int site, int sites, const std::string& locus) {
    if (site < 0 || site >= sites)
        throw ValidationError("site " + std::to_string(site) + " is out of range (at " +
                              locus + ")");
}

TargetState parse_target(const nlohmann::json& j, const SpinNetwork& network,
                         const std::string& locus) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "plus") return target_plus(network);
        if (name == "minus") return target_minus(network);
        if (name == "psi_s") return target_psi_s(network);
        if (name == "psi_a") return target_psi_a(network);
        throw ParseError("unknown target '" + name + "'", locus);
    }
    if (!j.is_object()) throw ParseError("expected a target name or object", locus);
    if (j.contains("site")) {
        reject_unknown_keys(j, locus, {"site"});
        const int site = require_int(j.at("site"), locus + ".site");
        check_site(site, network.sites(), locus + ".site");
        return target_site(site);
    }
    if (j.contains("custom")) {
        reject_unknown_keys(j, locus, {"custom"});
        const nlohmann::json& jc = j.at("custom");
        if (!jc.is_object()) throw ParseError("expected an object", locus + ".custom");
        reject_unknown_keys(jc, locus + ".custom", {"support", "amplitudes"});
        if (!jc.contains("support") || !jc.contains("amplitudes"))
            throw ParseError("custom target needs 'support' and 'amplitudes'",
                             locus + ".custom");
        const nlohmann::json& js = jc.at("support");
        const nlohmann::json& ja = jc.at("amplitudes");
        if (!js.is_array() || !ja.is_array())
            throw ParseError("expected lists", locus + ".custom");
        std::vector<int> support;
        for (std::size_t i = 0; i < js.size(); ++i) {
            support.push_back(require_int(js.at(i), locus + ".custom.support"));
            check_site(support.back(), network.sites(), locus + ".custom.support");
        }
        std::vector<Complex> amplitudes;
        for (std::size_t i = 0; i < ja.size(); ++i)
            amplitudes.push_back(parse_complex(ja.at(i), locus + ".custom.amplitudes"));
        return target_custom(std::move(support), std::move(amplitudes));
    }
    throw ParseError("expected 'site' or 'custom'", locus);
}

LogicalPairing parse_pairing(const nlohmann::json& j, const SpinNetwork& network,
                             const std::string& locus) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected [[site, site], [site, site]]", locus);
    LogicalPairing pairing{parse_site_pair(j.at(0), locus),
                           parse_site_pair(j.at(1), locus)};
    for (int s : {pairing.pair1.first, pairing.pair1.second, pairing.pair2.first,
                  pairing.pair2.second})
        check_site(s, network.sites(), locus);
    return pairing;
}

ObservableSpec parse_observable(const nlohmann::json& j, const SpinNetwork& network,
                                const std::string& locus) {
    ObservableSpec spec;
    if (j.is_string()) {
        if (j.get<std::string>() != "site_probabilities")
            throw ParseError("unknown observable '" + j.get<std::string>() + "'", locus);
        spec.kind = ObservableSpec::Kind::all_probabilities;
        return spec;
    }
    if (!j.is_object() || j.size() != 1)
        throw ParseError("expected \"site_probabilities\" or a one-key object", locus);
    if (j.contains("p")) {
        spec.kind = ObservableSpec::Kind::probability;
        spec.site = require_int(j.at("p"), locus + ".p");
        check_site(spec.site, network.sites(), locus + ".p");
        return spec;
    }
    if (j.contains("fidelity")) {
        spec.kind = ObservableSpec::Kind::fidelity;
        spec.target = parse_target(j.at("fidelity"), network, locus + ".fidelity");
        return spec;
    }
    if (j.contains("ef")) {
        spec.kind = ObservableSpec::Kind::ef;
        spec.pair = parse_site_pair(j.at("ef"), locus + ".ef");
        check_site(spec.pair.first, network.sites(), locus + ".ef");
        check_site(spec.pair.second, network.sites(), locus + ".ef");
        if (spec.pair.first == spec.pair.second)
            throw ValidationError("ef pair sites must differ (at " + locus + ".ef)");
        return spec;
    }
    if (j.contains("logical_ef")) {
        spec.kind = ObservableSpec::Kind::logical_ef;
        spec.pairing = parse_pairing(j.at("logical_ef"), network, locus + ".logical_ef");
        return spec;
    }
    throw ParseError("unknown observable key '" + j.items().begin().key() + "'", locus);
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double clamp_unit(double v, const std::string& column) {
    if (v < 0.0) {
        if (v < -1e-9)
            throw NumericalError("column " + column + " left [0,1]", -v);
        return 0.0;
    }
    if (v > 1.0) {
        if (v > 1.0 + 1e-9)
            throw NumericalError("column " + column + " left [0,1]", v - 1.0);
        return 1.0;
    }
    return v;
}

std::string target_column(const TargetState& target) {
    switch (target.kind) {
        case TargetKind::plus: return "f_plus";
        case TargetKind::minus: return "f_minus";
        case TargetKind::psi_s: return "f_psi_s";
        case TargetKind::psi_a: return "f_psi_a";
        case TargetKind::site: return "f_site_" + std::to_string(target.support.at(0));
        case TargetKind::custom: return "f_custom";
    }
    return "f_custom";
}

std::string pairing_suffix(const LogicalPairing& p) {
    return std::to_string(p.pair1.first) + "_" + std::to_string(p.pair1.second) + "_" +
           std::to_string(p.pair2.first) + "_" + std::to_string(p.pair2.second);
}

}  // namespace

std::vector<double> SampleGrid::times() const { return linspace(start, stop, count); }
std::vector<double> GridSpec::times() const { return linspace(start, stop, count); }

Scenario parse_scenario(const std::string& text, std::optional<double> alpha_override) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    if (!j.is_object()) throw ParseError("expected an object", "scenario");
    reject_unknown_keys(j, "scenario",
                        {"network", "init", "events", "samples", "observables", "sweep"});
    for (const char* key : {"network", "init", "samples", "observables"})
        if (!j.contains(key))
            throw ParseError(std::string("missing key '") + key + "'", "scenario");

    SpinNetwork network = network_from_json(j.at("network"), "network");
    if (alpha_override) {
        if (!(*alpha_override > 0.0))
            throw InvalidArgumentError("alpha override must be positive");
        network = with_alpha(network, *alpha_override);
    }

    ExcitationState init;
    const nlohmann::json& ji = j.at("init");
    if (ji.is_number_integer()) {
        const int site = ji.get<int>();
        check_site(site, network.sites(), "init");
        init = site_state(network.sites(), site);
    } else if (ji.is_object()) {
        if (ji.contains("site")) {
            reject_unknown_keys(ji, "init", {"site"});
            const int site = require_int(ji.at("site"), "init.site");
            check_site(site, network.sites(), "init.site");
            init = site_state(network.sites(), site);
        } else if (ji.contains("state")) {
            reject_unknown_keys(ji, "init", {"state"});
            init = target_to_state(parse_target(ji.at("state"), network, "init.state"),
                                   network.sites());
        } else {
            throw ParseError("expected 'site' or 'state'", "init");
        }
    } else {
        throw ParseError("expected a site index or an object", "init");
    }

    std::vector<EventSpec> events;
    if (j.contains("events")) {
        const nlohmann::json& je = j.at("events");
        if (!je.is_array()) throw ParseError("expected a list", "events");
        for (std::size_t i = 0; i < je.size(); ++i) {
            const std::string locus = "events[" + std::to_string(i) + "]";
            const nlohmann::json& e = je.at(i);
            if (!e.is_object()) throw ParseError("expected an object", locus);
            reject_unknown_keys(e, locus, {"site", "time"});
            if (!e.contains("site") || !e.contains("time"))
                throw ParseError("event needs 'site' and 'time'", locus);
            EventSpec spec;
            spec.site = require_int(e.at("site"), locus + ".site");
            check_site(spec.site, network.sites(), locus + ".site");
            const nlohmann::json& jt = e.at("time");
            if (jt.is_string()) {
                const std::string name = jt.get<std::string>();
                if (name == "t1") spec.placeholder = 1;
                else if (name == "t2") spec.placeholder = 2;
                else throw ParseError("unknown time placeholder '" + name + "'",
                                      locus + ".time");
            } else {
                spec.time = require_number(jt, locus + ".time");
                if (!(spec.time >= 0.0) || !std::isfinite(spec.time))
                    throw ValidationError("event time must be finite and non-negative (at " +
                                          locus + ".time)");
            }
            events.push_back(spec);
        }
    }

    const nlohmann::json& js = j.at("samples");
    if (!js.is_object()) throw ParseError("expected an object", "samples");
    reject_unknown_keys(js, "samples", {"start", "stop", "count"});
    for (const char* key : {"start", "stop", "count"})
        if (!js.contains(key))
            throw ParseError(std::string("missing key '") + key + "'", "samples");
    SampleGrid samples;
    samples.start = require_number(js.at("start"), "samples.start");
    samples.stop = require_number(js.at("stop"), "samples.stop");
    samples.count = require_int(js.at("count"), "samples.count");
    check_grid(samples.start, samples.stop, samples.count, "samples");

    const nlohmann::json& jo = j.at("observables");
    if (!jo.is_array() || jo.empty())
        throw ParseError("expected a non-empty list", "observables");
    std::vector<ObservableSpec> observables;
    for (std::size_t i = 0; i < jo.size(); ++i)
        observables.push_back(parse_observable(
            jo.at(i), network, "observables[" + std::to_string(i) + "]"));

    std::optional<SweepSettings> sweep;
    if (j.contains("sweep")) {
        const nlohmann::json& jw = j.at("sweep");
        if (!jw.is_object()) throw ParseError("expected an object", "sweep");
        reject_unknown_keys(jw, "sweep", {"readout", "pairing"});
        SweepSettings settings;
        if (jw.contains("readout")) {
            const double r = require_number(jw.at("readout"), "sweep.readout");
            if (!(r >= 0.0) || !std::isfinite(r))
                throw ValidationError("sweep readout must be finite and non-negative");
            settings.readout = r;
        }
        if (jw.contains("pairing"))
            settings.pairing = parse_pairing(jw.at("pairing"), network, "sweep.pairing");
        sweep = settings;
    }

    return Scenario{std::move(network), std::move(init),     std::move(events),
                    samples,            std::move(observables), std::move(sweep)};
}

Scenario load_scenario_file(const std::string& path,
                            std::optional<double> alpha_override) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), alpha_override);
}

namespace {

struct Column {
    std::string header;
    std::function<double(const ExcitationState&)> value;
};

std::vector<Column> build_columns(const Scenario& scenario) {
    std::vector<Column> columns;
    for (const ObservableSpec& obs : scenario.observables) {
        switch (obs.kind) {
            case ObservableSpec::Kind::all_probabilities:
                for (int s = 0; s < scenario.network.sites(); ++s)
                    columns.push_back({"p_" + std::to_string(s),
                                       [s](const ExcitationState& c) {
                                           return std::norm(c[static_cast<std::size_t>(s)]);
                                       }});
                break;
            case ObservableSpec::Kind::probability: {
                const int s = obs.site;
                columns.push_back({"p_" + std::to_string(s),
                                   [s](const ExcitationState& c) {
                                       return std::norm(c[static_cast<std::size_t>(s)]);
                                   }});
                break;
            }
            case ObservableSpec::Kind::fidelity: {
                const TargetState target = obs.target;
                columns.push_back({target_column(target),
                                   [target](const ExcitationState& c) {
                                       return fidelity(c, target);
                                   }});
                break;
            }
            case ObservableSpec::Kind::ef: {
                const auto [a, b] = obs.pair;
                columns.push_back({"ef_" + std::to_string(a) + "_" + std::to_string(b),
                                   [a, b](const ExcitationState& c) {
                                       return entanglement_of_formation(
                                           reduced_two_qubit_rho(c, a, b));
                                   }});
                break;
            }
            case ObservableSpec::Kind::logical_ef: {
                const LogicalPairing pairing = obs.pairing;
                const std::string suffix = pairing_suffix(pairing);
                columns.push_back({"logical_weight_" + suffix,
                                   [pairing](const ExcitationState& c) {
                                       return logical_two_qubit_rho(c, pairing).weight;
                                   }});
                columns.push_back({"logical_ef_" + suffix,
                                   [pairing](const ExcitationState& c) {
                                       const LogicalState ls =
                                           logical_two_qubit_rho(c, pairing);
                                       return entanglement_of_formation(ls.rho);
                                   }});
                break;
            }
        }
    }
    return columns;
}

std::vector<FlipEvent> fixed_events(const Scenario& scenario) {
    std::vector<FlipEvent> events;
    for (const EventSpec& e : scenario.events) {
        if (e.placeholder != 0)
            throw ValidationError(
                "placeholder event times are only valid for sweep runs");
        events.push_back({e.site, e.time});
    }
    return events;
}

}  // namespace

std::string execute(const Scenario& scenario) {
    const std::vector<FlipEvent> events = fixed_events(scenario);
    const std::vector<double> times = scenario.samples.times();
    const Trajectory traj =
        run_schedule(scenario.network, scenario.init, events, times);
    const std::vector<Column> columns = build_columns(scenario);
    const double alpha = scenario.network.alpha();

    std::string out = "t_alpha";
    for (const Column& col : columns) {
        out += ",";
        out += col.header;
    }
    out += "\n";
    for (std::size_t row = 0; row < times.size(); ++row) {
        out += format_value(alpha * times[row]);
        for (const Column& col : columns) {
            out += ",";
            out += format_value(clamp_unit(col.value(traj.states[row]), col.header));
        }
        out += "\n";
    }
    return out;
}

GridSpec parse_grid_arg(const std::string& text) {
    GridSpec grid;
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        text.find(':', second + 1) != std::string::npos)
        throw InvalidArgumentError("grid '" + text + "' must be start:stop:count");
    try {
        std::size_t used = 0;
        const std::string s0 = text.substr(0, first);
        const std::string s1 = text.substr(first + 1, second - first - 1);
        const std::string s2 = text.substr(second + 1);
        grid.start = std::stod(s0, &used);
        if (used != s0.size()) throw std::invalid_argument("");
        grid.stop = std::stod(s1, &used);
        if (used != s1.size()) throw std::invalid_argument("");
        grid.count = std::stoi(s2, &used);
        if (used != s2.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw InvalidArgumentError("grid '" + text + "' must be start:stop:count");
    }
    try {
        check_grid(grid.start, grid.stop, grid.count, "grid '" + text + "'");
    } catch (const ValidationError& e) {
        throw InvalidArgumentError(e.what());
    }
    return grid;
}

std::string sweep_flip_times(const Scenario& scenario, const GridSpec& t1,
                             const GridSpec& t2) {
    int site1 = -1;
    int site2 = -1;
    for (const EventSpec& e : scenario.events) {
        if (e.placeholder == 1) {
            if (site1 >= 0) throw ValidationError("sweep needs exactly one t1 event");
            site1 = e.site;
        } else if (e.placeholder == 2) {
            if (site2 >= 0) throw ValidationError("sweep needs exactly one t2 event");
            site2 = e.site;
        } else {
            throw ValidationError("sweep scenarios must use only placeholder events");
        }
    }
    if (site1 < 0 || site2 < 0)
        throw ValidationError("sweep needs one event bound to t1 and one to t2");

    double readout = kDefaultReadout;
    LogicalPairing pairing = scenario.sweep && scenario.sweep->pairing
                                 ? *scenario.sweep->pairing
                                 : branch_end_pairing(scenario.network);
    if (scenario.sweep && scenario.sweep->readout) readout = *scenario.sweep->readout;

    const std::vector<double> grid1 = t1.times();
    const std::vector<double> grid2 = t2.times();
    for (const std::vector<double>* grid : {&grid1, &grid2})
        for (double t : *grid) {
            if (t < 0.0)
                throw ValidationError("flip times must be non-negative");
            if (t > readout)
                throw ValidationError("readout time precedes a grid flip time");
        }

    const double alpha = scenario.network.alpha();
    std::string out = "t1_alpha,t2_alpha,logical_weight,logical_ef\n";
    for (double a : grid1) {
        for (double b : grid2) {
            const std::vector<FlipEvent> events{{site1, a}, {site2, b}};
            const Trajectory traj =
                run_schedule(scenario.network, scenario.init, events, {readout});
            const FrozenEf result = frozen_logical_ef(traj.states[0], pairing);
            out += format_value(alpha * a);
            out += ",";
            out += format_value(alpha * b);
            out += ",";
            out += format_value(clamp_unit(result.weight, "logical_weight"));
            out += ",";
            out += format_value(clamp_unit(result.ef, "logical_ef"));
            out += "\n";
        }
    }
    return out;
}

OracleCheckResult oracle_check(const Scenario& scenario, int max_sites) {
    const std::vector<FlipEvent> events = fixed_events(scenario);
    const int n = scenario.network.sites();
    if (n > max_sites)
        throw BudgetError("network has " + std::to_string(n) +
                          " sites, over the requested cap of " + std::to_string(max_sites));
    if (n < 2) throw ValidationError("brute-force comparison needs at least two sites");

    std::pair<int, int> density_pair{0, n - 1};
    for (const ObservableSpec& obs : scenario.observables)
        if (obs.kind == ObservableSpec::Kind::ef) {
            density_pair = obs.pair;
            break;
        }

    OracleCheckResult result;
    result.report = oracle_compare(scenario.network, scenario.init, events,
                                   scenario.samples.times(), density_pair);
    result.ok = result.report.max_amplitude_deviation <= 1e-10 &&
                result.report.max_density_deviation <= 1e-10 &&
                result.report.max_leakage <= 1e-12;
    std::string s;
    s += "max amplitude deviation: " + format_value(result.report.max_amplitude_deviation) + "\n";
    s += "max density deviation:   " + format_value(result.report.max_density_deviation) + "\n";
    s += "max sector leakage:      " + format_value(result.report.max_leakage) + "\n";
    s += result.ok ? "engines agree within contract\n" : "ENGINE MISMATCH\n";
    result.summary = s;
    return result;
}

}  // namespace spinnet
