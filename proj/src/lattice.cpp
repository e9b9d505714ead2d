#include "spinnet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "spinnet/errors.hpp"
#include "spinnet/network_json.hpp"

namespace spinnet {

namespace {

std::pair<int, int> ordered(int i, int j) {
    return i < j ? std::pair{i, j} : std::pair{j, i};
}

void check_connected(int sites, const SpinNetwork::EdgeMap& edges) {
    if (sites <= 1) return;
    std::vector<std::vector<int>> adj(sites);
    for (const auto& [key, j] : edges) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<char> seen(sites, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            ++reached;
            frontier.push(v);
        }
    }
    if (reached != sites) throw ValidationError("coupling graph is not connected");
}

}  // namespace

SpinNetwork::SpinNetwork(int sites, EdgeMap edges, std::vector<double> energies,
                         double alpha, RoleMap roles)
    : sites_(sites),
      edges_(std::move(edges)),
      energies_(std::move(energies)),
      alpha_(alpha),
      roles_(std::move(roles)) {
    if (sites_ < 1) throw ValidationError("network needs at least one site");
    if (!(alpha_ > 0.0)) throw ValidationError("alpha must be positive");
    for (const auto& [key, j] : edges_) {
        const auto [a, b] = key;
        if (a < 0 || b >= sites_ || a >= b)
            throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") is out of range or a self-loop");
        if (!(j > 0.0))
            throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") must have a positive coupling");
    }
    if (energies_.empty()) energies_.assign(static_cast<std::size_t>(sites_), 0.0);
    if (energies_.size() != static_cast<std::size_t>(sites_))
        throw ValidationError("energies list length does not match the site count");
    for (double e : energies_)
        if (e != energies_[0])
            throw ValidationError("on-site energies must be uniform");
    for (const auto& [site, tags] : roles_)
        if (site < 0 || site >= sites_)
            throw ValidationError("role tag on out-of-range site");
    check_connected(sites_, edges_);
}

double SpinNetwork::coupling(int i, int j) const {
    const auto it = edges_.find(ordered(i, j));
    return it == edges_.end() ? 0.0 : it->second;
}

bool SpinNetwork::has_role(int site, Role role) const {
    const auto it = roles_.find(site);
    if (it == roles_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), role) != it->second.end();
}

std::vector<int> SpinNetwork::sites_with_role(Role role) const {
    std::vector<int> out;
    for (const auto& [site, tags] : roles_)
        if (std::find(tags.begin(), tags.end(), role) != tags.end()) out.push_back(site);
    return out;
}

bool SpinNetwork::operator==(const SpinNetwork& other) const {
    return sites_ == other.sites_ && edges_ == other.edges_ &&
           energies_ == other.energies_ && alpha_ == other.alpha_;
}

std::vector<double> pst_couplings(int n, double alpha) {
    if (n < 2) throw InvalidArgumentError("pst_couplings: chain length must be at least 2");
    if (!(alpha > 0.0)) throw InvalidArgumentError("pst_couplings: alpha must be positive");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i)
        out.push_back(alpha * std::sqrt(static_cast<double>(i) * (n - i)));
    return out;
}

SpinNetwork build_chain(int n, double alpha) {
    const std::vector<double> j = pst_couplings(n, 1.0);
    if (!(alpha > 0.0)) throw InvalidArgumentError("build_chain: alpha must be positive");
    SpinNetwork::EdgeMap edges;
    for (int i = 0; i + 1 < n; ++i) edges[{i, i + 1}] = j[static_cast<std::size_t>(i)];
    SpinNetwork::RoleMap roles;
    roles[0].push_back(Role::input);
    roles[n - 1].push_back(Role::output);
    return SpinNetwork(n, std::move(edges), {}, alpha, std::move(roles));
}

namespace {

void validate_y_spec(const YSpec& spec) {
    if (spec.l1 < 0) throw InvalidArgumentError("y-network: l1 must be non-negative");
    if (spec.l2 < 1) throw InvalidArgumentError("y-network: l2 must be at least 1");
    if (!(spec.alpha > 0.0)) throw InvalidArgumentError("y-network: alpha must be positive");
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

SpinNetwork build_y(const YSpec& spec) {
    validate_y_spec(spec);
    const int l1 = spec.l1;
    const int l2 = spec.l2;
    const std::vector<double> k = pst_couplings(l1 + l2 + 1, 1.0);
    const int hub = l1;
    const auto a = [l1](int d) { return l1 + 2 * d - 1; };  // branch 2, depth d >= 1
    const auto b = [l1](int d) { return l1 + 2 * d; };      // branch 3

    SpinNetwork::EdgeMap edges;
    for (int i = 0; i < l1; ++i) edges[{i, i + 1}] = k[static_cast<std::size_t>(i)];
    edges[{hub, a(1)}] = k[static_cast<std::size_t>(l1)] / kSqrt2;
    edges[{hub, b(1)}] = k[static_cast<std::size_t>(l1)] / kSqrt2;
    for (int d = 1; d < l2; ++d) {
        edges[{a(d), a(d + 1)}] = k[static_cast<std::size_t>(l1 + d)];
        edges[{b(d), b(d + 1)}] = k[static_cast<std::size_t>(l1 + d)];
    }

    SpinNetwork::RoleMap roles;
    roles[0].push_back(Role::input);
    roles[hub].push_back(Role::hub);
    roles[a(l2)].push_back(Role::output);
    roles[b(l2)].push_back(Role::output);
    return SpinNetwork(l1 + 1 + 2 * l2, std::move(edges), {}, spec.alpha, std::move(roles));
}

SpinNetwork build_bifurcated_y(YSpec spec) {
    spec.bifurcated = true;
    validate_y_spec(spec);
    const int l1 = spec.l1;
    const int l2 = spec.l2;
    const std::vector<double> k = pst_couplings(l1 + l2 + 1, 1.0);
    const int hub = l1;
    const auto a = [l1](int d) { return l1 + 2 * d - 1; };
    const auto b = [l1](int d) { return l1 + 2 * d; };

    SpinNetwork::EdgeMap edges;
    for (int i = 0; i < l1; ++i) edges[{i, i + 1}] = k[static_cast<std::size_t>(i)];
    if (l2 > 1) {
        edges[{hub, a(1)}] = k[static_cast<std::size_t>(l1)] / kSqrt2;
        edges[{hub, b(1)}] = k[static_cast<std::size_t>(l1)] / kSqrt2;
        for (int d = 1; d + 1 < l2; ++d) {
            edges[{a(d), a(d + 1)}] = k[static_cast<std::size_t>(l1 + d)];
            edges[{b(d), b(d + 1)}] = k[static_cast<std::size_t>(l1 + d)];
        }
    }
    // Replaced end edge: the coupling it carried in the plain Y, halved again
    // by sqrt(2) across the bifurcation.
    const double end_edge = l2 == 1 ? k[static_cast<std::size_t>(l1)] / kSqrt2
                                    : k[static_cast<std::size_t>(l1 + l2 - 1)];
    const double final_j = end_edge / kSqrt2;
    const int pa = l2 == 1 ? hub : a(l2 - 1);
    const int pb = l2 == 1 ? hub : b(l2 - 1);
    const int f = l1 + 2 * l2 - 1;  // first of the four final sites
    edges[{pa, f}] = final_j;
    edges[{pa, f + 1}] = final_j;
    edges[{pb, f + 2}] = final_j;
    edges[{pb, f + 3}] = final_j;

    SpinNetwork::RoleMap roles;
    roles[0].push_back(Role::input);
    roles[hub].push_back(Role::hub);
    for (int s = f; s < f + 4; ++s) roles[s].push_back(Role::branch_end);
    return SpinNetwork(l1 + 2 * l2 + 3, std::move(edges), {}, spec.alpha, std::move(roles));
}

std::pair<int, int> output_pair(const SpinNetwork& network) {
    const std::vector<int> outs = network.sites_with_role(Role::output);
    if (outs.size() != 2)
        throw InvalidArgumentError("network does not have exactly two output sites");
    return {outs[0], outs[1]};
}

std::vector<std::pair<int, int>> branch_end_pairs(const SpinNetwork& network) {
    const std::vector<int> ends = network.sites_with_role(Role::branch_end);
    if (ends.size() != 4)
        throw InvalidArgumentError("network does not have exactly four branch-end sites");
    return {{ends[0], ends[1]}, {ends[2], ends[3]}};
}

void reject_unknown_keys(const nlohmann::json& j, const std::string& locus,
                         const std::vector<std::string>& allowed) {
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ParseError("unknown key '" + item.key() + "'", locus);
}

double require_number(const nlohmann::json& j, const std::string& locus) {
    if (!j.is_number()) throw ParseError("expected a number", locus);
    return j.get<double>();
}

int require_int(const nlohmann::json& j, const std::string& locus) {
    if (!j.is_number_integer()) throw ParseError("expected an integer", locus);
    return j.get<int>();
}

namespace {

SpinNetwork inline_network_from_json(const nlohmann::json& j, const std::string& locus) {
    reject_unknown_keys(j, locus, {"sites", "edges", "energies", "alpha"});
    if (!j.contains("sites")) throw ParseError("missing key 'sites'", locus);
    if (!j.contains("edges")) throw ParseError("missing key 'edges'", locus);

    int sites = 0;
    const nlohmann::json& js = j.at("sites");
    if (js.is_array()) {
        sites = static_cast<int>(js.size());
        for (int i = 0; i < sites; ++i)
            if (require_int(js.at(i), locus + ".sites") != i)
                throw ValidationError("site list must be 0..n-1 in order (at " + locus + ".sites)");
    } else {
        sites = require_int(js, locus + ".sites");
    }

    SpinNetwork::EdgeMap edges;
    const nlohmann::json& je = j.at("edges");
    if (!je.is_array()) throw ParseError("expected a list", locus + ".edges");
    for (std::size_t n = 0; n < je.size(); ++n) {
        const std::string here = locus + ".edges[" + std::to_string(n) + "]";
        const nlohmann::json& e = je.at(n);
        if (!e.is_array() || e.size() != 3)
            throw ParseError("expected [i, j, J]", here);
        const int a = require_int(e.at(0), here);
        const int b = require_int(e.at(1), here);
        const double w = require_number(e.at(2), here);
        if (a == b) throw ValidationError("self-loop edge (at " + here + ")");
        const auto key = ordered(a, b);
        if (edges.count(key))
            throw ValidationError("duplicate edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ") (at " + here + ")");
        edges[key] = w;
    }

    std::vector<double> energies;
    if (j.contains("energies")) {
        const nlohmann::json& jen = j.at("energies");
        if (!jen.is_array()) throw ParseError("expected a list", locus + ".energies");
        for (std::size_t n = 0; n < jen.size(); ++n)
            energies.push_back(require_number(jen.at(n), locus + ".energies"));
    }

    double alpha = 1.0;
    if (j.contains("alpha")) alpha = require_number(j.at("alpha"), locus + ".alpha");
    return SpinNetwork(sites, std::move(edges), std::move(energies), alpha);
}

}  // namespace

SpinNetwork network_from_json(const nlohmann::json& j, const std::string& locus) {
    if (!j.is_object()) throw ParseError("expected an object", locus);
    if (!j.contains("builder")) return inline_network_from_json(j, locus);

    const nlohmann::json& jb = j.at("builder");
    if (!jb.is_string()) throw ParseError("expected a string", locus + ".builder");
    const std::string builder = jb.get<std::string>();
    double alpha = 1.0;
    if (j.contains("alpha")) alpha = require_number(j.at("alpha"), locus + ".alpha");

    if (builder == "chain") {
        reject_unknown_keys(j, locus, {"builder", "sites", "alpha"});
        if (!j.contains("sites")) throw ParseError("missing key 'sites'", locus);
        return build_chain(require_int(j.at("sites"), locus + ".sites"), alpha);
    }
    if (builder == "y" || builder == "bifurcated_y") {
        reject_unknown_keys(j, locus, {"builder", "l1", "l2", "alpha"});
        if (!j.contains("l1")) throw ParseError("missing key 'l1'", locus);
        if (!j.contains("l2")) throw ParseError("missing key 'l2'", locus);
        YSpec spec;
        spec.l1 = require_int(j.at("l1"), locus + ".l1");
        spec.l2 = require_int(j.at("l2"), locus + ".l2");
        spec.alpha = alpha;
        spec.bifurcated = builder == "bifurcated_y";
        return spec.bifurcated ? build_bifurcated_y(spec) : build_y(spec);
    }
    throw ParseError("unknown builder '" + builder + "'", locus + ".builder");
}

nlohmann::json network_to_json(const SpinNetwork& network) {
    nlohmann::json j;
    j["sites"] = network.sites();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [key, w] : network.couplings())
        edges.push_back({key.first, key.second, w});
    j["edges"] = std::move(edges);
    j["energies"] = network.energies();
    j["alpha"] = network.alpha();
    return j;
}

SpinNetwork load_network(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return network_from_json(j, "network");
}

std::string save_network(const SpinNetwork& network) {
    return network_to_json(network).dump(2) + "\n";
}

bool same_structure(const SpinNetwork& a, const SpinNetwork& b, double tol) {
    if (a.sites() != b.sites()) return false;
    if (std::abs(a.alpha() - b.alpha()) > tol) return false;
    const auto& ea = a.couplings();
    const auto& eb = b.couplings();
    if (ea.size() != eb.size()) return false;
    for (const auto& [key, w] : ea) {
        const auto it = eb.find(key);
        if (it == eb.end() || std::abs(it->second - w) > tol) return false;
    }
    for (int i = 0; i < a.sites(); ++i)
        if (std::abs(a.energies()[static_cast<std::size_t>(i)] -
                     b.energies()[static_cast<std::size_t>(i)]) > tol)
            return false;
    return true;
}

SpinNetwork with_alpha(const SpinNetwork& network, double alpha) {
    SpinNetwork::RoleMap roles;
    for (int s = 0; s < network.sites(); ++s) {
        std::vector<Role> tags;
        for (Role r : {Role::input, Role::hub, Role::output, Role::branch_end})
            if (network.has_role(s, r)) tags.push_back(r);
        if (!tags.empty()) roles[s] = std::move(tags);
    }
    return SpinNetwork(network.sites(), network.couplings(), network.energies(), alpha,
                       std::move(roles));
}

}  // namespace spinnet
