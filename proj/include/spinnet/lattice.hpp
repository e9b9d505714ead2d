#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spinnet {

enum class Role { input, hub, output, branch_end };

// Undirected spin network in the single-excitation picture. Site indices are
// dense and 0-based. Couplings are stored in units of alpha; alpha itself is
// recorded once so premultiplication never touches the stored values.
// Instances are immutable after construction and safe to share across threads.
class SpinNetwork {
  public:
    using EdgeMap = std::map<std::pair<int, int>, double>;
    using RoleMap = std::map<int, std::vector<Role>>;

    // edges keyed by unordered pair; keys are normalized to i < j.
    // energies may be empty (all zero). Throws ValidationError on a
    // disconnected graph, non-positive coupling, self-loop, bad index,
    // or non-uniform energies.
    SpinNetwork(int sites, EdgeMap edges, std::vector<double> energies,
                double alpha, RoleMap roles = {});

    int sites() const { return sites_; }
    double alpha() const { return alpha_; }
    const EdgeMap& couplings() const { return edges_; }
    const std::vector<double>& energies() const { return energies_; }

    // 0 when the pair is not an edge.
    double coupling(int i, int j) const;

    bool has_role(int site, Role role) const;
    std::vector<int> sites_with_role(Role role) const;  // ascending

    // Structural equality: sites, edges, energies, alpha. Role tags are
    // builder metadata and not part of the structure.
    bool operator==(const SpinNetwork& other) const;

  private:
    int sites_;
    EdgeMap edges_;
    std::vector<double> energies_;
    double alpha_;
    RoleMap roles_;
};

struct YSpec {
    int l1 = 0;        // input-branch site count, >= 0
    int l2 = 1;        // output-branch site count, >= 1, both branches
    double alpha = 1.0;
    bool bifurcated = false;
};

// Couplings that move a single excitation across an n-site chain end to end
// in rescaled time pi/2: J_i = alpha*sqrt(i*(n-i)), i = 1..n-1. Palindromic.
std::vector<double> pst_couplings(int n, double alpha);

SpinNetwork build_chain(int n, double alpha);

// Y-network: input branch of l1 sites, a hub, two congruent output branches
// of l2 sites. All couplings come from the equivalent chain of length
// l1 + l2 + 1; the coupling crossing the hub is divided by sqrt(2) and
// applied to both branches, deeper branch couplings keep their
// equivalent-chain values. Site order: input end -> hub, then branch sites
// breadth-first with branch 2 before branch 3.
SpinNetwork build_y(const YSpec& spec);

// As build_y, but each branch end is replaced by two final sites, each
// coupled to the penultimate site with the replaced edge's coupling divided
// by sqrt(2). The four final sites are tagged branch_end.
SpinNetwork build_bifurcated_y(YSpec spec);

// The two output-tagged sites, ascending. Throws unless exactly two exist.
std::pair<int, int> output_pair(const SpinNetwork& network);

// The branch_end sites grouped per branch: {(n1,n2),(n3,n4)}, ascending
// within and across pairs. Throws unless exactly four exist.
std::vector<std::pair<int, int>> branch_end_pairs(const SpinNetwork& network);

// Text form: object with keys sites, edges ([i,j,J] triples, J in units of
// alpha), optional energies, optional alpha (default 1). Unknown keys are
// rejected. load(save(n)) round-trips to an equal network.
SpinNetwork load_network(const std::string& text);
std::string save_network(const SpinNetwork& network);

// Same topology and values within tol (absolute, per coupling/energy/alpha).
bool same_structure(const SpinNetwork& a, const SpinNetwork& b,
                    double tol = 1e-12);

// Copy with a different coupling scale.
SpinNetwork with_alpha(const SpinNetwork& network, double alpha);

}  // namespace spinnet
