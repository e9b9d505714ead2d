#include "spinnet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_support(const std::vector<int>& support, const std::vector<Complex>& amplitudes) {
    if (support.empty() || support.size() != amplitudes.size())
        throw InvalidArgumentError("target support and amplitudes must match and be non-empty");
    std::set<int> distinct(support.begin(), support.end());
    if (distinct.size() != support.size())
        throw InvalidArgumentError("target support sites must be distinct");
    double norm = 0.0;
    for (const Complex& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-12)
        throw InvalidArgumentError("target state is not normalized on its support");
}

}  // namespace

TargetState target_site(int site) {
    if (site < 0) throw InvalidArgumentError("target site must be non-negative");
    return {TargetKind::site, {site}, {Complex{1.0, 0.0}}};
}

TargetState target_plus(const SpinNetwork& network) {
    const auto [a, b] = output_pair(network);
    return {TargetKind::plus, {a, b}, {Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}}};
}

TargetState target_minus(const SpinNetwork& network) {
    const auto [a, b] = output_pair(network);
    return {TargetKind::minus, {a, b}, {Complex{kInvSqrt2, 0.0}, Complex{-kInvSqrt2, 0.0}}};
}

TargetState target_psi_s(const SpinNetwork& network) {
    const auto pairs = branch_end_pairs(network);
    return {TargetKind::psi_s,
            {pairs[0].first, pairs[0].second, pairs[1].first, pairs[1].second},
            {Complex{0.5, 0.0}, Complex{0.5, 0.0}, Complex{0.5, 0.0}, Complex{0.5, 0.0}}};
}

TargetState target_psi_a(const SpinNetwork& network) {
    const auto pairs = branch_end_pairs(network);
    return {TargetKind::psi_a,
            {pairs[0].first, pairs[0].second, pairs[1].first, pairs[1].second},
            {Complex{-0.5, 0.0}, Complex{0.5, 0.0}, Complex{-0.5, 0.0}, Complex{0.5, 0.0}}};
}

TargetState target_custom(std::vector<int> support, std::vector<Complex> amplitudes) {
    check_support(support, amplitudes);
    return {TargetKind::custom, std::move(support), std::move(amplitudes)};
}

ExcitationState target_to_state(const TargetState& target, int sites) {
    ExcitationState c(static_cast<std::size_t>(sites), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < target.support.size(); ++k) {
        const int s = target.support[k];
        if (s < 0 || s >= sites)
            throw InvalidArgumentError("target support site out of range");
        c[static_cast<std::size_t>(s)] = target.amplitudes[k];
    }
    return c;
}

std::vector<double> site_probabilities(const ExcitationState& state) {
    std::vector<double> p(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) p[i] = std::norm(state[i]);
    return p;
}

double fidelity(const ExcitationState& state, const TargetState& target) {
    Complex overlap{0.0, 0.0};
    for (std::size_t k = 0; k < target.support.size(); ++k) {
        const int s = target.support[k];
        if (s < 0 || static_cast<std::size_t>(s) >= state.size())
            throw InvalidArgumentError("fidelity: target support site out of range");
        overlap += std::conj(target.amplitudes[k]) * state[static_cast<std::size_t>(s)];
    }
    return std::norm(overlap);
}

void validate_two_qubit_density(const TwoQubitDensity& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw ValidationError("density matrix must be 4x4");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (std::abs(rho(i, j) - std::conj(rho(j, i))) > 1e-12)
                throw ValidationError("density matrix is not Hermitian");
    if (std::abs(trace(rho) - Complex{1.0, 0.0}) > 1e-12)
        throw ValidationError("density matrix trace is not 1");
    for (double lambda : hermitian_eigenvalues(rho))
        if (lambda < -1e-12)
            throw ValidationError("density matrix has a negative eigenvalue");
}

TwoQubitDensity reduced_two_qubit_rho(const ExcitationState& state, int a, int b) {
    const int n = static_cast<int>(state.size());
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
        throw InvalidArgumentError("reduced_two_qubit_rho: invalid site pair");
    const Complex ca = state[static_cast<std::size_t>(a)];
    const Complex cb = state[static_cast<std::size_t>(b)];
    TwoQubitDensity rho(4, 4);
    rho(0, 0) = Complex{1.0 - std::norm(ca) - std::norm(cb), 0.0};
    rho(1, 1) = Complex{std::norm(cb), 0.0};
    rho(2, 2) = Complex{std::norm(ca), 0.0};
    rho(1, 2) = cb * std::conj(ca);
    rho(2, 1) = std::conj(rho(1, 2));
    return rho;
}

namespace {

// Pivots at or below this are treated as exact zeros. Exactly singular
// directions of a reduced density then contribute exact-zero columns instead
// of sqrt(noise)-sized ones.
constexpr double kPivotFloor = 1e-13;

// Diagonally pivoted Cholesky factor: rho = w w^H, one column per positive
// pivot, remaining columns zero.
ComplexMatrix psd_factor(const TwoQubitDensity& rho) {
    const std::size_t n = rho.rows();
    ComplexMatrix a = rho;
    ComplexMatrix w(n, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (a(order[j], order[j]).real() > a(order[best], order[best]).real())
                best = j;
        std::swap(order[k], order[best]);
        const std::size_t p = order[k];
        const double pivot = a(p, p).real();
        if (pivot <= kPivotFloor) break;
        const double root = std::sqrt(pivot);
        w(p, k) = Complex{root, 0.0};
        for (std::size_t j = k + 1; j < n; ++j)
            w(order[j], k) = a(order[j], p) / root;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(order[i], order[j]) -= w(order[i], k) * std::conj(w(order[j], k));
    }
    return w;
}

// The lambdas of the concurrence formula are the singular values of the
// complex symmetric z = w^T (sy x sy) w, because rho rho~ and z z^H share
// their nonzero spectrum. Computing them through the Hermitian embedding
// [[0, z], [z^H, 0]] keeps absolute accuracy ~eps; taking square roots of
// eigenvalues of sqrt(rho) rho~ sqrt(rho) would lift the noise floor of the
// vanishing lambdas to sqrt(eps) instead.
double concurrence_checked(const TwoQubitDensity& rho) {
    static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
    const ComplexMatrix w = psd_factor(rho);
    ComplexMatrix z(4, 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Complex sum{0.0, 0.0};
            for (std::size_t i = 0; i < 4; ++i)
                sum += w(i, a) * sign[i] * w(3 - i, b);
            z(a, b) = sum;
        }
    ComplexMatrix embed(8, 8);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            embed(a, 4 + b) = z(a, b);
            embed(4 + a, b) = std::conj(z(b, a));
        }
    // Eigenvalues come in +/- singular-value pairs; the top four descending
    // are lambda_0 .. lambda_3.
    const std::vector<double> s = hermitian_eigenvalues(embed);
    const double c = s[7] - s[6] - s[5] - s[4];
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace

double concurrence(const TwoQubitDensity& rho) {
    validate_two_qubit_density(rho);
    return concurrence_checked(rho);
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entanglement_of_formation(const TwoQubitDensity& rho) {
    const double c = concurrence(rho);
    const double tau = c * c;
    const double root = std::sqrt(std::max(1.0 - tau, 0.0));
    return binary_entropy(0.5 * (1.0 + root));
}

LogicalPairing branch_end_pairing(const SpinNetwork& network) {
    const auto pairs = branch_end_pairs(network);
    return {pairs[0], pairs[1]};
}

namespace {

void check_pairing(const LogicalPairing& pairing, std::size_t dim) {
    const int sites[4] = {pairing.pair1.first, pairing.pair1.second,
                          pairing.pair2.first, pairing.pair2.second};
    std::set<int> distinct(sites, sites + 4);
    if (distinct.size() != 4)
        throw InvalidArgumentError("logical pairing needs four distinct sites");
    for (int s : sites)
        if (s < 0 || static_cast<std::size_t>(s) >= dim)
            throw InvalidArgumentError("logical pairing site out of range");
}

}  // namespace

LogicalState logical_two_qubit_rho(const ExcitationState& state,
                                   const LogicalPairing& pairing) {
    check_pairing(pairing, state.size());
    const Complex c1 = state[static_cast<std::size_t>(pairing.pair1.first)];
    const Complex c2 = state[static_cast<std::size_t>(pairing.pair1.second)];
    const Complex c3 = state[static_cast<std::size_t>(pairing.pair2.first)];
    const Complex c4 = state[static_cast<std::size_t>(pairing.pair2.second)];

    // Reduced state of the four pair sites for a single excitation:
    // a vacuum weight plus a pure one-excitation part. Only |0L 0L> and the
    // one-per-pair logical states can be populated.
    const double w0 =
        1.0 - std::norm(c1) - std::norm(c2) - std::norm(c3) - std::norm(c4);
    const Complex m01 = (c4 - c3) * kInvSqrt2;  // <0L 1L| one-excitation part
    const Complex m10 = (c2 - c1) * kInvSqrt2;  // <1L 0L| one-excitation part

    TwoQubitDensity b(4, 4);
    b(0, 0) = Complex{w0, 0.0};
    b(1, 1) = Complex{std::norm(m01), 0.0};
    b(2, 2) = Complex{std::norm(m10), 0.0};
    b(1, 2) = m01 * std::conj(m10);
    b(2, 1) = std::conj(b(1, 2));

    const double weight = w0 + std::norm(m01) + std::norm(m10);
    if (weight <= 1e-15) {
        TwoQubitDensity fallback(4, 4);
        fallback(0, 0) = Complex{1.0, 0.0};
        return {fallback, weight};
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b(i, j) /= weight;
    return {b, weight};
}

FrozenEf frozen_logical_ef(const ExcitationState& state, const LogicalPairing& pairing) {
    check_pairing(pairing, state.size());
    const Complex c1 = state[static_cast<std::size_t>(pairing.pair1.first)];
    const Complex c2 = state[static_cast<std::size_t>(pairing.pair1.second)];
    const Complex c3 = state[static_cast<std::size_t>(pairing.pair2.first)];
    const Complex c4 = state[static_cast<std::size_t>(pairing.pair2.second)];
    const Complex m01 = (c4 - c3) * kInvSqrt2;
    const Complex m10 = (c2 - c1) * kInvSqrt2;
    const double weight = std::norm(m01) + std::norm(m10);
    if (weight <= 1e-15) return {0.0, weight};

    TwoQubitDensity rho(4, 4);
    rho(1, 1) = Complex{std::norm(m01) / weight, 0.0};
    rho(2, 2) = Complex{std::norm(m10) / weight, 0.0};
    rho(1, 2) = m01 * std::conj(m10) / weight;
    rho(2, 1) = std::conj(rho(1, 2));
    return {entanglement_of_formation(rho), weight};
}

}  // namespace spinnet
