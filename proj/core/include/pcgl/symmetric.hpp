#pragma once

#include "pcgl/cgl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pcgl {

struct SymmetricReport {
    std::vector<Violation> violations; // SupportViolation, NoHStarSolution, ZeroLambdaStar, HStarMismatch
    std::optional<std::vector<RatVec>> h_star; // supplied or solved
    bool h_star_solved = false;
    RatVec lambda_star;
    bool ok() const { return violations.empty(); }
};

SymmetricReport validate_symmetric(const PoissonPresentation& p);

// Copy of p with h_star filled in from a passing report; throws on failure.
PoissonPresentation with_symmetric_data(const PoissonPresentation& p, const SymmetricReport& r);
RatVec lambda_star(const PoissonPresentation& p);

struct DIntegers {
    Rational q;
    std::map<int, long> d; // eta label -> positive integer
};

// lambda*_l = d_{eta(l)} q on ex, plus the level-set chain lambda*_l = lambda*_{s(l)} = -lambda_{s(l)}.
// Error("Incompatible") on failure.
DIntegers compute_d_integers(const PoissonPresentation& p, const EtaData& eta);
DIntegers d_integers_from_values(const std::map<int, Rational>& lambda_star_by_label);

using Perm = std::vector<int>; // one-line notation, 0-based values

Perm identity_perm(int n);
Perm inverse(const Perm& t);
Perm compose(const Perm& a, const Perm& b); // (a o b)(i) = a(b(i))
bool is_xi(const Perm& t);
std::vector<Perm> enumerate_xi(int n);
std::string perm_to_string(const Perm& t); // 1-based, comma separated

struct GammaLink {
    int k;    // 0-based position: tau' = tau o (k, k+1)
    int i, j; // tau(k) = i < j = tau(k+1), 0-based
};

struct GammaChain {
    std::vector<Perm> elements;
    std::vector<GammaLink> links; // links[t] joins elements[t] and elements[t+1]
};

Perm tau_ij(int n, int i, int j); // 1-based i <= j
GammaChain gamma_chain(int n);

// tau_bullet o tau: order-preserving on every level set preimage.
Perm tau_bullet_tau(const Perm& tau, const EtaData& eta);
Perm tau_bullet(const Perm& tau, const EtaData& eta);

struct IntervalPrime {
    int i = 0;
    int m = 0;
    MvLaurent poly;
    ExpVec exponent; // e_[i, s^m(i)]
};

// All y_[i, s^m(i)], built once; read-only afterwards.
class IntervalPrimeTable {
public:
    IntervalPrimeTable(const PoissonPresentation& p, const EtaData& eta);

    // m = -1 gives the empty interval (value 1).
    const MvLaurent& get(int i, int m) const;
    IntervalPrime interval_prime(int i, int m) const;
    int chain_end(int i, int m) const; // s^m(i) or kNone
    int max_steps(int i) const;        // largest m with s^m(i) defined
    const EtaData& eta() const { return eta_; }

private:
    EtaData eta_;
    MvLaurent one_;
    std::vector<std::vector<MvLaurent>> primes_;
};

IntervalPrime interval_prime(const PoissonPresentation& p, const EtaData& eta, int i, int m);

struct TauSelection {
    int start;
    int m;
};

std::vector<TauSelection> tau_selection(const EtaData& eta, const Perm& tau);
std::vector<MvLaurent> y_sequence_for_tau(const IntervalPrimeTable& t, const Perm& tau);

// The presentation R = K[x_tau(1)]...[x_tau(N)]; generator l is x_{tau(l)}.
PoissonPresentation tau_presentation(const PoissonPresentation& p, const Perm& tau);

struct UElementData {
    int i = 0;
    int m = 0;
    MvLaurent u;
    Rational pi;
    ExpVec f;
    ExpVec g;
};

UElementData u_element_and_pi(const IntervalPrimeTable& t, int i, int m);

struct RescaleResult {
    RatVec gamma;
    PoissonPresentation presentation;
    bool normalized = false; // pi = 1 for every interval after rescaling
};

RescaleResult rescale_generators(const PoissonPresentation& p, const EtaData& eta);

} // namespace pcgl
