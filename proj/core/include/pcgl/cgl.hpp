#pragma once

#include "pcgl/poisson.hpp"

#include <string>
#include <vector>

namespace pcgl {

inline constexpr int kNone = -1; // p(k) = -infinity or s(k) = +infinity

struct EtaData {
    std::vector<int> eta;  // canonical labels 0,1,2,... by first appearance
    std::vector<int> pred;
    std::vector<int> succ;
    std::vector<int> exchangeable; // sorted
    int rank = 0;

    int n() const { return static_cast<int>(eta.size()); }
    bool is_exchangeable(int k) const { return succ[k] != kNone; }
    // e_bar_k = sum over the predecessor chain of k
    ExpVec e_bar(int k) const;
    // Elements of the level set of k in increasing order.
    std::vector<int> level_set(int k) const;
};

// Derives pred/succ/ex/rank from an eta labelling (labels need not be canonical).
EtaData eta_from_labels(const std::vector<int>& labels);

struct PrimeSequenceReport {
    std::vector<MvLaurent> y;
    std::vector<MvLaurent> c; // zero when p(k) = -infinity
    std::vector<ExpVec> leading_exponents;
    std::vector<WeightVec> weights;
};

struct QData {
    RatMatrix alpha;
    RatMatrix q;
};

// delta_k(f) for f supported on x_1..x_{k-1}; Error("SupportViolation") otherwise.
MvLaurent delta(const PoissonPresentation& p, int k, const MvLaurent& f);
MvLaurent sigma(const PoissonPresentation& p, int k, const MvLaurent& f);
// Same value computed as {x_k, f} - sigma_k(f) x_k through the bracket engine.
MvLaurent delta_via_bracket(const PoissonPresentation& p, int k, const MvLaurent& f);

struct PrimeRun {
    EtaData eta;
    PrimeSequenceReport seq;
};

// Errors: AmbiguousPredecessor, NoPredecessor.
PrimeRun compute_eta_and_primes(const PoissonPresentation& p);

struct CertReport {
    bool ok = true;
    int checks = 0;
    std::string failure; // first violated identity with both sides
};

CertReport certify_prime_sequence(const PoissonPresentation& p, const EtaData& eta, const PrimeSequenceReport& seq);

Rational omega(const RatMatrix& m, const ExpVec& a, const ExpVec& b);
QData alpha_q_matrices(const PoissonPresentation& p, const EtaData& eta);
RatMatrix q_matrix(const RatMatrix& lambda, const EtaData& eta);

// sum_n (1/n!) (-1/lambda_k)^n delta_k^n(f) x_k^{-n}
MvLaurent cauchon_theta(const PoissonPresentation& p, int k, const MvLaurent& f);

struct HmaxEquation {
    int k;      // psi_k = psi_{j}^{-1} prod psi_i^{f_i}
    int j;
    ExpVec f;
};

struct HmaxReport {
    std::vector<HmaxEquation> equations;
    int dimension = 0;
    bool matches_rank = false;
    std::string choice = "smallest j_k; revlex-leading monomial of delta_k(x_{j_k})";
};

HmaxReport hmax_equations(const PoissonPresentation& p, const EtaData& eta);

} // namespace pcgl
