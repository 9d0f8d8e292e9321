#pragma once

#include "pcgl/symmetric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pcgl {

// N x |ex| integer matrix; column c belongs to exchangeable index ex[c].
using IntMatrix = std::vector<std::vector<long>>;

struct Seed {
    std::vector<MvLaurent> vars;
    IntMatrix btilde;
    std::vector<int> ex;
};

struct CompatiblePair {
    RatMatrix r;
    IntMatrix btilde;
    std::vector<int> ex;
    RatVec beta;
};

int ex_column(const std::vector<int>& ex, int k); // Error("NotExchangeable")

IntMatrix mutate_matrix(const IntMatrix& b, const std::vector<int>& ex, int k);
IntMatrix e_matrix(const IntMatrix& b, const std::vector<int>& ex, int k, int eps); // N x N
IntMatrix f_matrix(const IntMatrix& b, const std::vector<int>& ex, int k, int eps); // ex x ex
RatMatrix mutate_r(const RatMatrix& r, const IntMatrix& b, const std::vector<int>& ex, int k, int eps);

// beta_k = (B^T r)_kk for k in ex; Error("CompatibilityFailure") otherwise.
RatVec check_compatible(const RatMatrix& r, const IntMatrix& b, const std::vector<int>& ex);

// Computes with both signs; Error("EpsilonMismatch") or Error("CompatibilityLost").
CompatiblePair mutate_pair(const CompatiblePair& pair, int k);

std::vector<MvLaurent> mutate_variables(const std::vector<MvLaurent>& vars, const IntMatrix& b,
                                        const std::vector<int>& ex, int k);
Seed mutate_seed(const Seed& s, int k);

std::size_t integer_rank(const IntMatrix& b);
// d_k b_kj = -d_j b_jk on the principal part.
bool skew_symmetrized_by(const IntMatrix& b, const std::vector<int>& ex, const std::vector<long>& d);

// For each l in ex: Omega_r(b, e_j) = delta_{jl} lambda*_l and sum_k b_k weight_k = 0.
// Errors: NoSolution, NonUnique, NonIntegral.
IntMatrix solve_btilde(const RatMatrix& r, const std::vector<WeightVec>& weights, const std::vector<int>& ex,
                       const RatVec& lambda_star);

struct TauSeedBundle {
    Perm tau;
    Perm tbt;                              // tau_bullet o tau
    std::vector<MvLaurent> ytilde;         // polynomials in x
    std::vector<MvLaurent> ytilde_y;       // Laurent in the initial cluster
    std::vector<WeightVec> weights;
    RatMatrix r;
    IntMatrix btilde;
    RatVec beta;
    std::vector<MvLaurent> x_in_cluster;   // x_a as Laurent in ytilde
    std::vector<MvLaurent> y_in_cluster;   // initial y_k as Laurent in ytilde
};

// Everything shared by the per-tau computations. The presentation must already
// satisfy the symmetric conditions with pi = 1 on every interval.
class ClusterContext {
public:
    explicit ClusterContext(PoissonPresentation p);

    const PoissonPresentation& presentation() const { return p_; }
    const EtaData& eta() const { return run_.eta; }
    const PrimeSequenceReport& primes() const { return run_.seq; }
    const IntervalPrimeTable& intervals() const { return table_; }
    const BracketTable& brackets() const { return brackets_; }
    const RatVec& lambda_star() const { return lambda_star_; }
    const DIntegers& d_integers() const { return d_; }
    const RatMatrix& lambda() const { return lambda_; }
    const std::vector<MvLaurent>& x_in_y() const { return x_in_y_; }
    std::vector<long> d_by_index() const;

    MvLaurent to_initial_cluster(const MvLaurent& f_in_x) const;
    TauSeedBundle seed_for_tau(const Perm& tau) const;
    std::vector<TauSeedBundle> seeds_for(const std::vector<Perm>& taus, int jobs) const;

private:
    PoissonPresentation p_;
    PrimeRun run_;
    IntervalPrimeTable table_;
    BracketTable brackets_;
    RatMatrix lambda_;
    RatVec lambda_star_;
    DIntegers d_;
    std::vector<MvLaurent> x_in_y_;
};

Seed seed_of(const TauSeedBundle& b, const std::vector<int>& ex);

struct ClusterExpression {
    bool laurent = false;   // expressible as a Laurent polynomial in ytilde
    bool frozen_ok = false; // frozen variables outside inv have nonnegative exponents
    MvLaurent value;
    std::string witness;
    bool in_ring() const { return laurent && frozen_ok; }
};

// f is a Laurent polynomial in 2N variables: x_1..x_N followed by y_1..y_N.
ClusterExpression express_in_cluster(const ClusterContext& ctx, const TauSeedBundle& b, const MvLaurent& f,
                                     const std::vector<int>& inv);

struct MembershipCertificate {
    bool certified = true;
    std::vector<std::pair<Perm, ClusterExpression>> per_tau;
};

MembershipCertificate upper_membership(const ClusterContext& ctx, const std::vector<TauSeedBundle>& bundles,
                                       const MvLaurent& f, const std::vector<int>& inv);

struct LogCanonicalReport {
    bool ok = true;
    int pairs = 0;
    std::string failure;
};

LogCanonicalReport check_log_canonical(const ClusterContext& ctx, const TauSeedBundle& b);

struct LinkReport {
    Perm tau;
    Perm tau2;
    int k = 0;         // 0-based position
    int k_bullet = -1; // 0-based, mutation branch only
    std::string branch; // "equal" or "mutation"
    std::vector<std::pair<std::string, bool>> checks;
    ExpVec g;
    bool verified = false;
    std::string failure;
};

LinkReport verify_one_step(const ClusterContext& ctx, const TauSeedBundle& a, const TauSeedBundle& b);

struct ChainReport {
    std::vector<TauSeedBundle> bundles;
    std::vector<LinkReport> links;
    bool ok = true;
};

ChainReport chain_verify(const ClusterContext& ctx, int jobs = 1);

// Seed-level invariants: full rank, compatibility with beta = lambda*, d-skew-symmetrizable.
void check_bundle(const ClusterContext& ctx, const TauSeedBundle& b);

} // namespace pcgl
