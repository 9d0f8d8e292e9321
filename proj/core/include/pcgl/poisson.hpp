#pragma once

#include "pcgl/laurent.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcgl {

using WeightVec = std::vector<long>;

// Iterated Poisson-Ore presentation with a torus action. Indices are 0-based.
//
//   {x_k, x_j} = lambda_{kj} x_k x_j + delta_k(x_j)   for k > j
//
// lambda_{kj} = <h_k, chi_j> for j < k and lambda_k = <h_k, chi_k>. In raw
// mode the lambda data is given directly and the h-vectors are not used.
struct PoissonPresentation {
    int n = 0;
    int torus_rank = 0;
    std::vector<WeightVec> weights; // chi_{x_k}
    std::vector<RatVec> h;
    std::optional<std::vector<RatVec>> h_star;

    std::optional<RatMatrix> raw_lambda;      // full N x N
    std::optional<RatVec> raw_lambda_diag;    // lambda_k
    std::optional<RatVec> raw_lambda_star;    // lambda*_j

    std::map<std::pair<int, int>, MvLaurent> delta; // (k, j), k > j
    std::vector<std::string> names;

    bool raw_mode() const { return raw_lambda.has_value(); }
    const MvLaurent* delta_entry(int k, int j) const;
    bool delta_row_zero(int k) const;
    std::vector<std::string> variable_names() const;
};

Rational pair_h(const RatVec& h, const WeightVec& w);

// Skew-symmetric matrix with lambda_{kj} for k > j from h_k (or raw data).
RatMatrix lambda_matrix(const PoissonPresentation& p);
Rational lambda_diag(const PoissonPresentation& p, int k);

// Generator brackets {x_a, x_b} as polynomials, cached per presentation.
class BracketTable {
public:
    explicit BracketTable(const PoissonPresentation& p);

    const MvLaurent& generator_bracket(int a, int b) const { return table_[a][b]; }
    MvLaurent bracket(const MvLaurent& f, const MvLaurent& g) const;
    int nvars() const { return n_; }

private:
    int n_;
    std::vector<std::vector<MvLaurent>> table_;
};

MvLaurent bracket(const PoissonPresentation& p, const MvLaurent& f, const MvLaurent& g);

// Torus degree of a homogeneous element; Error("Inhomogeneous") otherwise.
WeightVec weight_of(const PoissonPresentation& p, const MvLaurent& f);
WeightVec weight_of_exponent(const PoissonPresentation& p, const ExpVec& e);
std::optional<WeightVec> try_weight_of(const PoissonPresentation& p, const MvLaurent& f);

struct Violation {
    std::string code;        // JacobiFailure, InhomogeneousDelta, ...
    std::vector<int> where;  // 1-based indices
    std::string witness;     // human-readable witness polynomial
};

struct ValidationReport {
    bool jacobi = true;
    bool homogeneous = true;
    bool nonzero_eigenvalues = true;
    bool locally_nilpotent = true;
    bool skew = true;
    bool skew_checked = false; // only meaningful in raw mode
    int nilpotence_bound = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

struct ValidateOptions {
    int max_nilpotence_iters = 0; // 0 selects 2 + N * (max total degree)
    int jobs = 1;
};

ValidationReport validate_algebra(const PoissonPresentation& p, const ValidateOptions& opt = {});

// Throws Error with the first violation's code.
void require_valid(const ValidationReport& r);

// Rescaled generators x'_j = gamma_j x_j.
PoissonPresentation apply_rescaling(const PoissonPresentation& p, const RatVec& gamma);

} // namespace pcgl
