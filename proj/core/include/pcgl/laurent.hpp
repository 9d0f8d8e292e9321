#pragma once

#include "pcgl/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace pcgl {

// Exponent vector of a Laurent monomial; entries may be negative.
using ExpVec = std::vector<int>;

ExpVec zero_exp(int n);
ExpVec unit_exp(int n, int k); // e_k, 0-based k
ExpVec operator+(const ExpVec& a, const ExpVec& b);
ExpVec operator-(const ExpVec& a, const ExpVec& b);

// Reverse lexicographic: the last coordinate is compared first.
// Returns <0, 0, >0.
int revlex_compare(const ExpVec& a, const ExpVec& b);

struct RevlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const { return revlex_compare(a, b) < 0; }
};

// Sparse Laurent polynomial over Q in a fixed number of variables.
// Terms are kept in increasing revlex order, so the leading term is the last.
class MvLaurent {
public:
    using TermMap = std::map<ExpVec, Rational, RevlexLess>;

    MvLaurent() = default;
    explicit MvLaurent(int nvars) : n_(nvars) {}

    static MvLaurent constant(int nvars, const Rational& c);
    static MvLaurent variable(int nvars, int k);
    static MvLaurent monomial(const ExpVec& e, const Rational& c = Rational(1));

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const ExpVec& e, const Rational& c);
    Rational coefficient(const ExpVec& e) const;

    bool is_polynomial() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    bool uses_variable(int j) const;
    // True when only variables with index in [lo, hi) occur.
    bool supported_in(int lo, int hi) const;
    ExpVec min_exponents() const;
    int total_degree() const; // max over terms; 0 for the zero polynomial

    MvLaurent operator-() const;
    MvLaurent& operator+=(const MvLaurent& o);
    MvLaurent& operator-=(const MvLaurent& o);
    MvLaurent& operator*=(const MvLaurent& o);
    MvLaurent& operator*=(const Rational& c);

    friend MvLaurent operator+(MvLaurent a, const MvLaurent& b) { return a += b; }
    friend MvLaurent operator-(MvLaurent a, const MvLaurent& b) { return a -= b; }
    friend MvLaurent operator*(const MvLaurent& a, const MvLaurent& b);
    friend MvLaurent operator*(MvLaurent a, const Rational& c) { return a *= c; }
    friend MvLaurent operator*(const Rational& c, MvLaurent a) { return a *= c; }
    friend bool operator==(const MvLaurent& a, const MvLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MvLaurent& a, const MvLaurent& b) { return !(a == b); }

    // Negative powers only for single-term values.
    MvLaurent pow(int e) const;
    MvLaurent shift(const ExpVec& e) const; // multiply by x^e
    // x_i -> c_i x_i for every i
    MvLaurent scale_variables(const RatVec& c) const;
    // Reindex variables: variable i becomes variable perm[i] in a ring of nvars_out.
    MvLaurent rename(const std::vector<int>& perm, int nvars_out) const;

private:
    int n_ = 0;
    TermMap terms_;
};

struct LeadingTerm {
    Rational coefficient;
    ExpVec exponent;
};

LeadingTerm leading_term_revlex(const MvLaurent& f);

// q with num = q * den, or Error("NotDivisible"); Error("ZeroDivisor") if den = 0.
MvLaurent exact_divide(const MvLaurent& num, const MvLaurent& den);

// Ring homomorphism x_j -> images[j]. Negative powers of multi-term images are
// handled by one exact division at the end; Error("NonInvertibleImage") if it fails.
MvLaurent substitute(const MvLaurent& f, const std::vector<MvLaurent>& images);

// The derivation D with D(x_j) = gen_images[j].
MvLaurent apply_derivation(const std::vector<MvLaurent>& gen_images, const MvLaurent& f);
MvLaurent partial_derivative(const MvLaurent& f, int j);

// Human notation, leading term first. Default names are x1..xN.
std::string to_string(const MvLaurent& f, const std::vector<std::string>& names = {});
std::string exp_to_string(const ExpVec& e);

} // namespace pcgl
