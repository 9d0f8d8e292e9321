#include "pcgl/laurent.hpp"

#include "pcgl/error.hpp"

#include <algorithm>
#include <sstream>

namespace pcgl {

ExpVec zero_exp(int n) { return ExpVec(static_cast<std::size_t>(n), 0); }

ExpVec unit_exp(int n, int k) {
    ExpVec e = zero_exp(n);
    e.at(static_cast<std::size_t>(k)) = 1;
    return e;
}

ExpVec operator+(const ExpVec& a, const ExpVec& b) {
    ExpVec c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

ExpVec operator-(const ExpVec& a, const ExpVec& b) {
    ExpVec c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

int revlex_compare(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

MvLaurent MvLaurent::constant(int nvars, const Rational& c) {
    MvLaurent f(nvars);
    f.add_term(zero_exp(nvars), c);
    return f;
}

MvLaurent MvLaurent::variable(int nvars, int k) {
    MvLaurent f(nvars);
    f.add_term(unit_exp(nvars, k), Rational(1));
    return f;
}

MvLaurent MvLaurent::monomial(const ExpVec& e, const Rational& c) {
    MvLaurent f(static_cast<int>(e.size()));
    f.add_term(e, c);
    return f;
}

void MvLaurent::add_term(const ExpVec& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational MvLaurent::coefficient(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool MvLaurent::is_polynomial() const {
    for (const auto& [e, c] : terms_)
        for (int v : e)
            if (v < 0) return false;
    return true;
}

bool MvLaurent::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int v : terms_.begin()->first)
        if (v != 0) return false;
    return true;
}

bool MvLaurent::uses_variable(int j) const {
    for (const auto& [e, c] : terms_)
        if (e[static_cast<std::size_t>(j)] != 0) return true;
    return false;
}

bool MvLaurent::supported_in(int lo, int hi) const {
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < n_; ++i)
            if (e[static_cast<std::size_t>(i)] != 0 && (i < lo || i >= hi)) return false;
    return true;
}

ExpVec MvLaurent::min_exponents() const {
    ExpVec m = zero_exp(n_);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        }
    }
    return m;
}

int MvLaurent::total_degree() const {
    int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int v : e) d += v;
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

MvLaurent MvLaurent::operator-() const {
    MvLaurent r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MvLaurent& MvLaurent::operator+=(const MvLaurent& o) {
    if (n_ == 0 && terms_.empty()) n_ = o.n_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MvLaurent& MvLaurent::operator-=(const MvLaurent& o) {
    if (n_ == 0 && terms_.empty()) n_ = o.n_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MvLaurent operator*(const MvLaurent& a, const MvLaurent& b) {
    MvLaurent r(std::max(a.n_, b.n_));
    if (a.terms_.empty() || b.terms_.empty()) return r;
    ExpVec e(static_cast<std::size_t>(r.n_));
    Rational c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            c = ca * cb;
            auto [it, inserted] = r.terms_.try_emplace(e, c);
            if (!inserted) it->second += c;
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        if (it->second == 0)
            it = r.terms_.erase(it);
        else
            ++it;
    }
    return r;
}

MvLaurent& MvLaurent::operator*=(const MvLaurent& o) {
    *this = *this * o;
    return *this;
}

MvLaurent& MvLaurent::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MvLaurent MvLaurent::pow(int e) const {
    if (e < 0) {
        if (!is_monomial()) throw Error("NonInvertibleImage", "negative power of a non-monomial");
        const auto& [x, c] = *terms_.begin();
        ExpVec y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * e;
        Rational cc = 1;
        Rational inv = 1 / c;
        for (int i = 0; i < -e; ++i) cc *= inv;
        return monomial(y, cc);
    }
    MvLaurent result = constant(n_, Rational(1));
    MvLaurent base = *this;
    int k = e;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

MvLaurent MvLaurent::shift(const ExpVec& s) const {
    MvLaurent r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + s, c);
    return r;
}

MvLaurent MvLaurent::scale_variables(const RatVec& f) const {
    MvLaurent r(n_);
    for (const auto& [e, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Rational p = 1;
            Rational base = e[i] > 0 ? f[i] : Rational(1 / f[i]);
            for (int t = 0; t < std::abs(e[i]); ++t) p *= base;
            v *= p;
        }
        r.add_term(e, v);
    }
    return r;
}

MvLaurent MvLaurent::rename(const std::vector<int>& perm, int nvars_out) const {
    MvLaurent r(nvars_out);
    for (const auto& [e, c] : terms_) {
        ExpVec y = zero_exp(nvars_out);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) y.at(static_cast<std::size_t>(perm[i])) += e[i];
        r.add_term(y, c);
    }
    return r;
}

LeadingTerm leading_term_revlex(const MvLaurent& f) {
    if (f.is_zero()) throw Error("ZeroPolynomial", "leading term of the zero polynomial");
    const auto& [e, c] = *f.terms().rbegin();
    return {c, e};
}

namespace {

// Division of polynomials (nonnegative exponents) in revlex order.
// Returns false when the divisor does not divide exactly.
bool divide_polynomials(MvLaurent p, const MvLaurent& q, MvLaurent& quotient) {
    const auto lq = leading_term_revlex(q);
    quotient = MvLaurent(p.nvars());
    while (!p.is_zero()) {
        const auto lp = leading_term_revlex(p);
        ExpVec d = lp.exponent - lq.exponent;
        for (int v : d)
            if (v < 0) return false;
        MvLaurent t = MvLaurent::monomial(d, lp.coefficient / lq.coefficient);
        quotient += t;
        p -= t * q;
    }
    return true;
}

} // namespace

MvLaurent exact_divide(const MvLaurent& num, const MvLaurent& den) {
    if (den.is_zero()) throw Error("ZeroDivisor", "division by the zero polynomial");
    int n = std::max(num.nvars(), den.nvars());
    if (num.is_zero()) return MvLaurent(n);
    ExpVec a = den.min_exponents();
    ExpVec b = num.min_exponents();
    ExpVec neg_a(a.size()), neg_b(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) neg_a[i] = -a[i];
    for (std::size_t i = 0; i < b.size(); ++i) neg_b[i] = -b[i];
    MvLaurent q = den.shift(neg_a);
    MvLaurent p = num.shift(neg_b);
    MvLaurent quotient;
    if (!divide_polynomials(p, q, quotient))
        throw Error("NotDivisible", "no Laurent quotient for (" + to_string(num) + ") / (" + to_string(den) + ")");
    return quotient.shift(b - a);
}

MvLaurent substitute(const MvLaurent& f, const std::vector<MvLaurent>& images) {
    if (images.size() != static_cast<std::size_t>(f.nvars()))
        throw Error("ArityMismatch", "substitute: wrong number of images");
    int m = images.empty() ? 0 : images[0].nvars();
    for (const auto& img : images) m = std::max(m, img.nvars());
    const std::size_t n = images.size();

    // Denominator exponents for multi-term images.
    ExpVec lift = zero_exp(static_cast<int>(n));
    ExpVec mins = f.min_exponents();
    for (std::size_t j = 0; j < n; ++j)
        if (!images[j].is_monomial() && mins[j] < 0) lift[j] = -mins[j];

    std::vector<std::map<int, MvLaurent>> cache(n);
    auto power = [&](std::size_t j, int e) -> const MvLaurent& {
        auto it = cache[j].find(e);
        if (it != cache[j].end()) return it->second;
        MvLaurent v;
        if (e == 0) v = MvLaurent::constant(m, Rational(1));
        else if (e < 0) v = images[j].pow(e);
        else {
            auto below = cache[j].find(e - 1);
            v = below != cache[j].end() ? below->second * images[j] : images[j].pow(e);
        }
        return cache[j].emplace(e, std::move(v)).first->second;
    };

    MvLaurent sum(m);
    for (const auto& [e, c] : f.terms()) {
        MvLaurent term = MvLaurent::constant(m, c);
        for (std::size_t j = 0; j < n; ++j) {
            int k = e[j] + lift[j];
            if (k == 0) continue;
            if (k > 0) {
                for (int t = 1; t <= k; ++t) power(j, t);
            }
            term *= power(j, k);
            if (term.is_zero()) break;
        }
        sum += term;
    }
    bool lifted = false;
    for (int v : lift)
        if (v) lifted = true;
    if (!lifted) return sum;
    MvLaurent den = MvLaurent::constant(m, Rational(1));
    for (std::size_t j = 0; j < n; ++j)
        if (lift[j]) den *= images[j].pow(lift[j]);
    try {
        return exact_divide(sum, den);
    } catch (const Error& e) {
        throw Error("NonInvertibleImage", "negative power of a non-invertible image does not cancel");
    }
}

MvLaurent apply_derivation(const std::vector<MvLaurent>& gen_images, const MvLaurent& f) {
    MvLaurent out(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0 || j >= gen_images.size() || gen_images[j].is_zero()) continue;
            ExpVec d = e;
            d[j] -= 1;
            MvLaurent t = gen_images[j].shift(d);
            t *= c * e[j];
            out += t;
        }
    }
    return out;
}

MvLaurent partial_derivative(const MvLaurent& f, int j) {
    MvLaurent out(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        int k = e[static_cast<std::size_t>(j)];
        if (k == 0) continue;
        ExpVec d = e;
        d[static_cast<std::size_t>(j)] -= 1;
        out.add_term(d, c * k);
    }
    return out;
}

std::string exp_to_string(const ExpVec& e) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ')';
    return os.str();
}

std::string to_string(const MvLaurent& f, const std::vector<std::string>& names) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            std::string v = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            if (e[i] != 1) v += "^" + std::to_string(e[i]);
            factors.push_back(v);
        }
        bool unit = mag == 1;
        if (!unit || factors.empty()) {
            os << mag.get_str();
            if (!factors.empty()) os << '*';
        }
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

} // namespace pcgl
