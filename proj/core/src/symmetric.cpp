#include "pcgl/symmetric.hpp"

#include "pcgl/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pcgl {

SymmetricReport validate_symmetric(const PoissonPresentation& p) {
    SymmetricReport rep;
    const int n = p.n;
    auto names = p.variable_names();
    for (const auto& [kj, poly] : p.delta) {
        if (poly.is_zero()) continue;
        auto [k, j] = kj;
        if (!poly.supported_in(j + 1, k))
            rep.violations.push_back({"SupportViolation", {k + 1, j + 1}, to_string(poly, names)});
    }
    RatMatrix lam = lambda_matrix(p);

    if (p.raw_mode()) {
        if (!p.raw_lambda_star) {
            rep.violations.push_back({"NoHStarSolution", {}, "raw mode requires lambda_star"});
            return rep;
        }
        rep.lambda_star = *p.raw_lambda_star;
        for (int j = 0; j < n; ++j)
            if (rep.lambda_star[j] == 0)
                rep.violations.push_back({"ZeroLambdaStar", {j + 1}, "lambda*_" + std::to_string(j + 1) + " = 0"});
        return rep;
    }

    std::vector<RatVec> hs(n, RatVec(p.torus_rank, Rational(0)));
    rep.lambda_star.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        if (p.h_star) {
            hs[j] = (*p.h_star)[j];
            for (int k = j + 1; k < n; ++k) {
                Rational v = pair_h(hs[j], p.weights[k]);
                if (v != lam[j][k])
                    rep.violations.push_back({"HStarMismatch", {j + 1, k + 1},
                                              "<h*_j, chi_k> = " + to_string(v) + ", expected " + to_string(lam[j][k])});
            }
        } else {
            RatMatrix a;
            RatVec b;
            for (int k = j + 1; k < n; ++k) {
                RatVec row(p.torus_rank);
                for (int t = 0; t < p.torus_rank; ++t) row[t] = p.weights[k][t];
                a.push_back(row);
                b.push_back(lam[j][k]);
            }
            if (a.empty()) a.push_back(RatVec(p.torus_rank, Rational(0))), b.push_back(0);
            auto sol = solve_linear(a, b);
            if (!sol.consistent) {
                rep.violations.push_back({"NoHStarSolution", {j + 1}, "no h*_j with <h*_j, chi_k> = lambda_jk"});
                continue;
            }
            hs[j] = sol.particular;
            if (pair_h(hs[j], p.weights[j]) == 0) {
                for (const auto& v : sol.kernel)
                    if (pair_h(v, p.weights[j]) != 0) {
                        for (int t = 0; t < p.torus_rank; ++t) hs[j][t] += v[t];
                        break;
                    }
            }
        }
        rep.lambda_star[j] = pair_h(hs[j], p.weights[j]);
        if (rep.lambda_star[j] == 0)
            rep.violations.push_back({"ZeroLambdaStar", {j + 1}, "lambda*_" + std::to_string(j + 1) + " = 0"});
    }
    rep.h_star = hs;
    rep.h_star_solved = !p.h_star.has_value();
    return rep;
}

PoissonPresentation with_symmetric_data(const PoissonPresentation& p, const SymmetricReport& r) {
    if (!r.ok()) require_valid(ValidationReport{.violations = r.violations});
    PoissonPresentation q = p;
    if (!q.raw_mode()) q.h_star = r.h_star;
    return q;
}

RatVec lambda_star(const PoissonPresentation& p) {
    if (p.raw_mode()) {
        if (!p.raw_lambda_star) throw Error("NoHStarSolution", "raw mode requires lambda_star");
        return *p.raw_lambda_star;
    }
    if (!p.h_star) throw Error("NoHStarSolution", "h_star not available; run validate_symmetric first");
    RatVec out(p.n);
    for (int j = 0; j < p.n; ++j) out[j] = pair_h((*p.h_star)[j], p.weights[j]);
    return out;
}

DIntegers d_integers_from_values(const std::map<int, Rational>& by_label) {
    DIntegers out;
    out.q = 0;
    if (by_label.empty()) {
        out.q = 1;
        return out;
    }
    const Rational& first = by_label.begin()->second;
    for (const auto& [label, v] : by_label) {
        if (v == 0 || (v > 0) != (first > 0))
            throw Error("Incompatible", "lambda* ratio " + to_string(v) + " / " + to_string(first) + " is not positive",
                        {label});
        out.q = rational_gcd(out.q, v);
    }
    if (first < 0) out.q = -out.q;
    for (const auto& [label, v] : by_label) {
        Rational m = v / out.q;
        out.d[label] = m.get_num().get_si();
    }
    return out;
}

DIntegers compute_d_integers(const PoissonPresentation& p, const EtaData& eta) {
    RatVec ls = lambda_star(p);
    std::map<int, Rational> by_label;
    for (int l : eta.exchangeable) {
        int s = eta.succ[l];
        Rational lam_s = lambda_diag(p, s);
        if (ls[l] != -lam_s)
            throw Error("Incompatible", "lambda*_" + std::to_string(l + 1) + " = " + to_string(ls[l]) +
                                            " but -lambda_" + std::to_string(s + 1) + " = " + to_string(-lam_s),
                        {l + 1, s + 1});
        if (ls[l] != ls[s])
            throw Error("Incompatible", "lambda* differs along a level set at " + std::to_string(l + 1), {l + 1, s + 1});
        auto [it, fresh] = by_label.try_emplace(eta.eta[l], ls[l]);
        if (!fresh && it->second != ls[l])
            throw Error("Incompatible", "lambda* not constant on a level set", {l + 1});
    }
    return d_integers_from_values(by_label);
}

Perm identity_perm(int n) {
    Perm t(n);
    std::iota(t.begin(), t.end(), 0);
    return t;
}

Perm inverse(const Perm& t) {
    Perm inv(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) inv[t[i]] = static_cast<int>(i);
    return inv;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

bool is_xi(const Perm& t) {
    if (t.empty()) return true;
    int lo = t[0], hi = t[0];
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k] == lo - 1) lo = t[k];
        else if (t[k] == hi + 1) hi = t[k];
        else return false;
    }
    return lo == 0 && hi == static_cast<int>(t.size()) - 1;
}

namespace {

void extend_xi(int n, Perm& cur, int lo, int hi, std::vector<Perm>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    if (lo > 0) {
        cur.push_back(lo - 1);
        extend_xi(n, cur, lo - 1, hi, out);
        cur.pop_back();
    }
    if (hi < n - 1) {
        cur.push_back(hi + 1);
        extend_xi(n, cur, lo, hi + 1, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Perm> enumerate_xi(int n) {
    std::vector<Perm> out;
    for (int a = 0; a < n; ++a) {
        Perm cur{a};
        extend_xi(n, cur, a, a, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string perm_to_string(const Perm& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i] + 1;
    return os.str();
}

Perm tau_ij(int n, int i, int j) {
    Perm t;
    for (int v = i + 1; v <= j; ++v) t.push_back(v - 1);
    t.push_back(i - 1);
    for (int v = j + 1; v <= n; ++v) t.push_back(v - 1);
    for (int v = i - 1; v >= 1; --v) t.push_back(v - 1);
    return t;
}

GammaChain gamma_chain(int n) {
    GammaChain c;
    c.elements.push_back(identity_perm(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            c.elements.push_back(tau_ij(n, i, j));
            c.links.push_back({j - i - 1, i - 1, j - 1});
        }
    return c;
}

Perm tau_bullet_tau(const Perm& tau, const EtaData& eta) {
    const int n = static_cast<int>(tau.size());
    Perm out(n, -1);
    std::map<int, std::vector<int>> pre, level;
    for (int a = 0; a < n; ++a) {
        pre[eta.eta[tau[a]]].push_back(a);
        level[eta.eta[a]].push_back(a);
    }
    for (auto& [label, positions] : pre) {
        const auto& dest = level[label];
        for (std::size_t t = 0; t < positions.size(); ++t) out[positions[t]] = dest[t];
    }
    return out;
}

Perm tau_bullet(const Perm& tau, const EtaData& eta) { return compose(tau_bullet_tau(tau, eta), inverse(tau)); }

IntervalPrimeTable::IntervalPrimeTable(const PoissonPresentation& p, const EtaData& eta)
    : eta_(eta), one_(MvLaurent::constant(p.n, Rational(1))) {
    const int n = p.n;
    primes_.resize(n);
    for (int i = 0; i < n; ++i) {
        MvLaurent cur = MvLaurent::variable(n, i);
        primes_[i].push_back(cur);
        for (int s = eta.succ[i]; s != kNone; s = eta.succ[s]) {
            MvLaurent d = delta(p, s, cur);
            cur = cur * MvLaurent::variable(n, s) - d * Rational(1 / lambda_diag(p, s));
            primes_[i].push_back(cur);
        }
    }
}

const MvLaurent& IntervalPrimeTable::get(int i, int m) const {
    if (m == -1) return one_;
    if (i < 0 || i >= static_cast<int>(primes_.size()) || m < -1 || m >= static_cast<int>(primes_[i].size()))
        throw Error("IndexError", "interval [" + std::to_string(i + 1) + ", s^" + std::to_string(m) + "] is undefined",
                    {i + 1, m});
    return primes_[i][m];
}

int IntervalPrimeTable::chain_end(int i, int m) const {
    int t = i;
    for (int s = 0; s < m && t != kNone; ++s) t = eta_.succ[t];
    return t;
}

int IntervalPrimeTable::max_steps(int i) const { return static_cast<int>(primes_[i].size()) - 1; }

IntervalPrime IntervalPrimeTable::interval_prime(int i, int m) const {
    IntervalPrime ip;
    ip.i = i;
    ip.m = m;
    ip.poly = get(i, m);
    ip.exponent = zero_exp(eta_.n());
    for (int t = i, s = 0; s <= m; ++s, t = eta_.succ[t]) ip.exponent[t] = 1;
    auto lt = leading_term_revlex(ip.poly);
    if (lt.coefficient != 1 || lt.exponent != ip.exponent)
        throw Error("LeadingFormViolation", "interval prime [" + std::to_string(i + 1) + "," +
                                                std::to_string(chain_end(i, m) + 1) + "] has leading term " +
                                                to_string(MvLaurent::monomial(lt.exponent, lt.coefficient)),
                    {i + 1, m});
    return ip;
}

IntervalPrime interval_prime(const PoissonPresentation& p, const EtaData& eta, int i, int m) {
    return IntervalPrimeTable(p, eta).interval_prime(i, m);
}

std::vector<TauSelection> tau_selection(const EtaData& eta, const Perm& tau) {
    const int n = static_cast<int>(tau.size());
    std::vector<TauSelection> out;
    std::vector<bool> in_prefix(n, false);
    for (int k = 0; k < n; ++k) {
        int a = tau[k];
        in_prefix[a] = true;
        int m = 0;
        if (a >= tau[0]) {
            int t = a;
            while (eta.pred[t] != kNone && in_prefix[eta.pred[t]]) {
                t = eta.pred[t];
                ++m;
            }
            out.push_back({t, m});
        } else {
            int t = a;
            while (eta.succ[t] != kNone && in_prefix[eta.succ[t]]) {
                t = eta.succ[t];
                ++m;
            }
            out.push_back({a, m});
        }
    }
    return out;
}

std::vector<MvLaurent> y_sequence_for_tau(const IntervalPrimeTable& t, const Perm& tau) {
    std::vector<MvLaurent> out;
    for (const auto& sel : tau_selection(t.eta(), tau)) out.push_back(t.get(sel.start, sel.m));
    return out;
}

PoissonPresentation tau_presentation(const PoissonPresentation& p, const Perm& tau) {
    const int n = p.n;
    Perm inv = inverse(tau);
    PoissonPresentation q;
    q.n = n;
    q.torus_rank = p.torus_rank;
    RatMatrix lam = lambda_matrix(p);
    RatVec ls;
    bool need_star = false;
    std::vector<bool> max_type(n, true);
    int hi = n ? tau[0] : 0;
    for (int l = 1; l < n; ++l) {
        if (tau[l] > hi) hi = tau[l];
        else {
            max_type[l] = false;
            need_star = true;
        }
    }
    if (need_star) ls = lambda_star(p);
    for (int l = 0; l < n; ++l) {
        q.weights.push_back(p.weights[tau[l]]);
        if (!p.names.empty()) q.names.push_back(p.names[tau[l]]);
    }
    if (p.raw_mode()) {
        RatMatrix raw = zero_matrix(n, n);
        RatVec diag(n);
        for (int l = 0; l < n; ++l) {
            for (int j = 0; j < n; ++j) raw[l][j] = lam[tau[l]][tau[j]];
            diag[l] = max_type[l] ? lambda_diag(p, tau[l]) : ls[tau[l]];
        }
        q.raw_lambda = raw;
        q.raw_lambda_diag = diag;
    } else {
        for (int l = 0; l < n; ++l) q.h.push_back(max_type[l] ? p.h[tau[l]] : (*p.h_star)[tau[l]]);
    }
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < l; ++j) {
            int a = tau[l], b = tau[j];
            MvLaurent d(n);
            if (a > b) {
                if (auto e = p.delta_entry(a, b)) d = *e;
            } else {
                if (auto e = p.delta_entry(b, a)) d = -*e;
            }
            if (!d.is_zero()) q.delta[{l, j}] = d.rename(inv, n);
        }
    return q;
}

UElementData u_element_and_pi(const IntervalPrimeTable& t, int i, int m) {
    const EtaData& eta = t.eta();
    const int n = eta.n();
    if (m < 1 || t.chain_end(i, m) == kNone)
        throw Error("IndexError", "u-element needs m >= 1 and s^m(i) defined", {i + 1, m});
    int si = eta.succ[i];
    int top = t.chain_end(i, m);
    UElementData u;
    u.i = i;
    u.m = m;
    u.u = t.get(i, m - 1) * t.get(si, m - 1) - t.get(si, m - 2) * t.get(i, m);
    if (u.u.is_zero()) throw Error("LeadingFormViolation", "u-element vanishes", {i + 1, m});
    auto lt = leading_term_revlex(u.u);
    u.pi = lt.coefficient;
    u.f = lt.exponent;
    for (int c = i, s = 0; s <= m; ++s, c = eta.succ[c])
        if (u.f[c] != 0)
            throw Error("LeadingFormViolation", "leading exponent of u touches the chain of " + std::to_string(i + 1),
                        {i + 1, m});
    for (int k = 0; k < n; ++k)
        if (u.f[k] != 0 && (k <= i || k >= top))
            throw Error("LeadingFormViolation", "leading exponent of u leaves the open interval", {i + 1, m});
    u.g = zero_exp(n);
    ExpVec rebuilt = zero_exp(n);
    for (int k = i + 1; k < top; ++k) {
        bool on_chain = eta.eta[k] == eta.eta[i];
        if (on_chain) continue;
        if (eta.succ[k] != kNone && eta.succ[k] <= top) continue;
        int mk = u.f[k];
        if (mk < 0) throw Error("LeadingFormViolation", "negative multiplicity in u", {i + 1, m});
        u.g[k] = mk;
        for (int c = k; c != kNone && c >= i + 1; c = eta.pred[c]) rebuilt[c] += mk;
    }
    if (rebuilt != u.f)
        throw Error("LeadingFormViolation", "leading exponent " + exp_to_string(u.f) +
                                                " is not a combination of interval exponents", {i + 1, m});
    return u;
}

RescaleResult rescale_generators(const PoissonPresentation& p, const EtaData& eta) {
    const int n = p.n;
    IntervalPrimeTable table(p, eta);
    RescaleResult res;
    res.gamma.assign(n, Rational(1));
    for (int i = 0; i < n; ++i) {
        int j = eta.pred[i];
        if (j == kNone) continue;
        UElementData u = u_element_and_pi(table, j, 1);
        Rational g = 1 / res.gamma[j];
        for (int k = 0; k < n; ++k)
            for (int e = 0; e < u.f[k]; ++e) g *= res.gamma[k];
        g /= u.pi;
        res.gamma[i] = g;
    }
    res.presentation = apply_rescaling(p, res.gamma);
    IntervalPrimeTable after(res.presentation, eta);
    res.normalized = true;
    for (int i = 0; i < n; ++i)
        for (int m = 1; m <= after.max_steps(i); ++m)
            if (u_element_and_pi(after, i, m).pi != 1) res.normalized = false;
    return res;
}

} // namespace pcgl
