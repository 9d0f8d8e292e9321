#include "pcgl/cgl.hpp"

#include "pcgl/error.hpp"

#include <algorithm>
#include <map>

namespace pcgl {

ExpVec EtaData::e_bar(int k) const {
    ExpVec e = zero_exp(n());
    for (int t = k; t != kNone; t = pred[t]) e[t] += 1;
    return e;
}

std::vector<int> EtaData::level_set(int k) const {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
        if (eta[i] == eta[k]) out.push_back(i);
    return out;
}

EtaData eta_from_labels(const std::vector<int>& labels) {
    const int n = static_cast<int>(labels.size());
    EtaData d;
    d.eta.assign(n, 0);
    d.pred.assign(n, kNone);
    d.succ.assign(n, kNone);
    std::map<int, int> canon;
    std::map<int, int> last;
    for (int k = 0; k < n; ++k) {
        auto [it, fresh] = canon.try_emplace(labels[k], static_cast<int>(canon.size()));
        d.eta[k] = it->second;
        auto l = last.find(labels[k]);
        if (l != last.end()) {
            d.pred[k] = l->second;
            d.succ[l->second] = k;
        }
        last[labels[k]] = k;
    }
    for (int k = 0; k < n; ++k) {
        if (d.succ[k] != kNone) d.exchangeable.push_back(k);
        if (d.pred[k] == kNone) ++d.rank;
    }
    return d;
}

MvLaurent delta(const PoissonPresentation& p, int k, const MvLaurent& f) {
    if (!f.supported_in(0, k))
        throw Error("SupportViolation", "delta_" + std::to_string(k + 1) + " applied outside R_" + std::to_string(k),
                    {k + 1});
    std::vector<MvLaurent> imgs(p.n, MvLaurent(p.n));
    bool any = false;
    for (int j = 0; j < k; ++j)
        if (auto d = p.delta_entry(k, j)) {
            imgs[j] = *d;
            any = true;
        }
    if (!any) return MvLaurent(p.n);
    return apply_derivation(imgs, f);
}

MvLaurent sigma(const PoissonPresentation& p, int k, const MvLaurent& f) {
    RatMatrix lam = lambda_matrix(p);
    MvLaurent out(p.n);
    for (const auto& [e, c] : f.terms()) {
        Rational s = 0;
        for (int j = 0; j < p.n; ++j)
            if (e[j]) s += lam[k][j] * e[j];
        out.add_term(e, c * s);
    }
    return out;
}

MvLaurent delta_via_bracket(const PoissonPresentation& p, int k, const MvLaurent& f) {
    MvLaurent xk = MvLaurent::variable(p.n, k);
    return bracket(p, xk, f) - sigma(p, k, f) * xk;
}

PrimeRun compute_eta_and_primes(const PoissonPresentation& p) {
    const int n = p.n;
    std::vector<int> labels(n, 0);
    PrimeSequenceReport seq;
    seq.y.assign(n, MvLaurent(n));
    seq.c.assign(n, MvLaurent(n));
    std::vector<int> ends; // P(k-1): indices without a successor so far
    int next_label = 0;
    for (int k = 0; k < n; ++k) {
        MvLaurent xk = MvLaurent::variable(n, k);
        if (p.delta_row_zero(k)) {
            labels[k] = next_label++;
            seq.y[k] = xk;
        } else {
            std::vector<int> hits;
            std::vector<MvLaurent> values;
            for (int j : ends) {
                MvLaurent d = delta(p, k, seq.y[j]);
                if (!d.is_zero()) {
                    hits.push_back(j);
                    values.push_back(std::move(d));
                }
            }
            if (hits.empty())
                throw Error("NoPredecessor", "no j in P(" + std::to_string(k) + ") with delta_" +
                                                 std::to_string(k + 1) + "(y_j) != 0", {k + 1});
            if (hits.size() > 1) {
                std::string c;
                std::vector<int> where{k + 1};
                for (int h : hits) {
                    c += (c.empty() ? "" : ",") + std::to_string(h + 1);
                    where.push_back(h + 1);
                }
                throw Error("AmbiguousPredecessor",
                            "delta_" + std::to_string(k + 1) + "(y_j) != 0 for several j: {" + c + "}", where);
            }
            int j = hits[0];
            labels[k] = labels[j];
            ends.erase(std::find(ends.begin(), ends.end(), j));
            seq.c[k] = values[0] * Rational(1 / lambda_diag(p, k));
            seq.y[k] = seq.y[j] * xk - seq.c[k];
        }
        ends.push_back(k);
    }
    PrimeRun run{eta_from_labels(labels), std::move(seq)};
    for (int k = 0; k < n; ++k) {
        run.seq.leading_exponents.push_back(leading_term_revlex(run.seq.y[k]).exponent);
        auto w = try_weight_of(p, run.seq.y[k]);
        run.seq.weights.push_back(w ? *w : WeightVec{});
    }
    return run;
}

Rational omega(const RatMatrix& m, const ExpVec& a, const ExpVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) s += m[i][j] * (a[i] * b[j]);
    }
    return s;
}

RatMatrix q_matrix(const RatMatrix& lambda, const EtaData& eta) {
    const int n = eta.n();
    RatMatrix q = zero_matrix(n, n);
    std::vector<ExpVec> eb;
    for (int k = 0; k < n; ++k) eb.push_back(eta.e_bar(k));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) q[k][j] = omega(lambda, eb[k], eb[j]);
    return q;
}

QData alpha_q_matrices(const PoissonPresentation& p, const EtaData& eta) {
    RatMatrix lam = lambda_matrix(p);
    QData d;
    d.alpha = zero_matrix(p.n, p.n);
    for (int k = 0; k < p.n; ++k)
        for (int j = 0; j < p.n; ++j) d.alpha[k][j] = omega(lam, unit_exp(p.n, k), eta.e_bar(j));
    d.q = q_matrix(lam, eta);
    return d;
}

CertReport certify_prime_sequence(const PoissonPresentation& p, const EtaData& eta, const PrimeSequenceReport& seq) {
    CertReport rep;
    const int n = p.n;
    auto names = p.variable_names();
    BracketTable bt(p);
    QData qd = alpha_q_matrices(p, eta);
    auto fail = [&](const std::string& what, const MvLaurent& lhs, const MvLaurent& rhs) {
        if (rep.ok) {
            rep.ok = false;
            rep.failure = what + ": lhs = " + to_string(lhs, names) + ", rhs = " + to_string(rhs, names);
        }
    };
    auto tag = [](const char* s, int a, int b = -1) {
        std::string t = std::string(s) + "(" + std::to_string(a + 1);
        if (b >= 0) t += "," + std::to_string(b + 1);
        return t + ")";
    };
    for (int k = 0; k < n && rep.ok; ++k) {
        const MvLaurent& yk = seq.y[k];
        ++rep.checks;
        if (yk.is_zero() || !try_weight_of(p, yk)) {
            fail(tag("homogeneous", k), yk, yk);
            break;
        }
        auto lt = leading_term_revlex(yk);
        ++rep.checks;
        if (lt.coefficient != 1 || lt.exponent != eta.e_bar(k))
            fail(tag("leading_term", k), MvLaurent::monomial(lt.exponent, lt.coefficient),
                 MvLaurent::monomial(eta.e_bar(k)));
        MvLaurent xk = MvLaurent::variable(n, k);
        if (eta.pred[k] != kNone) {
            int j = eta.pred[k];
            ++rep.checks;
            MvLaurent rebuilt = seq.y[j] * xk - seq.c[k];
            if (rebuilt != yk) fail(tag("recursion", k), rebuilt, yk);
            ++rep.checks;
            MvLaurent d = delta(p, k, seq.y[j]);
            MvLaurent want = seq.c[k] * lambda_diag(p, k);
            if (d != want) fail(tag("delta_of_pred", k), d, want);
            ++rep.checks;
            MvLaurent dc = delta(p, k, seq.c[k]);
            if (!dc.is_zero()) fail(tag("delta_of_c", k), dc, MvLaurent(n));
        }
        for (int j = 0; j < k; ++j) {
            if (eta.succ[j] != kNone && eta.succ[j] <= k) continue;
            ++rep.checks;
            MvLaurent lhs = bt.bracket(seq.y[j], xk);
            MvLaurent rhs = seq.y[j] * xk * Rational(-qd.alpha[k][j]);
            if (lhs != rhs) fail(tag("normal", j, k), lhs, rhs);
            ++rep.checks;
            MvLaurent d = delta(p, k, seq.y[j]);
            if (!d.is_zero()) fail(tag("delta_kills", k, j), d, MvLaurent(n));
        }
        for (int j = 0; j < k; ++j) {
            ++rep.checks;
            MvLaurent lhs = bt.bracket(yk, seq.y[j]);
            MvLaurent rhs = yk * seq.y[j] * qd.q[k][j];
            if (lhs != rhs) fail(tag("log_canonical", k, j), lhs, rhs);
        }
    }
    return rep;
}

MvLaurent cauchon_theta(const PoissonPresentation& p, int k, const MvLaurent& f) {
    const int n = p.n;
    Rational step = Rational(-1) / lambda_diag(p, k);
    MvLaurent out(n);
    MvLaurent cur = f;
    Rational coef = 1;
    for (int t = 0; !cur.is_zero(); ++t) {
        if (t > 0) coef *= step / t;
        ExpVec shift = zero_exp(n);
        shift[k] = -t;
        out += cur.shift(shift) * coef;
        cur = delta(p, k, cur);
    }
    return out;
}

HmaxReport hmax_equations(const PoissonPresentation& p, const EtaData& eta) {
    HmaxReport rep;
    int nonzero_rows = 0;
    for (int k = 0; k < p.n; ++k) {
        if (p.delta_row_zero(k)) continue;
        ++nonzero_rows;
        for (int j = 0; j < k; ++j) {
            const MvLaurent* d = p.delta_entry(k, j);
            if (!d) continue;
            rep.equations.push_back({k, j, leading_term_revlex(*d).exponent});
            break;
        }
    }
    rep.dimension = p.n - nonzero_rows;
    rep.matches_rank = rep.dimension == eta.rank;
    return rep;
}

} // namespace pcgl
