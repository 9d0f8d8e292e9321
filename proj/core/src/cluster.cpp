#include "pcgl/cluster.hpp"

#include "pcgl/error.hpp"

#include <algorithm>
#include <thread>

namespace pcgl {

int ex_column(const std::vector<int>& ex, int k) {
    auto it = std::find(ex.begin(), ex.end(), k);
    if (it == ex.end()) throw Error("NotExchangeable", "index " + std::to_string(k + 1) + " is frozen", {k + 1});
    return static_cast<int>(it - ex.begin());
}

IntMatrix mutate_matrix(const IntMatrix& b, const std::vector<int>& ex, int k) {
    const int col = ex_column(ex, k);
    IntMatrix out = b;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < ex.size(); ++j) {
            if (static_cast<int>(i) == k || static_cast<int>(j) == col) {
                out[i][j] = -b[i][j];
                continue;
            }
            long bik = b[i][col], bkj = b[k][j];
            out[i][j] = b[i][j] + (std::labs(bik) * bkj + bik * std::labs(bkj)) / 2;
        }
    return out;
}

IntMatrix e_matrix(const IntMatrix& b, const std::vector<int>& ex, int k, int eps) {
    const int col = ex_column(ex, k);
    const std::size_t n = b.size();
    IntMatrix e(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<int>(j) != k) e[i][j] = i == j ? 1 : 0;
            else if (static_cast<int>(i) == k) e[i][j] = -1;
            else e[i][j] = std::max(0L, -eps * b[i][col]);
        }
    }
    return e;
}

IntMatrix f_matrix(const IntMatrix& b, const std::vector<int>& ex, int k, int eps) {
    const int col = ex_column(ex, k);
    const std::size_t m = ex.size();
    IntMatrix f(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (static_cast<int>(i) != col) f[i][j] = i == j ? 1 : 0;
            else if (i == j) f[i][j] = -1;
            else f[i][j] = std::max(0L, eps * b[k][j]);
        }
    return f;
}

namespace {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r;
    for (const auto& row : m) {
        RatVec v;
        for (long x : row) v.emplace_back(x);
        r.push_back(v);
    }
    return r;
}

IntMatrix imul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    IntMatrix c(a.size(), std::vector<long>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::string matrix_text(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
        s += "]";
    }
    return s + "]";
}

} // namespace

RatMatrix mutate_r(const RatMatrix& r, const IntMatrix& b, const std::vector<int>& ex, int k, int eps) {
    RatMatrix e = to_rational(e_matrix(b, ex, k, eps));
    return multiply(transpose(e), multiply(r, e));
}

RatVec check_compatible(const RatMatrix& r, const IntMatrix& b, const std::vector<int>& ex) {
    const std::size_t n = r.size();
    RatVec beta(ex.size());
    for (std::size_t c = 0; c < ex.size(); ++c) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (b[i][c]) s += r[i][j] * b[i][c];
            if (static_cast<int>(j) == ex[c]) beta[c] = s;
            else if (s != 0)
                throw Error("CompatibilityFailure", "(B^T r)_{" + std::to_string(ex[c] + 1) + "," +
                                                        std::to_string(j + 1) + "} = " + to_string(s),
                            {ex[c] + 1, static_cast<int>(j) + 1});
        }
        if (beta[c] == 0)
            throw Error("CompatibilityFailure", "beta_" + std::to_string(ex[c] + 1) + " = 0", {ex[c] + 1, ex[c] + 1});
    }
    for (std::size_t a = 0; a < ex.size(); ++a)
        for (std::size_t c = 0; c < ex.size(); ++c)
            if (beta[a] * b[ex[a]][c] != -beta[c] * b[ex[c]][a])
                throw Error("CompatibilityFailure", "beta_k b_kj != -beta_j b_jk", {ex[a] + 1, ex[c] + 1});
    return beta;
}

CompatiblePair mutate_pair(const CompatiblePair& pair, int k) {
    IntMatrix plain = mutate_matrix(pair.btilde, pair.ex, k);
    RatMatrix r_plus = mutate_r(pair.r, pair.btilde, pair.ex, k, +1);
    RatMatrix r_minus = mutate_r(pair.r, pair.btilde, pair.ex, k, -1);
    if (r_plus != r_minus) throw Error("EpsilonMismatch", "mu_k(r) depends on the sign", {k + 1});
    for (int eps : {+1, -1}) {
        IntMatrix viaE = imul(imul(e_matrix(pair.btilde, pair.ex, k, eps), pair.btilde),
                              f_matrix(pair.btilde, pair.ex, k, eps));
        if (viaE != plain)
            throw Error("EpsilonMismatch", "E B F = " + matrix_text(viaE) + " differs from " + matrix_text(plain), {k + 1});
    }
    CompatiblePair out{r_plus, plain, pair.ex, {}};
    try {
        out.beta = check_compatible(out.r, out.btilde, out.ex);
    } catch (const Error& e) {
        throw Error("CompatibilityLost", std::string("after mutation: ") + e.what(), {k + 1});
    }
    RatMatrix before = multiply(transpose(to_rational(pair.btilde)), pair.r);
    RatMatrix after = multiply(transpose(to_rational(out.btilde)), out.r);
    if (before != after) throw Error("CompatibilityLost", "B^T r changed under mutation", {k + 1});
    return out;
}

std::vector<MvLaurent> mutate_variables(const std::vector<MvLaurent>& vars, const IntMatrix& b,
                                        const std::vector<int>& ex, int k) {
    const int col = ex_column(ex, k);
    const int m = vars[k].nvars();
    MvLaurent pos = MvLaurent::constant(m, Rational(1)), neg = MvLaurent::constant(m, Rational(1));
    for (std::size_t i = 0; i < vars.size(); ++i) {
        long v = b[i][col];
        if (v > 0) pos *= vars[i].pow(static_cast<int>(v));
        if (v < 0) neg *= vars[i].pow(static_cast<int>(-v));
    }
    std::vector<MvLaurent> out = vars;
    out[k] = exact_divide(pos + neg, vars[k]);
    return out;
}

Seed mutate_seed(const Seed& s, int k) {
    return {mutate_variables(s.vars, s.btilde, s.ex, k), mutate_matrix(s.btilde, s.ex, k), s.ex};
}

std::size_t integer_rank(const IntMatrix& b) {
    if (b.empty() || b[0].empty()) return 0;
    RatMatrix m = to_rational(b);
    return solve_linear(m, RatVec(m.size(), Rational(0))).rank;
}

bool skew_symmetrized_by(const IntMatrix& b, const std::vector<int>& ex, const std::vector<long>& d) {
    for (std::size_t a = 0; a < ex.size(); ++a)
        for (std::size_t c = 0; c < ex.size(); ++c)
            if (d[ex[a]] * b[ex[a]][c] != -d[ex[c]] * b[ex[c]][a]) return false;
    return true;
}

IntMatrix solve_btilde(const RatMatrix& r, const std::vector<WeightVec>& weights, const std::vector<int>& ex,
                       const RatVec& lambda_star) {
    const std::size_t n = r.size();
    const std::size_t d = weights.empty() ? 0 : weights[0].size();
    IntMatrix out(n, std::vector<long>(ex.size(), 0));
    RatMatrix a;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = r[i][j];
        a.push_back(row);
    }
    for (std::size_t t = 0; t < d; ++t) {
        RatVec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = weights[i][t];
        a.push_back(row);
    }
    for (std::size_t c = 0; c < ex.size(); ++c) {
        int l = ex[c];
        RatVec rhs(a.size(), Rational(0));
        rhs[l] = lambda_star[l];
        auto sol = solve_linear(a, rhs);
        if (!sol.consistent)
            throw Error("NoSolution", "no exchange column for " + std::to_string(l + 1), {l + 1});
        if (sol.rank < n)
            throw Error("NonUnique", "exchange column for " + std::to_string(l + 1) + " is not unique", {l + 1});
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_integer(sol.particular[i]))
                throw Error("NonIntegral", "exchange column for " + std::to_string(l + 1) + " has entry " +
                                               to_string(sol.particular[i]),
                            {l + 1, static_cast<int>(i) + 1});
            out[i][c] = sol.particular[i].get_num().get_si();
        }
    }
    return out;
}

ClusterContext::ClusterContext(PoissonPresentation p)
    : p_(std::move(p)),
      run_(compute_eta_and_primes(p_)),
      table_(p_, run_.eta),
      brackets_(p_),
      lambda_(lambda_matrix(p_)),
      lambda_star_(pcgl::lambda_star(p_)),
      d_(compute_d_integers(p_, run_.eta)) {
    const int n = p_.n;
    x_in_y_.assign(n, MvLaurent(n));
    for (int k = 0; k < n; ++k) {
        MvLaurent yk = MvLaurent::variable(n, k);
        int j = run_.eta.pred[k];
        if (j == kNone) {
            x_in_y_[k] = yk;
            continue;
        }
        std::vector<MvLaurent> imgs = x_in_y_;
        MvLaurent c = substitute(run_.seq.c[k], imgs);
        x_in_y_[k] = (yk + c).shift(zero_exp(n) - unit_exp(n, j));
    }
}

std::vector<long> ClusterContext::d_by_index() const {
    std::vector<long> d(p_.n, 1);
    for (int k = 0; k < p_.n; ++k) {
        auto it = d_.d.find(run_.eta.eta[k]);
        if (it != d_.d.end()) d[k] = it->second;
    }
    return d;
}

MvLaurent ClusterContext::to_initial_cluster(const MvLaurent& f) const { return substitute(f, x_in_y_); }

TauSeedBundle ClusterContext::seed_for_tau(const Perm& tau) const {
    const int n = p_.n;
    if (!is_xi(tau)) throw InputError("NotInXi", "permutation " + perm_to_string(tau) + " is not in Xi_N");
    const EtaData& eta = run_.eta;
    TauSeedBundle b;
    b.tau = tau;
    b.tbt = tau_bullet_tau(tau, eta);
    std::vector<MvLaurent> ytau = y_sequence_for_tau(table_, tau);

    b.ytilde.assign(n, MvLaurent(n));
    for (int k = 0; k < n; ++k) b.ytilde[b.tbt[k]] = ytau[k];

    // q_tau from lambda_tau = tau^{-1} lambda tau and the level sets of eta o tau.
    std::vector<int> labels(n);
    for (int l = 0; l < n; ++l) labels[l] = eta.eta[tau[l]];
    EtaData eta_tau = eta_from_labels(labels);
    RatMatrix lam_tau = zero_matrix(n, n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) lam_tau[l][j] = lambda_[tau[l]][tau[j]];
    RatMatrix q_tau = q_matrix(lam_tau, eta_tau);
    b.r = zero_matrix(n, n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) b.r[b.tbt[l]][b.tbt[j]] = q_tau[l][j];

    for (int k = 0; k < n; ++k) b.weights.push_back(weight_of(p_, b.ytilde[k]));
    b.btilde = solve_btilde(b.r, b.weights, eta.exchangeable, lambda_star_);
    b.beta = check_compatible(b.r, b.btilde, eta.exchangeable);

    b.ytilde_y.reserve(n);
    for (int k = 0; k < n; ++k) b.ytilde_y.push_back(to_initial_cluster(b.ytilde[k]));

    // Invert the tau-presentation recursion: x_{tau(l)} = z_{p}^{-1} (z_l + c_{tau,l}).
    b.x_in_cluster.assign(n, MvLaurent(n));
    for (int l = 0; l < n; ++l) {
        int a = tau[l];
        MvLaurent zl = MvLaurent::variable(n, b.tbt[l]);
        int pl = eta_tau.pred[l];
        if (pl == kNone) {
            if (ytau[l] != MvLaurent::variable(n, a))
                throw Error("LinkFailure", "y_{tau," + std::to_string(l + 1) + "} should be a generator", {l + 1});
            b.x_in_cluster[a] = zl;
            continue;
        }
        MvLaurent c = ytau[pl] * MvLaurent::variable(n, a) - ytau[l];
        for (int t = l; t < n; ++t)
            if (c.uses_variable(tau[t]))
                throw Error("SupportViolation", "c_{tau," + std::to_string(l + 1) + "} leaves R_{tau," +
                                                    std::to_string(l) + "}", {l + 1});
        MvLaurent cz = substitute(c, b.x_in_cluster);
        b.x_in_cluster[a] = (zl + cz).shift(zero_exp(n) - unit_exp(n, b.tbt[pl]));
    }
    for (int k = 0; k < n; ++k) b.y_in_cluster.push_back(substitute(run_.seq.y[k], b.x_in_cluster));
    return b;
}

std::vector<TauSeedBundle> ClusterContext::seeds_for(const std::vector<Perm>& taus, int jobs) const {
    std::vector<TauSeedBundle> out(taus.size());
    jobs = std::max(1, jobs);
    if (jobs == 1 || taus.size() < 2) {
        for (std::size_t t = 0; t < taus.size(); ++t) out[t] = seed_for_tau(taus[t]);
        return out;
    }
    std::vector<std::exception_ptr> errors(taus.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t t = static_cast<std::size_t>(w); t < taus.size(); t += static_cast<std::size_t>(jobs)) {
                try {
                    out[t] = seed_for_tau(taus[t]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

Seed seed_of(const TauSeedBundle& b, const std::vector<int>& ex) { return {b.ytilde_y, b.btilde, ex}; }

void check_bundle(const ClusterContext& ctx, const TauSeedBundle& b) {
    const auto& ex = ctx.eta().exchangeable;
    if (integer_rank(b.btilde) != ex.size())
        throw Error("RankDeficient", "exchange matrix for " + perm_to_string(b.tau) + " is not of full rank");
    RatVec beta = check_compatible(b.r, b.btilde, ex);
    for (std::size_t c = 0; c < ex.size(); ++c)
        if (beta[c] != ctx.lambda_star()[ex[c]])
            throw Error("CompatibilityFailure", "beta differs from lambda* at " + std::to_string(ex[c] + 1),
                        {ex[c] + 1});
    if (!skew_symmetrized_by(b.btilde, ex, ctx.d_by_index()))
        throw Error("CompatibilityFailure", "principal part not skew-symmetrized by the d-integers");
    std::vector<ExpVec> leads;
    for (const auto& v : b.ytilde_y) leads.push_back(leading_term_revlex(v).exponent);
    std::sort(leads.begin(), leads.end());
    if (std::adjacent_find(leads.begin(), leads.end()) != leads.end())
        throw Error("DependentVariables", "cluster variables share a leading exponent");
}

ClusterExpression express_in_cluster(const ClusterContext& ctx, const TauSeedBundle& b, const MvLaurent& f,
                                     const std::vector<int>& inv) {
    const int n = ctx.presentation().n;
    ClusterExpression out;
    std::vector<MvLaurent> images = b.x_in_cluster;
    images.insert(images.end(), b.y_in_cluster.begin(), b.y_in_cluster.end());
    try {
        out.value = substitute(f, images);
        out.laurent = true;
    } catch (const Error& e) {
        out.witness = e.what();
        return out;
    }
    out.frozen_ok = true;
    const EtaData& eta = ctx.eta();
    for (const auto& [e, c] : out.value.terms())
        for (int k = 0; k < n; ++k) {
            if (e[k] >= 0 || eta.is_exchangeable(k)) continue;
            if (std::find(inv.begin(), inv.end(), k) != inv.end()) continue;
            out.frozen_ok = false;
            out.witness = "frozen variable " + std::to_string(k + 1) + " has exponent " + std::to_string(e[k]);
            return out;
        }
    return out;
}

MembershipCertificate upper_membership(const ClusterContext& ctx, const std::vector<TauSeedBundle>& bundles,
                                       const MvLaurent& f, const std::vector<int>& inv) {
    MembershipCertificate cert;
    for (const auto& b : bundles) {
        auto e = express_in_cluster(ctx, b, f, inv);
        if (!e.in_ring()) cert.certified = false;
        cert.per_tau.emplace_back(b.tau, std::move(e));
    }
    return cert;
}

LogCanonicalReport check_log_canonical(const ClusterContext& ctx, const TauSeedBundle& b) {
    LogCanonicalReport rep;
    const int n = ctx.presentation().n;
    auto names = ctx.presentation().variable_names();
    for (int l = 0; l < n; ++l)
        for (int j = l + 1; j < n; ++j) {
            ++rep.pairs;
            MvLaurent lhs = ctx.brackets().bracket(b.ytilde[l], b.ytilde[j]);
            MvLaurent rhs = b.ytilde[l] * b.ytilde[j] * b.r[l][j];
            if (lhs != rhs && rep.ok) {
                rep.ok = false;
                rep.failure = "LogCanonicalFailure(" + std::to_string(l + 1) + "," + std::to_string(j + 1) +
                              "): " + to_string(lhs, names) + " vs " + to_string(rhs, names);
            }
        }
    return rep;
}

LinkReport verify_one_step(const ClusterContext& ctx, const TauSeedBundle& first, const TauSeedBundle& second) {
    const int n = ctx.presentation().n;
    const EtaData& eta = ctx.eta();
    const auto& ex = eta.exchangeable;
    LinkReport rep;
    rep.tau = first.tau;
    rep.tau2 = second.tau;
    int k = -1;
    for (int t = 0; t + 1 < n; ++t) {
        Perm s = first.tau;
        std::swap(s[t], s[t + 1]);
        if (s == second.tau) k = t;
    }
    if (k < 0) {
        rep.failure = "permutations are not one adjacent transposition apart";
        return rep;
    }
    rep.k = k;
    const TauSeedBundle* a = &first;
    const TauSeedBundle* b = &second;
    if (a->tau[k] > a->tau[k + 1]) std::swap(a, b);
    auto check = [&](const std::string& name, bool ok) {
        rep.checks.emplace_back(name, ok);
        if (!ok && rep.failure.empty()) rep.failure = name;
    };

    if (eta.eta[a->tau[k]] != eta.eta[a->tau[k + 1]]) {
        rep.branch = "equal";
        check("variables", a->ytilde == b->ytilde);
        check("r", a->r == b->r);
        check("btilde", a->btilde == b->btilde);
    } else {
        rep.branch = "mutation";
        int kb = a->tbt[k];
        rep.k_bullet = kb;
        check("k_bullet", b->tbt[k] == kb && eta.is_exchangeable(kb));
        if (!rep.failure.empty()) return rep;
        bool fixed = true;
        for (int j = 0; j < n; ++j)
            if (j != kb && a->ytilde[j] != b->ytilde[j]) fixed = false;
        check("variables_fixed", fixed);
        try {
            auto mutated = mutate_variables(a->ytilde_y, a->btilde, ex, kb);
            check("exchange", mutated[kb] == b->ytilde_y[kb]);
        } catch (const Error&) {
            check("exchange", false);
        }
        check("btilde", mutate_matrix(a->btilde, ex, kb) == b->btilde);
        try {
            CompatiblePair mp = mutate_pair({a->r, a->btilde, ex, a->beta}, kb);
            check("r", mp.r == b->r);
        } catch (const Error&) {
            check("r", false);
        }
        // g from the exchange relation y'_kb y_kb = y_{p(kb)} y_{s(kb)} + ytilde^g.
        MvLaurent one = MvLaurent::constant(n, Rational(1));
        int pk = eta.pred[kb], sk = eta.succ[kb];
        MvLaurent rest = b->ytilde[kb] * a->ytilde[kb] - (pk == kNone ? one : a->ytilde[pk]) * a->ytilde[sk];
        MvLaurent gz = substitute(rest, a->x_in_cluster);
        bool mono = gz.is_monomial() && gz.terms().begin()->second == 1;
        check("g_monomial", mono);
        if (mono) {
            rep.g = gz.terms().begin()->first;
            bool shape = true;
            std::vector<int> per_class(n, 0);
            for (int j = 0; j < n; ++j) {
                if (rep.g[j] < 0) shape = false;
                if (rep.g[j] != 0) {
                    if (eta.eta[j] == eta.eta[kb]) shape = false;
                    if (++per_class[eta.eta[j]] > 1) shape = false;
                }
            }
            check("g_support", shape);
            int col = ex_column(ex, kb);
            bool bbg = true;
            for (int i = 0; i < n; ++i) {
                long want = (i == pk ? 1 : 0) + (i == sk ? 1 : 0) - rep.g[i];
                if (a->btilde[i][col] != want || b->btilde[i][col] != -want) bbg = false;
            }
            check("bbg", bbg);
        }
    }
    rep.verified = rep.failure.empty();
    return rep;
}

ChainReport chain_verify(const ClusterContext& ctx, int jobs) {
    ChainReport rep;
    GammaChain chain = gamma_chain(ctx.presentation().n);
    rep.bundles = ctx.seeds_for(chain.elements, jobs);
    for (std::size_t t = 0; t + 1 < rep.bundles.size(); ++t) {
        rep.links.push_back(verify_one_step(ctx, rep.bundles[t], rep.bundles[t + 1]));
        if (!rep.links.back().verified) rep.ok = false;
    }
    return rep;
}

} // namespace pcgl
