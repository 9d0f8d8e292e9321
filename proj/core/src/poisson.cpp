#include "pcgl/poisson.hpp"

#include "pcgl/error.hpp"

#include <algorithm>
#include <array>
#include <thread>

namespace pcgl {

const MvLaurent* PoissonPresentation::delta_entry(int k, int j) const {
    auto it = delta.find({k, j});
    if (it == delta.end() || it->second.is_zero()) return nullptr;
    return &it->second;
}

bool PoissonPresentation::delta_row_zero(int k) const {
    for (int j = 0; j < k; ++j)
        if (delta_entry(k, j)) return false;
    return true;
}

std::vector<std::string> PoissonPresentation::variable_names() const {
    if (static_cast<int>(names.size()) == n) return names;
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
}

Rational pair_h(const RatVec& h, const WeightVec& w) {
    Rational s = 0;
    for (std::size_t i = 0; i < h.size() && i < w.size(); ++i)
        if (w[i] != 0) s += h[i] * w[i];
    return s;
}

RatMatrix lambda_matrix(const PoissonPresentation& p) {
    RatMatrix lam = zero_matrix(p.n, p.n);
    for (int k = 0; k < p.n; ++k)
        for (int j = 0; j < k; ++j) {
            Rational v = p.raw_mode() ? (*p.raw_lambda)[k][j] : pair_h(p.h[k], p.weights[j]);
            lam[k][j] = v;
            lam[j][k] = -v;
        }
    return lam;
}

Rational lambda_diag(const PoissonPresentation& p, int k) {
    if (p.raw_mode()) {
        if (!p.raw_lambda_diag) throw InputError("MissingLambdaDiag", "raw mode needs lambda_diag");
        return (*p.raw_lambda_diag)[k];
    }
    return pair_h(p.h[k], p.weights[k]);
}

BracketTable::BracketTable(const PoissonPresentation& p) : n_(p.n) {
    RatMatrix lam = lambda_matrix(p);
    table_.assign(n_, std::vector<MvLaurent>(n_, MvLaurent(n_)));
    for (int k = 0; k < n_; ++k)
        for (int j = 0; j < k; ++j) {
            MvLaurent b(n_);
            b.add_term(unit_exp(n_, k) + unit_exp(n_, j), lam[k][j]);
            if (auto d = p.delta_entry(k, j)) b += *d;
            table_[k][j] = b;
            table_[j][k] = -b;
        }
}

MvLaurent BracketTable::bracket(const MvLaurent& f, const MvLaurent& g) const {
    MvLaurent out(n_);
    std::vector<MvLaurent> dg(n_);
    for (int b = 0; b < n_; ++b) dg[b] = partial_derivative(g, b);
    for (int a = 0; a < n_; ++a) {
        MvLaurent dfa = partial_derivative(f, a);
        if (dfa.is_zero()) continue;
        MvLaurent inner(n_);
        for (int b = 0; b < n_; ++b) {
            if (b == a || dg[b].is_zero()) continue;
            inner += table_[a][b] * dg[b];
        }
        if (!inner.is_zero()) out += dfa * inner;
    }
    return out;
}

MvLaurent bracket(const PoissonPresentation& p, const MvLaurent& f, const MvLaurent& g) {
    return BracketTable(p).bracket(f, g);
}

WeightVec weight_of_exponent(const PoissonPresentation& p, const ExpVec& e) {
    WeightVec w(static_cast<std::size_t>(p.torus_rank), 0);
    for (int i = 0; i < p.n; ++i) {
        if (e[i] == 0) continue;
        for (int t = 0; t < p.torus_rank; ++t) w[t] += static_cast<long>(e[i]) * p.weights[i][t];
    }
    return w;
}

std::optional<WeightVec> try_weight_of(const PoissonPresentation& p, const MvLaurent& f) {
    if (f.is_zero()) return std::nullopt;
    std::optional<WeightVec> w;
    for (const auto& [e, c] : f.terms()) {
        WeightVec v = weight_of_exponent(p, e);
        if (!w) w = v;
        else if (*w != v) return std::nullopt;
    }
    return w;
}

WeightVec weight_of(const PoissonPresentation& p, const MvLaurent& f) {
    if (f.is_zero()) throw Error("ZeroPolynomial", "weight of the zero polynomial");
    const ExpVec* first = nullptr;
    WeightVec w;
    for (const auto& [e, c] : f.terms()) {
        WeightVec v = weight_of_exponent(p, e);
        if (!first) {
            first = &e;
            w = v;
        } else if (v != w) {
            auto names = p.variable_names();
            throw Error("Inhomogeneous", "monomials " + to_string(MvLaurent::monomial(*first), names) + " and " +
                                             to_string(MvLaurent::monomial(e), names) + " have different weights");
        }
    }
    return w;
}

namespace {

std::vector<MvLaurent> delta_images(const PoissonPresentation& p, int k) {
    std::vector<MvLaurent> imgs(p.n, MvLaurent(p.n));
    for (int j = 0; j < k; ++j)
        if (auto d = p.delta_entry(k, j)) imgs[j] = *d;
    return imgs;
}

} // namespace

ValidationReport validate_algebra(const PoissonPresentation& p, const ValidateOptions& opt) {
    ValidationReport rep;
    const int n = p.n;
    auto names = p.variable_names();

    // Support and homogeneity of the delta table.
    int maxdeg = 0;
    for (const auto& [kj, poly] : p.delta) {
        auto [k, j] = kj;
        if (poly.is_zero()) continue;
        maxdeg = std::max(maxdeg, poly.total_degree());
        if (!poly.is_polynomial() || !poly.supported_in(0, k)) {
            rep.homogeneous = false;
            rep.violations.push_back({"SupportViolation", {k + 1, j + 1}, to_string(poly, names)});
            continue;
        }
        auto w = try_weight_of(p, poly);
        WeightVec want = weight_of_exponent(p, unit_exp(n, k) + unit_exp(n, j));
        if (!w || *w != want) {
            rep.homogeneous = false;
            rep.violations.push_back({"InhomogeneousDelta", {k + 1, j + 1}, to_string(poly, names)});
        }
    }

    for (int k = 0; k < n; ++k) {
        if (lambda_diag(p, k) == 0) {
            rep.nonzero_eigenvalues = false;
            rep.violations.push_back({"ZeroEigenvalue", {k + 1}, "lambda_" + std::to_string(k + 1) + " = 0"});
        }
    }

    if (p.raw_mode()) {
        rep.skew_checked = true;
        const auto& raw = *p.raw_lambda;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < k; ++j)
                if (raw[k][j] != -raw[j][k]) {
                    rep.skew = false;
                    rep.violations.push_back({"SkewnessFailure", {k + 1, j + 1},
                                              to_string(raw[k][j]) + " vs " + to_string(raw[j][k])});
                }
    }

    // Local nilpotence of each delta_k on the generators below it.
    int bound = opt.max_nilpotence_iters > 0 ? opt.max_nilpotence_iters : 2 + n * std::max(1, maxdeg);
    rep.nilpotence_bound = bound;
    for (int k = 0; k < n; ++k) {
        if (p.delta_row_zero(k)) continue;
        auto imgs = delta_images(p, k);
        for (int j = 0; j < k; ++j) {
            MvLaurent f = MvLaurent::variable(n, j);
            int it = 0;
            while (!f.is_zero() && it < bound) {
                f = apply_derivation(imgs, f);
                ++it;
            }
            if (!f.is_zero()) {
                rep.locally_nilpotent = false;
                rep.violations.push_back({"NilpotenceBoundExceeded", {k + 1, j + 1}, to_string(f, names)});
            }
        }
    }

    // Jacobi on generator triples; repeated indices hold by skew-symmetry.
    BracketTable bt(p);
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});
    std::vector<std::optional<Violation>> found(triples.size());
    auto check = [&](std::size_t t) {
        auto [i, j, k] = triples[t];
        MvLaurent xi = MvLaurent::variable(n, i), xj = MvLaurent::variable(n, j), xk = MvLaurent::variable(n, k);
        MvLaurent s = bt.bracket(xi, bt.generator_bracket(j, k)) + bt.bracket(xj, bt.generator_bracket(k, i)) +
                      bt.bracket(xk, bt.generator_bracket(i, j));
        if (!s.is_zero()) found[t] = Violation{"JacobiFailure", {k + 1, j + 1, i + 1}, to_string(s, names)};
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || triples.size() < 2) {
        for (std::size_t t = 0; t < triples.size(); ++t) check(t);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = static_cast<std::size_t>(w); t < triples.size(); t += static_cast<std::size_t>(jobs))
                    check(t);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& v : found)
        if (v) {
            rep.jacobi = false;
            rep.violations.push_back(*v);
        }
    return rep;
}

void require_valid(const ValidationReport& r) {
    if (r.ok()) return;
    const auto& v = r.violations.front();
    std::string where;
    for (std::size_t i = 0; i < v.where.size(); ++i) where += (i ? "," : "") + std::to_string(v.where[i]);
    throw Error(v.code, v.code + "(" + where + "): " + v.witness, v.where);
}

PoissonPresentation apply_rescaling(const PoissonPresentation& p, const RatVec& gamma) {
    if (static_cast<int>(gamma.size()) != p.n) throw InputError("ArityMismatch", "gamma has the wrong length");
    RatVec inv(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] == 0) throw InputError("ZeroScale", "rescaling factor must be nonzero");
        inv[i] = 1 / gamma[i];
    }
    PoissonPresentation q = p;
    for (auto& [kj, poly] : q.delta) {
        poly = poly.scale_variables(inv);
        poly *= gamma[kj.first] * gamma[kj.second];
    }
    return q;
}

} // namespace pcgl
