// pcgl: command-line front end. JSON reports go to stdout, a short summary to stderr.
// Exit codes: 0 all verified, 1 verification failure, 2 input or validation error.

#include "io.hpp"

#include "pcgl/error.hpp"
#include "pcgl/presets.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>

using namespace pcgl;
using pcgl::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

// Raised once input validation has failed; carries the report to print.
struct ValidationFailed {
    json report;
};

struct Options {
    std::string file = "-";
    std::string out;
    std::string tau;
    std::string inv;
    std::string elem;
    bool gamma_all = false;
    int at = 0;
    int jobs = 1;
    int max_nilpotence_iters = 0;
    int m = 2;
    int n = 2;
    std::string q;
};

int max_n() {
    if (const char* v = std::getenv("PCGL_MAX_N")) {
        try {
            return std::stoi(v);
        } catch (const std::exception&) {
            throw InputError("BadEnvironment", std::string("PCGL_MAX_N is not an integer: ") + v);
        }
    }
    return 12;
}

json where_json(const std::vector<int>& w) { return w; }

json violations_json(const std::vector<Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back({{"code", v.code}, {"where", where_json(v.where)}, {"witness", v.witness}});
    return out;
}

json index_or_null(int k) { return k == kNone ? json(nullptr) : json(k + 1); }

std::vector<std::string> y_names(int n) {
    std::vector<std::string> out;
    for (int k = 1; k <= n; ++k) out.push_back("y" + std::to_string(k));
    return out;
}

json validation_json(const ValidationReport& r) {
    json checks = {{"jacobi", r.jacobi},
                   {"homogeneous", r.homogeneous},
                   {"nonzero_eigenvalues", r.nonzero_eigenvalues},
                   {"locally_nilpotent", r.locally_nilpotent}};
    if (r.skew_checked) checks["skew"] = r.skew;
    return {{"ok", r.ok()}, {"checks", checks}, {"nilpotence_bound", r.nilpotence_bound},
            {"violations", violations_json(r.violations)}};
}

json eta_json(const EtaData& eta) {
    json labels = json::array(), pred = json::array(), succ = json::array(), ex = json::array();
    for (int k = 0; k < eta.n(); ++k) {
        labels.push_back(eta.eta[k] + 1);
        pred.push_back(index_or_null(eta.pred[k]));
        succ.push_back(index_or_null(eta.succ[k]));
    }
    for (int k : eta.exchangeable) ex.push_back(k + 1);
    return {{"eta", labels}, {"p", pred}, {"s", succ}, {"ex", ex}, {"rank", eta.rank}};
}

json rat_vec_json(const RatVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(io::rational_json(x));
    return out;
}

// Validated input, symmetric data and the normalizing rescaling.
struct Prepared {
    PoissonPresentation original;
    PoissonPresentation symmetric;
    PrimeRun run;
    RescaleResult rescale;
    std::unique_ptr<ClusterContext> ctx;
};

Prepared prepare(const PoissonPresentation& p, const Options& opt, bool cluster) {
    Prepared out;
    out.original = p;
    ValidateOptions vo;
    vo.jobs = opt.jobs;
    vo.max_nilpotence_iters = opt.max_nilpotence_iters;
    ValidationReport v = validate_algebra(p, vo);
    if (!v.ok()) throw ValidationFailed{{{"validation", validation_json(v)}}};
    SymmetricReport s = validate_symmetric(p);
    if (!s.ok()) throw ValidationFailed{{{"symmetric", {{"ok", false}, {"violations", violations_json(s.violations)}}}}};
    out.symmetric = with_symmetric_data(p, s);
    out.run = compute_eta_and_primes(out.symmetric);
    if (!cluster) return out;
    if (p.n > max_n())
        throw InputError("TooLarge", "n_gens = " + std::to_string(p.n) + " exceeds PCGL_MAX_N = " + std::to_string(max_n()));
    out.rescale = rescale_generators(out.symmetric, out.run.eta);
    if (!out.rescale.normalized) throw Error("PiNotNormalized", "rescaling did not bring every pi to 1");
    out.ctx = std::make_unique<ClusterContext>(out.rescale.presentation);
    return out;
}

json gamma_json(const Prepared& pr) { return rat_vec_json(pr.rescale.gamma); }

json bundle_json(const ClusterContext& ctx, const TauSeedBundle& b) {
    const auto names = ctx.presentation().variable_names();
    const auto ynames = y_names(ctx.presentation().n);
    json vars = json::array(), vars_y = json::array(), weights = json::array();
    for (std::size_t k = 0; k < b.ytilde.size(); ++k) {
        vars.push_back(io::poly_report(b.ytilde[k], names));
        vars_y.push_back(io::poly_report(b.ytilde_y[k], ynames));
        weights.push_back(b.weights[k]);
    }
    auto lc = check_log_canonical(ctx, b);
    return {{"tau", io::perm_json(b.tau)},
            {"tau_bullet_tau", io::perm_json(b.tbt)},
            {"variables", vars},
            {"variables_in_initial_cluster", vars_y},
            {"weights", weights},
            {"r", io::matrix_json(b.r)},
            {"btilde", io::matrix_json(b.btilde)},
            {"beta", rat_vec_json(b.beta)},
            {"log_canonical", {{"ok", lc.ok}, {"pairs", lc.pairs}, {"failure", lc.failure}}}};
}

Perm tau_or_identity(const Options& opt, int n) {
    return opt.tau.empty() ? identity_perm(n) : io::parse_perm(opt.tau, n);
}

int emit(const json& report, const std::string& summary, int code) {
    std::cout << report.dump(2) << "\n";
    std::cerr << summary << "\n";
    return code;
}

int cmd_validate(const Options& opt) {
    auto p = io::read_presentation(opt.file);
    ValidateOptions vo;
    vo.jobs = opt.jobs;
    vo.max_nilpotence_iters = opt.max_nilpotence_iters;
    auto r = validate_algebra(p, vo);
    json out = validation_json(r);
    out["command"] = "validate";
    std::string summary = r.ok() ? "validate: all axioms hold" : "validate: " + r.violations.front().code;
    return emit(out, summary, r.ok() ? kExitOk : kExitInput);
}

int cmd_analyze(const Options& opt) {
    auto p = io::read_presentation(opt.file);
    ValidateOptions vo;
    vo.jobs = opt.jobs;
    vo.max_nilpotence_iters = opt.max_nilpotence_iters;
    auto v = validate_algebra(p, vo);
    if (!v.ok()) throw ValidationFailed{{{"validation", validation_json(v)}}};
    auto run = compute_eta_and_primes(p);
    auto cert = certify_prime_sequence(p, run.eta, run.seq);
    auto names = p.variable_names();
    json y = json::array(), c = json::array(), lead = json::array();
    for (int k = 0; k < p.n; ++k) {
        y.push_back(io::poly_report(run.seq.y[k], names));
        c.push_back(io::poly_report(run.seq.c[k], names));
        lead.push_back(run.seq.leading_exponents[k]);
    }
    QData qd = alpha_q_matrices(p, run.eta);
    HmaxReport hm = hmax_equations(p, run.eta);
    json eqs = json::array();
    for (const auto& e : hm.equations) eqs.push_back({{"k", e.k + 1}, {"j", e.j + 1}, {"f", e.f}});
    json out = eta_json(run.eta);
    out["command"] = "analyze";
    out["y"] = y;
    out["c"] = c;
    out["leading_exponents"] = lead;
    out["q"] = io::matrix_json(qd.q);
    out["alpha"] = io::matrix_json(qd.alpha);
    out["certificate"] = {{"ok", cert.ok}, {"checks", cert.checks}, {"failure", cert.failure}};
    out["hmax"] = {{"equations", eqs}, {"dimension", hm.dimension}, {"matches_rank", hm.matches_rank}, {"choice", hm.choice}};
    out["ok"] = cert.ok && hm.matches_rank;
    std::string summary = "analyze: rank " + std::to_string(run.eta.rank) + ", certificate " +
                          (cert.ok ? "ok" : "FAILED: " + cert.failure);
    for (int k = 0; k < p.n; ++k) summary += "\n  y" + std::to_string(k + 1) + " = " + to_string(run.seq.y[k], names);
    return emit(out, summary, out["ok"].get<bool>() ? kExitOk : kExitFailed);
}

int cmd_symmetric(const Options& opt) {
    auto p = io::read_presentation(opt.file);
    ValidateOptions vo;
    vo.jobs = opt.jobs;
    auto v = validate_algebra(p, vo);
    if (!v.ok()) throw ValidationFailed{{{"validation", validation_json(v)}}};
    auto s = validate_symmetric(p);
    json out = {{"command", "symmetric"}, {"ok", s.ok()}, {"violations", violations_json(s.violations)}};
    if (!s.ok()) return emit(out, "symmetric: " + s.violations.front().code, kExitInput);
    if (s.h_star) out["h_star"] = io::matrix_json(*s.h_star);
    out["h_star_solved"] = s.h_star_solved;
    out["lambda_star"] = rat_vec_json(s.lambda_star);
    auto q = with_symmetric_data(p, s);
    auto run = compute_eta_and_primes(q);
    out["eta"] = eta_json(run.eta);
    DIntegers d = compute_d_integers(q, run.eta);
    json dj = json::object();
    for (const auto& [label, value] : d.d) dj[std::to_string(label + 1)] = value;
    out["d_integers"] = {{"q", io::rational_json(d.q)}, {"d", dj}};
    return emit(out, "symmetric: ok, q = " + to_string(d.q), kExitOk);
}

int cmd_rescale(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, false);
    auto rs = rescale_generators(pr.symmetric, pr.run.eta);
    json pres = io::presentation_to_json(rs.presentation);
    json out = {{"command", "rescale"}, {"gamma", rat_vec_json(rs.gamma)}, {"normalized", rs.normalized}, {"ok", rs.normalized}};
    if (opt.out.empty()) out["presentation"] = pres;
    else io::write_json(pres, opt.out);
    std::string g;
    for (const auto& x : rs.gamma) g += (g.empty() ? "" : ", ") + to_string(x);
    return emit(out, "rescale: gamma = (" + g + ")" + (rs.normalized ? "" : ", pi NOT normalized"),
                rs.normalized ? kExitOk : kExitFailed);
}

int cmd_seeds(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, true);
    const auto& ctx = *pr.ctx;
    std::vector<Perm> taus;
    if (opt.gamma_all) taus = gamma_chain(ctx.presentation().n).elements;
    else taus.push_back(tau_or_identity(opt, ctx.presentation().n));
    auto bundles = ctx.seeds_for(taus, opt.jobs);
    json arr = json::array();
    bool ok = true;
    for (const auto& b : bundles) {
        json bj = bundle_json(ctx, b);
        try {
            check_bundle(ctx, b);
            bj["seed_checks"] = {{"ok", true}};
        } catch (const Error& e) {
            bj["seed_checks"] = {{"ok", false}, {"code", e.code()}, {"message", e.what()}};
            ok = false;
        }
        if (!bj["log_canonical"]["ok"].get<bool>()) ok = false;
        arr.push_back(bj);
    }
    json out = {{"command", "seeds"}, {"gamma", gamma_json(pr)}, {"ex", eta_json(ctx.eta())["ex"]}, {"bundles", arr}, {"ok", ok}};
    return emit(out, "seeds: " + std::to_string(bundles.size()) + " bundle(s), " + (ok ? "all checks pass" : "FAILED"),
                ok ? kExitOk : kExitFailed);
}

int cmd_btilde(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, true);
    const auto& ctx = *pr.ctx;
    auto b = ctx.seed_for_tau(tau_or_identity(opt, ctx.presentation().n));
    json out = {{"command", "btilde"},
                {"tau", io::perm_json(b.tau)},
                {"ex", eta_json(ctx.eta())["ex"]},
                {"btilde", io::matrix_json(b.btilde)},
                {"beta", rat_vec_json(b.beta)},
                {"rank", integer_rank(b.btilde)},
                {"gamma", gamma_json(pr)},
                {"ok", true}};
    std::string summary = "btilde for tau = (" + perm_to_string(b.tau) + "):";
    for (const auto& row : b.btilde) {
        summary += "\n ";
        for (long x : row) summary += " " + std::to_string(x);
    }
    return emit(out, summary, kExitOk);
}

int cmd_mutate(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, true);
    const auto& ctx = *pr.ctx;
    const int n = ctx.presentation().n;
    if (opt.at < 1 || opt.at > n) throw InputError("BadIndex", "--at must lie in [1," + std::to_string(n) + "]");
    const int k = opt.at - 1;
    auto b = ctx.seed_for_tau(tau_or_identity(opt, n));
    const auto& ex = ctx.eta().exchangeable;
    Seed seed = seed_of(b, ex);
    Seed mutated = mutate_seed(seed, k);
    CompatiblePair pair = mutate_pair({b.r, b.btilde, ex, b.beta}, k);
    // Back to the original generators through y_j -> y_j(x).
    MvLaurent new_x = substitute(mutated.vars[k], ctx.primes().y);
    auto ynames = y_names(n);
    json vars = json::array();
    for (const auto& v : mutated.vars) vars.push_back(io::poly_report(v, ynames));
    json out = {{"command", "mutate"},
                {"tau", io::perm_json(b.tau)},
                {"at", opt.at},
                {"variables_in_initial_cluster", vars},
                {"new_variable", io::poly_report(new_x, ctx.presentation().variable_names())},
                {"new_variable_is_polynomial", new_x.is_polynomial()},
                {"btilde", io::matrix_json(mutated.btilde)},
                {"r", io::matrix_json(pair.r)},
                {"beta", rat_vec_json(pair.beta)},
                {"gamma", gamma_json(pr)},
                {"ok", true}};
    return emit(out, "mutate at " + std::to_string(opt.at) + ": new variable " +
                         to_string(new_x, ctx.presentation().variable_names()), kExitOk);
}

int cmd_chain(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, true);
    const auto& ctx = *pr.ctx;
    ChainReport rep = chain_verify(ctx, opt.jobs);
    json links = json::array();
    int equal = 0, mutation = 0, failed = 0;
    for (const auto& l : rep.links) {
        json checks = json::object();
        for (const auto& [name, ok] : l.checks) checks[name] = ok;
        json lj = {{"tau", io::perm_json(l.tau)},     {"tau_next", io::perm_json(l.tau2)},
                   {"k", l.k + 1},                    {"branch", l.branch},
                   {"checks", checks},                {"verified", l.verified},
                   {"failure", l.failure}};
        if (l.branch == "mutation") {
            lj["k_bullet"] = l.k_bullet + 1;
            if (!l.g.empty()) lj["g"] = l.g;
            ++mutation;
        } else {
            ++equal;
        }
        if (!l.verified) ++failed;
        links.push_back(lj);
    }
    bool ok = rep.ok;
    json bundle_checks = json::array();
    for (const auto& b : rep.bundles) {
        json bj = {{"tau", io::perm_json(b.tau)}};
        try {
            check_bundle(ctx, b);
            bj["ok"] = true;
        } catch (const Error& e) {
            bj["ok"] = false;
            bj["code"] = e.code();
            ok = false;
        }
        auto lc = check_log_canonical(ctx, b);
        bj["log_canonical"] = lc.ok;
        if (!lc.ok) ok = false;
        bundle_checks.push_back(bj);
    }
    json out = {{"command", "chain-verify"}, {"gamma", gamma_json(pr)}, {"bundles", bundle_checks},
                {"links", links},           {"ok", ok}};
    std::string summary = "chain-verify: " + std::to_string(rep.bundles.size()) + " bundles, " +
                          std::to_string(rep.links.size()) + " links (" + std::to_string(equal) + " equal, " +
                          std::to_string(mutation) + " mutation), " + std::to_string(failed) + " failed";
    return emit(out, summary, ok ? kExitOk : kExitFailed);
}

int cmd_membership(const Options& opt) {
    auto pr = prepare(io::read_presentation(opt.file), opt, true);
    const auto& ctx = *pr.ctx;
    const int n = ctx.presentation().n;
    if (opt.elem.empty()) throw InputError("MissingElement", "--elem is required");
    MvLaurent f = io::parse_expression(opt.elem, n, pr.original.variable_names());
    // The element is written in the input generators; move it to the rescaled ones.
    RatVec scale(2 * n, Rational(1));
    for (int k = 0; k < n; ++k) scale[k] = 1 / pr.rescale.gamma[k];
    f = f.scale_variables(scale);
    std::vector<int> inv = opt.inv.empty() ? std::vector<int>{} : io::parse_index_list(opt.inv, n);
    for (int k : inv)
        if (ctx.eta().is_exchangeable(k))
            throw InputError("BadIndex", "--inv index " + std::to_string(k + 1) + " is exchangeable");
    auto bundles = ctx.seeds_for(gamma_chain(n).elements, opt.jobs);
    auto cert = upper_membership(ctx, bundles, f, inv);
    auto ynames = y_names(n);
    json per = json::array();
    for (const auto& [tau, e] : cert.per_tau) {
        json ej = {{"tau", io::perm_json(tau)}, {"laurent", e.laurent}, {"frozen_ok", e.frozen_ok}, {"in_ring", e.in_ring()}};
        if (e.laurent) ej["value"] = io::poly_report(e.value, ynames);
        if (!e.witness.empty()) ej["witness"] = e.witness;
        per.push_back(ej);
    }
    json invj = json::array();
    for (int k : inv) invj.push_back(k + 1);
    json out = {{"command", "membership"}, {"element", opt.elem}, {"inv", invj}, {"gamma", gamma_json(pr)},
                {"per_tau", per},          {"certified", cert.certified}, {"ok", cert.certified}};
    return emit(out, std::string("membership: ") + (cert.certified ? "certified" : "NOT certified") + " over " +
                         std::to_string(per.size()) + " seeds",
                cert.certified ? kExitOk : kExitFailed);
}

int cmd_preset(const std::string& kind, const Options& opt) {
    PoissonPresentation p;
    if (kind == "matrix") {
        if (opt.m < 1 || opt.n < 1) throw InputError("ShapeMismatch", "--m and --n must be positive");
        p = build_matrix_poisson(opt.m, opt.n);
    } else {
        if (opt.n < 1) throw InputError("ShapeMismatch", "--n must be positive");
        RatMatrix q = zero_matrix(opt.n, opt.n);
        if (!opt.q.empty()) {
            json qj;
            try {
                qj = json::parse(opt.q);
            } catch (const json::parse_error& e) {
                throw InputError("BadJson", e.what());
            }
            if (!qj.is_array() || static_cast<int>(qj.size()) != opt.n)
                throw InputError("ShapeMismatch", "--q must be an N x N JSON matrix");
            for (int i = 0; i < opt.n; ++i) {
                if (!qj[i].is_array() || static_cast<int>(qj[i].size()) != opt.n)
                    throw InputError("ShapeMismatch", "--q must be an N x N JSON matrix");
                for (int j = 0; j < opt.n; ++j) q[i][j] = io::rational_from_json(qj[i][j]);
            }
        }
        p = build_affine_space(opt.n, q);
    }
    io::write_json(io::presentation_to_json(p), opt.out.empty() ? "-" : opt.out);
    std::cerr << "preset " << kind << ": " << p.n << " generators\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson-CGL extensions: validation, prime elements and cluster structures"};
    app.require_subcommand(1);
    Options opt;

    auto add_file = [&](CLI::App* c) { c->add_option("file", opt.file, "presentation JSON, '-' for stdin")->required(); };
    auto add_jobs = [&](CLI::App* c) { c->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber); };
    auto add_nil = [&](CLI::App* c) {
        c->add_option("--max-nilpotence-iters", opt.max_nilpotence_iters, "bound for the nilpotence check (0 = automatic)")
            ->check(CLI::NonNegativeNumber);
    };

    auto* validate = app.add_subcommand("validate", "check the Poisson-CGL axioms");
    add_file(validate);
    add_jobs(validate);
    add_nil(validate);
    auto* analyze = app.add_subcommand("analyze", "eta, p, s, prime elements, rank and q");
    add_file(analyze);
    add_jobs(analyze);
    add_nil(analyze);
    auto* symmetric = app.add_subcommand("symmetric", "reverse-order presentation and d-integers");
    add_file(symmetric);
    add_jobs(symmetric);
    auto* rescale = app.add_subcommand("rescale", "rescale generators so that every pi equals 1");
    add_file(rescale);
    rescale->add_option("-o", opt.out, "write the rescaled presentation here");
    auto* seeds = app.add_subcommand("seeds", "seeds for one tau or for the whole chain");
    add_file(seeds);
    add_jobs(seeds);
    seeds->add_option("--tau", opt.tau, "one-line permutation, e.g. 2,3,4,1");
    seeds->add_flag("--gamma", opt.gamma_all, "all tau_{i,j} in the distinguished chain");
    auto* btilde = app.add_subcommand("btilde", "exchange matrix for one tau");
    add_file(btilde);
    btilde->add_option("--tau", opt.tau, "one-line permutation");
    auto* mutate = app.add_subcommand("mutate", "mutate the seed of tau at an exchangeable index");
    add_file(mutate);
    mutate->add_option("--tau", opt.tau, "one-line permutation");
    mutate->add_option("--at", opt.at, "1-based exchangeable index")->required();
    auto* chain = app.add_subcommand("chain-verify", "verify every adjacent link of the distinguished chain");
    add_file(chain);
    add_jobs(chain);
    auto* membership = app.add_subcommand("membership", "upper cluster membership certificate");
    add_file(membership);
    add_jobs(membership);
    membership->add_option("--elem", opt.elem, "element, e.g. 't11*t22 - t12*t21' or 'y4^-1'")->required();
    membership->add_option("--inv", opt.inv, "frozen indices allowed to be inverted, e.g. 4,6");
    auto* preset = app.add_subcommand("preset", "emit a built-in presentation");
    preset->require_subcommand(1);
    auto* pm = preset->add_subcommand("matrix", "matrix Poisson space O(M_{m,n})");
    pm->add_option("--m", opt.m, "rows")->required();
    pm->add_option("--n", opt.n, "columns")->required();
    pm->add_option("-o", opt.out, "output file");
    auto* pa = preset->add_subcommand("affine", "Poisson affine space");
    pa->add_option("--n", opt.n, "number of generators")->required();
    pa->add_option("--q", opt.q, "skew matrix as JSON, e.g. [[0,1],[-1,0]]");
    pa->add_option("-o", opt.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (analyze->parsed()) return cmd_analyze(opt);
        if (symmetric->parsed()) return cmd_symmetric(opt);
        if (rescale->parsed()) return cmd_rescale(opt);
        if (seeds->parsed()) return cmd_seeds(opt);
        if (btilde->parsed()) return cmd_btilde(opt);
        if (mutate->parsed()) return cmd_mutate(opt);
        if (chain->parsed()) return cmd_chain(opt);
        if (membership->parsed()) return cmd_membership(opt);
        if (pm->parsed()) return cmd_preset("matrix", opt);
        if (pa->parsed()) return cmd_preset("affine", opt);
    } catch (const ValidationFailed& v) {
        json out = v.report;
        out["command"] = command;
        out["ok"] = false;
        std::string code = "ValidationFailed";
        for (const auto& [key, part] : v.report.items())
            if (part.contains("violations") && !part["violations"].empty()) code = part["violations"][0]["code"];
        return emit(out, command + ": " + code, kExitInput);
    } catch (const InputError& e) {
        json out = {{"command", command}, {"ok", false}, {"error", {{"code", e.code()}, {"where", e.where()}, {"message", e.what()}}}};
        return emit(out, command + ": " + e.code() + ": " + e.what(), kExitInput);
    } catch (const Error& e) {
        json out = {{"command", command}, {"ok", false}, {"error", {{"code", e.code()}, {"where", e.where()}, {"message", e.what()}}}};
        return emit(out, command + ": " + e.code() + ": " + e.what(), kExitFailed);
    }
    return kExitInput;
}
