#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace testing;

namespace {

// Interval predicate applied to every prefix, by brute force.
bool prefixes_are_intervals(const Perm& t) {
    for (std::size_t k = 1; k <= t.size(); ++k) {
        auto [lo, hi] = std::minmax_element(t.begin(), t.begin() + static_cast<long>(k));
        if (static_cast<std::size_t>(*hi - *lo + 1) != k) return false;
    }
    return true;
}

std::vector<Perm> brute_force_xi(int n) {
    Perm t = identity_perm(n);
    std::vector<Perm> out;
    do {
        if (prefixes_are_intervals(t)) out.push_back(t);
    } while (std::next_permutation(t.begin(), t.end()));
    return out;
}

Perm one_based(std::initializer_list<int> v) {
    Perm t;
    for (int x : v) t.push_back(x - 1);
    return t;
}

MvLaurent det22(int m, int n, int r, int c) { return solid_minor(m, n, {r, r + 1}, {c, c + 1}); }

} // namespace

TEST_CASE("symmetric validation of presets") {
    auto rep = validate_symmetric(build_matrix_poisson(2, 3));
    CHECK(rep.ok());
    CHECK_FALSE(rep.h_star_solved);
    for (const auto& l : rep.lambda_star) CHECK(l == 2);

    std::mt19937 rng(11);
    auto pa = build_affine_space(4, random_skew(rng, 4));
    auto ra = validate_symmetric(pa);
    CHECK(ra.ok());
    for (const auto& l : ra.lambda_star) CHECK(l == -1);
}

TEST_CASE("h* is solved when absent") {
    auto p = build_matrix_poisson(2, 2);
    p.h_star.reset();
    auto rep = validate_symmetric(p);
    CHECK(rep.ok());
    CHECK(rep.h_star_solved);
    auto q = with_symmetric_data(p, rep);
    REQUIRE(q.h_star.has_value());
    auto lam = lambda_matrix(q);
    for (int j = 0; j < 4; ++j) {
        for (int k = j + 1; k < 4; ++k) CHECK(pair_h((*q.h_star)[j], q.weights[k]) == lam[j][k]);
        CHECK(lambda_star(q)[j] != 0);
    }
}

TEST_CASE("symmetric support violation") {
    auto p = build_matrix_poisson(2, 2);
    p.delta[{3, 0}] = -2 * t(2, 2, 1, 2) * t(2, 2, 2, 1) + t(2, 2, 1, 1) * t(2, 2, 1, 2);
    auto rep = validate_symmetric(p);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "SupportViolation");
    CHECK(rep.violations[0].where == std::vector<int>{4, 1});
}

TEST_CASE("h* mismatch") {
    auto p = build_matrix_poisson(2, 2);
    (*p.h_star)[0][0] += 1;
    auto rep = validate_symmetric(p);
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "HStarMismatch");
}

TEST_CASE("d-integers") {
    auto p = build_matrix_poisson(3, 3);
    auto eta = compute_eta_and_primes(p).eta;
    auto d = compute_d_integers(p, eta);
    CHECK(d.q == 2);
    CHECK(d.d.size() == 3);
    for (const auto& [label, v] : d.d) CHECK(v == 1);

    auto two = d_integers_from_values({{0, 2}, {1, 3}});
    CHECK(two.q == 1);
    CHECK(two.d.at(0) == 2);
    CHECK(two.d.at(1) == 3);
    // d_{eta(j)} lambda*_l = d_{eta(l)} lambda*_j
    CHECK(two.d.at(1) * Rational(2) == two.d.at(0) * Rational(3));

    auto frac = d_integers_from_values({{0, make_rational(4, 3)}, {1, make_rational(2, 9)}});
    CHECK(frac.q == make_rational(2, 9));
    CHECK(frac.d.at(0) == 6);
    CHECK(frac.d.at(1) == 1);

    CHECK(error_code([] { d_integers_from_values({{0, 2}, {1, -2}}); }) == "Incompatible");
}

TEST_CASE("Xi_N") {
    CHECK(enumerate_xi(1) == std::vector<Perm>{Perm{0}});
    for (int n = 1; n <= 6; ++n) {
        auto xi = enumerate_xi(n);
        CHECK(xi == brute_force_xi(n));
        CHECK(xi.size() == (std::size_t{1} << (n - 1)));
        for (const auto& t : xi) CHECK(is_xi(t));
    }
    auto xi3 = enumerate_xi(3);
    std::set<Perm> three(xi3.begin(), xi3.end());
    CHECK(three == std::set<Perm>{one_based({1, 2, 3}), one_based({2, 1, 3}), one_based({2, 3, 1}), one_based({3, 2, 1})});
    CHECK_FALSE(is_xi(one_based({1, 3, 2, 4})));
}

TEST_CASE("Gamma_N") {
    auto g4 = gamma_chain(4);
    std::vector<Perm> want = {one_based({1, 2, 3, 4}), one_based({2, 1, 3, 4}), one_based({2, 3, 1, 4}),
                              one_based({2, 3, 4, 1}), one_based({3, 2, 4, 1}), one_based({3, 4, 2, 1}),
                              one_based({4, 3, 2, 1})};
    CHECK(g4.elements == want);
    for (int n = 1; n <= 8; ++n) {
        auto g = gamma_chain(n);
        CHECK(g.elements.size() == static_cast<std::size_t>(n * (n - 1) / 2 + 1));
        CHECK(g.links.size() + 1 == g.elements.size());
        for (std::size_t t = 0; t < g.links.size(); ++t) {
            const auto& l = g.links[t];
            Perm s = g.elements[t];
            CHECK(is_xi(s));
            CHECK(s[l.k] == l.i);
            CHECK(s[l.k + 1] == l.j);
            CHECK(l.i < l.j);
            std::swap(s[l.k], s[l.k + 1]);
            CHECK(s == g.elements[t + 1]);
        }
        // The chain ends at the longest element.
        Perm w0(n);
        std::iota(w0.rbegin(), w0.rend(), 0);
        CHECK(g.elements.back() == w0);
    }
}

TEST_CASE("tau bullet") {
    auto eta = compute_eta_and_primes(build_matrix_poisson(2, 2)).eta;
    auto a = one_based({2, 3, 1, 4});
    CHECK(tau_bullet(a, eta) == identity_perm(4));
    auto b = one_based({2, 3, 4, 1});
    // 3 -> 1, 4 -> 4, 1 -> 2, 2 -> 3
    CHECK(tau_bullet_tau(b, eta) == one_based({2, 3, 1, 4}));
    auto ea = eta_from_labels({0, 1, 2, 3});
    for (const auto& tau : enumerate_xi(4)) CHECK(tau_bullet(tau, ea) == identity_perm(4));
    // tau_bullet preserves level sets and is increasing on each preimage.
    auto eta3 = compute_eta_and_primes(build_matrix_poisson(3, 3)).eta;
    for (const auto& tau : gamma_chain(9).elements) {
        Perm tb = tau_bullet(tau, eta3);
        Perm tbt = tau_bullet_tau(tau, eta3);
        for (int a2 = 0; a2 < 9; ++a2) CHECK(eta3.eta[tb[a2]] == eta3.eta[a2]);
        for (int x = 0; x < 9; ++x)
            for (int y = x + 1; y < 9; ++y)
                if (eta3.eta[tau[x]] == eta3.eta[tau[y]]) CHECK(tbt[x] < tbt[y]);
    }
}

TEST_CASE("interval primes are solid minors") {
    auto p2 = build_matrix_poisson(2, 2);
    auto eta2 = compute_eta_and_primes(p2).eta;
    auto ip = interval_prime(p2, eta2, 0, 1);
    CHECK(ip.poly == t(2, 2, 1, 1) * t(2, 2, 2, 2) - t(2, 2, 1, 2) * t(2, 2, 2, 1));
    CHECK(ip.exponent == exps({1, 0, 0, 1}));
    CHECK(interval_prime(p2, eta2, 1, 0).poly == t(2, 2, 1, 2));

    auto p3 = build_matrix_poisson(3, 3);
    auto eta3 = compute_eta_and_primes(p3).eta;
    IntervalPrimeTable table(p3, eta3);
    CHECK(table.interval_prime(0, 2).poly == solid_minor(3, 3, {1, 3}, {1, 3}));
    CHECK(table.interval_prime(0, 2).poly.size() == 6);
    // y_[i, s^l(i)] = Delta_{[r, r+l], [c, c+l]}
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 3; ++c) {
            int i = (r - 1) * 3 + (c - 1);
            for (int l = 0; l <= table.max_steps(i); ++l)
                CHECK(table.interval_prime(i, l).poly == solid_minor(3, 3, {r, r + l}, {c, c + l}));
        }
    CHECK(error_code([&] { table.get(2, 1); }) == "IndexError");
    CHECK(table.get(4, -1) == cst(9, 1));
}

TEST_CASE("per-tau prime sequences") {
    auto p = build_matrix_poisson(2, 2);
    auto run = compute_eta_and_primes(p);
    IntervalPrimeTable table(p, run.eta);
    MvLaurent det = run.seq.y[3];
    auto y1 = y_sequence_for_tau(table, one_based({2, 3, 4, 1}));
    CHECK(y1 == std::vector<MvLaurent>{t(2, 2, 1, 2), t(2, 2, 2, 1), t(2, 2, 2, 2), det});
    auto y2 = y_sequence_for_tau(table, one_based({2, 3, 1, 4}));
    CHECK(y2 == std::vector<MvLaurent>{t(2, 2, 1, 2), t(2, 2, 2, 1), t(2, 2, 1, 1), det});
    CHECK(y_sequence_for_tau(table, identity_perm(4)) == run.seq.y);
}

TEST_CASE("selection formula agrees with the recursion on the permuted presentation") {
    for (auto [m, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
        auto p = build_matrix_poisson(m, n);
        const int N = m * n;
        auto run = compute_eta_and_primes(p);
        IntervalPrimeTable table(p, run.eta);
        for (const auto& tau : enumerate_xi(N)) {
            auto pt = tau_presentation(p, tau);
            CHECK(validate_algebra(pt).ok());
            auto rt = compute_eta_and_primes(pt);
            auto sel = y_sequence_for_tau(table, tau);
            for (int l = 0; l < N; ++l) CHECK(rt.seq.y[l].rename(tau, N) == sel[l]);
        }
    }
}

TEST_CASE("u-elements") {
    auto p = build_matrix_poisson(2, 2);
    auto eta = compute_eta_and_primes(p).eta;
    IntervalPrimeTable table(p, eta);
    auto u = u_element_and_pi(table, 0, 1);
    CHECK(u.u == t(2, 2, 1, 2) * t(2, 2, 2, 1));
    CHECK(u.pi == 1);
    CHECK(u.f == exps({0, 1, 1, 0}));
    CHECK(u.g == exps({0, 1, 1, 0}));
    CHECK(error_code([&] { u_element_and_pi(table, 1, 1); }) == "IndexError");

    // u_[i, s(i)] = t_{r,c+1} t_{r+1,c} on the 3x3 grid
    auto p3 = build_matrix_poisson(3, 3);
    IntervalPrimeTable t3(p3, compute_eta_and_primes(p3).eta);
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) {
            auto ue = u_element_and_pi(t3, (r - 1) * 3 + c - 1, 1);
            CHECK(ue.u == t(3, 3, r, c + 1) * t(3, 3, r + 1, c));
            CHECK(ue.pi == 1);
        }
    auto big = u_element_and_pi(t3, 0, 2);
    CHECK(big.pi == 1);
    CHECK(big.u == det22(3, 3, 1, 2) * det22(3, 3, 2, 1));
}

TEST_CASE("rescaling normalizes pi") {
    for (auto [m, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
        auto p = build_matrix_poisson(m, n);
        auto rs = rescale_generators(p, compute_eta_and_primes(p).eta);
        CHECK(rs.normalized);
        for (const auto& g : rs.gamma) CHECK(g == 1);
    }
    auto pa = build_affine_space(3, {{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}});
    auto ra = rescale_generators(pa, compute_eta_and_primes(pa).eta);
    for (const auto& g : ra.gamma) CHECK(g == 1);

    // x2 -> 3 x2 in the generators: the rescaled t12 is t12 / 3.
    auto p = build_matrix_poisson(2, 2);
    auto scaled = apply_rescaling(p, {1, make_rational(1, 3), 1, 1});
    auto eta = compute_eta_and_primes(scaled).eta;
    IntervalPrimeTable table(scaled, eta);
    CHECK(u_element_and_pi(table, 0, 1).pi == 3);
    auto rs = rescale_generators(scaled, eta);
    CHECK(rs.gamma == RatVec{1, 1, 1, make_rational(1, 3)});
    CHECK(rs.normalized);
    IntervalPrimeTable after(rs.presentation, eta);
    CHECK(u_element_and_pi(after, 0, 1).pi == 1);
}

TEST_CASE("tau presentation swaps generators") {
    auto p = build_matrix_poisson(2, 2);
    auto tau = one_based({2, 3, 4, 1});
    auto pt = tau_presentation(p, tau);
    // generator l of pt is x_{tau(l)}: brackets must agree after renaming.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            MvLaurent lhs = bracket(pt, var(4, a + 1), var(4, b + 1)).rename(tau, 4);
            MvLaurent rhs = bracket(p, var(4, tau[a] + 1), var(4, tau[b] + 1));
            CHECK(lhs == rhs);
        }
}
