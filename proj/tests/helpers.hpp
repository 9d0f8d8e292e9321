#pragma once

#include "pcgl/cluster.hpp"
#include "pcgl/error.hpp"
#include "pcgl/presets.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace pcgl;

inline MvLaurent var(int n, int k1) { return MvLaurent::variable(n, k1 - 1); } // 1-based
inline MvLaurent cst(int n, long c, long d = 1) { return MvLaurent::constant(n, make_rational(c, d)); }

// t_rc in O(M_{m,n}).
inline MvLaurent t(int m, int n, int r, int c) { return MvLaurent::variable(m * n, (r - 1) * n + (c - 1)); }

inline ExpVec exps(std::initializer_list<int> v) { return ExpVec(v); }

// Code of the pcgl::Error thrown by fn, or "" if none.
template <class F>
std::string error_code(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

inline MvLaurent random_poly(std::mt19937& rng, int nvars, int terms, int maxdeg, int lo = -3, int hi = 3,
                             bool allow_negative_exp = false) {
    std::uniform_int_distribution<int> coef(lo, hi), deg(allow_negative_exp ? -maxdeg : 0, maxdeg);
    MvLaurent f(nvars);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(nvars);
        for (auto& x : e) x = deg(rng);
        int c = coef(rng);
        if (c == 0) c = 1;
        f.add_term(e, make_rational(c));
    }
    return f;
}

inline RatMatrix random_skew(std::mt19937& rng, int n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    RatMatrix q = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            q[i][j] = d(rng);
            q[j][i] = -q[i][j];
        }
    return q;
}

// Validated, symmetric, normalized context for a matrix preset.
inline ClusterContext matrix_context(int m, int n) { return ClusterContext(build_matrix_poisson(m, n)); }

} // namespace testing
