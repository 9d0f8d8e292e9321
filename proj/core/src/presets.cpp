#include "pcgl/presets.hpp"

#include "pcgl/error.hpp"

#include <string>

namespace pcgl {

namespace {

int var_index(int n, int r, int c) { return (r - 1) * n + (c - 1); }

MvLaurent laplace(int m, int n, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int nv = m * n;
    if (rows.empty()) return MvLaurent::constant(nv, Rational(1));
    MvLaurent out(nv);
    std::vector<int> rest_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> rest_cols;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != c) rest_cols.push_back(cols[t]);
        MvLaurent term = MvLaurent::variable(nv, var_index(n, rows[0], cols[c])) * laplace(m, n, rest_rows, rest_cols);
        if (c % 2) out -= term;
        else out += term;
    }
    return out;
}

} // namespace

PoissonPresentation build_matrix_poisson(int m, int n) {
    if (m < 1 || n < 1) throw InputError("ShapeMismatch", "matrix preset needs m, n >= 1");
    PoissonPresentation p;
    p.n = m * n;
    p.torus_rank = m + n;
    std::vector<RatVec> hs;
    for (int r = 1; r <= m; ++r)
        for (int c = 1; c <= n; ++c) {
            WeightVec w(p.torus_rank, 0);
            w[r - 1] = 1;
            w[m + c - 1] = -1;
            p.weights.push_back(w);
            RatVec h(p.torus_rank, Rational(0));
            h[r - 1] = -1;
            h[m + c - 1] = 1;
            p.h.push_back(h);
            RatVec hstar = h;
            for (auto& v : hstar) v = -v;
            hs.push_back(hstar);
            p.names.push_back("t" + std::to_string(r) + std::to_string(c));
        }
    p.h_star = hs;
    // {t_kl, t_ij} = -2 t_il t_kj for i < k, j < l
    for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= n; ++l)
            for (int i = 1; i < k; ++i)
                for (int j = 1; j < l; ++j) {
                    ExpVec e = unit_exp(p.n, var_index(n, i, l)) + unit_exp(p.n, var_index(n, k, j));
                    p.delta[{var_index(n, k, l), var_index(n, i, j)}] = MvLaurent::monomial(e, Rational(-2));
                }
    return p;
}

PoissonPresentation build_affine_space(int n, const RatMatrix& q) {
    if (static_cast<int>(q.size()) != n || !is_skew_symmetric(q))
        throw InputError("ShapeMismatch", "affine space needs a skew-symmetric N x N matrix");
    PoissonPresentation p;
    p.n = n;
    p.torus_rank = n;
    std::vector<RatVec> hs;
    for (int k = 0; k < n; ++k) {
        WeightVec w(n, 0);
        w[k] = 1;
        p.weights.push_back(w);
        RatVec h(n, Rational(0)), hstar(n, Rational(0));
        for (int j = 0; j < k; ++j) h[j] = q[k][j];
        h[k] = 1;
        hstar[k] = -1;
        for (int j = k + 1; j < n; ++j) hstar[j] = q[k][j];
        p.h.push_back(h);
        hs.push_back(hstar);
    }
    p.h_star = hs;
    return p;
}

MvLaurent solid_minor(int m, int n, Interval rows, Interval cols) {
    auto [r0, r1] = rows;
    auto [c0, c1] = cols;
    if (r1 - r0 != c1 - c0 || r0 < 1 || c0 < 1 || r1 > m || c1 > n || r0 > r1)
        throw Error("ShapeMismatch", "minor [" + std::to_string(r0) + "," + std::to_string(r1) + "]x[" +
                                         std::to_string(c0) + "," + std::to_string(c1) + "] does not fit " +
                                         std::to_string(m) + "x" + std::to_string(n));
    std::vector<int> rs, cs;
    for (int r = r0; r <= r1; ++r) rs.push_back(r);
    for (int c = c0; c <= c1; ++c) cs.push_back(c);
    return laplace(m, n, rs, cs);
}

} // namespace pcgl
