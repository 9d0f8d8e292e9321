#include "pcgl/rational.hpp"

#include "pcgl/error.hpp"

#include <cctype>

namespace pcgl {

namespace {

bool valid_integer_text(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!den.empty() && den[0] == '+') den.erase(0, 1);
    if (!valid_integer_text(num) || !valid_integer_text(den))
        throw InputError("BadRational", "not a rational literal: '" + text + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw InputError("BadRational", "zero denominator in '" + text + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Integer n, d;
    mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    Rational r(n, d);
    r.canonicalize();
    return r;
}

RatMatrix zero_matrix(std::size_t rows, std::size_t cols) {
    return RatMatrix(rows, RatVec(cols, Rational(0)));
}

RatMatrix transpose(const RatMatrix& a) {
    if (a.empty()) return {};
    RatMatrix t = zero_matrix(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    std::size_t inner = b.size();
    std::size_t cols = b.empty() ? 0 : b[0].size();
    RatMatrix c = zero_matrix(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

bool is_skew_symmetric(const RatMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j] != -a[j][i]) return false;
    }
    return true;
}

LinearSolution solve_linear(const RatMatrix& a, const RatVec& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    RatMatrix m = a;
    RatVec rhs = b;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    LinearSolution out;
    out.rank = r;
    out.consistent = true;
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) out.consistent = false;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    if (out.consistent) {
        out.particular.assign(cols, Rational(0));
        for (std::size_t i = 0; i < r; ++i) out.particular[pivot_cols[i]] = rhs[i];
    }
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < r; ++i) v[pivot_cols[i]] = -m[i][free];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

} // namespace pcgl
