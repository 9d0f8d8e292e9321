#include "io.hpp"

#include "pcgl/error.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pcgl::io {

json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return make_rational(j.get<long>());
    throw InputError("BadRational", "expected an integer or a \"p/q\" string, got " + j.dump());
}

namespace {

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Rational r = parse_rational(j.get<std::string>());
        if (is_integer(r)) return r.get_num();
    }
    throw InputError("BadRational", "expected an integer, got " + j.dump());
}

const json& require(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError("MissingField", std::string("presentation needs \"") + key + "\"");
    return j.at(key);
}

std::vector<RatVec> vectors_from_json(const json& j, std::size_t rows, std::size_t cols, const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw InputError("ShapeMismatch", std::string(what) + " must have " + std::to_string(rows) + " rows");
    std::vector<RatVec> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw InputError("ShapeMismatch", std::string(what) + " rows must have length " + std::to_string(cols));
        RatVec v;
        for (const auto& x : row) v.push_back(rational_from_json(x));
        out.push_back(v);
    }
    return out;
}

json vectors_json(const std::vector<RatVec>& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& x : row) r.push_back(rational_json(x));
        out.push_back(r);
    }
    return out;
}

} // namespace

json poly_json(const MvLaurent& f) {
    json out = json::array();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
        out.push_back(json::array({integer_json(it->second.get_num()), integer_json(it->second.get_den()), it->first}));
    return out;
}

MvLaurent poly_from_json(const json& j, int nvars) {
    if (!j.is_array()) throw InputError("BadPolynomial", "polynomial must be a list of [num, den, [exps]]");
    MvLaurent f(nvars);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3 || !t[2].is_array() || static_cast<int>(t[2].size()) != nvars)
            throw InputError("BadPolynomial", "bad term " + t.dump());
        Integer den = integer_from_json(t[1]);
        if (den == 0) throw InputError("BadRational", "zero denominator in " + t.dump());
        Rational c(integer_from_json(t[0]), den);
        c.canonicalize();
        ExpVec e;
        for (const auto& x : t[2]) {
            if (!x.is_number_integer()) throw InputError("BadPolynomial", "exponents must be integers: " + t.dump());
            e.push_back(x.get<int>());
        }
        f.add_term(e, c);
    }
    return f;
}

json poly_report(const MvLaurent& f, const std::vector<std::string>& names) {
    return {{"terms", poly_json(f)}, {"text", to_string(f, names)}};
}

json matrix_json(const RatMatrix& m) { return vectors_json(m); }

json matrix_json(const IntMatrix& m) { return m; }

json perm_json(const Perm& t) {
    json out = json::array();
    for (int v : t) out.push_back(v + 1);
    return out;
}

json presentation_to_json(const PoissonPresentation& p) {
    json j;
    j["n_gens"] = p.n;
    j["torus_rank"] = p.torus_rank;
    j["weights"] = p.weights;
    j["h"] = vectors_json(p.h);
    if (p.h_star) j["h_star"] = vectors_json(*p.h_star);
    if (p.raw_lambda) j["lambda"] = vectors_json(*p.raw_lambda);
    if (p.raw_lambda_diag) j["lambda_diag"] = vectors_json({*p.raw_lambda_diag})[0];
    if (p.raw_lambda_star) j["lambda_star"] = vectors_json({*p.raw_lambda_star})[0];
    json d = json::array();
    for (const auto& [kj, poly] : p.delta) {
        if (poly.is_zero()) continue;
        d.push_back({{"k", kj.first + 1}, {"j", kj.second + 1}, {"poly", poly_json(poly)}});
    }
    j["delta"] = d;
    if (!p.names.empty()) j["names"] = p.names;
    return j;
}

PoissonPresentation presentation_from_json(const json& j) {
    if (!j.is_object()) throw InputError("BadPresentation", "presentation must be a JSON object");
    PoissonPresentation p;
    try {
        p.n = require(j, "n_gens").get<int>();
        p.torus_rank = j.value("torus_rank", 0);
        if (p.n < 1) throw InputError("BadPresentation", "n_gens must be positive");
        if (p.torus_rank < 0) throw InputError("BadPresentation", "torus_rank must be nonnegative");
        const json& w = require(j, "weights");
        if (!w.is_array() || static_cast<int>(w.size()) != p.n)
            throw InputError("ShapeMismatch", "weights must have n_gens rows");
        for (const auto& row : w) {
            if (!row.is_array() || static_cast<int>(row.size()) != p.torus_rank)
                throw InputError("ShapeMismatch", "weight rows must have length torus_rank");
            p.weights.push_back(row.get<WeightVec>());
        }
        const std::size_t n = static_cast<std::size_t>(p.n), d = static_cast<std::size_t>(p.torus_rank);
        if (j.contains("lambda")) {
            p.raw_lambda = vectors_from_json(j.at("lambda"), n, n, "lambda");
            p.raw_lambda_diag = vectors_from_json(json::array({require(j, "lambda_diag")}), 1, n, "lambda_diag")[0];
            if (j.contains("lambda_star"))
                p.raw_lambda_star = vectors_from_json(json::array({j.at("lambda_star")}), 1, n, "lambda_star")[0];
            p.h.assign(n, RatVec(d, Rational(0)));
        } else {
            p.h = vectors_from_json(require(j, "h"), n, d, "h");
        }
        if (j.contains("h_star")) p.h_star = vectors_from_json(j.at("h_star"), n, d, "h_star");
        if (j.contains("delta")) {
            for (const auto& e : j.at("delta")) {
                int k = e.at("k").get<int>() - 1, jj = e.at("j").get<int>() - 1;
                if (k < 0 || k >= p.n || jj < 0 || jj >= k)
                    throw InputError("BadPresentation", "delta entry needs 1 <= j < k <= n_gens: " + e.dump());
                MvLaurent poly = poly_from_json(e.at("poly"), p.n);
                if (!poly.is_polynomial())
                    throw InputError("BadPolynomial", "delta entries must be polynomials: " + e.dump());
                if (!poly.is_zero()) p.delta[{k, jj}] = poly;
            }
        }
        if (j.contains("names")) {
            p.names = j.at("names").get<std::vector<std::string>>();
            if (static_cast<int>(p.names.size()) != p.n) throw InputError("ShapeMismatch", "names must have n_gens entries");
        }
    } catch (const json::exception& e) {
        throw InputError("BadPresentation", e.what());
    }
    return p;
}

PoissonPresentation read_presentation(const std::string& path) {
    json j;
    try {
        if (path == "-") {
            j = json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) throw InputError("FileNotFound", "cannot open " + path);
            j = json::parse(in);
        }
    } catch (const json::parse_error& e) {
        throw InputError("BadJson", e.what());
    }
    return presentation_from_json(j);
}

void write_json(const json& j, const std::string& path) {
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("FileNotWritable", "cannot write " + path);
    out << j.dump(2) << "\n";
}

std::vector<int> parse_index_list(const std::string& text, int n) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("BadIndex", "not an index: '" + item + "'");
        }
        if (v < 1 || v > n) throw InputError("BadIndex", "index " + std::to_string(v) + " outside [1," + std::to_string(n) + "]");
        out.push_back(v - 1);
    }
    return out;
}

Perm parse_perm(const std::string& text, int n) {
    Perm t = parse_index_list(text, n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : t) {
        if (seen[v]) throw InputError("BadPermutation", "repeated value in '" + text + "'");
        seen[v] = true;
    }
    if (static_cast<int>(t.size()) != n) throw InputError("BadPermutation", "'" + text + "' is not a permutation of [1," + std::to_string(n) + "]");
    return t;
}

namespace {

class ExprParser {
public:
    ExprParser(const std::string& s, int n, const std::vector<std::string>& names) : s_(s), n_(n), names_(names) {}

    MvLaurent parse() {
        MvLaurent f = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("BadExpression", msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MvLaurent sum() {
        MvLaurent f(2 * n_);
        bool neg = eat('-');
        if (!neg) eat('+');
        f = neg ? -product() : product();
        for (;;) {
            if (eat('+')) f += product();
            else if (eat('-')) f -= product();
            else return f;
        }
    }

    MvLaurent product() {
        MvLaurent f = power();
        for (;;) {
            if (eat('*')) {
                f *= power();
            } else if (eat('/')) {
                MvLaurent d = power();
                if (!d.is_monomial()) fail("division needs a single-term divisor");
                f *= d.pow(-1);
            } else {
                return f;
            }
        }
    }

    MvLaurent power() {
        MvLaurent base = atom();
        if (!eat('^')) return base;
        bool paren = eat('(');
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits = s_.substr(start, pos_ - start);
        if (paren && !eat(')')) fail("expected ')'");
        return raise(base, digits);
    }

    MvLaurent raise(const MvLaurent& base, const std::string& digits) {
        int e = 0;
        try {
            e = std::stoi(digits);
        } catch (const std::exception&) {
            fail("bad exponent '" + digits + "'");
        }
        if (e < 0 && !base.is_monomial()) fail("negative powers need a single-term base");
        return base.pow(e);
    }

    MvLaurent atom() {
        skip();
        if (eat('(')) {
            MvLaurent f = sum();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return MvLaurent::constant(2 * n_, parse_rational(s_.substr(start, pos_ - start)));
        }
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return variable(s_.substr(start, pos_ - start));
        }
        fail("expected a number, name or '('");
    }

    MvLaurent variable(const std::string& name) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return MvLaurent::variable(2 * n_, static_cast<int>(i));
        if (name.size() > 1 && (name[0] == 'x' || name[0] == 'y') &&
            name.find_first_not_of("0123456789", 1) == std::string::npos) {
            int k = std::stoi(name.substr(1));
            if (k < 1 || k > n_) fail("variable " + name + " out of range");
            return MvLaurent::variable(2 * n_, (name[0] == 'x' ? 0 : n_) + k - 1);
        }
        fail("unknown variable '" + name + "'");
    }

    const std::string& s_;
    int n_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

} // namespace

MvLaurent parse_expression(const std::string& text, int n, const std::vector<std::string>& names) {
    return ExprParser(text, n, names).parse();
}

} // namespace pcgl::io
