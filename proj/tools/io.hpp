#pragma once

#include "pcgl/cluster.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pcgl::io {

using nlohmann::json;

json rational_json(const Rational& r); // "p/q" string
Rational rational_from_json(const json& j);

json poly_json(const MvLaurent& f);            // [[num, den, [exps]]]
MvLaurent poly_from_json(const json& j, int nvars);
json poly_report(const MvLaurent& f, const std::vector<std::string>& names); // terms + text

json matrix_json(const RatMatrix& m);
json matrix_json(const IntMatrix& m);
json perm_json(const Perm& t); // 1-based

json presentation_to_json(const PoissonPresentation& p);
PoissonPresentation presentation_from_json(const json& j); // InputError on malformed input

PoissonPresentation read_presentation(const std::string& path); // "-" reads stdin
void write_json(const json& j, const std::string& path);        // "-" writes stdout

Perm parse_perm(const std::string& text, int n); // "2,3,4,1"
std::vector<int> parse_index_list(const std::string& text, int n); // 1-based in, 0-based out

// Polynomial expression over names, xK and yK. Variables x_1..x_N map to
// 0..N-1 and y_1..y_N to N..2N-1. Supports + - * / ^ and parentheses;
// division and negative powers need a constant or single-term divisor.
MvLaurent parse_expression(const std::string& text, int n, const std::vector<std::string>& names);

} // namespace pcgl::io
