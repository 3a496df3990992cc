#pragma once

// Input documents and DOT / JSON export.
//
// Input grammar, one statement per line, '#' starts a comment:
//
//   p = 7
//   gen q order 0          # 0 = infinite order
//   rank = 4
//   v1 = q                 # diagram: vertex labels ...
//   e12 = q^-1             # ... and edge labels, i < j (absent = 1)
//   q12 = -z^2*q^-1        # or a full braiding matrix q11 .. qnn
//   max_points = 4096      # optional limits
//   max_roots = 512
//
// An expression is an optional leading '-' followed by '*'-separated
// factors `1` or `name` or `name^k`.  Diagrams are lifted to the
// upper-triangular braiding matrix q_ij = e_ij, q_ji = 1 (i < j).

#include "nichols/classification.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nichols {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string &message);
    int line;
    int column;
    std::string message;
};

struct InputDoc {
    GroupSpecPtr spec;
    int rank = 0;
    std::variant<std::monostate, DynkinDiagram, BraidingMatrix> data;
    std::optional<std::size_t> max_points;
    std::optional<std::size_t> max_roots;
    std::vector<std::string> warnings;

    bool is_diagram() const { return std::holds_alternative<DynkinDiagram>(data); }
    BraidingMatrix matrix() const;
    DynkinDiagram diagram() const;
};

InputDoc parse_input(std::string_view text);
InputDoc read_input_file(const std::string &path);

/// Renders a document that parse_input maps back to the same values.
std::string print_input(const InputDoc &doc);

std::string export_dot(const CartanGraph &g);

namespace json {

using nlohmann::json;

json group(const GroupSpec &spec);
json unit(const FieldUnit &u);
json diagram(const DynkinDiagram &d);
json gcm(const GeneralizedCartanMatrix &a);
json graph(const CartanGraph &g);
json not_i_finite(const GraphNotIFinite &e);
json verdict(const CartanGraph &g, const FinitenessVerdict &v);
json matches(const std::vector<MatchResult> &ms);
json row_report(const RowReport &r);
json check_report(const CheckReport &r);

/// Two-space indented text with sorted keys and a trailing newline.
std::string dump(const json &j);

}  // namespace json

}  // namespace nichols
