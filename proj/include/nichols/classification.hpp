#pragma once

// Rank-4 classification data: the 23 rows of generalized Dynkin diagrams
// with finite root systems in positive characteristic, their exchange
// graphs, diagram matching and per-row verification.

#include "nichols/cartan_graph.hpp"
#include "nichols/root_system.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

enum class Shape { Chain, ThreeFork, RightOfWay };

/// A label (-1)^negative * x^exponent in the row parameter x.
struct Monomial {
    bool negative = false;
    int exponent = 0;
    bool operator==(const Monomial &) const = default;
};

/// One printed diagram.  `labels` follows the drawing order:
///   chain       v1 e12 v2 e23 v3 e34 v4
///   three-fork  v1 e12 v2 e23 e24 v3 v4   (vertex 2 joined to 1, 3, 4)
///   right-of-way v1 e12 v2 e23 e24 v3 e34 v4  (triangle 2-3-4, tail 1)
struct PrintedDiagram {
    Shape shape = Shape::Chain;
    std::vector<Monomial> labels;
};

/// A vertex of the exchange graph: printed diagram `diagram` (0-based)
/// relabeled by tau (vertex k of the diagram becomes vertex tau[k]).
struct TablePoint {
    int diagram = 0;
    Permutation4 tau{0, 1, 2, 3};
};

struct TableEdge {
    int from = 0;  // indices into RowTemplate::points
    int to = 0;
    int label = 0; // 0-based reflection index
};

enum class ParamKind { None, Free, RootOfUnity };
enum class CharConstraint { Positive, NotTwo, NotThree, GreaterThree, EqualsThree };

struct RowTemplate {
    std::string id;
    ParamKind kind = ParamKind::None;
    std::string symbol;             // "q" or "zeta"
    std::vector<int> exclusions;    // Free: x^k != 1 for each k
    int root_order = 0;             // RootOfUnity: x primitive of this order
    std::string constraint_text;
    CharConstraint characteristic = CharConstraint::Positive;
    std::vector<PrintedDiagram> diagrams;
    std::vector<TablePoint> points;
    std::vector<TableEdge> edges;
    /// Places where `points` / `edges` differ from the printed exchange graph.
    std::vector<std::string> errata;
};

class ConstraintViolated : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<RowTemplate> &builtin_rows();
const RowTemplate &row_by_id(const std::string &id);

bool characteristic_allowed(CharConstraint c, int64_t p);
std::string to_string(CharConstraint c);
std::string to_string(Shape s);
std::string to_string(const Monomial &m, const std::string &symbol);

/// Vertex / edge slots of each drawing argument.
struct Slot {
    int i = 0;
    int j = -1;  // -1 for a vertex label
};
const std::vector<Slot> &slots(Shape s);

DynkinDiagram instantiate(const PrintedDiagram &d, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x);

struct RowInstance {
    std::vector<DynkinDiagram> printed;  // template order
    std::vector<DynkinDiagram> points;   // exchange-graph vertices, tau applied
};

/// Throws ConstraintViolated naming the failed condition.
void check_assignment(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x);
RowInstance instantiate_row(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x);

struct MatchResult {
    std::string row;
    std::optional<FieldUnit> parameter;
    int diagram = 0;  // printed diagram index
    Permutation4 perm{};  // printed vertex k sits at queried vertex perm[k]
};

/// All (row, parameter) pairs whose printed diagrams reproduce d under some
/// vertex permutation.  Throws std::domain_error when p = 0.
std::vector<MatchResult> match_diagram(const DynkinDiagram &d);

struct RowReport {
    std::string row;
    std::string assignment;
    bool finite = false;
    std::size_t point_count = 0;
    std::size_t expected_points = 0;
    std::size_t positive_roots = 0;
    std::vector<std::string> failures;
    std::string goodnei;
    double seconds = 0;
    bool ok() const { return failures.empty(); }
};

RowReport verify_row(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x);

struct CanonicalAssignment {
    GroupSpecPtr spec;
    std::optional<FieldUnit> parameter;
    std::string description;
};

/// Generic and torsion parameter choices under allowed characteristics.
std::vector<CanonicalAssignment> canonical_assignments(const RowTemplate &row);

/// Plain-text dump of all templates for auditing against the tables.
std::string dump_templates();

}  // namespace nichols
