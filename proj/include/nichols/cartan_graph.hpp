#pragma once

// The semi-Cartan graph C(M) attached to a braiding matrix: points are
// generalized Dynkin diagrams on the fixed index set, reached from M by
// reflections, each carrying its Cartan matrix and involutive neighbor map.

#include "nichols/braiding.hpp"

#include <array>
#include <map>
#include <set>
#include <variant>

namespace nichols {

struct GraphLimits {
    std::size_t max_points = 4096;
};

struct Point {
    int id = 0;
    DynkinDiagram diagram;
    BraidingMatrix representative;  // some braiding matrix with this diagram
    GeneralizedCartanMatrix gcm;
    std::vector<int> neighbor;  // neighbor[i] = id of r_i(point)
};

struct CartanGraph {
    GroupSpecPtr spec;
    int rank = 0;
    std::vector<Point> points;
    int origin = 0;
    GraphLimits limits;

    const Point &point(int id) const { return points.at(static_cast<std::size_t>(id)); }
    std::optional<int> find(const DynkinDiagram &d) const;
};

/// A reached point fails i-finiteness: `point` is the id it would have had.
struct GraphNotIFinite {
    int point = 0;
    DynkinDiagram diagram;
    NotIFinite at;
};

struct PointLimitExceeded {
    std::size_t limit = 0;
};

using GraphResult = std::variant<CartanGraph, GraphNotIFinite, PointLimitExceeded>;

/// Breadth-first construction from M.  Reflection order i = 1..rank and a
/// FIFO queue make the point numbering deterministic.
GraphResult build_graph(const BraidingMatrix &m, GraphLimits limits = {});

struct ExchangeEdge {
    int a = 0;
    int b = 0;               // a < b
    std::vector<int> labels; // sorted reflection indices
    bool operator==(const ExchangeEdge &) const = default;
};

struct ExchangeGraph {
    std::vector<int> vertices;
    std::vector<ExchangeEdge> edges;  // sorted by (a, b)
};

ExchangeGraph exchange_graph(const CartanGraph &g);

bool is_standard(const CartanGraph &g);

/// Index map for good-neighborhood witnesses: role k of the definition is
/// played by the actual index perm[k].
using Permutation4 = std::array<int, 4>;

struct GoodA4Witness {
    Permutation4 perm{};
    int case_number = 0;  // 1, 2 or 3
    int a = 0;
    int b = 0;
};

struct GoodB4Witness {
    Permutation4 perm{};
};

std::optional<GoodA4Witness> good_A4_at(const CartanGraph &g, int point);
std::optional<GoodB4Witness> good_B4_at(const CartanGraph &g, int point);

/// Finite-type name ("A4", "B4", "C4", "D4", "F4") of a rank-4 Cartan
/// matrix up to a relabeling of the indices, if any.
std::optional<std::string> finite_type_name(const GeneralizedCartanMatrix &a);

struct GoodNeighborhoodReport {
    enum class Kind { StandardFiniteType, GoodA4, GoodB4, Violation };
    Kind kind = Kind::Violation;
    std::string type_name;  // for StandardFiniteType
    int point = -1;         // for GoodA4 / GoodB4
    std::optional<GoodA4Witness> a4;
    std::optional<GoodB4Witness> b4;
    std::string detail;
};

GoodNeighborhoodReport check_goodnei_theorem(const CartanGraph &g);

}  // namespace nichols
