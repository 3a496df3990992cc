#pragma once

// Braiding matrices of diagonal type, their generalized Dynkin diagrams,
// generalized Cartan matrices and the reflections R_i.
//
// Indices are 0-based throughout the library; text formats and reports use
// 1-based indices.

#include "nichols/unitgroup.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nichols {

constexpr int max_rank = 8;

/// Failure of i-finiteness at the pair (i, j).
struct NotIFinite {
    int i = 0;
    int j = 0;
    bool operator==(const NotIFinite &) const = default;
};

class BraidingMatrix {
public:
    BraidingMatrix(GroupSpecPtr spec, int rank);  // all entries 1
    BraidingMatrix(int rank, std::vector<FieldUnit> entries);

    int rank() const { return rank_; }
    const GroupSpecPtr &spec() const { return spec_; }
    const FieldUnit &at(int i, int j) const { return q_[i * rank_ + j]; }
    void set(int i, int j, FieldUnit u);

    /// q_ij q_ji
    FieldUnit edge_product(int i, int j) const { return at(i, j) * at(j, i); }

private:
    GroupSpecPtr spec_;
    int rank_;
    std::vector<FieldUnit> q_;
};

class DynkinDiagram {
public:
    DynkinDiagram(GroupSpecPtr spec, int rank);  // vertices 1, no edges

    int rank() const { return rank_; }
    const GroupSpecPtr &spec() const { return spec_; }

    const FieldUnit &vertex(int i) const { return vertex_[i]; }
    void set_vertex(int i, FieldUnit u);

    /// The edge label q_ij q_ji, or nullopt when that product is 1.
    std::optional<FieldUnit> edge(int i, int j) const;
    /// The product q_ij q_ji itself (identity when there is no edge).
    const FieldUnit &edge_product(int i, int j) const { return edge_[i * rank_ + j]; }
    void set_edge(int i, int j, FieldUnit u);

    /// Vertex k of this diagram becomes vertex perm[k].
    DynkinDiagram relabeled(std::span<const int> perm) const;

    /// Flat exponent vector of all labels; equal keys iff equal diagrams.
    std::vector<int64_t> key() const;

    bool operator==(const DynkinDiagram &other) const;
    bool operator!=(const DynkinDiagram &other) const { return !(*this == other); }

    /// Compact one-line rendering, e.g. "v=[q,q^-1,...] e12=q^-1 e23=...".
    std::string to_string() const;

private:
    GroupSpecPtr spec_;
    int rank_;
    std::vector<FieldUnit> vertex_;
    std::vector<FieldUnit> edge_;  // symmetric rank x rank, diagonal unused
};

class GeneralizedCartanMatrix {
public:
    GeneralizedCartanMatrix() = default;
    explicit GeneralizedCartanMatrix(int rank);  // identity-like: 2 on diagonal, 0 elsewhere
    GeneralizedCartanMatrix(int rank, std::vector<int> entries);
    GeneralizedCartanMatrix(std::initializer_list<std::initializer_list<int>> rows);

    int rank() const { return rank_; }
    int operator()(int i, int j) const { return a_[i * rank_ + j]; }
    void set(int i, int j, int v) { a_[i * rank_ + j] = v; }
    const std::vector<int> &entries() const { return a_; }

    /// a_ii = 2, a_ij <= 0 off the diagonal, a_ij = 0 iff a_ji = 0.
    bool satisfies_axioms() const;
    /// a'_{kl} = a_{perm[k] perm[l]}
    GeneralizedCartanMatrix permuted(std::span<const int> perm) const;

    bool operator==(const GeneralizedCartanMatrix &) const = default;
    std::string to_string() const;

private:
    int rank_ = 0;
    std::vector<int> a_;
};

namespace cartan_types {
const GeneralizedCartanMatrix &A4();
const GeneralizedCartanMatrix &B4();
const GeneralizedCartanMatrix &C4();
const GeneralizedCartanMatrix &D4();
const GeneralizedCartanMatrix &F4();
}  // namespace cartan_types

DynkinDiagram dynkin_of(const BraidingMatrix &m);

/// Upper-triangular representative: q_ij = edge label, q_ji = 1 for i < j.
BraidingMatrix lift(const DynkinDiagram &d);

/// a_ij for a vertex label qii and edge product r = q_ij q_ji, or nullopt
/// when no finite entry exists.
std::optional<int> cartan_entry(const FieldUnit &qii, const FieldUnit &r);

/// Row i of the Cartan matrix of a diagram.
std::variant<std::vector<int>, NotIFinite> cartan_row(const DynkinDiagram &d, int i);

std::variant<GeneralizedCartanMatrix, NotIFinite> cartan_matrix(const DynkinDiagram &d);
std::variant<GeneralizedCartanMatrix, NotIFinite> cartan_matrix(const BraidingMatrix &m);

/// Thrown by reflect when the input is not i-finite.
class NotIFiniteError : public std::runtime_error {
public:
    explicit NotIFiniteError(NotIFinite at);
    NotIFinite at;
};

/// Thrown by reflect_diagram_cases when none of the case formulas applies.
class InternalCaseGap : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// R_i on the braiding matrix:
///   q'_jk = q_jk q_ik^{-a_ij} q_ji^{-a_ik} q_ii^{a_ij a_ik}.
BraidingMatrix reflect(const BraidingMatrix &m, int i);

/// R_i computed on the diagram directly from the vertex / edge case table.
/// Independent of reflect; used to cross-check it.
DynkinDiagram reflect_diagram_cases(const DynkinDiagram &d, int i);

bool is_indecomposable(const DynkinDiagram &d);
bool is_indecomposable(const BraidingMatrix &m);

}  // namespace nichols
