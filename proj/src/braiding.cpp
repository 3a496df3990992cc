#include "nichols/braiding.hpp"

#include <algorithm>
#include <sstream>

namespace nichols {

namespace {

void check_rank(int rank) {
    if (rank < 1 || rank > max_rank)
        throw std::invalid_argument("rank must be between 1 and " + std::to_string(max_rank));
}

bool is_primitive_root(const FieldUnit &q, int64_t n) {
    auto ord = element_order(q);
    return ord && *ord == n;
}

}  // namespace

// ---------------------------------------------------------------------------
// BraidingMatrix

BraidingMatrix::BraidingMatrix(GroupSpecPtr spec, int rank) : spec_(std::move(spec)), rank_(rank) {
    check_rank(rank);
    q_.assign(static_cast<std::size_t>(rank * rank), FieldUnit::identity(spec_));
}

BraidingMatrix::BraidingMatrix(int rank, std::vector<FieldUnit> entries) : rank_(rank), q_(std::move(entries)) {
    check_rank(rank);
    if (q_.size() != static_cast<std::size_t>(rank * rank))
        throw std::invalid_argument("braiding matrix needs rank^2 entries");
    spec_ = q_.front().spec();
    for (const auto &u : q_)
        if (!u.valid() || !same_group(u.spec(), spec_)) throw GroupError("braiding entries from different groups");
}

void BraidingMatrix::set(int i, int j, FieldUnit u) {
    if (!same_group(u.spec(), spec_)) throw GroupError("braiding entry from a different group");
    q_[i * rank_ + j] = std::move(u);
}

// ---------------------------------------------------------------------------
// DynkinDiagram

DynkinDiagram::DynkinDiagram(GroupSpecPtr spec, int rank) : spec_(std::move(spec)), rank_(rank) {
    check_rank(rank);
    vertex_.assign(static_cast<std::size_t>(rank), FieldUnit::identity(spec_));
    edge_.assign(static_cast<std::size_t>(rank * rank), FieldUnit::identity(spec_));
}

void DynkinDiagram::set_vertex(int i, FieldUnit u) {
    if (!same_group(u.spec(), spec_)) throw GroupError("vertex label from a different group");
    vertex_[i] = std::move(u);
}

std::optional<FieldUnit> DynkinDiagram::edge(int i, int j) const {
    const auto &e = edge_[i * rank_ + j];
    if (e.is_identity()) return std::nullopt;
    return e;
}

void DynkinDiagram::set_edge(int i, int j, FieldUnit u) {
    if (i == j) throw std::invalid_argument("diagram edges join distinct vertices");
    if (!same_group(u.spec(), spec_)) throw GroupError("edge label from a different group");
    edge_[i * rank_ + j] = u;
    edge_[j * rank_ + i] = std::move(u);
}

DynkinDiagram DynkinDiagram::relabeled(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != rank_) throw std::invalid_argument("permutation has wrong size");
    DynkinDiagram out(spec_, rank_);
    for (int k = 0; k < rank_; ++k) out.vertex_[perm[k]] = vertex_[k];
    for (int k = 0; k < rank_; ++k)
        for (int l = 0; l < rank_; ++l)
            if (k != l) out.edge_[perm[k] * rank_ + perm[l]] = edge_[k * rank_ + l];
    return out;
}

std::vector<int64_t> DynkinDiagram::key() const {
    std::vector<int64_t> k;
    k.push_back(rank_);
    for (const auto &v : vertex_) k.insert(k.end(), v.coordinates().begin(), v.coordinates().end());
    for (int i = 0; i < rank_; ++i)
        for (int j = i + 1; j < rank_; ++j) {
            const auto &e = edge_[i * rank_ + j].coordinates();
            k.insert(k.end(), e.begin(), e.end());
        }
    return k;
}

bool DynkinDiagram::operator==(const DynkinDiagram &other) const {
    return rank_ == other.rank_ && same_group(spec_, other.spec_) && key() == other.key();
}

std::string DynkinDiagram::to_string() const {
    std::ostringstream os;
    os << "v=[";
    for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << vertex_[i].to_string();
    os << "]";
    for (int i = 0; i < rank_; ++i)
        for (int j = i + 1; j < rank_; ++j)
            if (auto e = edge(i, j)) os << " e" << i + 1 << j + 1 << "=" << e->to_string();
    return os.str();
}

// ---------------------------------------------------------------------------
// GeneralizedCartanMatrix

GeneralizedCartanMatrix::GeneralizedCartanMatrix(int rank) : rank_(rank), a_(static_cast<std::size_t>(rank * rank), 0) {
    for (int i = 0; i < rank; ++i) a_[i * rank + i] = 2;
}

GeneralizedCartanMatrix::GeneralizedCartanMatrix(int rank, std::vector<int> entries)
    : rank_(rank), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rank * rank)) throw std::invalid_argument("Cartan matrix needs rank^2 entries");
}

GeneralizedCartanMatrix::GeneralizedCartanMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : rank_(static_cast<int>(rows.size())) {
    for (const auto &r : rows) {
        if (static_cast<int>(r.size()) != rank_) throw std::invalid_argument("Cartan matrix must be square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

bool GeneralizedCartanMatrix::satisfies_axioms() const {
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            int a = (*this)(i, j);
            if (i == j ? a != 2 : a > 0) return false;
            if (i != j && (a == 0) != ((*this)(j, i) == 0)) return false;
        }
    return true;
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::permuted(std::span<const int> perm) const {
    GeneralizedCartanMatrix out(rank_);
    for (int k = 0; k < rank_; ++k)
        for (int l = 0; l < rank_; ++l) out.set(k, l, (*this)(perm[k], perm[l]));
    return out;
}

std::string GeneralizedCartanMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rank_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < rank_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace cartan_types {

const GeneralizedCartanMatrix &A4() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    return m;
}
const GeneralizedCartanMatrix &B4() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}};
    return m;
}
const GeneralizedCartanMatrix &C4() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -2}, {0, 0, -1, 2}};
    return m;
}
const GeneralizedCartanMatrix &D4() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    return m;
}
const GeneralizedCartanMatrix &F4() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    return m;
}

}  // namespace cartan_types

// ---------------------------------------------------------------------------
// Diagrams and Cartan entries

DynkinDiagram dynkin_of(const BraidingMatrix &m) {
    DynkinDiagram d(m.spec(), m.rank());
    for (int i = 0; i < m.rank(); ++i) {
        d.set_vertex(i, m.at(i, i));
        for (int j = i + 1; j < m.rank(); ++j) d.set_edge(i, j, m.edge_product(i, j));
    }
    return d;
}

BraidingMatrix lift(const DynkinDiagram &d) {
    BraidingMatrix m(d.spec(), d.rank());
    for (int i = 0; i < d.rank(); ++i) {
        m.set(i, i, d.vertex(i));
        for (int j = i + 1; j < d.rank(); ++j) m.set(i, j, d.edge_product(i, j));
    }
    return m;
}

std::optional<int> cartan_entry(const FieldUnit &qii, const FieldUnit &r) {
    // Least m with (m+1)_{qii} (qii^m r - 1) = 0.
    std::optional<int64_t> m = min_power_hitting(qii, r.inverse());
    std::optional<int64_t> m2;
    if (qii.is_identity()) {
        int64_t p = qii.spec()->characteristic();
        if (p > 0) m2 = p - 1;
    } else if (auto d = element_order(qii)) {
        m2 = *d - 1;
    }
    if (m2 && (!m || *m2 < *m)) m = m2;
    if (!m) return std::nullopt;
    return -static_cast<int>(*m);
}

std::variant<std::vector<int>, NotIFinite> cartan_row(const DynkinDiagram &d, int i) {
    std::vector<int> row(static_cast<std::size_t>(d.rank()), 0);
    for (int j = 0; j < d.rank(); ++j) {
        if (j == i) {
            row[j] = 2;
            continue;
        }
        auto a = cartan_entry(d.vertex(i), d.edge_product(i, j));
        if (!a) return NotIFinite{i, j};
        row[j] = *a;
    }
    return row;
}

std::variant<GeneralizedCartanMatrix, NotIFinite> cartan_matrix(const DynkinDiagram &d) {
    GeneralizedCartanMatrix a(d.rank());
    for (int i = 0; i < d.rank(); ++i) {
        auto row = cartan_row(d, i);
        if (auto *bad = std::get_if<NotIFinite>(&row)) return *bad;
        const auto &r = std::get<std::vector<int>>(row);
        for (int j = 0; j < d.rank(); ++j) a.set(i, j, r[j]);
    }
    return a;
}

std::variant<GeneralizedCartanMatrix, NotIFinite> cartan_matrix(const BraidingMatrix &m) {
    return cartan_matrix(dynkin_of(m));
}

NotIFiniteError::NotIFiniteError(NotIFinite where)
    : std::runtime_error("not " + std::to_string(where.i + 1) + "-finite at pair (" + std::to_string(where.i + 1) +
                         "," + std::to_string(where.j + 1) + ")"),
      at(where) {}

// ---------------------------------------------------------------------------
// Reflections

BraidingMatrix reflect(const BraidingMatrix &m, int i) {
    auto row = cartan_row(dynkin_of(m), i);
    if (auto *bad = std::get_if<NotIFinite>(&row)) throw NotIFiniteError(*bad);
    const auto &a = std::get<std::vector<int>>(row);
    const int n = m.rank();
    BraidingMatrix out(m.spec(), n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            FieldUnit v = m.at(j, k) * m.at(i, k).pow(-a[j]) * m.at(j, i).pow(-a[k]) *
                          m.at(i, i).pow(static_cast<int64_t>(a[j]) * a[k]);
            out.set(j, k, std::move(v));
        }
    return out;
}

DynkinDiagram reflect_diagram_cases(const DynkinDiagram &d, int i) {
    auto row = cartan_row(d, i);
    if (auto *bad = std::get_if<NotIFinite>(&row)) throw NotIFiniteError(*bad);
    const auto &a = std::get<std::vector<int>>(row);
    const int n = d.rank();
    const FieldUnit &q = d.vertex(i);
    auto r = [&](int j) -> const FieldUnit & { return d.edge_product(i, j); };
    // q_ij q_ji = q_ii^{a_ij}
    auto plain = [&](int j) { return r(j) == q.pow(a[j]); };
    auto primitive = [&](int j) { return is_primitive_root(q, 1 - a[j]); };
    auto gap = [&](const std::string &what, int j, int k) {
        return InternalCaseGap("no reflection case applies to " + what + " at i=" + std::to_string(i + 1) +
                               ", j=" + std::to_string(j + 1) + (k >= 0 ? ", k=" + std::to_string(k + 1) : ""));
    };

    DynkinDiagram out(d.spec(), n);
    out.set_vertex(i, q);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (plain(j)) {
            out.set_vertex(j, d.vertex(j));
            out.set_edge(i, j, r(j));
        } else if (primitive(j)) {
            out.set_vertex(j, q * d.vertex(j) * r(j).pow(-a[j]));
            out.set_edge(i, j, q.pow(2) * r(j).inverse());
        } else if (q.is_identity()) {
            out.set_vertex(j, d.vertex(j) * r(j).pow(-a[j]));
            out.set_edge(i, j, r(j).inverse());
        } else {
            throw gap("vertex", j, -1);
        }
    }
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int k = j + 1; k < n; ++k) {
            if (k == i) continue;
            const FieldUnit &e = d.edge_product(j, k);
            if (plain(j) && plain(k)) {
                out.set_edge(j, k, e);
            } else if (plain(j) && primitive(k)) {
                out.set_edge(j, k, e * (r(k) * q.inverse()).pow(-a[j]));
            } else if (plain(k) && primitive(j)) {
                out.set_edge(j, k, e * (r(j) * q.inverse()).pow(-a[k]));
            } else if (q.is_identity()) {
                out.set_edge(j, k, e * r(j).pow(-a[k]) * r(k).pow(-a[j]));
            } else if (primitive(j) && primitive(k)) {
                out.set_edge(j, k, e * q.pow(2) * (r(j) * r(k)).pow(-a[j]));
            } else {
                throw gap("edge", j, k);
            }
        }
    }
    return out;
}

bool is_indecomposable(const DynkinDiagram &d) {
    const int n = d.rank();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w)
            if (w != v && !seen[w] && d.edge(v, w)) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

bool is_indecomposable(const BraidingMatrix &m) { return is_indecomposable(dynkin_of(m)); }

}  // namespace nichols
