#include "nichols/cartan_graph.hpp"

#include <algorithm>
#include <deque>

namespace nichols {

std::optional<int> CartanGraph::find(const DynkinDiagram &d) const {
    for (const auto &pt : points)
        if (pt.diagram == d) return pt.id;
    return std::nullopt;
}

GraphResult build_graph(const BraidingMatrix &m, GraphLimits limits) {
    CartanGraph g;
    g.spec = m.spec();
    g.rank = m.rank();
    g.limits = limits;
    g.origin = 0;

    std::map<std::vector<int64_t>, int> index;
    std::deque<int> queue;

    auto add_point = [&](const BraidingMatrix &rep) -> std::variant<int, GraphNotIFinite, PointLimitExceeded> {
        DynkinDiagram d = dynkin_of(rep);
        auto key = d.key();
        if (auto it = index.find(key); it != index.end()) return it->second;
        int id = static_cast<int>(g.points.size());
        auto gcm = cartan_matrix(d);
        if (auto *bad = std::get_if<NotIFinite>(&gcm)) return GraphNotIFinite{id, d, *bad};
        if (g.points.size() >= limits.max_points) return PointLimitExceeded{limits.max_points};
        g.points.push_back(Point{id, d, rep, std::get<GeneralizedCartanMatrix>(gcm),
                                 std::vector<int>(static_cast<std::size_t>(g.rank), -1)});
        index.emplace(std::move(key), id);
        queue.push_back(id);
        return id;
    };

    auto first = add_point(m);
    if (auto *bad = std::get_if<GraphNotIFinite>(&first)) return *bad;
    if (auto *lim = std::get_if<PointLimitExceeded>(&first)) return *lim;

    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        for (int i = 0; i < g.rank; ++i) {
            BraidingMatrix next = reflect(g.points[id].representative, i);
            auto res = add_point(next);
            if (auto *bad = std::get_if<GraphNotIFinite>(&res)) return *bad;
            if (auto *lim = std::get_if<PointLimitExceeded>(&res)) return *lim;
            int nid = std::get<int>(res);
            g.points[id].neighbor[i] = nid;
        }
    }
    return g;
}

ExchangeGraph exchange_graph(const CartanGraph &g) {
    ExchangeGraph x;
    std::map<std::pair<int, int>, std::vector<int>> labels;
    for (const auto &pt : g.points) {
        x.vertices.push_back(pt.id);
        for (int i = 0; i < g.rank; ++i) {
            int n = pt.neighbor[i];
            if (n == pt.id) continue;
            auto key = std::minmax(pt.id, n);
            auto &lab = labels[{key.first, key.second}];
            if (std::find(lab.begin(), lab.end(), i) == lab.end()) lab.push_back(i);
        }
    }
    for (auto &[key, lab] : labels) {
        std::sort(lab.begin(), lab.end());
        x.edges.push_back({key.first, key.second, lab});
    }
    return x;
}

bool is_standard(const CartanGraph &g) {
    return std::all_of(g.points.begin(), g.points.end(),
                       [&](const Point &pt) { return pt.gcm == g.points.front().gcm; });
}

namespace {

std::vector<Permutation4> all_permutations() {
    std::vector<Permutation4> out;
    Permutation4 p{0, 1, 2, 3};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

GeneralizedCartanMatrix seen_as(const CartanGraph &g, int point, const Permutation4 &perm) {
    return g.point(point).gcm.permuted(perm);
}

int step(const CartanGraph &g, int point, const Permutation4 &perm, int role) {
    return g.point(point).neighbor[perm[role]];
}

// The A4 pattern with a_34 = -a (neighbor r_2) or a_32 = -b (neighbor r_4).
GeneralizedCartanMatrix a4_with(int row, int col, int value) {
    GeneralizedCartanMatrix m = cartan_types::A4();
    m.set(row, col, value);
    return m;
}

const GeneralizedCartanMatrix &a4_third_neighbor() {
    static const GeneralizedCartanMatrix m{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, -1}, {0, -1, -1, 2}};
    return m;
}

}  // namespace

std::optional<GoodA4Witness> good_A4_at(const CartanGraph &g, int point) {
    if (g.rank != 4) return std::nullopt;
    for (const auto &perm : all_permutations()) {
        if (seen_as(g, point, perm) != cartan_types::A4()) continue;
        int x1 = step(g, point, perm, 0), x2 = step(g, point, perm, 1);
        int x3 = step(g, point, perm, 2), x4 = step(g, point, perm, 3);
        if (seen_as(g, x1, perm) != cartan_types::A4()) continue;
        if (seen_as(g, x3, perm) != a4_third_neighbor()) continue;
        auto m2 = seen_as(g, x2, perm);
        auto m4 = seen_as(g, x4, perm);
        int a = -m2(2, 3), b = -m4(2, 1);
        if (a < 1 || b < 1) continue;
        if (m2 != a4_with(2, 3, -a) || m4 != a4_with(2, 1, -b)) continue;

        GoodA4Witness w{perm, 0, a, b};
        if ((a == 2 && b == 1) || (a == 2 && b == 2)) {
            w.case_number = 1;
        } else if (a == 1 && b == 2) {
            int y = step(g, x3, perm, 0);  // r_1 r_3 (X)
            if (seen_as(g, y, perm)(1, 3) == -1) w.case_number = 2;
        } else if (a == 1 && b == 1) {
            auto m = seen_as(g, step(g, x3, perm, 1), perm);  // r_2 r_3 (X)
            if (m(0, 3) == m(3, 0) && (m(0, 3) == 0 || m(0, 3) == -1)) w.case_number = 3;
        }
        if (w.case_number != 0) return w;
    }
    return std::nullopt;
}

std::optional<GoodB4Witness> good_B4_at(const CartanGraph &g, int point) {
    if (g.rank != 4) return std::nullopt;
    for (const auto &perm : all_permutations()) {
        if (seen_as(g, point, perm) != cartan_types::B4()) continue;
        bool ok = true;
        for (int role = 0; role < 4 && ok; ++role)
            ok = seen_as(g, step(g, point, perm, role), perm) == cartan_types::B4();
        if (!ok) continue;
        int y = step(g, step(g, point, perm, 3), perm, 2);  // r_3 r_4 (X)
        if (seen_as(g, y, perm)(1, 3) == -1) return GoodB4Witness{perm};
    }
    return std::nullopt;
}

std::optional<std::string> finite_type_name(const GeneralizedCartanMatrix &a) {
    if (a.rank() != 4) return std::nullopt;
    const std::pair<const char *, const GeneralizedCartanMatrix *> types[] = {
        {"A4", &cartan_types::A4()}, {"B4", &cartan_types::B4()}, {"C4", &cartan_types::C4()},
        {"D4", &cartan_types::D4()}, {"F4", &cartan_types::F4()}};
    for (const auto &perm : all_permutations())
        for (const auto &[name, m] : types)
            if (a.permuted(perm) == *m) return std::string(name);
    return std::nullopt;
}

GoodNeighborhoodReport check_goodnei_theorem(const CartanGraph &g) {
    GoodNeighborhoodReport r;
    if (is_standard(g)) {
        if (auto t = finite_type_name(g.points.front().gcm)) {
            r.kind = GoodNeighborhoodReport::Kind::StandardFiniteType;
            r.type_name = *t;
        } else {
            r.kind = GoodNeighborhoodReport::Kind::Violation;
            r.detail = "standard Cartan graph whose matrix is not of finite type";
        }
        return r;
    }
    for (const auto &pt : g.points) {
        if (auto w = good_A4_at(g, pt.id)) {
            r.kind = GoodNeighborhoodReport::Kind::GoodA4;
            r.point = pt.id;
            r.a4 = w;
            return r;
        }
        if (auto w = good_B4_at(g, pt.id)) {
            r.kind = GoodNeighborhoodReport::Kind::GoodB4;
            r.point = pt.id;
            r.b4 = w;
            return r;
        }
    }
    r.kind = GoodNeighborhoodReport::Kind::Violation;
    r.detail = "non-standard graph without a good A4 or B4 neighborhood";
    return r;
}

}  // namespace nichols
