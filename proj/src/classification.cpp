#include "nichols/classification.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace nichols {

namespace {

// ---- compact template notation ---------------------------------------------
//
// Labels: whitespace separated monomials "1", "-1", "q", "-q^-2", "z^-1", ...
// Points: whitespace separated "Dk" or "ijklDk" (relabeling tau_ijkl).
// Edges:  whitespace separated "a-l-b": point a and point b (1-based
//         positions in the point list) joined by an edge labeled l.

Monomial parse_monomial(const std::string &tok) {
    Monomial m;
    std::size_t pos = 0;
    if (tok[pos] == '-') {
        m.negative = true;
        ++pos;
    }
    if (tok.compare(pos, std::string::npos, "1") == 0) return m;
    ++pos;  // the parameter letter
    m.exponent = 1;
    if (pos < tok.size() && tok[pos] == '^') m.exponent = std::stoi(tok.substr(pos + 1));
    return m;
}

PrintedDiagram diagram(Shape s, const std::string &labels) {
    PrintedDiagram d{s, {}};
    std::istringstream is(labels);
    for (std::string tok; is >> tok;) d.labels.push_back(parse_monomial(tok));
    if (d.labels.size() != slots(s).size()) throw std::logic_error("bad template: " + labels);
    return d;
}

PrintedDiagram chain(const std::string &l) { return diagram(Shape::Chain, l); }
PrintedDiagram fork(const std::string &l) { return diagram(Shape::ThreeFork, l); }
PrintedDiagram way(const std::string &l) { return diagram(Shape::RightOfWay, l); }

std::vector<TablePoint> parse_points(const std::string &text) {
    std::vector<TablePoint> out;
    std::istringstream is(text);
    for (std::string tok; is >> tok;) {
        TablePoint p;
        auto d = tok.find('D');
        if (d == 4)
            for (int k = 0; k < 4; ++k) p.tau[k] = tok[k] - '1';
        p.diagram = std::stoi(tok.substr(d + 1)) - 1;
        out.push_back(p);
    }
    return out;
}

std::vector<TableEdge> parse_edges(const std::string &text) {
    std::vector<TableEdge> out;
    std::istringstream is(text);
    for (std::string tok; is >> tok;) {
        int a = 0, l = 0, b = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ts(tok);
        ts >> a >> c1 >> l >> c2 >> b;
        out.push_back({a - 1, b - 1, l - 1});
    }
    return out;
}

RowTemplate free_row(std::string id, std::vector<int> excl, std::string text, std::vector<PrintedDiagram> ds,
                     const std::string &points, const std::string &edges,
                     CharConstraint c = CharConstraint::Positive) {
    RowTemplate r;
    r.id = std::move(id);
    r.kind = ParamKind::Free;
    r.symbol = "q";
    r.exclusions = std::move(excl);
    r.constraint_text = std::move(text);
    r.characteristic = c;
    r.diagrams = std::move(ds);
    r.points = parse_points(points);
    r.edges = parse_edges(edges);
    return r;
}

RowTemplate root_row(std::string id, int order, CharConstraint c, std::vector<PrintedDiagram> ds,
                     const std::string &points, const std::string &edges) {
    RowTemplate r;
    r.id = std::move(id);
    r.kind = ParamKind::RootOfUnity;
    r.symbol = "zeta";
    r.root_order = order;
    r.constraint_text = "zeta in G'_" + std::to_string(order);
    r.characteristic = c;
    r.diagrams = std::move(ds);
    r.points = parse_points(points);
    r.edges = parse_edges(edges);
    return r;
}

std::vector<RowTemplate> make_rows() {
    using C = CharConstraint;
    std::vector<RowTemplate> rows;
    const std::string q1 = "q in k* \\ {1}", q2 = "q in k*, q^2 != 1";

    rows.push_back(free_row("1", {1}, q1, {chain("q q^-1 q q^-1 q q^-1 q")}, "D1", ""));
    rows.push_back(free_row("2", {2}, q2, {chain("q^2 q^-2 q^2 q^-2 q^2 q^-2 q")}, "D1", ""));
    rows.push_back(free_row("3", {2}, q2, {chain("q q^-1 q q^-1 q q^-2 q^2")}, "D1", ""));
    rows.push_back(free_row("4", {2}, q2, {chain("q^2 q^-2 q^2 q^-2 q q^-1 q")}, "D1", ""));
    rows.push_back(free_row("5", {1}, q1, {fork("q q^-1 q q^-1 q^-1 q q")}, "D1", ""));

    rows.push_back(free_row("6", {2}, q2,
                            {chain("-1 q^-1 q q^-1 q q^-1 q"), chain("-1 q -1 q^-1 q q^-1 q"),
                             chain("q q^-1 -1 q -1 q^-1 q")},
                            "D1 D2 D3 4321D2 4321D1", "1-1-2 2-2-3 3-3-4 4-4-5"));
    rows.push_back(free_row("7", {4}, "q in k*, q^4 != 1",
                            {chain("-1 q^-2 q^2 q^-2 q^2 q^-2 q"), chain("-1 q^2 -1 q^-2 q^2 q^-2 q"),
                             chain("q^2 q^-2 -1 q^2 -1 q^-2 q"), chain("q^2 q^-2 q^2 q^-2 -1 q^2 -q^-1")},
                            "D1 D2 D3 D4", "1-1-2 2-2-3 3-3-4"));
    rows.push_back(free_row("8", {2}, q2,
                            {chain("-1 q^-1 q q^-1 q q^-2 q^2"), chain("-1 q -1 q^-1 q q^-2 q^2"),
                             chain("q q^-1 -1 q -1 q^-2 q^2"), way("q q^-1 q q^-1 q^-1 -1 q^2 -1")},
                            "D1 D2 D3 D4 1243D3 1243D2 1243D1", "1-1-2 2-2-3 3-3-4 4-4-5 5-2-6 6-1-7"));
    rows.push_back(free_row("9", {2, 3}, "q in k*, q^2, q^3 != 1",
                            {chain("q^2 q^-2 q^2 q^-2 q q^-1 -1"), chain("q^2 q^-2 q^2 q^-2 -1 q -1"),
                             way("q^2 q^-2 -1 q^2 q^-1 -1 q^-1 q"), chain("q^2 q^-2 q^2 q^-2 -1 q^3 q^-3"),
                             chain("q^2 q^-2 q q^-1 -1 q^3 q^-3"), way("q^2 q^-2 -1 q^2 q -1 q^-3 -1")},
                            "D1 D2 D3 3214D6 3214D4 3241D5", "1-4-2 2-3-3 3-2-4 4-1-5 4-4-6"));
    rows.push_back(free_row("10", {2}, q2,
                            {chain("q^-1 q -1 q^-1 q q^-1 q"), chain("-1 q^-1 -1 q -1 q^-1 q"),
                             chain("-1 q q^-1 q -1 q^-1 q"), chain("-1 q^-1 q q^-1 -1 q -1"),
                             chain("-1 q^-1 q q^-1 q q^-1 -1"), chain("-1 q -1 q^-1 -1 q -1")},
                            "D1 D2 D4 D5 D3 D6 4321D4 4321D3 4321D2 4321D1",
                            "1-2-2 2-3-3 3-4-4 5-3-6 6-4-7 5-1-2 6-1-3 7-1-4 6-2-8 8-4-9 7-2-9 9-3-10"));
    rows.push_back(free_row("11", {4}, "q in k*, q^4 != 1",
                            {chain("q^-2 q^2 -1 q^-2 q^2 q^-2 q"), chain("-1 q^-2 -1 q^2 -1 q^-2 q"),
                             chain("-1 q^2 q^-2 q^2 -1 q^-2 q"), chain("-1 q^-2 q^2 q^-2 -1 q^2 -q^-1"),
                             chain("-1 q^2 -1 q^-2 -1 q^2 -q^-1"), chain("q^2 q^-2 -1 q^2 q^-2 q^2 -q^-1")},
                            "D1 D2 D3 D4 D5 D6", "1-2-2 2-1-3 2-3-4 3-3-5 4-1-5 5-2-6"));
    rows.push_back(free_row("12", {2}, q2,
                            {chain("q^-1 q -1 q^-1 q q^-2 q^2"), chain("-1 q^-1 -1 q -1 q^-2 q^2"),
                             chain("-1 q q^-1 q -1 q^-2 q^2"), way("-1 q^-1 q q^-1 q^-1 -1 q^2 -1"),
                             fork("q q^-1 -1 q q q^-1 q^-1"), way("-1 q -1 q^-1 q^-1 -1 q^2 -1")},
                            "D1 D2 D3 D4 D6 1243D1 1243D2 1243D3 D5",
                            "1-2-2 2-1-3 2-3-4 3-3-5 4-1-5 6-2-7 7-1-8 7-4-4 8-4-5 5-2-9"));
    rows.push_back(free_row("13", {2}, q2,
                            {chain("q q^-1 q q^-1 -1 q^2 q^-2"), way("q q^-1 -1 q q -1 q^-2 -1"),
                             fork("-1 q^-1 q q^-1 q^-1 q q"), fork("-1 q -1 q^-1 q^-1 q q")},
                            "D1 D2 D4 D3 1243D1", "1-3-2 2-2-3 3-1-4 2-4-5"));
    rows.push_back(free_row("14", {2}, q2,
                            {chain("q q^-1 q q^-1 -1 -q -q^-1"), way("q q^-1 -1 q -1 -1 -q^-1 -1"),
                             chain("q q^-1 -1 -1 -1 -q -q^-1"), chain("-q^-1 -q -q^-1 -q -1 q^-1 q"),
                             way("-q^-1 -q -1 -q^-1 -1 -1 q -1")},
                            "D1 D2 1243D3 3412D5 3214D1 3214D2 3241D3 1432D5 3412D4 1432D4",
                            "1-3-2 2-4-3 3-2-4 5-1-6 6-4-7 7-2-8 2-2-6 4-4-8 4-1-9 8-3-10", C::NotTwo));

    rows.push_back(root_row("15", 3, C::GreaterThree, {chain("-z^-1 -z -z^-1 -z -z^-1 -z z")}, "D1", ""));
    {
        RowTemplate r;
        r.id = "15'";
        r.kind = ParamKind::None;
        r.characteristic = C::EqualsThree;
        r.diagrams = {chain("-1 -1 -1 -1 -1 -1 1")};
        r.points = parse_points("D1");
        rows.push_back(r);
    }
    rows.push_back(root_row("16", 3, C::GreaterThree,
                            {chain("-1 -z -z^-1 -z -z^-1 -z z"), chain("-1 -z^-1 -1 -z -z^-1 -z z"),
                             chain("-z^-1 -z -1 -z^-1 -1 -z z"), chain("-z^-1 -z -z^-1 -z -1 -z^-1 z^-1")},
                            "D1 D2 D3 D4", "1-1-2 2-2-3 3-3-4"));
    rows.push_back(root_row("17", 3, C::GreaterThree,
                            {chain("-z -z^-1 -z -z^-1 -z -z^-1 z"), chain("-z -z^-1 -z -z^-1 -1 -1 z"),
                             way("-z -z^-1 -1 -z z^-1 -1 -1 z"), chain("-z -z^-1 z z^-1 -1 -z^-1 -z"),
                             chain("-z -z^-1 -z -z^-1 -1 -z^-1 -z"), way("-z -z^-1 -1 -z z -1 -z -1")},
                            "D2 D3 3214D6 3214D5 D1 3421D4 3241D4 1432D1 3412D5 3412D6 1432D3 1432D2",
                            "1-3-2 2-2-3 3-1-4 1-4-5 2-4-6 3-4-7 9-1-10 10-4-11 11-3-12 10-2-6 11-2-7 12-2-8"));
    rows.push_back(root_row("18", 3, C::NotThree,
                            {chain("z^-1 z z^-1 z z z^-1 -1"), chain("z^-1 z z^-1 z -1 z -1"),
                             way("z^-1 z -1 z^-1 z^-1 -1 z^-1 z"), fork("z^-1 z z z^-1 z^-1 -1 -1"),
                             fork("z^-1 z -1 z^-1 z -1 -1"), fork("z^-1 z z^-1 z z -1 -1")},
                            "D1 D2 D3 3214D5 3214D6 3214D4 4231D1 4231D2 4231D3 3241D5",
                            "1-4-2 2-3-3 3-2-4 4-4-6 5-1-4 7-1-8 8-3-9 9-2-10 10-4-5 10-1-6"));
    rows.push_back(root_row("19", 3, C::GreaterThree,
                            {chain("-z -z^-1 -1 -z -z^-1 -z z"), chain("-1 -z -1 -z^-1 -1 -z z"),
                             chain("-1 -z^-1 -z -z^-1 -1 -z z"), chain("-1 -z -z^-1 -z -1 -z^-1 z^-1"),
                             chain("-1 -z^-1 -1 -z -1 -z^-1 z^-1"), chain("-z^-1 -z -1 -z^-1 -z -z^-1 z^-1")},
                            "D1 D2 D4 D6 D3 D5", "1-2-2 2-3-3 6-2-4 2-1-5 3-1-6 5-3-6"));
    rows.push_back(root_row("20", 3, C::NotThree,
                            {chain("z^-1 z -1 z^-1 z z -1"), chain("z^-1 z -1 z^-1 -z^-1 z^-1 -1"),
                             chain("-1 z^-1 -1 z -1 z -1"), chain("-1 z z^-1 z -1 z -1"),
                             chain("-1 z^-1 -1 z z z^-1 -1"), chain("-1 z z^-1 z z z^-1 -1"),
                             way("-1 z^-1 z z^-1 z^-1 -1 z^-1 z"), fork("z z^-1 -1 z z z^-1 -1"),
                             way("-1 z -1 z^-1 z^-1 -1 z^-1 z"), fork("z z^-1 z z z^-1 z^-1 -1")},
                            "D1 D2 D5 D6 D3 D4 D7 D9 D10 D8",
                            "1-4-2 2-2-3 3-1-4 5-1-6 5-2-1 5-4-3 6-4-4 7-1-8 7-3-5 8-3-6 9-4-10 10-2-8"));
    rows.push_back(root_row("21", 3, C::NotThree,
                            {chain("-1 z^-1 z z^-1 z z -1"), chain("-1 z^-1 z z^-1 -z^-1 z^-1 -1"),
                             chain("-1 z -1 z^-1 z z -1"), chain("-1 z -1 z^-1 -z^-1 z^-1 -1"),
                             chain("z z^-1 -1 z z z^-1 -1"), chain("z z^-1 -1 z -1 z -1"),
                             way("z z^-1 z z^-1 z^-1 -1 z^-1 z")},
                            "D1 D3 D6 D7 D2 D4 D5", "1-1-2 2-2-3 3-3-4 5-1-6 5-4-1 6-4-2 7-4-3 6-2-7"));
    rows.push_back(root_row("22", 4, C::NotTwo,
                            {chain("-z z -1 -z z z -z"), chain("-1 -z -1 z -1 z -z"),
                             chain("-1 z -z z -1 z -z"), way("-1 -z z -z -1 -1 -z -1"),
                             chain("-1 -z z -1 -1 z -z"), chain("-1 z -1 -1 -1 z -z"),
                             way("-z z -1 -z -1 z -z -1"), way("-1 z -1 -z -1 -1 -z -1")},
                            "D1 D2 D4 1243D5 D3 D8 1243D6 3214D7 3412D7 1423D6 1432D8 1432D3 1423D5 1432D4 "
                            "1432D2 1432D1",
                            "1-2-2 2-3-3 3-4-4 5-3-6 6-4-7 5-1-2 6-1-3 7-1-4 6-2-8 7-2-9 8-4-10 9-4-11 "
                            "10-2-11 11-3-12 10-1-13 11-1-14 12-1-15 13-2-14 14-3-15 15-4-16"));

    auto note = [&](const std::string &id, std::string text) {
        for (auto &r : rows)
            if (r.id == id) r.errata.push_back(std::move(text));
    };
    note("10", "point 8 is tau_4321 D3; printed as tau_3214 D3");
    note("12", "point 9 (D5, joined to D6 by 2) is absent from the printed graph");
    note("13", "point 5 is tau_1243 D1; printed with the index of another row");
    note("14", "points 9, 10 (tau_3412 D4, tau_1432 D4) and the edges 4-4-8, 4-1-9, 8-3-10 are absent "
               "from the printed graph");
    note("17", "point 7 is tau_3241 D4; printed as tau_3214 D4");
    note("18", "points 7-9 are tau_4231 D1..D3 joined by 1 and 3; printed as tau_3241 D1..D3 joined by 1 and 4");
    note("19", "edge 6-2-4 joins D5 and D6; printed between D4 and D6");
    note("20", "edge 5-2-1 joins D3 and D1; printed between D3 and D2");
    return rows;
}

FieldUnit monomial_value(const Monomial &m, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x) {
    FieldUnit u = FieldUnit::identity(spec);
    if (m.exponent != 0) {
        if (!x) throw ConstraintViolated("template needs a parameter value");
        u = x->pow(m.exponent);
    }
    return m.negative ? u * FieldUnit::minus_one(spec) : u;
}

std::vector<Permutation4> all_perms() {
    std::vector<Permutation4> out;
    Permutation4 p{0, 1, 2, 3};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::string perm_to_string(const Permutation4 &p) {
    std::string s;
    for (int v : p) s += static_cast<char>('1' + v);
    return s;
}

// Solves x^e = c for all (e, c) simultaneously.
std::vector<FieldUnit> solve_monomials(const std::vector<std::pair<int64_t, FieldUnit>> &eqs, const GroupSpecPtr &spec) {
    int64_t g = 0;
    FieldUnit c = FieldUnit::identity(spec);
    for (auto [e, v] : eqs) {
        if (e < 0) {
            e = -e;
            v = v.inverse();
        }
        if (e == 0) continue;
        if (g == 0) {
            g = e;
            c = v;
            continue;
        }
        // extended Euclid: u g + w e = gcd
        int64_t a = g, b = e, u0 = 1, u1 = 0, w0 = 0, w1 = 1;
        while (b != 0) {
            int64_t t = a / b;
            std::tie(a, b) = std::make_pair(b, a - t * b);
            std::tie(u0, u1) = std::make_pair(u1, u0 - t * u1);
            std::tie(w0, w1) = std::make_pair(w1, w0 - t * w1);
        }
        c = c.pow(u0) * v.pow(w0);
        g = a;
    }
    if (g == 0) return {};
    std::vector<FieldUnit> out;
    for (auto &x : roots_of(c, g)) {
        bool ok = true;
        for (const auto &[e, v] : eqs) ok = ok && x.pow(e) == v;
        if (ok) out.push_back(x);
    }
    return out;
}

}  // namespace

const std::vector<Slot> &slots(Shape s) {
    static const std::vector<Slot> chain_slots{{0}, {0, 1}, {1}, {1, 2}, {2}, {2, 3}, {3}};
    static const std::vector<Slot> fork_slots{{0}, {0, 1}, {1}, {1, 2}, {1, 3}, {2}, {3}};
    static const std::vector<Slot> way_slots{{0}, {0, 1}, {1}, {1, 2}, {1, 3}, {2}, {2, 3}, {3}};
    switch (s) {
    case Shape::Chain: return chain_slots;
    case Shape::ThreeFork: return fork_slots;
    case Shape::RightOfWay: return way_slots;
    }
    return chain_slots;
}

const std::vector<RowTemplate> &builtin_rows() {
    static const std::vector<RowTemplate> rows = make_rows();
    return rows;
}

const RowTemplate &row_by_id(const std::string &id) {
    for (const auto &r : builtin_rows())
        if (r.id == id) return r;
    throw std::out_of_range("no table row " + id);
}

bool characteristic_allowed(CharConstraint c, int64_t p) {
    switch (c) {
    case CharConstraint::Positive: return p > 0;
    case CharConstraint::NotTwo: return p > 0 && p != 2;
    case CharConstraint::NotThree: return p > 0 && p != 3;
    case CharConstraint::GreaterThree: return p > 3;
    case CharConstraint::EqualsThree: return p == 3;
    }
    return false;
}

std::string to_string(CharConstraint c) {
    switch (c) {
    case CharConstraint::Positive: return "p>0";
    case CharConstraint::NotTwo: return "p!=2";
    case CharConstraint::NotThree: return "p!=3";
    case CharConstraint::GreaterThree: return "p>3";
    case CharConstraint::EqualsThree: return "p=3";
    }
    return "?";
}

std::string to_string(Shape s) {
    switch (s) {
    case Shape::Chain: return "chain";
    case Shape::ThreeFork: return "three-fork";
    case Shape::RightOfWay: return "right-of-way";
    }
    return "?";
}

std::string to_string(const Monomial &m, const std::string &symbol) {
    std::string s = m.negative ? "-" : "";
    if (m.exponent == 0) return s + "1";
    s += symbol;
    if (m.exponent != 1) s += "^" + std::to_string(m.exponent);
    return s;
}

DynkinDiagram instantiate(const PrintedDiagram &d, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x) {
    DynkinDiagram out(spec, 4);
    const auto &sl = slots(d.shape);
    for (std::size_t k = 0; k < sl.size(); ++k) {
        FieldUnit u = monomial_value(d.labels[k], spec, x);
        if (sl[k].j < 0)
            out.set_vertex(sl[k].i, u);
        else
            out.set_edge(sl[k].i, sl[k].j, u);
    }
    return out;
}

void check_assignment(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x) {
    if (!characteristic_allowed(row.characteristic, spec->characteristic()))
        throw ConstraintViolated(to_string(row.characteristic));
    if (x && !same_group(x->spec(), spec)) throw ConstraintViolated("parameter lives in a different group");
    switch (row.kind) {
    case ParamKind::None:
        if (x) throw ConstraintViolated("row " + row.id + " takes no parameter");
        return;
    case ParamKind::Free:
        if (!x) throw ConstraintViolated(row.constraint_text);
        for (int k : row.exclusions)
            if (x->pow(k).is_identity()) throw ConstraintViolated(row.constraint_text);
        return;
    case ParamKind::RootOfUnity:
        if (!x || element_order(*x) != row.root_order) throw ConstraintViolated(row.constraint_text);
        return;
    }
}

RowInstance instantiate_row(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x) {
    check_assignment(row, spec, x);
    RowInstance inst;
    for (const auto &d : row.diagrams) inst.printed.push_back(instantiate(d, spec, x));
    for (const auto &pt : row.points) inst.points.push_back(inst.printed.at(pt.diagram).relabeled(pt.tau));
    return inst;
}

std::vector<MatchResult> match_diagram(const DynkinDiagram &d) {
    if (d.spec()->characteristic() == 0) throw std::domain_error("classification tables need p > 0");
    std::vector<MatchResult> out;
    if (d.rank() != 4) return out;
    const auto &spec = d.spec();
    const auto perms = all_perms();
    std::set<std::pair<std::string, std::vector<int64_t>>> seen;

    for (const auto &row : builtin_rows()) {
        if (!characteristic_allowed(row.characteristic, spec->characteristic())) continue;
        for (std::size_t k = 0; k < row.diagrams.size(); ++k) {
            const auto &pd = row.diagrams[k];
            const auto &sl = slots(pd.shape);
            for (const auto &perm : perms) {
                // x^e = observed * (-1)^negative, vertices first
                std::vector<std::pair<int64_t, FieldUnit>> eqs;
                std::set<std::pair<int, int>> present;
                for (int pass = 0; pass < 2; ++pass)
                    for (std::size_t s = 0; s < sl.size(); ++s) {
                        bool vertex = sl[s].j < 0;
                        if (vertex != (pass == 0)) continue;
                        int i = perm[sl[s].i];
                        FieldUnit obs = vertex ? d.vertex(i) : d.edge_product(i, perm[sl[s].j]);
                        if (!vertex) present.insert(std::minmax(i, perm[sl[s].j]));
                        const Monomial &m = pd.labels[s];
                        if (m.negative) obs = obs * FieldUnit::minus_one(spec);
                        eqs.emplace_back(m.exponent, obs);
                    }
                bool absent_ok = true;
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        if (!present.count({i, j}) && !d.edge_product(i, j).is_identity()) absent_ok = false;
                if (!absent_ok) continue;

                std::vector<std::optional<FieldUnit>> candidates;
                if (row.kind == ParamKind::None) {
                    bool ok = std::all_of(eqs.begin(), eqs.end(), [](const auto &e) { return e.second.is_identity(); });
                    if (ok) candidates.push_back(std::nullopt);
                } else {
                    bool consts_ok = std::all_of(eqs.begin(), eqs.end(),
                                                 [](const auto &e) { return e.first != 0 || e.second.is_identity(); });
                    if (consts_ok)
                        for (auto &x : solve_monomials(eqs, spec)) candidates.push_back(x);
                }
                for (const auto &x : candidates) {
                    try {
                        check_assignment(row, spec, x);
                    } catch (const ConstraintViolated &) {
                        continue;
                    }
                    if (d != instantiate(pd, spec, x).relabeled(perm)) continue;
                    std::vector<int64_t> key = x ? x->coordinates() : std::vector<int64_t>{};
                    if (!seen.insert({row.id, key}).second) continue;
                    out.push_back({row.id, x, static_cast<int>(k), perm});
                }
            }
        }
    }
    return out;
}

RowReport verify_row(const RowTemplate &row, const GroupSpecPtr &spec, const std::optional<FieldUnit> &x) {
    auto t0 = std::chrono::steady_clock::now();
    RowReport rep;
    rep.row = row.id;
    rep.assignment = "p=" + std::to_string(spec->characteristic());
    if (x) rep.assignment += ", " + row.symbol + "=" + x->to_string();
    rep.expected_points = row.points.size();
    auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
    auto finish = [&] {
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    };

    RowInstance inst;
    try {
        inst = instantiate_row(row, spec, x);
    } catch (const ConstraintViolated &e) {
        fail(std::string("constraint violated: ") + e.what());
        return finish();
    }

    auto built = build_graph(lift(inst.printed.front()));
    if (auto *bad = std::get_if<GraphNotIFinite>(&built)) {
        fail("not i-finite at point " + std::to_string(bad->point) + ": " + bad->diagram.to_string());
        return finish();
    }
    if (std::holds_alternative<PointLimitExceeded>(built)) {
        fail("point limit exceeded");
        return finish();
    }
    const CartanGraph &g = std::get<CartanGraph>(built);
    rep.point_count = g.points.size();

    auto verdict = enumerate_roots(g);
    if (auto *lim = std::get_if<ExceededLimits>(&verdict)) {
        fail("root limit exceeded at point " + std::to_string(lim->point));
        return finish();
    }
    if (auto *mixed = std::get_if<MixedSignRoot>(&verdict)) {
        fail("mixed-sign root " + root_to_string(mixed->root) + " at point " + std::to_string(mixed->point));
        return finish();
    }
    const auto &roots = std::get<RootSystemData>(verdict);
    rep.finite = true;
    rep.positive_roots = roots.positive.front().size();

    // Points versus the exchange-graph vertices of the table.
    std::vector<int> table_to_graph;
    std::set<int> covered;
    for (std::size_t k = 0; k < inst.points.size(); ++k) {
        auto id = g.find(inst.points[k]);
        if (!id) {
            fail("table point " + std::to_string(k + 1) + " (" + perm_to_string(row.points[k].tau) + " D" +
                 std::to_string(row.points[k].diagram + 1) + ") not reached: " + inst.points[k].to_string());
            table_to_graph.push_back(-1);
            continue;
        }
        if (!covered.insert(*id).second) fail("table point " + std::to_string(k + 1) + " duplicates another");
        table_to_graph.push_back(*id);
    }
    for (const auto &pt : g.points)
        if (!covered.count(pt.id)) fail("point " + std::to_string(pt.id) + " missing from table: " + pt.diagram.to_string());

    // Every printed diagram occurs among the points up to relabeling.
    for (std::size_t k = 0; k < inst.printed.size(); ++k) {
        bool found = false;
        for (const auto &perm : all_perms())
            found = found || g.find(inst.printed[k].relabeled(perm)).has_value();
        if (!found) fail("printed diagram D" + std::to_string(k + 1) + " not among the points");
    }

    // Labeled adjacency.
    std::set<std::tuple<int, int, int>> graph_edges, table_edges;
    for (const auto &pt : g.points)
        for (int i = 0; i < 4; ++i)
            if (pt.neighbor[i] != pt.id) {
                auto [a, b] = std::minmax(pt.id, pt.neighbor[i]);
                graph_edges.insert({a, b, i});
            }
    bool mapped = std::none_of(table_to_graph.begin(), table_to_graph.end(), [](int v) { return v < 0; });
    if (mapped) {
        for (const auto &e : row.edges) {
            auto [a, b] = std::minmax(table_to_graph.at(e.from), table_to_graph.at(e.to));
            table_edges.insert({a, b, e.label});
        }
        for (const auto &[a, b, i] : graph_edges)
            if (!table_edges.count({a, b, i}))
                fail("edge " + std::to_string(a) + " -" + std::to_string(i + 1) + "- " + std::to_string(b) +
                     " missing from table");
        for (const auto &[a, b, i] : table_edges)
            if (!graph_edges.count({a, b, i}))
                fail("table edge " + std::to_string(a) + " -" + std::to_string(i + 1) + "- " + std::to_string(b) +
                     " not in graph");
    }

    for (const auto &f : check_root_axioms(g, roots).failures) fail(f.axiom + ": " + f.witness);
    for (const auto &f : check_lemma_jik(g, roots).failures) fail(f.axiom + ": " + f.witness);
    for (const auto &pt : g.points) {
        auto words = roots_by_reduced_words(g, pt.id);
        if (auto *w = std::get_if<ReducedWordRoots>(&words)) {
            if (w->positive != roots.positive[pt.id]) fail("reduced-word roots differ at point " + std::to_string(pt.id));
            if (!w->pairwise_distinct || !w->inversion_sets_consistent)
                fail("reduced words not consistent at point " + std::to_string(pt.id));
        } else {
            fail("reduced-word enumeration exceeded limits at point " + std::to_string(pt.id));
        }
    }

    auto gn = check_goodnei_theorem(g);
    switch (gn.kind) {
    case GoodNeighborhoodReport::Kind::StandardFiniteType: rep.goodnei = "standard " + gn.type_name; break;
    case GoodNeighborhoodReport::Kind::GoodA4:
        rep.goodnei = "good A4 (case " + std::to_string(gn.a4->case_number) + ") at point " + std::to_string(gn.point);
        break;
    case GoodNeighborhoodReport::Kind::GoodB4: rep.goodnei = "good B4 at point " + std::to_string(gn.point); break;
    case GoodNeighborhoodReport::Kind::Violation:
        rep.goodnei = "violation";
        fail("good-neighborhood: " + gn.detail);
        break;
    }

    // Closure: every point matches back into this row.
    for (const auto &pt : g.points) {
        auto ms = match_diagram(pt.diagram);
        bool back = std::any_of(ms.begin(), ms.end(), [&](const MatchResult &m) { return m.row == row.id; });
        if (!back) fail("point " + std::to_string(pt.id) + " does not match back into row " + row.id);
    }
    return finish();
}

std::vector<CanonicalAssignment> canonical_assignments(const RowTemplate &row) {
    std::vector<CanonicalAssignment> out;
    auto with = [&](int64_t p, int order, std::string name) {
        auto spec = GroupSpec::make(p, {{name, order}});
        FieldUnit x = FieldUnit::generator(spec, name);
        std::string d = order == 0 ? name + " free" : name + " of order " + std::to_string(order);
        out.push_back({spec, x, d + ", p=" + std::to_string(p)});
    };
    switch (row.kind) {
    case ParamKind::None: out.push_back({GroupSpec::make(3, {}), std::nullopt, "p=3"}); break;
    case ParamKind::Free:
        with(7, 0, "q");
        with(7, 5, "q");
        if (characteristic_allowed(row.characteristic, 2)) with(2, 0, "q");
        break;
    case ParamKind::RootOfUnity:
        for (int64_t p : {2, 3, 5, 7})
            if (characteristic_allowed(row.characteristic, p) && row.root_order % p != 0)
                with(p, row.root_order, "zeta");
        break;
    }
    return out;
}

std::string dump_templates() {
    std::ostringstream os;
    for (const auto &row : builtin_rows()) {
        os << "row " << row.id << "\n";
        os << "  parameter: ";
        switch (row.kind) {
        case ParamKind::None: os << "none"; break;
        case ParamKind::Free: os << row.constraint_text; break;
        case ParamKind::RootOfUnity: os << row.constraint_text; break;
        }
        os << "\n  char: " << to_string(row.characteristic) << "\n";
        for (std::size_t k = 0; k < row.diagrams.size(); ++k) {
            os << "  D" << k + 1 << " " << to_string(row.diagrams[k].shape) << ":";
            for (const auto &m : row.diagrams[k].labels) os << " " << to_string(m, row.symbol);
            os << "\n";
        }
        os << "  points:";
        for (const auto &pt : row.points) {
            os << " ";
            if (pt.tau != Permutation4{0, 1, 2, 3}) os << "t" << perm_to_string(pt.tau) << ".";
            os << "D" << pt.diagram + 1;
        }
        os << "\n  edges:";
        for (const auto &e : row.edges) os << " " << e.from + 1 << "-" << e.label + 1 << "-" << e.to + 1;
        os << "\n";
        for (const auto &e : row.errata) os << "  erratum: " << e << "\n";
    }
    return os.str();
}

}  // namespace nichols
