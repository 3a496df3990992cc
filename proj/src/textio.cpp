#include "nichols/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace nichols {

ParseError::ParseError(int line, int column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line), column(column), message(message) {}

BraidingMatrix InputDoc::matrix() const {
    if (auto *m = std::get_if<BraidingMatrix>(&data)) return *m;
    return lift(std::get<DynkinDiagram>(data));
}

DynkinDiagram InputDoc::diagram() const {
    if (auto *d = std::get_if<DynkinDiagram>(&data)) return *d;
    return dynkin_of(std::get<BraidingMatrix>(data));
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 0;

    int column() const { return static_cast<int>(pos) + 1; }
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(line, column(), msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string &msg) const {
        throw ParseError(line, static_cast<int>(at) + 1, msg);
    }

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
        skip_space();
        return pos >= text.size();
    }
    bool accept(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        if (start == pos) fail("expected a name");
        return std::string(text.substr(start, pos - start));
    }
    int64_t integer() {
        skip_space();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (digits == pos) fail_at(start, "expected an integer");
        try {
            return std::stoll(std::string(text.substr(start, pos - start)));
        } catch (const std::out_of_range &) {
            fail_at(start, "integer out of range");
        }
    }
    void end_of_statement() {
        if (!at_end()) fail("unexpected trailing text");
    }
};

struct Factor {
    std::string name;  // "1" for the literal
    int64_t exponent = 1;
    std::size_t column = 0;
};

struct Expr {
    bool negative = false;
    std::size_t sign_column = 0;
    std::vector<Factor> factors;
};

Expr parse_expr(Cursor &c) {
    Expr e;
    c.skip_space();
    if (c.pos < c.text.size() && c.text[c.pos] == '-') {
        e.negative = true;
        e.sign_column = c.pos;
        ++c.pos;
    }
    do {
        c.skip_space();
        Factor f;
        f.column = c.pos;
        if (c.pos < c.text.size() && c.text[c.pos] == '1' &&
            (c.pos + 1 == c.text.size() || !std::isalnum(static_cast<unsigned char>(c.text[c.pos + 1])))) {
            ++c.pos;
            f.name = "1";
        } else {
            if (c.pos >= c.text.size() || !(std::isalpha(static_cast<unsigned char>(c.text[c.pos])) || c.text[c.pos] == '_'))
                c.fail("expected 1, -1 or a generator name");
            f.name = c.word();
            if (c.accept('^')) f.exponent = c.integer();
        }
        e.factors.push_back(f);
    } while (c.accept('*'));
    return e;
}

struct Statement {
    int line = 0;
    std::string text;  // the whole line, for error columns
    std::size_t value_at = 0;
};

bool parse_indices(const std::string &key, char prefix, int count, std::array<int, 2> &out) {
    if (key.size() != static_cast<std::size_t>(count + 1) || key[0] != prefix) return false;
    for (int k = 0; k < count; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(key[k + 1])) || key[k + 1] == '0') return false;
        out[k] = key[k + 1] - '1';
    }
    return true;
}

}  // namespace

InputDoc parse_input(std::string_view text) {
    std::optional<int64_t> p;
    int p_line = 0;
    std::vector<Generator> gens;
    std::vector<int> gen_lines;
    std::optional<int> rank;
    std::optional<std::size_t> max_points, max_roots;

    struct Entry {
        char kind;  // 'v', 'e' or 'q'
        int i, j;
        Statement where;
    };
    std::vector<Entry> entries;
    std::map<std::string, int> seen_keys;

    std::size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string raw(text.substr(start, end - start));
        start = end + 1;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();

        Cursor c{raw, 0, line_no};
        if (c.at_end()) {
            if (end == text.size()) break;
            continue;
        }
        std::size_t key_at = c.pos;
        std::string key = c.word();
        if (key == "gen") {
            Generator g;
            g.name = c.word();
            if (c.word() != "order") c.fail("expected 'order'");
            g.order = c.integer();
            c.end_of_statement();
            for (const auto &h : gens)
                if (h.name == g.name) c.fail_at(key_at, "duplicate generator " + g.name);
            gens.push_back(g);
            gen_lines.push_back(line_no);
        } else {
            if (seen_keys.count(key)) c.fail_at(key_at, "duplicate assignment to " + key);
            seen_keys[key] = line_no;
            c.expect('=');
            std::array<int, 2> ij{0, 0};
            if (key == "p") {
                p = c.integer();
                p_line = line_no;
                c.end_of_statement();
            } else if (key == "rank") {
                int64_t r = c.integer();
                if (r < 1 || r > max_rank) c.fail_at(key_at, "rank must be between 1 and " + std::to_string(max_rank));
                rank = static_cast<int>(r);
                c.end_of_statement();
            } else if (key == "max_points" || key == "max_roots") {
                int64_t v = c.integer();
                if (v < 1) c.fail_at(key_at, key + " must be positive");
                (key == "max_points" ? max_points : max_roots) = static_cast<std::size_t>(v);
                c.end_of_statement();
            } else if (parse_indices(key, 'v', 1, ij)) {
                entries.push_back({'v', ij[0], ij[0], {line_no, raw, c.pos}});
            } else if (parse_indices(key, 'e', 2, ij)) {
                if (ij[0] >= ij[1]) c.fail_at(key_at, "edge " + key + " needs i < j");
                entries.push_back({'e', ij[0], ij[1], {line_no, raw, c.pos}});
            } else if (parse_indices(key, 'q', 2, ij)) {
                entries.push_back({'q', ij[0], ij[1], {line_no, raw, c.pos}});
            } else {
                c.fail_at(key_at, "unknown statement '" + key + "'");
            }
        }
        if (end == text.size()) break;
    }

    const int last_line = std::max(1, line_no - (text.empty() || text.back() == '\n' ? 1 : 0));
    if (!p) throw ParseError(last_line, 1, "missing 'p = <int>'");
    if (!rank) throw ParseError(last_line, 1, "missing 'rank = <int>'");

    InputDoc doc;
    doc.rank = *rank;
    doc.max_points = max_points;
    doc.max_roots = max_roots;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto &g = gens[k];
        if (g.order < 0 || g.order == 1)
            throw ParseError(gen_lines[k], 1, "generator " + g.name + ": order must be 0 or at least 2");
        if (*p > 0 && g.order > 0 && g.order % *p == 0)
            throw ParseError(gen_lines[k], 1, "generator " + g.name + ": order divisible by p (order " +
                                                   std::to_string(g.order) + ", p = " + std::to_string(*p) + ")");
    }
    try {
        doc.spec = GroupSpec::make(*p, gens);
    } catch (const GroupError &e) {
        throw ParseError(p_line, 1, e.what());
    }

    bool has_matrix = false, has_diagram = false;
    for (const auto &en : entries) {
        (en.kind == 'q' ? has_matrix : has_diagram) = true;
        if (en.i >= doc.rank || en.j >= doc.rank)
            throw ParseError(en.where.line, 1, "index exceeds rank " + std::to_string(doc.rank));
    }
    if (has_matrix && has_diagram)
        throw ParseError(entries.back().where.line, 1, "cannot mix matrix entries q<i><j> with diagram labels v / e");

    bool warned_sign = false;
    auto evaluate = [&](const Entry &en) {
        Cursor c{en.where.text, en.where.value_at, en.where.line};
        Expr e = parse_expr(c);
        c.end_of_statement();
        FieldUnit u = FieldUnit::identity(doc.spec);
        for (const auto &f : e.factors) {
            if (f.name == "1") continue;
            auto k = doc.spec->find(f.name);
            if (!k || *k == doc.spec->sign_index()) c.fail_at(f.column, "undeclared generator '" + f.name + "'");
            u = u * FieldUnit::generator(doc.spec, *k).pow(f.exponent);
        }
        if (e.negative) {
            if (*p == 2 && !warned_sign) {
                doc.warnings.push_back("line " + std::to_string(en.where.line) + ": -1 equals 1 in characteristic 2");
                warned_sign = true;
            }
            u = u * FieldUnit::minus_one(doc.spec);
        }
        return u;
    };

    if (has_matrix) {
        BraidingMatrix m(doc.spec, doc.rank);
        std::vector<bool> set(static_cast<std::size_t>(doc.rank * doc.rank), false);
        for (const auto &en : entries) {
            m.set(en.i, en.j, evaluate(en));
            set[en.i * doc.rank + en.j] = true;
        }
        for (int i = 0; i < doc.rank; ++i)
            for (int j = 0; j < doc.rank; ++j)
                if (!set[i * doc.rank + j])
                    throw ParseError(last_line, 1, "missing entry q" + std::to_string(i + 1) + std::to_string(j + 1));
        doc.data = m;
    } else {
        DynkinDiagram d(doc.spec, doc.rank);
        std::vector<bool> set(static_cast<std::size_t>(doc.rank), false);
        for (const auto &en : entries) {
            if (en.kind == 'v') {
                d.set_vertex(en.i, evaluate(en));
                set[en.i] = true;
            } else {
                d.set_edge(en.i, en.j, evaluate(en));
            }
        }
        for (int i = 0; i < doc.rank; ++i)
            if (!set[i]) throw ParseError(last_line, 1, "missing vertex label v" + std::to_string(i + 1));
        doc.data = d;
    }
    return doc;
}

InputDoc read_input_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_input(os.str());
}

std::string print_input(const InputDoc &doc) {
    std::ostringstream os;
    os << "p = " << doc.spec->characteristic() << "\n";
    for (const auto &g : doc.spec->generators())
        if (g.name != GroupSpec::sign_name) os << "gen " << g.name << " order " << g.order << "\n";
    os << "rank = " << doc.rank << "\n";
    if (doc.max_points) os << "max_points = " << *doc.max_points << "\n";
    if (doc.max_roots) os << "max_roots = " << *doc.max_roots << "\n";
    if (auto *d = std::get_if<DynkinDiagram>(&doc.data)) {
        for (int i = 0; i < d->rank(); ++i) os << "v" << i + 1 << " = " << d->vertex(i).to_string() << "\n";
        for (int i = 0; i < d->rank(); ++i)
            for (int j = i + 1; j < d->rank(); ++j)
                if (auto e = d->edge(i, j)) os << "e" << i + 1 << j + 1 << " = " << e->to_string() << "\n";
    } else {
        const auto &m = std::get<BraidingMatrix>(doc.data);
        for (int i = 0; i < m.rank(); ++i)
            for (int j = 0; j < m.rank(); ++j)
                os << "q" << i + 1 << j + 1 << " = " << m.at(i, j).to_string() << "\n";
    }
    return os.str();
}

std::string export_dot(const CartanGraph &g) {
    std::ostringstream os;
    os << "graph exchange {\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto &pt : g.points) {
        std::string label = std::to_string(pt.id) + ": " + pt.diagram.to_string();
        std::string escaped;
        for (char ch : label) {
            if (ch == '"' || ch == '\\') escaped += '\\';
            escaped += ch;
        }
        os << "  p" << pt.id << " [label=\"" << escaped << "\"];\n";
    }
    for (const auto &e : exchange_graph(g).edges) {
        os << "  p" << e.a << " -- p" << e.b << " [label=\"";
        for (std::size_t k = 0; k < e.labels.size(); ++k) os << (k ? "," : "") << e.labels[k] + 1;
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

namespace json {

json group(const GroupSpec &spec) {
    json gens = json::array();
    for (const auto &g : spec.generators()) gens.push_back({{"name", g.name}, {"order", g.order}});
    return {{"p", spec.characteristic()}, {"generators", gens}, {"torsion_order", spec.torsion_order()}};
}

json unit(const FieldUnit &u) { return {{"text", u.to_string()}, {"coordinates", u.coordinates()}}; }

json diagram(const DynkinDiagram &d) {
    json vs = json::array(), es = json::array();
    for (int i = 0; i < d.rank(); ++i) vs.push_back(unit(d.vertex(i)));
    for (int i = 0; i < d.rank(); ++i)
        for (int j = i + 1; j < d.rank(); ++j)
            if (auto e = d.edge(i, j)) es.push_back({{"i", i + 1}, {"j", j + 1}, {"label", unit(*e)}});
    return {{"vertices", vs}, {"edges", es}, {"text", d.to_string()}};
}

json gcm(const GeneralizedCartanMatrix &a) {
    json rows = json::array();
    for (int i = 0; i < a.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.rank(); ++j) row.push_back(a(i, j));
        rows.push_back(row);
    }
    return rows;
}

json graph(const CartanGraph &g) {
    json pts = json::array();
    for (const auto &pt : g.points)
        pts.push_back({{"id", pt.id}, {"diagram", diagram(pt.diagram)}, {"gcm", gcm(pt.gcm)}, {"neighbors", pt.neighbor}});
    json edges = json::array();
    for (const auto &e : exchange_graph(g).edges) {
        std::vector<int> labels;
        for (int l : e.labels) labels.push_back(l + 1);
        edges.push_back({{"a", e.a}, {"b", e.b}, {"labels", labels}});
    }
    return {{"groupspec", group(*g.spec)}, {"rank", g.rank}, {"points", pts}, {"exchange_edges", edges},
            {"standard", is_standard(g)}};
}

json not_i_finite(const GraphNotIFinite &e) {
    return {{"verdict", "not_i_finite"},
            {"at", {{"point", e.point}, {"i", e.at.i + 1}, {"j", e.at.j + 1}, {"diagram", diagram(e.diagram)}}}};
}

json verdict(const CartanGraph &g, const FinitenessVerdict &v) {
    if (auto *lim = std::get_if<ExceededLimits>(&v))
        return {{"verdict", "exceeded_limits"}, {"stage", lim->stage}, {"point", lim->point}, {"count", lim->count}};
    if (auto *mixed = std::get_if<MixedSignRoot>(&v))
        return {{"verdict", "mixed_sign_root"}, {"point", mixed->point}, {"root", mixed->root}};
    const auto &data = std::get<RootSystemData>(v);
    json pts = json::array();
    for (const auto &pt : g.points) {
        const auto &pos = data.positive[pt.id];
        json roots = json::array();
        for (const auto &r : pos) roots.push_back(r);
        pts.push_back({{"id", pt.id}, {"positive_root_count", pos.size()}, {"positive_roots", roots}});
    }
    return {{"verdict", "finite"},
            {"positive_root_count", data.positive.at(g.origin).size()},
            {"iterations", data.iterations},
            {"roots", pts}};
}

json matches(const std::vector<MatchResult> &ms) {
    json out = json::array();
    for (const auto &m : ms) {
        json assignment = json::object();
        if (m.parameter) assignment[row_by_id(m.row).symbol] = unit(*m.parameter);
        std::vector<int> perm;
        for (int v : m.perm) perm.push_back(v + 1);
        json row = m.row.find_first_not_of("0123456789") == std::string::npos ? json(std::stoi(m.row)) : json(m.row);
        out.push_back({{"row", row}, {"assignment", assignment}, {"diagram", m.diagram + 1}, {"permutation", perm}});
    }
    return out;
}

json row_report(const RowReport &r) {
    return {{"row", r.row},
            {"assignment", r.assignment},
            {"finite", r.finite},
            {"points", r.point_count},
            {"expected_points", r.expected_points},
            {"positive_root_count", r.positive_roots},
            {"good_neighborhood", r.goodnei},
            {"failures", r.failures},
            {"pass", r.ok()}};
}

json check_report(const CheckReport &r) {
    json fails = json::array();
    for (const auto &f : r.failures) fails.push_back({{"axiom", f.axiom}, {"witness", f.witness}});
    return {{"checks", r.checks}, {"failures", fails}, {"ok", r.ok()}};
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

}  // namespace json

}  // namespace nichols
