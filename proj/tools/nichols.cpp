#include "nichols/textio.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace nichols;

namespace {

enum Exit { Ok = 0, Negative = 1, Usage = 2, Internal = 3 };

struct Options {
    std::string input;
    std::optional<std::size_t> max_points;
    std::optional<std::size_t> max_roots;
    std::string dot_path;
    std::string json_path;
    bool quiet = false;
};

struct Out {
    bool quiet;
    template <class T>
    Out &operator<<(const T &v) {
        if (!quiet) std::cout << v;
        return *this;
    }
};

std::string perm_string(const Permutation4 &p) {
    std::string s;
    for (int v : p) s += std::to_string(v + 1);
    return s;
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

void write_json(const Options &o, const json::json &j) {
    if (!o.json_path.empty()) write_file(o.json_path, json::dump(j));
}

InputDoc load(const Options &o) {
    InputDoc doc = read_input_file(o.input);
    for (const auto &w : doc.warnings) std::cerr << "warning: " << w << "\n";
    if (!is_indecomposable(doc.matrix())) std::cerr << "warning: braiding matrix is decomposable\n";
    return doc;
}

GraphLimits graph_limits(const Options &o, const InputDoc &doc) {
    GraphLimits l;
    if (doc.max_points) l.max_points = *doc.max_points;
    if (o.max_points) l.max_points = *o.max_points;
    return l;
}

RootLimits root_limits(const Options &o, const InputDoc &doc) {
    RootLimits l;
    if (doc.max_roots) l.max_pos_roots = *doc.max_roots;
    if (o.max_roots) l.max_pos_roots = *o.max_roots;
    return l;
}

std::string not_i_finite_line(const GraphNotIFinite &e) {
    return "verdict: NotIFinite at point " + std::to_string(e.point) + " (i=" + std::to_string(e.at.i + 1) +
           ", j=" + std::to_string(e.at.j + 1) + ")";
}

std::string limit_line(const PointLimitExceeded &e) {
    return "verdict: ExceededLimits (more than " + std::to_string(e.limit) + " points)";
}

/// Builds the graph; on failure prints the verdict, writes JSON and returns nullopt.
std::optional<CartanGraph> graph_or_verdict(const Options &o, const InputDoc &doc, json::json &j) {
    j["groupspec"] = json::group(*doc.spec);
    auto res = build_graph(doc.matrix(), graph_limits(o, doc));
    if (auto *e = std::get_if<GraphNotIFinite>(&res)) {
        std::cout << not_i_finite_line(*e) << "\n";
        j.update(json::not_i_finite(*e));
        write_json(o, j);
        return std::nullopt;
    }
    if (auto *e = std::get_if<PointLimitExceeded>(&res)) {
        std::cout << limit_line(*e) << "\n";
        j["verdict"] = "exceeded_limits";
        j["stage"] = "points";
        j["count"] = e->limit;
        write_json(o, j);
        return std::nullopt;
    }
    return std::get<CartanGraph>(std::move(res));
}

int cmd_analyze(const Options &o) {
    InputDoc doc = load(o);
    Out out{o.quiet};
    DynkinDiagram d = doc.diagram();
    out << "diagram: " << d.to_string() << "\n";
    bool finite = true;
    json::json rows = json::json::array();
    for (int i = 0; i < d.rank(); ++i) {
        auto row = cartan_row(d, i);
        if (auto *bad = std::get_if<NotIFinite>(&row)) {
            finite = false;
            out << "index " << i + 1 << ": not i-finite (j=" << bad->j + 1 << ")\n";
            rows.push_back({{"i", i + 1}, {"i_finite", false}, {"j", bad->j + 1}});
        } else {
            const auto &r = std::get<std::vector<int>>(row);
            out << "index " << i + 1 << ": a = [";
            for (std::size_t k = 0; k < r.size(); ++k) out << (k ? " " : "") << r[k];
            out << "]\n";
            rows.push_back({{"i", i + 1}, {"i_finite", true}, {"row", r}});
        }
    }
    json::json j{{"groupspec", json::group(*doc.spec)}, {"diagram", json::diagram(d)}, {"cartan_rows", rows},
                 {"indecomposable", is_indecomposable(d)}};
    if (finite) {
        auto a = std::get<GeneralizedCartanMatrix>(cartan_matrix(d));
        out << "cartan matrix: " << a.to_string() << "\n";
        if (auto t = finite_type_name(a)) out << "finite type: " << *t << "\n";
        j["gcm"] = json::gcm(a);
        std::cout << "verdict: i-finite for all i\n";
    } else {
        std::cout << "verdict: NotIFinite\n";
    }
    write_json(o, j);
    return finite ? Ok : Negative;
}

void print_points(Out &out, const CartanGraph &g) {
    for (const auto &pt : g.points) {
        out << "point " << pt.id << ": " << pt.diagram.to_string() << "\n";
        out << "  neighbors";
        for (int nb : pt.neighbor) out << " " << nb;
        out << "  gcm " << pt.gcm.to_string() << "\n";
    }
}

int cmd_graph(const Options &o) {
    InputDoc doc = load(o);
    json::json j;
    auto g = graph_or_verdict(o, doc, j);
    if (!g) return Negative;
    Out out{o.quiet};
    print_points(out, *g);
    std::cout << "verdict: " << g->points.size() << " points, " << (is_standard(*g) ? "standard" : "not standard")
              << "\n";
    if (!o.dot_path.empty()) write_file(o.dot_path, export_dot(*g));
    j.update(json::graph(*g));
    write_json(o, j);
    return Ok;
}

int cmd_roots(const Options &o) {
    InputDoc doc = load(o);
    json::json j;
    auto g = graph_or_verdict(o, doc, j);
    if (!g) return Negative;
    if (!o.dot_path.empty()) write_file(o.dot_path, export_dot(*g));
    auto v = enumerate_roots(*g, root_limits(o, doc));
    j.update(json::graph(*g));
    j.update(json::verdict(*g, v));
    Out out{o.quiet};
    int code = Ok;
    if (auto *lim = std::get_if<ExceededLimits>(&v)) {
        std::cout << "verdict: ExceededLimits (" << lim->stage << " at point " << lim->point << ", " << lim->count
                  << " positive roots)\n";
        code = Negative;
    } else if (auto *m = std::get_if<MixedSignRoot>(&v)) {
        std::cout << "verdict: MixedSignRoot at point " << m->point << " " << root_to_string(m->root) << "\n";
        code = Negative;
    } else {
        const auto &data = std::get<RootSystemData>(v);
        for (const auto &pt : g->points) {
            out << "point " << pt.id << ": " << data.positive[pt.id].size() << " positive roots\n";
            for (const auto &r : data.positive[pt.id]) out << "  " << root_to_string(r) << "\n";
        }
        auto axioms = check_root_axioms(*g, data);
        auto jik = check_lemma_jik(*g, data);
        j["checks"] = {{"root_system", json::check_report(axioms)}, {"alpha_j_plus_k_alpha_i", json::check_report(jik)}};
        for (const auto &f : axioms.failures) std::cerr << "check failed: " << f.axiom << " " << f.witness << "\n";
        for (const auto &f : jik.failures) std::cerr << "check failed: " << f.axiom << " " << f.witness << "\n";
        std::cout << "verdict: Finite (" << data.positive[g->origin].size() << " positive roots, " << g->points.size()
                  << " points)\n";
        if (!axioms.ok() || !jik.ok()) code = Internal;
    }
    write_json(o, j);
    return code;
}

int cmd_classify(const Options &o) {
    InputDoc doc = load(o);
    if (doc.spec->characteristic() == 0) {
        std::cerr << "error: classification covers positive characteristic only\n";
        return Usage;
    }
    std::vector<MatchResult> ms;
    if (doc.rank == 4) ms = match_diagram(doc.diagram());
    for (const auto &m : ms) {
        const auto &row = row_by_id(m.row);
        std::cout << "row " << m.row;
        if (m.parameter) std::cout << ", " << row.symbol << " ↦ " << m.parameter->to_string();
        if (!o.quiet) std::cout << "  (diagram " << m.diagram + 1 << ", vertices " << perm_string(m.perm) << ")";
        std::cout << "\n";
    }
    if (ms.empty()) std::cout << "no match\n";
    write_json(o, {{"groupspec", json::group(*doc.spec)}, {"matches", json::matches(ms)}});
    return ms.empty() ? Negative : Ok;
}

int cmd_neighborhoods(const Options &o) {
    InputDoc doc = load(o);
    json::json j;
    auto g = graph_or_verdict(o, doc, j);
    if (!g) return Negative;
    Out out{o.quiet};
    json::json pts = json::json::array();
    if (g->rank == 4)
        for (const auto &pt : g->points) {
            json::json e{{"id", pt.id}};
            out << "point " << pt.id << ":";
            if (auto a4 = good_A4_at(*g, pt.id)) {
                out << " good A4 (case " << a4->case_number << ", vertices " << perm_string(a4->perm) << ")";
                e["good_A4"] = {{"case", a4->case_number}, {"permutation", a4->perm}};
            }
            if (auto b4 = good_B4_at(*g, pt.id)) {
                out << " good B4 (vertices " << perm_string(b4->perm) << ")";
                e["good_B4"] = {{"permutation", b4->perm}};
            }
            out << "\n";
            pts.push_back(e);
        }
    j["neighborhoods"] = pts;
    auto rep = check_goodnei_theorem(*g);
    int code = Ok;
    switch (rep.kind) {
    case GoodNeighborhoodReport::Kind::StandardFiniteType:
        std::cout << "verdict: standard, type " << rep.type_name << "\n";
        j["verdict"] = "standard";
        j["type"] = rep.type_name;
        break;
    case GoodNeighborhoodReport::Kind::GoodA4:
        std::cout << "verdict: good A4 neighborhood at point " << rep.point << "\n";
        j["verdict"] = "good_A4";
        j["point"] = rep.point;
        break;
    case GoodNeighborhoodReport::Kind::GoodB4:
        std::cout << "verdict: good B4 neighborhood at point " << rep.point << "\n";
        j["verdict"] = "good_B4";
        j["point"] = rep.point;
        break;
    case GoodNeighborhoodReport::Kind::Violation:
        std::cout << "verdict: no good neighborhood (" << rep.detail << ")\n";
        j["verdict"] = "none";
        j["detail"] = rep.detail;
        code = Negative;
        break;
    }
    write_json(o, j);
    return code;
}

struct RowOutcome {
    std::string text;
    std::vector<RowReport> reports;
    bool pass = true;
    bool internal = false;
};

RowOutcome run_row(const RowTemplate &row, bool quiet) {
    RowOutcome r;
    std::ostringstream os;
    std::size_t points = 0, roots = 0;
    double seconds = 0;
    std::string goodnei;
    for (const auto &a : canonical_assignments(row)) {
        try {
            RowReport rep = verify_row(row, a.spec, a.parameter);
            rep.assignment = a.description;
            r.pass &= rep.ok();
            points = rep.point_count;
            roots = rep.positive_roots;
            seconds += rep.seconds;
            goodnei = rep.goodnei;
            if (!quiet || !rep.ok())
                for (const auto &f : rep.failures) os << "      " << a.description << ": " << f << "\n";
            r.reports.push_back(std::move(rep));
        } catch (const std::logic_error &e) {
            r.pass = false;
            r.internal = true;
            os << "      " << a.description << ": internal error: " << e.what() << "\n";
        }
    }
    char head[160];
    std::snprintf(head, sizeof head, "row %-4s %-4s points %3zu  roots %3zu  assignments %zu  %6.3fs  %s\n",
                  row.id.c_str(), r.pass ? "PASS" : "FAIL", points, roots, r.reports.size(), seconds, goodnei.c_str());
    r.text = head + os.str();
    return r;
}

int cmd_verify_tables(const Options &o) {
    const auto &rows = builtin_rows();
    std::vector<std::future<RowOutcome>> jobs;
    for (const auto &row : rows) jobs.push_back(std::async(std::launch::async, run_row, std::cref(row), o.quiet));
    std::size_t passed = 0;
    bool internal = false;
    json::json j = json::json::array();
    for (auto &job : jobs) {
        RowOutcome r = job.get();
        if (!o.quiet || !r.pass) std::cout << r.text;
        passed += r.pass;
        internal |= r.internal;
        for (const auto &rep : r.reports) j.push_back(json::row_report(rep));
    }
    std::cout << passed << "/" << rows.size() << " PASS\n";
    write_json(o, {{"rows", j}});
    if (internal) return Internal;
    return passed == rows.size() ? Ok : Negative;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Nichols algebras of diagonal type: Cartan graphs, root systems and the rank-4 classification"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--max-points", o.max_points, "point cap for the Cartan graph")->check(CLI::PositiveNumber);
    app.add_option("--max-roots", o.max_roots, "positive-root cap per point")->check(CLI::PositiveNumber);
    app.add_option("--dot", o.dot_path, "write the exchange graph as DOT");
    app.add_option("--json", o.json_path, "write results as JSON");
    app.add_flag("--quiet", o.quiet, "only print the verdict line");

    std::string chosen;
    auto with_input = [&](const std::string &name, const std::string &help) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("input", o.input, "input file")->required();
        sub->fallthrough();
        sub->callback([&chosen, name] { chosen = name; });
    };
    with_input("analyze", "Cartan matrix and i-finiteness of each index");
    with_input("graph", "build the Cartan graph");
    with_input("roots", "enumerate real roots and report finiteness");
    with_input("classify", "match against the rank-4 classification rows");
    with_input("neighborhoods", "good A4 / B4 neighborhoods per point");
    app.add_subcommand("verify-tables", "verify every classification row")
        ->fallthrough()
        ->callback([&chosen] { chosen = "verify-tables"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return Usage;
    }

    try {
        if (chosen == "analyze") return cmd_analyze(o);
        if (chosen == "graph") return cmd_graph(o);
        if (chosen == "roots") return cmd_roots(o);
        if (chosen == "classify") return cmd_classify(o);
        if (chosen == "neighborhoods") return cmd_neighborhoods(o);
        return cmd_verify_tables(o);
    } catch (const ParseError &e) {
        std::cerr << o.input << ": " << e.what() << "\n";
        return Usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::logic_error &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
}
