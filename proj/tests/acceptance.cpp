// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include "nichols/textio.hpp"

#include "support.hpp"

#include <array>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace nichols;
using namespace testsupport;

namespace {

constexpr double row_budget_seconds = 1.0;
constexpr double total_budget_seconds = 30.0;
constexpr int oracle_instances = 1000;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void fail(const std::string &why) {
        if (pass) detail << "; first failure: " << why;
        pass = false;
    }
};

int failures = 0;

void report(int n, const std::string &title, Verdict &v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << title << v.detail.str() << "\n";
    failures += !v.pass;
}

struct CliRun {
    int code = -1;
    std::string out, err;
};

CliRun cli(const std::string &args) {
    std::string errfile = std::string(NICHOLS_TMP) + "/acceptance_stderr.txt";
    std::string cmd = std::string(NICHOLS_CLI) + " " + args + " 2>" + errfile;
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(errfile);
    r.err.assign(std::istreambuf_iterator<char>(f), {});
    return r;
}

std::string data(const std::string &name) { return std::string(NICHOLS_DATA) + "/" + name; }

bool matches_row(const DynkinDiagram &d, const std::string &id) {
    for (const auto &m : match_diagram(d))
        if (m.row == id) return true;
    return false;
}

void table_reproduction() {
    Verdict v;
    double total = 0, slowest = 0;
    std::size_t runs = 0;
    std::string slowest_at;
    for (const auto &row : builtin_rows())
        for (const auto &a : canonical_assignments(row)) {
            auto start = std::chrono::steady_clock::now();
            RowReport rep = verify_row(row, a.spec, a.parameter);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            total += secs;
            ++runs;
            if (secs > slowest) slowest = secs, slowest_at = row.id + " (" + a.description + ")";
            if (!rep.ok()) v.fail("row " + row.id + " " + a.description + ": " + rep.failures.front());
            if (!rep.finite) v.fail("row " + row.id + " not finite");
            if (secs >= row_budget_seconds) v.fail("row " + row.id + " took " + std::to_string(secs) + " s");
        }
    const std::pair<const char *, std::size_t> spots[] = {{"1", 1}, {"6", 5}, {"7", 4}, {"16", 4}, {"21", 7}};
    for (auto [id, n] : spots)
        for (const auto &in : all_instances())
            if (in.row->id == id && in.graph.points.size() != n)
                v.fail(std::string("row ") + id + " has " + std::to_string(in.graph.points.size()) + " points");
    if (total >= total_budget_seconds) v.fail("total " + std::to_string(total) + " s");
    char buf[200];
    std::snprintf(buf, sizeof buf, " (%zu rows, %zu verifications, total %.2f s, slowest %.3f s at row %s)",
                  builtin_rows().size(), runs, total, slowest, slowest_at.c_str());
    v.detail << buf;
    report(1, "table reproduction", v);
}

void standard_types() {
    Verdict v;
    const std::tuple<const char *, const char *, std::size_t> expected[] = {
        {"1", "A4", 10}, {"2", "B4", 16}, {"3", "C4", 16}, {"4", "F4", 24}, {"5", "D4", 12}};
    const std::map<std::string, GeneralizedCartanMatrix> types{{"A4", cartan_types::A4()}, {"B4", cartan_types::B4()},
                                                               {"C4", cartan_types::C4()}, {"D4", cartan_types::D4()},
                                                               {"F4", cartan_types::F4()}};
    std::set<std::string> seen, relabeled;
    for (const auto &in : all_instances())
        for (auto [id, type, count] : expected) {
            if (in.row->id != id) continue;
            seen.insert(type);
            const auto &g = in.graph;
            if (!is_standard(g)) v.fail(std::string("row ") + id + " not standard");
            std::optional<Permutation4> via;
            Permutation4 perm{0, 1, 2, 3};
            do
                if (g.point(0).gcm.permuted(perm) == types.at(type)) {
                    via = perm;
                    break;
                }
            while (std::next_permutation(perm.begin(), perm.end()));
            if (!via) v.fail(std::string("row ") + id + " gcm " + g.point(0).gcm.to_string());
            else if (*via != Permutation4{0, 1, 2, 3}) {
                std::string name;
                for (int k : *via) name += std::to_string(k + 1);
                relabeled.insert(std::string("row ") + id + " via " + name);
            }
            auto roots = enumerate_roots(g);
            if (!std::holds_alternative<RootSystemData>(roots)) {
                v.fail(std::string("row ") + id + " not finite");
                continue;
            }
            for (const auto &pos : std::get<RootSystemData>(roots).positive)
                if (pos.size() != count) v.fail(std::string("row ") + id + " has " + std::to_string(pos.size()) + " roots");
        }
    if (seen.size() != 5) v.fail("missing standard rows");
    v.detail << " (rows 1-5: A4/10, B4/16, C4/16, F4/24, D4/12; exact matrices";
    for (const auto &r : relabeled) v.detail << ", " << r;
    v.detail << ")";
    report(2, "standard types", v);
}

void good_neighborhoods() {
    Verdict v;
    std::size_t standard = 0, good = 0;
    for (const auto &in : all_instances()) {
        auto rep = check_goodnei_theorem(in.graph);
        switch (rep.kind) {
        case GoodNeighborhoodReport::Kind::StandardFiniteType: ++standard; break;
        case GoodNeighborhoodReport::Kind::GoodA4:
        case GoodNeighborhoodReport::Kind::GoodB4: ++good; break;
        case GoodNeighborhoodReport::Kind::Violation: v.fail("row " + in.row->id + ": " + rep.detail); break;
        }
        if (is_standard(in.graph) && !finite_type_name(in.graph.point(0).gcm))
            v.fail("row " + in.row->id + " standard but not of finite type");
    }
    v.detail << " (" << standard << " standard of finite type, " << good << " with a good neighborhood, "
             << all_instances().size() << " instantiations)";
    report(3, "good neighborhoods", v);
}

void reflection_oracle() {
    Verdict v;
    std::mt19937 rng(20240611);
    const int64_t chars[] = {0, 2, 3, 5, 7};
    int accepted = 0, mismatches = 0, double_fail = 0;
    while (accepted < oracle_instances) {
        int64_t p = chars[accepted % 5];
        auto s = random_spec(rng, p);
        int rank = std::uniform_int_distribution<int>(2, 4)(rng);
        int i = std::uniform_int_distribution<int>(0, rank - 1)(rng);
        auto m = random_matrix(rng, s, rank, i);
        auto d = dynkin_of(m);
        if (!i_finite(d, i)) continue;
        ++accepted;
        auto r = reflect(m, i);
        DynkinDiagram cases(s, rank);
        try {
            cases = reflect_diagram_cases(d, i);
        } catch (const InternalCaseGap &e) {
            v.fail(std::string("case gap: ") + e.what());
            continue;
        }
        if (dynkin_of(r) != cases) {
            ++mismatches;
            v.fail("oracle mismatch at " + d.to_string() + " i=" + std::to_string(i + 1));
        }
        if (dynkin_of(reflect(r, i)) != d) {
            ++double_fail;
            v.fail("double reflection at " + d.to_string());
        }
        if (cartan_row(dynkin_of(r), i) != cartan_row(d, i)) v.fail("row stability");
    }
    v.detail << " (" << accepted << " instances, " << mismatches << " mismatches, " << double_fail
             << " double-reflection failures)";
    report(4, "reflection oracle equivalence", v);
}

void axiom_suite() {
    Verdict v;
    std::size_t checks = 0, points = 0;
    for (const auto &in : all_instances()) {
        const auto &g = in.graph;
        auto roots = enumerate_roots(g);
        if (!std::holds_alternative<RootSystemData>(roots)) {
            v.fail("row " + in.row->id + " not finite");
            continue;
        }
        const auto &data = std::get<RootSystemData>(roots);
        auto axioms = check_root_axioms(g, data);
        auto jik = check_lemma_jik(g, data);
        checks += axioms.checks + jik.checks;
        for (const auto &f : axioms.failures) v.fail("row " + in.row->id + " " + f.axiom + " " + f.witness);
        for (const auto &f : jik.failures) v.fail("row " + in.row->id + " " + f.axiom + " " + f.witness);
        for (const auto &pt : g.points) {
            ++points;
            auto rw = roots_by_reduced_words(g, pt.id);
            if (!std::holds_alternative<ReducedWordRoots>(rw)) {
                v.fail("row " + in.row->id + " reduced words exceeded");
                continue;
            }
            const auto &w = std::get<ReducedWordRoots>(rw);
            if (w.positive != data.positive[pt.id]) v.fail("row " + in.row->id + " reduced-word roots differ");
            if (!w.pairwise_distinct || !w.inversion_sets_consistent) v.fail("row " + in.row->id + " word oracle");
            if (data.positive[pt.id].size() != data.positive[g.origin].size()) v.fail("unequal root counts");
        }
    }
    v.detail << " (" << checks << " axiom checks over " << points << " points)";
    report(5, "root-system axiom suite", v);
}

void negative_controls() {
    Verdict v;
    std::string first;
    for (int pass = 0; pass < 2; ++pass) {
        std::ostringstream log;
        auto a = cli("roots " + data("badchain.txt"));
        auto b = cli("roots --max-points 16384 --max-roots 2048 " + data("badchain.txt"));
        auto c = cli("roots " + data("notifinite.txt"));
        auto d = cli("roots " + data("decomposable.txt"));
        if (a.code != 1 || a.out.find("ExceededLimits") == std::string::npos) v.fail("badchain at default caps");
        if (b.code != 1 || b.out.find("ExceededLimits") == std::string::npos) v.fail("badchain at 4x caps");
        if (c.code != 1 || c.out.find("NotIFinite at point 0") == std::string::npos) v.fail("NotIFinite chain");
        if (d.err.find("decomposable") == std::string::npos) v.fail("no decomposability warning");
        log << a.code << a.out << b.code << b.out << c.code << c.out << d.code << d.out << d.err;
        if (pass == 0) first = log.str();
        else if (log.str() != first) v.fail("output differs between runs");
    }
    v.detail << " (a_ij = -3 chain: ExceededLimits at 512 and 2048 roots, exit 1; NotIFinite at origin; "
                "decomposition warned; two identical runs)";
    report(6, "negative controls", v);
}

void characteristic_gating() {
    Verdict v;
    // 15' exactly at p = 3
    for (int64_t p : {2, 3, 5, 7}) {
        auto s = spec_with(p, {});
        bool m = matches_row(instantiate(row_by_id("15'").diagrams[0], s, std::nullopt), "15'");
        if (m != (p == 3)) v.fail("row 15' at p=" + std::to_string(p));
    }
    // p>3 rows refuse p = 2, 3 and never match there
    for (const auto &row : builtin_rows()) {
        if (row.characteristic != CharConstraint::GreaterThree) continue;
        for (int64_t p : {2, 3}) {
            if (row.root_order % p == 0) continue;
            auto s = spec_with(p, {{"zeta", row.root_order}});
            auto x = gen(s, "zeta");
            try {
                check_assignment(row, s, x);
                v.fail("row " + row.id + " accepted p=" + std::to_string(p));
            } catch (const ConstraintViolated &) {
            }
            for (const auto &pd : row.diagrams)
                if (matches_row(instantiate(pd, s, x), row.id)) v.fail("row " + row.id + " matched at p=" + std::to_string(p));
        }
    }
    // -1 reads as 1 at p = 2; rows that need -1 != 1 never match there
    auto doc = parse_input("p = 2\nrank = 1\nv1 = -1\n");
    if (!doc.diagram().vertex(0).is_identity() || doc.warnings.empty()) v.fail("-1 at p=2 not normalized");
    for (const auto &row : builtin_rows()) {
        if (characteristic_allowed(row.characteristic, 2)) continue;
        if (row.kind == ParamKind::RootOfUnity && row.root_order % 2 == 0) continue;
        GroupSpecPtr s;
        std::optional<FieldUnit> x;
        if (row.kind == ParamKind::Free) s = spec_with(2, {{"q", 0}}), x = gen(s, "q");
        else if (row.kind == ParamKind::RootOfUnity) s = spec_with(2, {{"zeta", row.root_order}}), x = gen(s, "zeta");
        else s = spec_with(2, {});
        for (const auto &pd : row.diagrams)
            if (matches_row(instantiate(pd, s, x), row.id)) v.fail("row " + row.id + " matched at p=2");
    }
    v.detail << " (15' only at p=3; rows 15-17, 19 refuse p=2,3; sign rows silent at p=2)";
    report(7, "characteristic gating", v);
}

}  // namespace

int main() {
    try {
        table_reproduction();
        standard_types();
        good_neighborhoods();
        reflection_oracle();
        axiom_suite();
        negative_controls();
        characteristic_gating();
    } catch (const std::exception &e) {
        std::cout << "FAIL acceptance aborted: " << e.what() << "\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
