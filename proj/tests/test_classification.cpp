#include "support.hpp"

#include <gtest/gtest.h>

using namespace nichols;
using namespace testsupport;

namespace {

DynkinDiagram chain(const GroupSpecPtr &s, std::vector<FieldUnit> v, std::vector<FieldUnit> e) {
    DynkinDiagram d(s, 4);
    for (int k = 0; k < 4; ++k) d.set_vertex(k, v[k]);
    for (int k = 0; k < 3; ++k) d.set_edge(k, k + 1, e[k]);
    return d;
}

std::set<std::string> matched_rows(const DynkinDiagram &d) {
    std::set<std::string> out;
    for (const auto &m : match_diagram(d)) out.insert(m.row);
    return out;
}

}  // namespace

TEST(Classification, TemplateShape) {
    const auto &rows = builtin_rows();
    ASSERT_EQ(rows.size(), 23u);
    const auto &r1 = row_by_id("1");
    ASSERT_EQ(r1.diagrams.size(), 1u);
    EXPECT_EQ(r1.diagrams[0].shape, Shape::Chain);
    EXPECT_EQ(r1.constraint_text, "q in k* \\ {1}");
    EXPECT_EQ(r1.characteristic, CharConstraint::Positive);
    const auto &r15p = row_by_id("15'");
    EXPECT_EQ(r15p.characteristic, CharConstraint::EqualsThree);
    std::vector<Monomial> expected{{true, 0}, {true, 0}, {true, 0}, {true, 0}, {true, 0}, {true, 0}, {false, 0}};
    EXPECT_EQ(r15p.diagrams[0].labels, expected);
    EXPECT_EQ(row_by_id("22").diagrams.size(), 8u);
    EXPECT_EQ(row_by_id("22").root_order, 4);
    EXPECT_EQ(row_by_id("22").characteristic, CharConstraint::NotTwo);
}

TEST(Classification, InstantiateRowFifteen) {
    auto s = spec_with(5, {{"z", 3}});
    auto z = gen(s, "z"), m1 = FieldUnit::minus_one(s);
    auto inst = instantiate_row(row_by_id("15"), s, z);
    auto expected = chain(s, {m1 * z.inverse(), m1 * z.inverse(), m1 * z.inverse(), z}, {m1 * z, m1 * z, m1 * z});
    EXPECT_EQ(inst.printed[0], expected);
}

TEST(Classification, ConstraintViolations) {
    auto s7 = spec_with(7, {{"q", 0}});
    EXPECT_THROW(instantiate_row(row_by_id("1"), s7, FieldUnit::identity(s7)), ConstraintViolated);
    // an order-3 root of unity does not exist at p = 3
    EXPECT_THROW(spec_with(3, {{"z", 3}}), GroupError);
    for (auto s : {spec_with(3, {{"z", 4}}), spec_with(2, {{"z", 3}})}) {
        try {
            instantiate_row(row_by_id("16"), s, gen(s, "z"));
            ADD_FAILURE() << "row 16 accepted p=" << s->characteristic();
        } catch (const ConstraintViolated &e) {
            EXPECT_NE(std::string(e.what()).find("p>3"), std::string::npos) << e.what();
        }
    }
}

TEST(Classification, MatchRowOne) {
    auto s = spec_with(7, {{"z", 5}});
    auto z = gen(s, "z");
    auto d = chain(s, {z, z, z, z}, {z.inverse(), z.inverse(), z.inverse()});
    auto ms = match_diagram(d);
    ASSERT_FALSE(ms.empty());
    EXPECT_EQ(ms[0].row, "1");
    ASSERT_TRUE(ms[0].parameter.has_value());
    EXPECT_EQ(*ms[0].parameter, z);
    // relabeled input still matches
    Permutation4 tau{2, 0, 3, 1};
    EXPECT_TRUE(matched_rows(d.relabeled(tau)).count("1"));
}

TEST(Classification, MatchRowFifteenPrime) {
    auto s = spec_with(3, {});
    auto m1 = FieldUnit::minus_one(s);
    auto d = chain(s, {m1, m1, m1, FieldUnit::identity(s)}, {m1, m1, m1});
    EXPECT_TRUE(matched_rows(d).count("15'"));
    for (int64_t p : {5, 7}) {
        auto sp = spec_with(p, {});
        auto mp = FieldUnit::minus_one(sp);
        EXPECT_FALSE(matched_rows(chain(sp, {mp, mp, mp, FieldUnit::identity(sp)}, {mp, mp, mp})).count("15'"));
    }
}

TEST(Classification, NoMatch) {
    auto s = spec_with(7, {{"g", 0}});
    auto g = gen(s, "g");
    EXPECT_TRUE(match_diagram(chain(s, {g, g.pow(2), g, g}, {g.pow(5), g.pow(-7), g})).empty());
    auto s0 = spec_with(0, {{"g", 0}});
    auto g0 = gen(s0, "g");
    EXPECT_THROW(match_diagram(chain(s0, {g0, g0, g0, g0}, {g0, g0, g0})), std::domain_error);
}

TEST(Classification, CharacteristicGating) {
    for (const auto &row : builtin_rows()) {
        for (int64_t p : {2, 3, 5, 7}) {
            bool allowed = characteristic_allowed(row.characteristic, p);
            if (row.characteristic == CharConstraint::GreaterThree) EXPECT_EQ(allowed, p > 3);
            if (row.characteristic == CharConstraint::EqualsThree) EXPECT_EQ(allowed, p == 3);
            if (row.characteristic == CharConstraint::NotTwo) EXPECT_EQ(allowed, p != 2);
            if (row.characteristic == CharConstraint::NotThree) EXPECT_EQ(allowed, p != 3);
        }
        EXPECT_FALSE(characteristic_allowed(row.characteristic, 0));
    }
    for (const char *id : {"15", "16", "17", "19"}) EXPECT_EQ(row_by_id(id).characteristic, CharConstraint::GreaterThree);
    for (const char *id : {"18", "20", "21"}) EXPECT_EQ(row_by_id(id).characteristic, CharConstraint::NotThree);
    for (const char *id : {"14", "22"}) EXPECT_EQ(row_by_id(id).characteristic, CharConstraint::NotTwo);
}

TEST(Classification, ForbiddenCharacteristicNeverMatches) {
    // Evaluate every printed diagram under a forbidden characteristic (where
    // the parameter still exists) and match it there.
    int tried = 0;
    for (const auto &row : builtin_rows())
        for (int64_t p : {2, 3, 5, 7}) {
            if (characteristic_allowed(row.characteristic, p)) continue;
            if (row.kind == ParamKind::RootOfUnity && row.root_order % p == 0) continue;
            GroupSpecPtr s;
            std::optional<FieldUnit> x;
            if (row.kind == ParamKind::Free) {
                s = spec_with(p, {{"q", 0}});
                x = gen(s, "q");
            } else if (row.kind == ParamKind::RootOfUnity) {
                s = spec_with(p, {{"zeta", row.root_order}});
                x = gen(s, "zeta");
            } else {
                s = spec_with(p, {});
            }
            EXPECT_THROW(check_assignment(row, s, x), ConstraintViolated) << "row " << row.id << " p=" << p;
            for (const auto &pd : row.diagrams) {
                EXPECT_FALSE(matched_rows(instantiate(pd, s, x)).count(row.id)) << "row " << row.id << " p=" << p;
                ++tried;
            }
        }
    EXPECT_GT(tried, 0);
}

TEST(Classification, SignCollapsesInCharacteristicTwo) {
    auto s = spec_with(2, {});
    auto one = FieldUnit::identity(s);
    EXPECT_EQ(FieldUnit::minus_one(s), one);
    // the row-15' diagram read at p = 2 is the all-ones chain: no row at all
    EXPECT_TRUE(matched_rows(instantiate(row_by_id("15'").diagrams[0], s, std::nullopt)).empty());
}

TEST(Classification, ClosureAndTorsionVertices) {
    for (const auto &in : all_instances()) {
        for (const auto &pt : in.graph.points) {
            bool back = false;
            for (const auto &m : match_diagram(pt.diagram))
                back |= m.row == in.row->id && m.parameter.has_value() == in.assignment.parameter.has_value();
            EXPECT_TRUE(back) << "row " << in.row->id << " point " << pt.id;
        }
        bool torsion_vertices = true;
        for (int i = 0; i < 4; ++i) torsion_vertices &= element_order(in.data.printed[0].vertex(i)).has_value();
        if (torsion_vertices)
            EXPECT_TRUE(std::holds_alternative<RootSystemData>(enumerate_roots(in.graph))) << "row " << in.row->id;
    }
}

TEST(Classification, VerifyRowSpotValues) {
    const std::pair<const char *, std::size_t> spots[] = {{"1", 1}, {"6", 5}, {"7", 4}, {"16", 4}, {"21", 7}};
    for (auto [id, n] : spots) {
        const auto &row = row_by_id(id);
        for (const auto &a : canonical_assignments(row)) {
            auto rep = verify_row(row, a.spec, a.parameter);
            EXPECT_TRUE(rep.ok()) << "row " << id << " " << a.description;
            EXPECT_EQ(rep.point_count, n) << "row " << id;
            EXPECT_TRUE(rep.finite);
        }
    }
}
