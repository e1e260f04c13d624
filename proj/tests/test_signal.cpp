#include "support.hpp"

using namespace dynsig;
using dynsig::testing::r;
namespace fx = dynsig::fixtures;

namespace {

Signal eta1() { return fx::example1()[0]; }
Signal eta2() { return fx::example1()[1]; }

}  // namespace

TEST(Validate, AcceptsPartitions) {
    EXPECT_FALSE(validate(eta1()));
    EXPECT_FALSE(validate(eta2()));
    EXPECT_FALSE(validate(trivial_signal(fx::two_states())));
    EXPECT_FALSE(validate(fx::converse_sigma2()));
}

TEST(Validate, ReportsOverlap) {
    auto states = fx::two_states();
    Signal bad{states,
               {fx::cell2("a", {{0, r(1, 2)}}, {{0, 1}}),
                fx::cell2("b", {{0, r(1, 4)}, {r(1, 2), 1}}, {})}};
    auto v = validate(bad);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->state, "theta_L");
    ASSERT_TRUE(v->where);
    EXPECT_EQ(*v->where, (Interval{r(0), r(1, 4)}));
    EXPECT_NE(v->message.find("overlap"), std::string::npos);
}

TEST(Validate, ReportsGapNullCellAndDuplicates) {
    auto states = fx::two_states();
    Signal gap{states, {fx::cell2("a", {{0, r(1, 2)}}, {{0, 1}})}};
    auto v = validate(gap);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->state, "theta_L");
    EXPECT_EQ(*v->where, (Interval{r(1, 2), r(1)}));

    Signal null_cell = trivial_signal(states);
    null_cell.cells.push_back(fx::cell2("z", {}, {}));
    EXPECT_TRUE(validate(null_cell));

    Signal dup{states, {fx::cell2("a", {{0, r(1, 2)}}, {{0, r(1, 2)}}), fx::cell2("a", {{r(1, 2), 1}}, {{r(1, 2), 1}})}};
    EXPECT_TRUE(validate(dup));

    EXPECT_TRUE(validate(Signal{StateSpace{{"x", "x"}}, {}}));
}

TEST(CellProbability, ExampleValues) {
    EXPECT_EQ(cell_probability(eta1(), "h", "theta_L"), r(1, 4));
    EXPECT_EQ(cell_probability(eta1(), "h", "theta_H"), r(3, 4));
    EXPECT_EQ(cell_probability(trivial_signal(fx::two_states()), "*", "theta_H"), r(1));
    EXPECT_EQ(cell_probability(fx::blackwell_eta(), "s1", "theta_L"), r(3, 4));
    EXPECT_THROW(cell_probability(eta1(), "nope", "theta_L"), LookupError);
    EXPECT_THROW(cell_probability(eta1(), "h", "theta_M"), LookupError);
}

TEST(Refines, ExampleCases) {
    EXPECT_TRUE(refines(eta2(), eta1()).holds);
    EXPECT_TRUE(refines(fx::converse_sigma2(), trivial_signal(fx::two_states())).holds);
    EXPECT_TRUE(refines(eta1(), trivial_signal(fx::two_states())).holds);

    // lo = [0,1/2) in both states meets h and l of period 1
    ASSERT_FALSE(dynsig::testing::refines_pointwise(fx::split_half(), eta1()));
    auto res = refines(fx::split_half(), eta1());
    EXPECT_FALSE(res.holds);
    ASSERT_TRUE(res.witness);
    EXPECT_EQ(res.witness->fine_cell, "lo");
    EXPECT_EQ(res.witness->coarse_a, "h");
    EXPECT_EQ(res.witness->coarse_b, "l");

    Signal other{StateSpace{{"a"}}, {Cell{"x", {IntervalSet::full()}}}};
    EXPECT_THROW(refines(other, eta1()), MismatchError);
}

TEST(Join, IdentityAndForcedRefinement) {
    auto triv = trivial_signal(fx::two_states());
    Signal j = join(fx::converse_sigma2(), triv);
    EXPECT_FALSE(validate(j));
    EXPECT_TRUE(same_partition(j, fx::converse_sigma2()));
    EXPECT_EQ(j.cells[0].id, "(odd,*)");

    Signal j12 = join(eta1(), eta2());
    EXPECT_TRUE(same_partition(j12, eta2()));
    EXPECT_EQ(j12.cells.size(), 3u);
}

// Hand enumeration of s_i cap r_j:
//   (s1,r1): L [0,1/2)         H {}
//   (s1,r2): L [1/2,3/4)       H [0,1/4)
//   (s2,r1): L {}              H [1/2,1)
//   (s2,r2): L [3/4,1)         H [1/4,1/2)
TEST(Join, BlackwellPairWithSwapSignal) {
    Signal j = join(fx::blackwell_eta(), fx::swap_rho());
    ASSERT_EQ(j.cells.size(), 4u);
    EXPECT_EQ(j.cell("(s1,r1)").sections[0], (IntervalSet{{0, r(1, 2)}}));
    EXPECT_TRUE(j.cell("(s1,r1)").sections[1].empty());
    EXPECT_EQ(j.cell("(s1,r2)").sections[0], (IntervalSet{{r(1, 2), r(3, 4)}}));
    EXPECT_EQ(j.cell("(s1,r2)").sections[1], (IntervalSet{{0, r(1, 4)}}));
    EXPECT_TRUE(j.cell("(s2,r1)").sections[0].empty());
    EXPECT_EQ(j.cell("(s2,r1)").sections[1], (IntervalSet{{r(1, 2), 1}}));
    EXPECT_EQ(j.cell("(s2,r2)").sections[0], (IntervalSet{{r(3, 4), 1}}));
    EXPECT_EQ(j.cell("(s2,r2)").sections[1], (IntervalSet{{r(1, 4), r(1, 2)}}));
    EXPECT_FALSE(validate(j));
}

TEST(Join, DropsNullIntersections) {
    auto rev = revealing_signal(StateSpace{{"a", "b", "c"}});
    Signal j = join(rev, rev);
    ASSERT_EQ(j.cells.size(), 3u);
    EXPECT_EQ(j.cells[1].id, "(b,b)");
}

TEST(Revealing, ExampleCells) {
    EXPECT_TRUE(is_revealing(eta2(), "lH"));
    EXPECT_FALSE(is_revealing(eta1(), "h"));
    EXPECT_FALSE(is_revealing(trivial_signal(fx::two_states()), "*"));
    EXPECT_TRUE(is_revealing(trivial_signal(StateSpace{{"only"}}), "*"));
    EXPECT_THROW(is_revealing(eta1(), "zz"), LookupError);
}

TEST(RevealOrRefine, ExampleCases) {
    auto self = reveal_or_refines(eta2(), eta2());
    EXPECT_TRUE(self.holds);
    for (const auto& v : self.cells) {
        EXPECT_EQ(v.clause, Clause::Refine);
        EXPECT_EQ(v.describe(), "refine (self)");
    }

    auto rev = revealing_signal(fx::two_states());
    auto r1 = reveal_or_refines(rev, fx::converse_sigma2());
    EXPECT_TRUE(r1.holds);
    for (const auto& v : r1.cells) EXPECT_EQ(v.clause, Clause::Reveal);
    EXPECT_EQ(r1.cells[0].revealed_state, "theta_L");

    // s1 has mass in both states and meets both halves
    auto bw = reveal_or_refines(fx::blackwell_eta(), fx::split_half());
    EXPECT_FALSE(bw.holds);
    ASSERT_NE(bw.first_failure(), nullptr);
    EXPECT_EQ(bw.first_failure()->cell, "s1");
    EXPECT_EQ(bw.first_failure()->straddled_a, "lo");
    EXPECT_EQ(bw.first_failure()->straddled_b, "hi");
}

TEST(RevealOrRefine, RevealingCellInsideContainerReportsRefine) {
    auto v = reveal_or_refines(eta2(), eta1());
    ASSERT_TRUE(v.holds);
    EXPECT_EQ(v.cells[1].cell, "lH");
    EXPECT_EQ(v.cells[1].clause, Clause::Refine);
    EXPECT_EQ(v.cells[1].container, "l");
}

// Smaller-scale versions of the lattice properties; the acceptance binary
// runs the full-size trials.
class SignalProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SignalProperties, JoinAndRefinementLaws) {
    GenConfig cfg;
    cfg.seed = GetParam();
    cfg.max_cells_per_period = 4;
    cfg.denominator_bound = 8;
    Generator g(cfg, 0);
    auto states = g.states();
    Signal a = g.signal(states, 4), b = g.signal(states, 4), c = g.signal(states, 4);
    ASSERT_FALSE(validate(a));
    Signal ab = join(a, b);
    ASSERT_FALSE(validate(ab));
    EXPECT_TRUE(refines(ab, a).holds);
    EXPECT_TRUE(refines(ab, b).holds);
    EXPECT_TRUE(same_partition(ab, join(b, a)));
    EXPECT_TRUE(same_partition(join(ab, c), join(a, join(b, c))));
    EXPECT_TRUE(same_partition(join(a, a), a));
    EXPECT_TRUE(refines(join(ab, c), ab).holds);
    EXPECT_EQ(refines(a, b).holds, dynsig::testing::refines_pointwise(a, b));
    if (refines(a, b).holds) {
        EXPECT_TRUE(reveal_or_refines(a, b).holds);
    }
    for (const auto& ca : a.cells)
        for (const auto& cb : b.cells) {
            bool meets = ca.overlaps(cb);
            bool present = std::any_of(ab.cells.begin(), ab.cells.end(), [&](const Cell& x) { return x.id == join_id(ca.id, cb.id); });
            ASSERT_EQ(meets, present);
            if (!present) continue;
            const Cell& cell = ab.cell(join_id(ca.id, cb.id));
            for (std::size_t s = 0; s < states.size(); ++s)
                EXPECT_LE(cell.sections[s].measure(), min(ca.sections[s].measure(), cb.sections[s].measure()));
        }
    for (std::size_t s = 0; s < states.size(); ++s) {
        Rational total;
        for (const auto& cell : ab.cells) total += cell.sections[s].measure();
        EXPECT_EQ(total, Rational(1));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SignalProperties, ::testing::Range<std::uint64_t>(0, 40));
