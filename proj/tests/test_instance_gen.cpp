#include "support.hpp"

using namespace dynsig;
using dynsig::testing::r;

TEST(Generator, DeterministicForSeedAndIndex) {
    GenConfig cfg;
    cfg.seed = 42;
    EXPECT_EQ(gen_dynamic_signal(cfg, 3), gen_dynamic_signal(cfg, 3));
    EXPECT_EQ(gen_signal(cfg, 7), gen_signal(cfg, 7));
    bool any_diff = false;
    for (std::uint64_t i = 0; i < 10 && !any_diff; ++i) any_diff = !(gen_dynamic_signal(cfg, i) == gen_dynamic_signal(cfg, i + 1));
    EXPECT_TRUE(any_diff);
}

TEST(Generator, RespectsBounds) {
    GenConfig cfg;
    cfg.max_states = 4;
    cfg.max_periods = 3;
    cfg.max_cells_per_period = 5;
    cfg.max_actions_per_period = 2;
    cfg.denominator_bound = 8;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Generator g(cfg, i);
        auto states = g.states();
        ASSERT_GE(states.size(), 2u);
        ASSERT_LE(states.size(), 4u);
        auto T = g.horizon();
        ASSERT_GE(T, 1u);
        ASSERT_LE(T, 3u);
        auto ds = g.dynamic_signal(states, T, cfg.max_cells_per_period);
        ASSERT_FALSE(validate_dynamic(ds));
        for (const auto& p : ds.periods) ASSERT_LE(p.cells.size(), 5u);
        auto p = g.problem(states, T);
        EXPECT_NO_THROW(p.check(states, T));
        for (const auto& acts : p.actions) ASSERT_LE(acts.size(), 2u);
        auto table = to_general(p, states.size()).table;
        for (const auto& x : table) {
            ASSERT_LE(x, r(8) * T);
            ASSERT_GE(x, r(-8) * T);
        }
    }
}

TEST(Generator, OneCellMeansTrivial) {
    GenConfig cfg;
    cfg.max_cells_per_period = 1;
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto ds = gen_dynamic_signal(cfg, i);
        for (const auto& p : ds.periods) EXPECT_EQ(p.cells.size(), 1u);
    }
}

TEST(Generator, LargeTablesFallBackToSeparable) {
    GenConfig cfg;
    cfg.max_states = 3;
    cfg.max_periods = 3;
    cfg.max_actions_per_period = 3;
    cfg.separable_probability = 0.0;
    cfg.general_table_cap = 4;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Generator g(cfg, i);
        auto states = g.states();
        auto p = g.problem(states, 3);
        if (p.profile_count() * states.size() > 4) {
            EXPECT_TRUE(p.separable());
        }
    }
    Generator g(cfg, 0);
    auto states = g.states();
    EXPECT_FALSE(g.problem(states, 3, false).separable());
}

TEST(Generator, PairGenerators) {
    GenConfig cfg;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto [a, b] = gen_ror_pair(cfg, i);
        ASSERT_FALSE(validate_dynamic(a));
        ASSERT_FALSE(validate_dynamic(b));
        EXPECT_TRUE(strongly_dominates(a, b)) << "index " << i;
        auto [c, d] = gen_non_ror_pair(cfg, i);
        ASSERT_FALSE(validate_dynamic(c));
        ASSERT_FALSE(validate_dynamic(d));
        EXPECT_FALSE(strongly_dominates(c, d)) << "index " << i;
    }
}

TEST(Generator, RelabelKeepsPartition) {
    GenConfig cfg;
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto ds = gen_dynamic_signal(cfg, i);
        auto rel = relabel(ds);
        ASSERT_FALSE(validate_dynamic(rel));
        for (std::size_t t = 0; t < ds.horizon(); ++t) EXPECT_TRUE(same_partition(ds[t], rel[t]));
    }
}

TEST(Generator, PartialRevealerAndMask) {
    StateSpace states{{"a", "b", "c"}};
    Signal pr = partial_revealer(states, {true, false, false});
    EXPECT_FALSE(validate(pr));
    EXPECT_EQ(pr.cells.size(), 2u);
    Signal masked = mask_states(join(revealing_signal(states), trivial_signal(states)), {false, true, true});
    EXPECT_FALSE(validate(masked));
    EXPECT_TRUE(refines(revealing_signal(states), masked).holds);
}
