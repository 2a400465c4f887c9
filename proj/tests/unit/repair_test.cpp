#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lp_feasibility.hpp"
#include "metric_mend/oracle.hpp"
#include "metric_mend/repair.hpp"

using namespace metric_mend;
using fixtures::id;

TEST(SplitTest, TriangleTopGoesToDecrease) {
    Graph g = fixtures::k3();
    const EdgeSet s{id(g, 0, 2)};
    auto split = split_cover(g, s);
    EXPECT_TRUE(split.increase.empty());
    EXPECT_EQ(split.decrease, s);
}

TEST(SplitTest, TriangleNontopGoesToIncrease) {
    Graph g = fixtures::k3();
    const EdgeSet s{id(g, 0, 1)};
    auto split = split_cover(g, s);
    EXPECT_EQ(split.increase, s);
    EXPECT_TRUE(split.decrease.empty());
}

TEST(SplitTest, EmptyCoverOfMetricGraph) {
    auto split = split_cover(fixtures::unit_square(), {});
    EXPECT_TRUE(split.increase.empty());
    EXPECT_TRUE(split.decrease.empty());
}

TEST(SplitTest, RejectsNonCoverWithWitness) {
    Graph g = fixtures::k3();
    try {
        split_cover(g, {});
        FAIL() << "expected rejection";
    } catch (const CoverRejected& e) {
        ASSERT_TRUE(e.witness());
        EXPECT_EQ(e.witness()->top, id(g, 0, 2));
    }
}

TEST(RepairTest, IncreaseOnlyTriangle) {
    Graph g = fixtures::k3();
    for (auto mode : {StepMode::unit, StepMode::batched}) {
        auto out = repair_weights(g, {{id(g, 0, 1)}, {}}, ProblemKind::gmvid, {mode, std::nullopt});
        EXPECT_EQ(out.graph.weight(id(g, 0, 1)), Weight(4));
        EXPECT_EQ(out.graph.weight(id(g, 1, 2)), Weight(1));
        EXPECT_EQ(out.graph.weight(id(g, 0, 2)), Weight(5));
        EXPECT_TRUE(is_metric(out.graph));
        ASSERT_EQ(out.changed.size(), 1u);
        EXPECT_EQ(out.changed[0].before, Weight(1));
    }
    EXPECT_EQ(repair_weights(g, {{id(g, 0, 1)}, {}}, ProblemKind::gmvid, {StepMode::unit, std::nullopt}).steps, 3u);
}

TEST(RepairTest, DecreaseTriangleTop) {
    Graph g = fixtures::k3();
    for (auto mode : {StepMode::unit, StepMode::batched}) {
        auto out = repair_weights(g, {{}, {id(g, 0, 2)}}, ProblemKind::gmvd, {mode, std::nullopt});
        EXPECT_EQ(out.graph.weight(id(g, 0, 2)), Weight(2));
        EXPECT_EQ(out.graph.weight(id(g, 0, 1)), Weight(1));
    }
}

TEST(RepairTest, MetricGraphUnchanged) {
    auto out = repair_weights(fixtures::unit_square(), {}, ProblemKind::gmvd);
    EXPECT_TRUE(out.changed.empty());
    EXPECT_EQ(out.steps, 0u);
}

TEST(RepairTest, RejectsBadCovers) {
    Graph g = fixtures::k3();
    EXPECT_THROW(repair_weights(g, {{id(g, 0, 2)}, {}}, ProblemKind::gmvid), CoverRejected);
    EXPECT_THROW(repair_weights(g, {{}, {id(g, 0, 1)}}, ProblemKind::gmvd), CoverRejected);
    EXPECT_THROW(repair_weights(g, {{}, {id(g, 0, 2)}}, ProblemKind::gmvid), CoverRejected);
}

TEST(RepairTest, RationalWeightsUseScaleHint) {
    Graph g = fixtures::make(3, {{0, 1, "1/2"}, {1, 2, "1/3"}, {0, 2, "2"}});
    auto out = repair_weights(g, {{}, {id(g, 0, 2)}}, ProblemKind::gmvd, {StepMode::batched, mpz_class(6)});
    EXPECT_EQ(out.graph.weight(id(g, 0, 2)), fixtures::w("5/6"));
    EXPECT_THROW(repair_weights(g, {{}, {id(g, 0, 2)}}, ProblemKind::gmvd, {StepMode::batched, mpz_class(4)}),
                 std::invalid_argument);
}

TEST(LiftTest, Examples) {
    Graph g = fixtures::make(3, {{0, 1, "0"}, {1, 2, "1"}, {0, 2, "1"}});
    auto lifted = lift_zero_edges(g);
    EXPECT_EQ(lifted.graph.weight(id(g, 0, 1)), Weight(2));
    EXPECT_TRUE(is_metric(lifted.graph));
    EXPECT_TRUE(lifted.unresolved.empty());

    Graph plain = fixtures::k3().with_weight(fixtures::id(fixtures::k3(), 0, 2), Weight(2));
    EXPECT_EQ(lift_zero_edges(plain).graph, plain);

    Graph star = fixtures::make(3, {{0, 1, "0"}, {1, 2, "0"}});
    auto stuck = lift_zero_edges(star);
    EXPECT_EQ(stuck.unresolved, (std::vector<EdgeId>{0, 1}));

    const std::vector<Weight> caps{Weight(1), Weight(1), Weight(1)};
    EXPECT_EQ(lift_zero_edges(g, caps).graph.weight(id(g, 0, 1)), Weight(1));
}

TEST(LpTest, TriangleCoverIsFeasible) {
    Graph g = fixtures::k3();
    const EdgeSet s{id(g, 0, 2)};
    std::string lp = export_lp(g, s, ProblemKind::gmvd);
    EXPECT_NE(lp.find(" a_0_1 = 1\n"), std::string::npos);
    EXPECT_NE(lp.find(" a_0_2 >= 0\n"), std::string::npos);
    EXPECT_EQ(lp_check::constraint_count(lp), 3u);
    EXPECT_TRUE(lp_check::feasible(lp));
    EXPECT_FALSE(lp_check::feasible(export_lp(g, {}, ProblemKind::gmvd)));
}

TEST(LpTest, SingleEdgeIsFeasible) {
    Graph g = fixtures::make(3, {{0, 1, "3/2"}});
    std::string lp = export_lp(g, {}, ProblemKind::gmvd);
    EXPECT_NE(lp.find(" a_0_1 = 3/2\n"), std::string::npos);
    EXPECT_TRUE(lp_check::feasible(lp));
}

TEST(LpTest, ConstraintCountAndOrdering) {
    Graph g = fixtures::make(5, {{0, 1, "1"}});
    std::string lp = export_lp(g, {}, ProblemKind::gmvd);
    EXPECT_EQ(lp_check::constraint_count(lp), 30u);
    EXPECT_EQ(lp, export_lp(g, {}, ProblemKind::gmvd));
}

class RepairProperties : public ::testing::TestWithParam<std::uint64_t> {};

void expect_contract(const Graph& g, const SplitCover& split, const RepairOutcome& out) {
    const Weight ceiling = g.max_weight();
    EXPECT_TRUE(is_metric(out.graph));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Weight& before = g.weight(e);
        const Weight& after = out.graph.weight(e);
        const bool up = std::binary_search(split.increase.begin(), split.increase.end(), e);
        const bool down = std::binary_search(split.decrease.begin(), split.decrease.end(), e);
        if (!up && !down) EXPECT_EQ(after, before);
        if (up) EXPECT_GE(after, before);
        if (down) EXPECT_LE(after, before);
        EXPECT_LE(after, ceiling);
        EXPECT_GE(after, Weight(0));
    }
}

TEST_P(RepairProperties, EndToEnd) {
    const Graph g = fixtures::corpus_graph(GetParam());
    auto regular = greedy_solve(g, ProblemKind::gmvd);
    auto split = split_cover(g, regular.edges);
    EXPECT_TRUE(is_valid_split(g, split));
    for (auto mode : {StepMode::unit, StepMode::batched}) {
        auto out = repair_weights(g, split, ProblemKind::gmvd, {mode, std::nullopt});
        expect_contract(g, split, out);
        auto lifted = lift_zero_edges(out.graph);
        EXPECT_TRUE(is_metric(lifted.graph));
    }

    auto increase = greedy_solve(g, ProblemKind::gmvid);
    SplitCover up{increase.edge_set(), {}};
    auto out = repair_weights(g, up, ProblemKind::gmvid);
    expect_contract(g, up, out);

    auto repaired_again = repair_weights(out.graph, split_cover(out.graph, regular.edges), ProblemKind::gmvd);
    EXPECT_TRUE(repaired_again.changed.empty());
}

TEST_P(RepairProperties, SplitsEveryMinimumCover) {
    const Graph g = fixtures::corpus_graph(GetParam());
    const auto inventory = oracle::enumerate_unbalanced_cycles(g);
    for (const auto& cover : oracle::all_min_covers(inventory, g.edge_count(), CoverKind::regular)) {
        auto split = split_cover(g, cover);
        EXPECT_TRUE(is_valid_split(g, split));
        EdgeSet joined;
        std::set_union(split.increase.begin(), split.increase.end(), split.decrease.begin(), split.decrease.end(),
                       std::back_inserter(joined));
        EXPECT_EQ(joined, cover);
    }
}

TEST_P(RepairProperties, LpFeasibleExactlyForCovers) {
    const Graph g = fixtures::corpus_graph(GetParam());
    if (g.vertex_count() > 5) return;
    const auto inventory = oracle::enumerate_unbalanced_cycles(g);
    for (auto [kind, cover_kind] : {std::pair{ProblemKind::gmvd, CoverKind::regular},
                                    std::pair{ProblemKind::gmvid, CoverKind::nontop},
                                    std::pair{ProblemKind::gmvdd, CoverKind::top}}) {
        for (std::uint32_t mask = 0; mask < (1u << std::min<std::size_t>(g.edge_count(), 6)); ++mask) {
            EdgeSet s;
            for (EdgeId e = 0; e < g.edge_count() && e < 6; ++e) {
                if (mask & (1u << e)) s.push_back(e);
            }
            EXPECT_EQ(lp_check::feasible(export_lp(g, s, kind)), oracle::covers_inventory(inventory, s, cover_kind))
                << to_string(kind) << " mask " << mask;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Corpus, RepairProperties, ::testing::Range<std::uint64_t>(0, 60));
