#include <gtest/gtest.h>

#include <numeric>

#include <curvecount/curvecount.hpp>

using namespace curvecount;

TEST(GluingPermutation, Examples) {
    EXPECT_EQ(gluing_permutation(1, 0), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(gluing_permutation(2, 1), (std::vector<std::uint32_t>{1, 2, 3, 0}));
    // labels 1,2,3,3',2',1' at indices 0..5; l -> l + 4 wraps into the primed half
    EXPECT_EQ(gluing_permutation(3, 4), (std::vector<std::uint32_t>{4, 5, 0, 1, 2, 3}));
    EXPECT_THROW(gluing_permutation(0, 0), std::invalid_argument);
}

TEST(GluingPermutation, BijectiveAndInvertible) {
    for (std::uint64_t k = 1; k <= 20; ++k)
        for (std::uint64_t p = 0; p < 2 * k; ++p) {
            auto f = gluing_permutation(k, p);
            auto g = gluing_permutation(k, (2 * k - p) % (2 * k));
            std::vector<bool> hit(2 * k);
            for (auto x : f) hit[x] = true;
            ASSERT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
            for (std::uint32_t j = 0; j < 2 * k; ++j) ASSERT_EQ(g[f[j]], j);
        }
}

TEST(ComponentCount, Examples) {
    EXPECT_EQ(nested_gluing_system(1, 1).component_count(), 1u);
    EXPECT_EQ(nested_gluing_system(2, 2).component_count(), 2u);
    EXPECT_EQ(CurveSystem{}.component_count(), 0u);
    EXPECT_EQ(component_count(CurveSystem{}), 0u);
}

TEST(ComponentCount, MismatchedGluingRejected) {
    CurveSystem s;
    auto a = s.add_pants(arc_config_from_boundary_counts(0, 0, 4), {"A", "B", "E"});
    auto b = s.add_pants(arc_config_from_boundary_counts(0, 0, 6), {"C", "D", "E'"});
    EXPECT_THROW(s.glue(a[2], b[2], TwistGluing{4, 0}), std::invalid_argument);
    EXPECT_THROW(s.glue(a[2], b[2], TwistGluing{6, 0}), std::invalid_argument);
}

TEST(Connectivity, Examples) {
    EXPECT_TRUE(is_connected_twist(1, 1));
    EXPECT_FALSE(is_connected_twist(2, 2));
    EXPECT_TRUE(is_connected_twist(6, 5));
}

// Traversal of two nests glued with twist p closes into one curve exactly
// when p is prime to k; the count of components is gcd(p, k).
TEST(Connectivity, TraversalMatchesGcdWithStrandCount) {
    for (std::uint64_t k = 1; k <= 64; ++k)
        for (std::uint64_t p = 0; p < 2 * k; ++p) {
            auto comps = nested_gluing_system(k, p).component_count();
            ASSERT_EQ(comps, std::gcd(p, k)) << "k=" << k << " p=" << p;
            ASSERT_EQ(is_connected_twist(k, p), comps == 1);
        }
}

// The 2k reading disagrees on a whole class of cells; k = 1 makes it plain:
// one arc on each side always closes into a single loop.
TEST(Connectivity, EvenTwistCanStillConnect) {
    EXPECT_EQ(nested_gluing_system(1, 0).component_count(), 1u);
    EXPECT_NE(std::gcd(0, 2), 1);
    EXPECT_TRUE(is_connected_twist(3, 4));
    EXPECT_NE(std::gcd(4, 6), 1);
}

TEST(Connectivity, ReversalSymmetry) {
    for (std::uint64_t k = 1; k <= 40; ++k)
        for (std::uint64_t p = 1; p < 2 * k; ++p) ASSERT_EQ(is_connected_twist(k, p), is_connected_twist(k, 2 * k - p));
}

TEST(Connectivity, FullTwistInvariance) {
    for (std::uint64_t k = 1; k <= 12; ++k)
        for (std::uint64_t p = 0; p < 2 * k; ++p) {
            auto base = nested_gluing_system(k, p).component_count();
            ASSERT_EQ(nested_gluing_system(k, p + 2 * k).component_count(), base);
            ASSERT_EQ(nested_gluing_system(k, p + 6 * k).component_count(), base);
        }
}

TEST(Connectivity, RelabelingInvariance) {
    for (std::uint64_t k = 1; k <= 10; ++k)
        for (std::uint64_t p = 0; p < 2 * k; ++p) {
            CurveSystem s;
            auto b = s.add_pants(arc_config_from_boundary_counts(2 * k, 0, 0), {"E'", "C", "D"});
            auto a = s.add_pants(arc_config_from_boundary_counts(0, 2 * k, 0), {"A", "E", "B"});
            s.glue(a[1], b[0], TwistGluing::half_count(k, p));
            ASSERT_EQ(s.component_count(), nested_gluing_system(k, p).component_count());
        }
}

TEST(CoprimeTwistCount, Examples) {
    EXPECT_EQ(coprime_twist_count(1, 1), 1u);
    EXPECT_EQ(coprime_twist_count(2, 3), 6u);
    EXPECT_EQ(coprime_twist_count(3, 1), 2u);
}

TEST(CoprimeTwistCount, MatchesEnumeration) {
    for (std::uint64_t k = 1; k <= 30; ++k)
        for (std::uint64_t N = 1; N <= 4; ++N) {
            std::uint64_t n = 0;
            for (std::uint64_t p = 1; p <= 2 * k * N; ++p) n += std::gcd(p, 2 * k) == 1;
            ASSERT_EQ(coprime_twist_count(k, N), n);
        }
}

TEST(TwistGluing, TurnsAndResidue) {
    auto g = TwistGluing::half_count(3, 7);
    EXPECT_EQ(g.points, 6u);
    EXPECT_EQ(g.full_turns(), 1u);
    EXPECT_EQ(g.residue(), 1u);
}

TEST(DiskTrick, SingleStrand) {
    CurveSystem s;
    auto ids = s.add_pants(arc_config_from_boundary_counts(2, 0, 0), {"A", "B", "C"});
    auto capped = disk_trick_closure(s, ids[0]);
    EXPECT_EQ(capped.component_count(), 1u);
    EXPECT_EQ(capped.closed_loop_count(), 1u);
}

// Capping the torus piece and twisting its two core sides by s positions
// leaves gcd(s, k) components.
TEST(DiskTrick, TorusPieceTwist) {
    for (std::uint64_t k = 1; k <= 12; ++k)
        for (std::uint64_t s = 0; s < 3 * k; ++s) {
            CurveSystem sys;
            auto ids = sys.add_pants(arc_config_from_boundary_counts(2 * k, k, k), {"E", "P", "Q"});
            sys.glue(ids[1], ids[2], TwistGluing{k, s}, "C");
            auto capped = disk_trick_closure(sys, ids[0]);
            ASSERT_EQ(capped.component_count(), std::gcd(s, k)) << k << " " << s;
        }
    CurveSystem coprime;
    auto ids = coprime.add_pants(arc_config_from_boundary_counts(10, 5, 5), {"E", "P", "Q"});
    coprime.glue(ids[1], ids[2], TwistGluing{5, 3}, "C");
    EXPECT_EQ(disk_trick_closure(coprime, ids[0]).component_count(), 1u);
}

// Gluing a planar nest with zero twist and capping with a disk give the
// same components.
TEST(DiskTrick, MatchesGluedNest) {
    for (std::uint64_t k = 1; k <= 8; ++k)
        for (std::uint64_t v = 1; v <= k; ++v)
            for (std::uint64_t t = 0; t <= 2; ++t) {
                auto cap = torus_cap(k, v, t);
                auto far = nested_sides(k);
                auto capped = disk_trick_closure(cap, cap.find("E"), far, far.find("E"));
                CurveSystem glued;
                auto ids = glued.add_pants(arc_config_from_boundary_counts(2 * k, k * v, k * v), {"E", "P", "Q"});
                std::uint64_t n = k * v;
                glued.glue(ids[1], ids[2], TwistGluing{n, k % n + t * n}, "C");
                auto nest = glued.add_pants(arc_config_from_boundary_counts(0, 0, 2 * k), {"X", "Y", "N"});
                glued.glue(ids[0], nest[2], TwistGluing{2 * k, 0}, "E");
                ASSERT_EQ(capped.component_count(), glued.component_count());
            }
}

TEST(DiskTrick, RejectsNonNestedSide) {
    auto s = nested_sides(2);
    CurveSystem far;
    auto ids = far.add_pants(arc_config_from_boundary_counts(4, 2, 2), {"E", "P", "Q"});
    EXPECT_THROW(disk_trick_closure(s, s.find("E"), far, ids[0]), std::invalid_argument);
    auto wrong_size = nested_sides(3);
    EXPECT_THROW(disk_trick_closure(s, s.find("E"), wrong_size, wrong_size.find("E")), std::invalid_argument);
}

TEST(Closing, ResidueWindowCounts) {
    ResidueSet r({true, false, false, true, true});
    for (std::uint64_t shift = 0; shift < 7; ++shift)
        for (std::uint64_t P = 0; P < 23; ++P) {
            std::uint64_t n = 0;
            for (std::uint64_t p = 0; p <= P; ++p) n += r.contains(p + shift);
            ASSERT_EQ(r.count_upto(P, shift), n);
        }
    EXPECT_EQ(r.per_period(), 3u);
}

TEST(Closing, MatchesExplicitGluing) {
    for (std::uint64_t k = 1; k <= 6; ++k)
        for (std::uint64_t m = (k % 2 ? 1 : 2); m <= k; m += 2) {
            auto open = genus_one_chain(k, {m});
            ClosingProblem cp(open, open.find("E1"), open.find("E2"));
            for (std::uint64_t p = 0; p < 2 * k; ++p) {
                auto closed = open;
                closed.glue(closed.find("E1"), closed.find("E2"), TwistGluing{k, p});
                ASSERT_EQ(cp.components(p), closed.component_count());
                ASSERT_EQ(cp.connected(p), closed.component_count() == 1);
            }
        }
}

TEST(Closing, RejectsStrayEndpoints) {
    CurveSystem s;
    s.add_pants(arc_config_from_boundary_counts(2, 2, 0), {"A", "B", "C"});
    s.add_pants(arc_config_from_boundary_counts(2, 0, 2), {"D", "E", "F"});
    EXPECT_THROW(ClosingProblem(s, s.find("A"), s.find("D")), std::invalid_argument);
}

TEST(Closing, CapsAndExtensionsKeepNest) {
    ConnectivityCache cache;
    for (std::uint64_t k = 1; k <= 16; ++k)
        for (std::uint64_t v = 1; v <= k; ++v) {
            EXPECT_TRUE(cache.cap_nested(k, v));
            EXPECT_TRUE(cache.extension_nested(k, v));
        }
}

// A genus-one chain with one pants is the one-holed torus: closing works
// exactly for twists prime to k.
TEST(Closing, TorusResidues) {
    ConnectivityCache cache;
    for (std::uint64_t k = 1; k <= 30; ++k) {
        auto r = cache.genus_one(k, {});
        for (std::uint64_t p = 0; p < k; ++p) ASSERT_EQ(r->contains(p), std::gcd(p, k) == 1);
    }
}
