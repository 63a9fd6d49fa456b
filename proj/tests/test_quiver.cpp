#include <gtest/gtest.h>

#include <set>

#include "qrank/quiver.hpp"

using namespace qrank;

namespace {

// Connected vertex sets by checking every subset with a union-find over induced arrows.
std::set<std::vector<std::size_t>> brute_connected(const RootedTree& t) {
    const std::size_t n = t.size();
    std::set<std::vector<std::size_t>> out;
    for (u64 mask = 1; mask < (u64(1) << n); ++mask) {
        std::vector<std::size_t> par(n);
        for (std::size_t i = 0; i < n; ++i) par[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return par[x] == x ? x : par[x] = find(par[x]); };
        for (std::size_t a = 0; a < t.quiver().arrow_count(); ++a) {
            const Arrow& ar = t.quiver().arrow(a);
            if ((mask >> ar.tail & 1) && (mask >> ar.head & 1)) par[find(ar.tail)] = find(ar.head);
        }
        std::set<std::size_t> roots;
        std::vector<std::size_t> s;
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1) roots.insert(find(v)), s.push_back(v);
        if (roots.size() == 1) out.insert(s);
    }
    return out;
}

RootedTree from_parents(const std::vector<std::size_t>& par) {
    Quiver q("p");
    q.add_vertex("s");
    for (std::size_t i = 1; i < par.size(); ++i) {
        q.add_vertex("v" + std::to_string(i));
        q.add_arrow("a" + std::to_string(i), i, par[i]);
    }
    return RootedTree::make(std::move(q));
}

}  // namespace

TEST(RootedTree, Checks) {
    Quiver two_sinks;
    two_sinks.add_vertex("x");
    two_sinks.add_vertex("y");
    EXPECT_FALSE(check_rooted_tree(two_sinks).ok);
    EXPECT_THROW(RootedTree::make(two_sinks), TreeError);

    Quiver cyc;
    cyc.add_vertex("s");
    cyc.add_vertex("x");
    cyc.add_vertex("y");
    cyc.add_arrow("a", 1, 2);
    cyc.add_arrow("b", 2, 1);
    auto r = check_rooted_tree(cyc);
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.problem.find("cycle"), std::string::npos);

    Quiver fork;
    fork.add_vertex("s");
    fork.add_vertex("x");
    fork.add_arrow("a", 1, 0);
    fork.add_arrow("b", 1, 0);
    EXPECT_FALSE(check_rooted_tree(fork).ok);

    RootedTree c = chain_quiver(3);
    EXPECT_EQ(c.quiver().vertex_name(c.root()), "s");
    EXPECT_EQ(c.height(c.root()), 2u);
    EXPECT_TRUE(c.reaches(0, c.root()));
    EXPECT_FALSE(c.reaches(c.root(), 0));
}

TEST(DecomposeRoot, A2IsExtension) {
    RootedTree a2 = chain_quiver(2);
    auto d = decompose_root(a2);
    ASSERT_TRUE(std::holds_alternative<Extension>(d));
    const auto& e = std::get<Extension>(d);
    EXPECT_EQ(e.tau, 0u);
    EXPECT_EQ(e.base.tree.size(), 1u);
}

TEST(DecomposeRoot, SubspaceIsGluingOfA2) {
    RootedTree q = subspace_quiver(3);
    auto d = decompose_root(q);
    ASSERT_TRUE(std::holds_alternative<Gluing>(d));
    const auto& g = std::get<Gluing>(d);
    ASSERT_EQ(g.pieces.size(), 3u);
    for (const auto& p : g.pieces) EXPECT_EQ(canonical_form(p.tree), canonical_form(chain_quiver(2)));
    std::vector<RootedTree> parts;
    for (const auto& p : g.pieces) parts.push_back(p.tree);
    EXPECT_EQ(canonical_form(glue(parts)), canonical_form(q));
}

TEST(DecomposeRoot, ExampleIsExtensionOfSubspace) {
    RootedTree q = example_quiver();
    auto d = decompose_root(q);
    ASSERT_TRUE(std::holds_alternative<Extension>(d));
    const auto& e = std::get<Extension>(d);
    EXPECT_EQ(q.quiver().vertex_name(e.tau), "t");
    EXPECT_EQ(canonical_form(e.base.tree), canonical_form(subspace_quiver(3)));
    EXPECT_EQ(canonical_form(extend(e.base.tree, "s", "b")), canonical_form(q));
}

TEST(SubquiverTo, Cases) {
    RootedTree c = chain_quiver(3);
    EXPECT_EQ(subquiver_to(c, c.root()).tree.size(), 3u);
    EXPECT_EQ(subquiver_to(c, 0).tree.size(), 1u);
    Embedded mid = subquiver_to(c, 1);
    EXPECT_EQ(mid.tree.size(), 2u);
    EXPECT_EQ(mid.map.vertex[mid.tree.root()], 1u);
    EXPECT_TRUE(is_quiver_map(mid.tree.quiver(), c.quiver(), mid.map));
}

TEST(ConnectedSubquivers, SmallCounts) {
    EXPECT_EQ(connected_subquivers(chain_quiver(2)).size(), 3u);
    EXPECT_EQ(connected_subquivers(chain_quiver(1)).size(), 1u);
    EXPECT_EQ(connected_subquivers(subspace_quiver(3)).size(), 11u);
}

TEST(ConnectedSubquivers, MatchBruteForce) {
    Rng rng(1);
    std::vector<RootedTree> trees{subspace_quiver(3), example_quiver(), chain_quiver(4)};
    for (int t = 0; t < 20; ++t) trees.push_back(random_tree(1 + rng.below(8), rng));
    for (const auto& t : trees) {
        auto want = brute_connected(t);
        auto got = connected_subquivers(t);
        ASSERT_EQ(got.size(), want.size());
        for (const auto& b : got) EXPECT_TRUE(want.count(b.elements()));
        Poset inc = inclusion_poset(got);
        for (std::size_t i = 0; i < got.size(); ++i)
            for (std::size_t j = 0; j < got.size(); ++j) EXPECT_EQ(inc.leq(i, j), got[i].subset_of(got[j]));
    }
}

TEST(InducedSubquiver, RejectsDisconnected) {
    RootedTree q = subspace_quiver(2);
    Bits b(3);
    b.set(1);
    b.set(2);
    EXPECT_THROW(induced_subquiver(q, b), TreeError);
}

TEST(Complexity, Basics) {
    EXPECT_LT(complexity_compare(chain_quiver(1), chain_quiver(2)), 0);
    EXPECT_EQ(complexity_compare(example_quiver(), example_quiver()), 0);
    EXPECT_GT(complexity_compare(chain_quiver(3), subspace_quiver(5)), 0);
    EXPECT_LT(complexity_compare(subspace_quiver(2), subspace_quiver(3)), 0);
}

TEST(Complexity, TotalOrderOnAllTrees) {
    auto trees = all_trees(6);
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = 0; j < trees.size(); ++j) {
            int c = complexity_compare(trees[i], trees[j]);
            EXPECT_EQ(c == 0, i == j);
            EXPECT_EQ(c, -complexity_compare(trees[j], trees[i]));
        }
}

// Rooted trees up to isomorphism: 1, 1, 2, 4, 9, 20 for n = 1..6. Checked against canonical
// forms of every parent array with par[i] < i.
TEST(AllTrees, CountsMatchEnumeration) {
    std::vector<std::size_t> per_size(7, 0);
    for (const auto& t : all_trees(6)) ++per_size[t.size()];
    for (std::size_t n = 1; n <= 6; ++n) {
        std::set<std::string> forms;
        std::vector<std::size_t> par(n, 0);
        par[0] = npos;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == n) {
                forms.insert(canonical_form(from_parents(par)));
                return;
            }
            for (std::size_t p = 0; p < i; ++p) par[i] = p, rec(i + 1);
        };
        rec(1);
        EXPECT_EQ(per_size[n], forms.size()) << "n = " << n;
    }
    EXPECT_EQ(all_trees(6).size(), 37u);
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
    Quiver q("perm");
    q.add_vertex("1");
    q.add_vertex("s");
    q.add_vertex("t");
    q.add_vertex("2");
    q.add_vertex("3");
    q.add_arrow("b", 2, 1);
    q.add_arrow("x", 4, 2);
    q.add_arrow("y", 0, 2);
    q.add_arrow("z", 3, 2);
    EXPECT_EQ(canonical_form(RootedTree::make(q)), canonical_form(example_quiver()));
    EXPECT_NE(canonical_form(subspace_quiver(4)), canonical_form(example_quiver()));
}

TEST(QuiverMaps, ComposeAndIdentity) {
    Rng rng(2);
    RootedTree base = example_quiver();
    for (int t = 0; t < 20; ++t) {
        OverQuiver o = random_over_quiver(base, rng);
        EXPECT_TRUE(is_quiver_map(o.tree.quiver(), base.quiver(), o.map));
        EXPECT_EQ(o.map.vertex[o.tree.root()], base.root());
        EXPECT_EQ(compose(identity_map(base.quiver()), o.map), o.map);
        EXPECT_EQ(compose(o.map, identity_map(o.tree.quiver())), o.map);
    }
}

TEST(OverMorphisms, IdentityOnly) {
    RootedTree q = subspace_quiver(3);
    OverQuiver self{q, identity_map(q.quiver())};
    auto maps = over_morphisms(self, self);
    ASSERT_EQ(maps.size(), 1u);
    EXPECT_EQ(maps[0], identity_map(q.quiver()));
}

TEST(OverMorphisms, DoubledArmHasFourEndomorphisms) {
    // two copies of 1 -> s over the arm of A2
    Quiver q("double");
    q.add_vertex("s");
    q.add_vertex("x");
    q.add_vertex("y");
    q.add_arrow("a", 1, 0);
    q.add_arrow("b", 2, 0);
    RootedTree a2 = chain_quiver(2);
    OverQuiver d{RootedTree::make(q), QuiverMap{{1, 0, 0}, {0, 0}}};
    ASSERT_TRUE(is_quiver_map(d.tree.quiver(), a2.quiver(), d.map));
    EXPECT_EQ(over_morphisms(d, d).size(), 4u);
}

TEST(Format, RoundTrip) {
    for (const auto& t : {subspace_quiver(4), example_quiver(), chain_quiver(3)}) {
        std::string text = format_quiver(t.quiver());
        Quiver back = parse_quiver(text);
        EXPECT_EQ(back.name(), t.quiver().name());
        EXPECT_TRUE(back.same_shape(t.quiver()));
        EXPECT_EQ(format_quiver(back), text);
    }
}

TEST(Format, ArrowsWithoutSpaces) {
    Quiver q = parse_quiver("quiver q { vertices: x y-z s; arrows: a: x->y-z; b: y-z -> s; }");
    EXPECT_EQ(q.vertex_count(), 3u);
    EXPECT_EQ(q.vertex_name(1), "y-z");
    EXPECT_EQ(q.arrow(0).head, 1u);
}

TEST(Format, ErrorsCarryLocation) {
    try {
        parse_quivers("quiver q {\n  vertices: s x;\n  arrows:\n    a: x -> nowhere;\n}\n", "f.qv");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_EQ(e.col(), 13u);
        EXPECT_NE(std::string(e.what()).find("f.qv:4:13"), std::string::npos);
    }
    EXPECT_THROW(parse_quivers("quiver q { vertices: s s; }"), ParseError);
    EXPECT_THROW(parse_quivers("quiver q { vertices: s x; arrows: a: x -> s; a: s -> x; }"), ParseError);
    EXPECT_THROW(parse_quivers("graph q {}"), ParseError);
}

TEST(Format, DotListsArrows) {
    std::string dot = quiver_dot(example_quiver().quiver());
    EXPECT_NE(dot.find("label=\"b\""), std::string::npos);
    EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
}
