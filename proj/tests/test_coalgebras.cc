#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hh"

#include <fmc/coalgebras/bisimulation.hh>
#include <fmc/coalgebras/builders.hh>
#include <fmc/coalgebras/coalgebra_io.hh>
#include <fmc/coalgebras/morphisms.hh>
#include <fmc/coalgebras/paths.hh>
#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>
#include <fmc/games/back_forth.hh>
#include <fmc/games/game.hh>

#include <random>

using namespace fmc;
using std::string;
using std::vector;

namespace
{
    auto read(const string & text) -> Structure { return parse_structure(text); }
    auto edge() -> Structure { return read("vocab E/2\nstructure edge\nelems v w\nrel E v w"); }
    auto loop() -> Structure { return read("vocab E/2\nstructure loop\nelems u\nrel E u u"); }
    auto bare_point() -> Structure { return read("vocab E/2\nelems p\npoint p"); }
    auto loop_point() -> Structure { return read("vocab E/2\nelems q\nrel E q q\npoint q"); }

    auto names(const ForestCoalgebra & x) -> vector<string> { return x.carrier().element_names(); }

    auto all_maps(int n, int m) -> vector<ElementMap>
    {
        vector<ElementMap> maps;
        if (m == 0)
            return n == 0 ? vector<ElementMap>{ ElementMap{} } : maps;
        ElementMap f(n, 0);
        while (true) {
            maps.push_back(f);
            int i = 0;
            while (i < n && ++f[i] == m)
                f[i++] = 0;
            if (i == n)
                return maps;
        }
    }

    auto chain_of(const ForestCoalgebra & x, int e) -> vector<int>
    {
        vector<int> c;
        for ( ; e >= 0 ; e = x.parent(e))
            c.insert(c.begin(), e);
        return c;
    }

    /// Roots to roots, covers to covers, relations (and pebbles) kept.
    auto naive_morphism(const ElementMap & f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> bool
    {
        for (int e = 0 ; e < x.size() ; ++e) {
            if (x.parent(e) < 0 ? y.parent(f[e]) >= 0 : y.parent(f[e]) != f[x.parent(e)])
                return false;
            if (x.pebble(e) != y.pebble(f[e]))
                return false;
        }
        return is_homomorphism(f, x.carrier(), y.carrier());
    }

    /// Injective and relation-reflecting on every branch.
    auto naive_pathwise(const ElementMap & f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> bool
    {
        if (! naive_morphism(f, x, y))
            return false;
        for (int e = 0 ; e < x.size() ; ++e) {
            auto c = chain_of(x, e);
            ElementMap image;
            for (int z : c)
                image.push_back(f[z]);
            auto sub = induced_substructure(x.carrier(), c);
            auto target = induced_substructure(y.carrier(), image);
            std::set<int> distinct(image.begin(), image.end());
            if (distinct.size() != c.size())
                return false;
            // Positions in the induced substructures follow the chain order.
            ElementMap position(c.size());
            for (std::size_t i = 0 ; i < c.size() ; ++i)
                position[i] = int(i);
            if (! is_embedding(position, sub, target))
                return false;
        }
        return true;
    }

    auto naive_open(const ElementMap & f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> bool
    {
        for (int r : y.roots()) {
            bool hit = false;
            for (int s : x.roots())
                hit = hit || f[s] == r;
            if (! hit)
                return false;
        }
        for (int e = 0 ; e < x.size() ; ++e)
            for (int d : y.children(f[e])) {
                bool lifted = false;
                for (int c : x.children(e))
                    lifted = lifted || f[c] == d;
                if (! lifted)
                    return false;
            }
        return true;
    }

    /// X without the leaf `drop`, with the maps out of it restricted.
    auto without_leaf(const ForestCoalgebra & x, int drop) -> std::pair<ForestCoalgebra, ElementMap>
    {
        ElementMap kept, index(x.size(), -1);
        for (int e = 0 ; e < x.size() ; ++e)
            if (e != drop) {
                index[e] = int(kept.size());
                kept.push_back(e);
            }
        vector<int> parent, pebble;
        for (int e : kept) {
            parent.push_back(x.parent(e) < 0 ? -1 : index[x.parent(e)]);
            if (x.has_pebbles())
                pebble.push_back(x.pebble(e));
        }
        return { ForestCoalgebra(x.kind(), x.k(), induced_substructure(x.carrier(), kept), parent, pebble), kept };
    }
}

TEST_CASE("build_ef examples")
{
    auto x = build_ef(loop(), 2, false);
    CHECK(names(x) == vector<string>{ "[u]", "[u,u]" });
    CHECK(x.carrier().tuples(0).size() == 4);

    auto y = build_ef(edge(), 1, false);
    CHECK(names(y) == vector<string>{ "[v]", "[w]" });
    CHECK(y.carrier().tuples(0).empty());

    auto z = build_ef(edge(), 2, true);
    auto i = *z.carrier().vocabulary().find("I");
    for (int e = 0 ; e < z.size() ; ++e)
        CHECK(z.carrier().holds(i, { e, e }));
    CHECK(z.size() == 2 + 4);

    BuildOptions small;
    small.cap = 5;
    CHECK_THROWS_AS(build_ef(edge(), 2, false, small), ResourceLimitExceeded);
}

TEST_CASE("build_modal examples")
{
    CHECK(build_modal(read("vocab E/2\nelems a b\nrel E a b\npoint a"), 2).size() == 2);
    auto l = build_modal(read("vocab E/2\nelems a\nrel E a a\npoint a"), 2);
    CHECK(l.size() == 3);
    CHECK(l.max_height() == 3);
    CHECK(build_modal(read("vocab E/2 P/1\nelems a\npoint a"), 3).size() == 1);
    CHECK_THROWS_AS(build_modal(edge(), 1), PreconditionViolated);
    CHECK_THROWS_AS(build_modal(read("vocab T/3\nelems a\npoint a"), 1), PreconditionViolated);
}

TEST_CASE("build_pebble_truncated examples")
{
    auto x = build_pebble_truncated(loop(), 1, 2, false);
    REQUIRE(names(x) == vector<string>{ "[(1,u)]", "[(1,u),(1,u)]" });
    CHECK_FALSE(x.carrier().holds(0, { 0, 1 }));
    CHECK(x.carrier().holds(0, { 0, 0 }));
    CHECK(x.carrier().holds(0, { 1, 1 }));

    auto y = build_pebble_truncated(edge(), 3, 1, false);
    CHECK(y.size() == 3 * 2);
    for (int e = 0 ; e < y.size() ; ++e)
        CHECK(y.pebble(e) == e / 2 + 1);
}

TEST_CASE("every built coalgebra validates and its counit is a homomorphism")
{
    for (auto & a : testing::graph_corpus(2))
        for (int k = 1 ; k <= 2 ; ++k) {
            for (bool with_i : { false, true }) {
                auto x = build_ef(a, k, with_i);
                CHECK(validate_coalgebra(x).empty());
                CHECK(is_homomorphism(counit_map(x), x.carrier(), with_i ? expand_equality(a) : a));
                auto p = build_pebble_truncated(a, k, 2, with_i);
                CHECK(validate_coalgebra(p).empty());
                CHECK(is_homomorphism(counit_map(p), p.carrier(), with_i ? expand_equality(a) : a));
            }
        }
    for (auto & a : testing::kripke_corpus(2))
        for (int k = 1 ; k <= 3 ; ++k) {
            auto m = build_modal(a, k);
            CHECK(validate_coalgebra(m).empty());
            CHECK(is_homomorphism(counit_map(m), m.carrier(), a));
        }
}

TEST_CASE("counit and coextension")
{
    ComonadSpec spec{ CoalgebraKind::EF, 2 };
    auto x = build(spec, loop());
    CHECK(counit_map(x) == ElementMap{ 0, 0 });
    auto star = coextend(spec, x, counit_map(x), loop());
    CHECK(star.map == ElementMap{ 0, 1 });
    auto e = build(spec, edge());
    CHECK_THROWS_AS(coextend(spec, x, ElementMap{ 0, 0 }, edge()), PreconditionViolated);
}

TEST_CASE("comonad laws exhaustively on small structures")
{
    auto corpus = testing::graph_corpus(2);
    long instances = 0;
    for (auto kind : { CoalgebraKind::EF, CoalgebraKind::Pebble })
        for (int k = 1 ; k <= 2 ; ++k) {
            ComonadSpec spec{ kind, k, 2 };
            for (auto & a : corpus)
                for (auto & b : corpus) {
                    auto ga = build(spec, a);
                    auto gb = build(spec, b);
                    auto eps_a = counit_map(ga);
                    CHECK(coextend(spec, ga, eps_a, a).map.size() == std::size_t(ga.size()));
                    for (auto & f : homomorphisms(ga.carrier(), b, 6)) {
                        auto fs = coextend(spec, ga, f, b);
                        CHECK(validate_coalgebra(fs.target).empty());
                        CHECK(is_homomorphism(fs.map, ga.carrier(), fs.target.carrier()));
                        for (auto & g : homomorphisms(gb.carrier(), a, 3)) {
                            CHECK(check_laws(spec, a, f, b, g, a).all_hold());
                            ++instances;
                        }
                    }
                }
        }
    CHECK(instances > 500);
}

TEST_CASE("validation finds broken conditions")
{
    auto both_roots = ForestCoalgebra(CoalgebraKind::EF, 2, edge(), { -1, -1 });
    auto problems = validate_coalgebra(both_roots);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0] == "(E-bis) violated: v ~ w lie on different branches");

    auto two = read("vocab R/2 S/2\nelems x y\nrel R x y\nrel S x y\npoint x");
    auto modal = ForestCoalgebra(CoalgebraKind::Modal, 1, two, { -1, 0 });
    auto m = validate_coalgebra(modal);
    REQUIRE_FALSE(m.empty());
    CHECK(m[0].find("(M-bis)") != string::npos);

    // Pebble 1 is moved again between the two related elements.
    auto chain = read("vocab E/2\nelems a b c\nrel E a c");
    auto pebbled = ForestCoalgebra(CoalgebraKind::Pebble, 2, chain, { -1, 0, 1 }, { 1, 1, 2 });
    auto p = validate_coalgebra(pebbled);
    REQUIRE_FALSE(p.empty());
    CHECK(p[0].find("(P-bis)") != string::npos);

    auto tall = ForestCoalgebra(CoalgebraKind::EF, 1, read("vocab E/2\nelems a b"), { -1, 0 });
    CHECK_FALSE(validate_coalgebra(tall).empty());
}

TEST_CASE("coalgebra files round trip")
{
    for (auto & x : { build_ef(edge(), 2, true), build_pebble_truncated(loop(), 2, 2, false),
             build_modal(read("vocab E/2 P/1\nelems a b\nrel E a b\nrel E b a\nrel P b\npoint a"), 3) }) {
        auto text = serialize(x);
        auto back = parse_coalgebra(text);
        CHECK(serialize(back) == text);
        CHECK(back == x.without_origin());
    }
    CHECK_THROWS_AS(parse_coalgebra("vocab E/2\nelems a\nforest ef 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coalgebra("vocab E/2\nelems a\nforest ef 1\nroot a\nparent a a\n"), ParseError);
}

TEST_CASE("morphism examples")
{
    auto x = build_ef(edge(), 2, true);
    auto id = ElementMap(x.size());
    for (int e = 0 ; e < x.size() ; ++e)
        id[e] = e;
    auto tags = verify_tags(id, x, x);
    for (auto t : { MorphismTag::Forest, MorphismTag::Hom, MorphismTag::IMorphism, MorphismTag::PathwiseEmbedding,
             MorphismTag::Open, MorphismTag::Bijection })
        CHECK(tags.contains(t));
    for (auto kind : { MorphismKind::Hom, MorphismKind::IMorphism, MorphismKind::Pathwise, MorphismKind::OpenPathwise })
        CHECK(find_morphism(kind, x, x));

    auto hom = find_morphism(MorphismKind::Hom, build_ef(edge(), 2, false), build_ef(loop(), 2, false));
    REQUIRE(hom);
    CHECK(hom->verified.contains(MorphismTag::Hom));
    CHECK_FALSE(find_morphism(MorphismKind::Pathwise, build_ef(edge(), 2, true), build_ef(loop(), 2, true)));
    CHECK_THROWS_AS(find_morphism(MorphismKind::Hom, x, build_modal(loop_point(), 2)), PreconditionViolated);
}

TEST_CASE("morphism search matches brute force")
{
    vector<ForestCoalgebra> small;
    for (auto & a : testing::graph_corpus(2)) {
        small.push_back(build_ef(a, 1, true));
        if (a.size() <= 1)
            small.push_back(build_ef(a, 2, true));
    }
    for (auto & x : small)
        for (auto & y : small) {
            if (x.k() != y.k())
                continue;
            long homs = 0, pathwise = 0, open = 0;
            for (auto & f : all_maps(x.size(), y.size())) {
                bool h = naive_morphism(f, x, y);
                bool p = h && naive_pathwise(f, x, y);
                bool o = p && naive_open(f, x, y);
                homs += h;
                pathwise += p;
                open += o;
                CHECK(bool(check_coalgebra_morphism(f, x, y)) == h);
                if (h)
                    CHECK(bool(check_pathwise_embedding(f, x, y)) == p);
                if (p) {
                    CHECK(bool(check_open(f, x, y)) == o);
                    CHECK(bool(check_open_by_squares(f, x, y)) == o);
                }
            }
            CHECK(long(enumerate_morphisms(MorphismKind::Hom, x, y, 1 << 20).size()) == homs);
            CHECK(long(enumerate_morphisms(MorphismKind::Pathwise, x, y, 1 << 20).size()) == pathwise);
            CHECK(long(enumerate_morphisms(MorphismKind::OpenPathwise, x, y, 1 << 20).size()) == open);
            if (auto w = find_morphism(MorphismKind::OpenPathwise, x, y)) {
                CHECK(w->verified.contains(MorphismTag::Open));
                CHECK(w->verified.contains(MorphismTag::PathwiseEmbedding));
                CHECK(w->verified.contains(MorphismTag::Hom));
            }
        }
}

TEST_CASE("openness is checked node by node")
{
    // [a,E:b] is a leaf sent to [a,E:a], whose cover is lifted only from [a,E:a].
    auto x = build_modal(read("vocab E/2\nelems a b\nrel E a a\nrel E a b\npoint a"), 2);
    auto y = build_modal(read("vocab E/2\nelems a\nrel E a a\npoint a"), 2);
    REQUIRE(names(x) == vector<string>{ "[a]", "[a,E:a]", "[a,E:b]", "[a,E:a,E:a]", "[a,E:a,E:b]" });
    auto f = ElementMap{ 0, 1, 1, 2, 2 };
    REQUIRE(check_pathwise_embedding(f, x, y).ok);
    auto lifting = check_open(f, x, y);
    CHECK_FALSE(lifting.ok);
    CHECK(lifting.reason == "open violated at [a,E:b]: cover [a,E:a,E:a] is not lifted");
    CHECK_FALSE(check_open_by_squares(f, x, y).ok);

    for (auto & a : testing::kripke_corpus(2))
        for (auto & b : testing::kripke_corpus(2)) {
            auto mx = build_modal(a, 2), my = build_modal(b, 2);
            if (mx.size() > 5 || my.size() > 5)
                continue;
            long open = 0;
            for (auto & g : all_maps(mx.size(), my.size()))
                if (naive_pathwise(g, mx, my) && naive_open(g, mx, my)) {
                    ++open;
                    CHECK(check_open(g, mx, my).ok);
                }
                else if (check_pathwise_embedding(g, mx, my).ok) {
                    CHECK_FALSE(check_open(g, mx, my).ok);
                    CHECK_FALSE(check_open_by_squares(g, mx, my).ok);
                }
            CHECK(long(enumerate_morphisms(MorphismKind::OpenPathwise, mx, my, 1 << 20).size()) == open);
        }
}

TEST_CASE("path trees")
{
    auto t = path_tree(build_ef(edge(), 1, false));
    CHECK(t.chains.size() == 3);
    CHECK(t.children[0] == vector<int>{ 1, 2 });

    auto x = build_ef(loop(), 2, false);
    auto tx = path_tree(x);
    vector<int> id(tx.chains.size());
    for (std::size_t i = 0 ; i < id.size() ; ++i)
        id[i] = int(i);
    CHECK(is_p_morphism(id, tx, tx).ok);
    // Both nodes of the 2-chain sent to the root: the cover is not kept.
    CHECK_THROWS_AS(is_p_morphism(vector{ 0, 1, 1 }, tx, tx), PreconditionViolated);

    for (auto & a : testing::graph_corpus(2))
        CHECK(path_tree_matches_forest(build_ef(a, 2, true)));
    CHECK(forests_isomorphic(vector{ -1, 0, 0 }, vector{ 1, -1, 1 }));
    CHECK_FALSE(forests_isomorphic(vector{ -1, 0, 1 }, vector{ -1, 0, 0 }));
}

TEST_CASE("quotients are the maps surjective on paths")
{
    auto x = build_ef(edge(), 1, false);
    auto y = build_ef(loop(), 1, false);
    CHECK(is_quotient(vector{ 0, 0 }, x, y));
    auto two = build_ef(loop(), 2, false);
    CHECK_FALSE(is_quotient(vector{ 0 }, y, two));
}

TEST_CASE("X° factorisation")
{
    auto x = build_ef(loop(), 2, true);
    auto same = factor_xo(vector{ 0, 1 }, x, x);
    CHECK(same.xo.carrier() == x.carrier());

    auto bare = ForestCoalgebra(CoalgebraKind::EF, 2, read("vocab E/2\nelems v w"), { -1, 0 });
    auto target = build_ef(loop(), 2, false);
    auto fx = factor_xo(vector{ 0, 1 }, bare, target);
    CHECK(fx.xo.carrier().tuples(0).size() == 4);
    CHECK(validate_coalgebra(fx.xo).empty());

    std::mt19937 rng(3);
    auto corpus = testing::graph_corpus(2);
    for (auto kind : { CoalgebraKind::EF, CoalgebraKind::Pebble })
        for (auto & a : corpus)
            for (auto & b : corpus) {
                ComonadSpec spec{ kind, 2, 2 };
                auto ga = build(spec, a);
                auto gb = build(spec, b);
                for (auto & f : enumerate_morphisms(MorphismKind::Hom, ga, gb, 3)) {
                    auto xo = factor_xo(f, ga, gb);
                    CHECK(validate_coalgebra(xo.xo).empty());
                    CHECK(check_coalgebra_morphism(xo.e, ga, xo.xo).ok);
                    CHECK(check_pathwise_embedding(xo.g, xo.xo, gb).ok);
                    for (int e = 0 ; e < ga.size() ; ++e)
                        CHECK(xo.g[xo.e[e]] == f[e]);
                    auto pa = path_tree(ga);
                    auto pe = path_map(xo.e, ga, pa, path_tree(xo.xo));
                    for (std::size_t i = 0 ; i < pe.size() ; ++i)
                        CHECK(pe[i] == int(i));
                }
            }
}

TEST_CASE("positive bisimulation examples")
{
    auto a = read("vocab E/2\nelems a b\nrel E a b\nrel E b b");
    auto w = build_positive_bisim(a, a, BisimFamily::EFI, 2);
    REQUIRE(w);
    CHECK(w->z1 == w->z2);
    for (int m = 0 ; m < w->z1.size() ; ++m)
        CHECK(w->h[m] == m);
    CHECK(w->p == w->q);

    auto up = build_positive_bisim(bare_point(), loop_point(), BisimFamily::EFI, 2);
    REQUIRE(up);
    CHECK(up->z1.carrier().tuples(0).size() < up->z2.carrier().tuples(0).size());
    CHECK_FALSE(is_embedding(up->h, up->z1.carrier(), up->z2.carrier()));
    auto x = cofree(bare_point(), BisimFamily::EFI, 2);
    auto y = cofree(loop_point(), BisimFamily::EFI, 2);
    CHECK(verify_positive_bisim(*up, x, y).empty());
    CHECK(check_open(up->p, up->z1, x).ok);
    CHECK(check_open(up->q, up->z2, y).ok);

    CHECK_FALSE(build_positive_bisim(loop_point(), bare_point(), BisimFamily::EFI, 2));

    auto broken = *up;
    broken.h.assign(broken.h.size(), 0);
    auto reasons = verify_positive_bisim(broken, x, y);
    CHECK(std::find(reasons.begin(), reasons.end(), "h not bijective") != reasons.end());
}

TEST_CASE("a span with a missing child is not open")
{
    auto span = build_bisimulation(edge(), edge(), BisimFamily::EFI, 2);
    REQUIRE(span);
    auto x = cofree(edge(), BisimFamily::EFI, 2);
    CHECK(verify_bisim(*span, x, x).empty());
    int leaf = -1;
    for (int e = 0 ; e < span->z.size() && leaf < 0 ; ++e)
        if (span->z.height(e) == 2)
            leaf = e;
    REQUIRE(leaf >= 0);
    auto [z, kept] = without_leaf(span->z, leaf);
    BisimSpan cut{ z, {}, {} };
    for (int e : kept) {
        cut.p.push_back(span->p[e]);
        cut.q.push_back(span->q[e]);
    }
    auto reasons = verify_bisim(cut, x, x);
    REQUIRE_FALSE(reasons.empty());
    CHECK(reasons[0].find("open violated at") != string::npos);
}

TEST_CASE("bisimulations, back-and-forth systems and games agree")
{
    auto graphs = testing::graph_corpus(2);
    for (auto & a : graphs)
        for (auto & b : graphs)
            for (int k = 1 ; k <= 2 ; ++k) {
                auto x = cofree(a, BisimFamily::EFI, k);
                auto y = cofree(b, BisimFamily::EFI, k);
                bool full = Game({ GameFamily::EF, Mode::Full, k }, a, b).duplicator_wins();
                auto span = build_bisimulation(a, b, BisimFamily::EFI, k);
                CHECK(span.has_value() == full);
                if (span)
                    CHECK(verify_bisim(*span, x, y).empty());

                auto w = build_positive_bisim(a, b, BisimFamily::EFI, k);
                auto system = back_forth(Mode::Positive, x, y);
                CHECK(w.has_value() == system.has_value());
                if (w) {
                    auto extracted = back_forth_from_witness(*w);
                    CHECK(check_back_forth(extracted, Mode::Positive, x, y).ok);
                }
            }
    for (auto & a : testing::kripke_corpus(2))
        for (auto & b : testing::kripke_corpus(2)) {
            bool positive = Game({ GameFamily::Modal, Mode::Positive, 2 }, a, b).duplicator_wins();
            CHECK(build_positive_bisim(a, b, BisimFamily::Modal, 2).has_value() == positive);
        }
}

TEST_CASE("I-morphisms")
{
    auto x = build_ef(edge(), 2, true);
    auto y = build_ef(loop(), 2, true);
    // A homomorphism of I-expanded coalgebras keeps I, so it is an I-morphism.
    for (auto & f : enumerate_morphisms(MorphismKind::Hom, x, y, 50))
        CHECK(check_i_morphism(f, x, y).ok);
    auto plain_a = build_ef(edge(), 2, false);
    auto plain_b = build_ef(loop(), 2, false);
    CHECK(find_morphism(MorphismKind::IMorphism, plain_a, plain_b).has_value());
}
