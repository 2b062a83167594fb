#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hh"

#include <fmc/core/structure.hh>
#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>

#include <random>

using namespace fmc;
using std::vector;

namespace
{
    auto edge() -> Structure { return parse_structure("vocab E/2\nstructure A\nelems v w\nrel E v w"); }
    auto loop() -> Structure { return parse_structure("vocab E/2\nstructure A\nelems u\nrel E u u"); }

    /// All maps A -> B, by counting in base |B|.
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

    auto naive_hom(const ElementMap & f, const Structure & a, const Structure & b) -> bool
    {
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r)) {
                Tuple image;
                for (int x : t)
                    image.push_back(f[x]);
                if (! b.holds(r, image))
                    return false;
            }
        return ! a.point() || ! b.point() || f[*a.point()] == *b.point();
    }
}

TEST_CASE("parse loop and edge")
{
    auto l = loop();
    CHECK(l.size() == 1);
    CHECK(l.holds(0, { 0, 0 }));
    auto e = edge();
    CHECK(e.size() == 2);
    CHECK(e.holds(0, { 0, 1 }));
    CHECK_FALSE(e.holds(0, { 1, 0 }));
    CHECK(e.element_name(1) == "w");
}

TEST_CASE("parse errors carry the line")
{
    try {
        parse_structure("vocab E/2\nstructure A\nelems v\nrel E v w");
        FAIL("accepted an undeclared element");
    }
    catch (const ParseError & e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("undeclared element w") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_structure("vocab E/2 E/1\nelems v"), ParseError);
    CHECK_THROWS_AS(parse_structure("vocab E/2\nelems v\nrel E v"), ParseError);
    CHECK_THROWS_AS(parse_structure("vocab E/0"), ParseError);
    CHECK_THROWS_AS(parse_structure("vocab I/2"), ParseError);
    CHECK_THROWS_AS(parse_structure("elems v"), ParseError);
}

TEST_CASE("comments and empty universe")
{
    auto s = parse_structure("# nothing\nvocab E/2   # one relation\nstructure empty\n");
    CHECK(s.empty());
    CHECK(serialize(s) == "vocab E/2\nstructure empty\n");
}

TEST_CASE("homomorphism examples")
{
    auto e = edge(), l = loop();
    CHECK(is_homomorphism(vector{ 0, 1 }, e, e));
    CHECK(is_homomorphism(vector{ 0, 0 }, e, l));
    CHECK_FALSE(is_homomorphism(vector{ 0 }, l, e));
    CHECK_THROWS_AS(is_homomorphism(vector{ 0 }, l, parse_structure("vocab P/1\nelems u")), VocabularyMismatch);
}

TEST_CASE("embedding examples")
{
    auto e = edge(), l = loop();
    CHECK(is_embedding(vector{ 0, 1 }, e, e));
    CHECK_FALSE(is_embedding(vector{ 0, 0 }, e, l));
    auto path = parse_structure("vocab E/2\nelems a b c\nrel E a b\nrel E b c");
    auto sub = induced_substructure(path, vector{ 1, 2 });
    CHECK(sub.size() == 2);
    CHECK(is_embedding(vector{ 1, 2 }, sub, path));
}

TEST_CASE("gaifman examples")
{
    CHECK(gaifman(loop())[0].empty());
    auto g = gaifman(edge());
    CHECK(g[0] == vector{ 1 });
    CHECK(g[1] == vector{ 0 });
    auto mixed = parse_structure("vocab E/2 P/1\nelems a b c\nrel E a b\nrel P c");
    auto h = gaifman(mixed);
    CHECK(h[0] == vector{ 1 });
    CHECK(h[2].empty());
}

TEST_CASE("equality surrogate")
{
    auto x = expand_equality(edge());
    auto i = *x.vocabulary().find("I");
    CHECK(x.tuples(i) == vector<Tuple>{ { 0, 0 }, { 1, 1 } });
    CHECK(isomorphic(collapse_equality(x), edge()));
    CHECK_THROWS_AS(expand_equality(x), PreconditionViolated);
    CHECK_THROWS_AS(collapse_equality(edge()), PreconditionViolated);

    auto two = parse_structure("vocab E/2 I/2\nelems v w\nrel I v w\nrel E v v\nrel E w v",
            StructureParseOptions{ true });
    auto quotient = collapse_equality(two);
    CHECK(quotient.size() == 1);
    CHECK(quotient.tuples(0) == vector<Tuple>{ { 0, 0 } });
}

TEST_CASE("properties over the small corpus")
{
    auto corpus = testing::graph_corpus(2);
    CHECK(corpus.size() == 13);
    std::mt19937 rng(7);
    for (auto & a : corpus) {
        CHECK(isomorphic(collapse_equality(expand_equality(a)), a));
        CHECK(parse_structure(serialize(a)) == a);
        auto g = gaifman(a);
        for (int x = 0 ; x < a.size() ; ++x)
            for (int y : g[x]) {
                CHECK(x != y);
                CHECK(std::find(g[y].begin(), g[y].end(), x) != g[y].end());
            }
        for (auto & b : corpus) {
            // The backtracking search finds exactly the maps the naive check accepts.
            long expected = 0;
            for (auto & f : all_maps(a.size(), b.size())) {
                bool hom = naive_hom(f, a, b);
                CHECK(is_homomorphism(f, a, b) == hom);
                expected += hom;
                if (is_embedding(f, a, b))
                    CHECK(hom);
            }
            CHECK(long(homomorphisms(a, b, 1000).size()) == expected);
            CHECK(long(homomorphisms(a, b, 1000, unsigned(rng() | 1)).size()) == expected);
        }
    }
}

TEST_CASE("pointed homomorphisms keep the point")
{
    auto a = parse_structure("vocab E/2\nelems a b\nrel E a b\npoint a");
    auto b = parse_structure("vocab E/2\nelems c d\nrel E c d\nrel E d d\npoint d");
    for (auto & f : homomorphisms(a, b, 100))
        CHECK(f[0] == 1);
    CHECK(homomorphisms(a, b, 100).size() == 1);
}
