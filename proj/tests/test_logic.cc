#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hh"
#include "naive.hh"

#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>
#include <fmc/logic/formula.hh>
#include <fmc/logic/formula_io.hh>
#include <fmc/logic/model_check.hh>
#include <fmc/logic/oracle.hh>

#include <random>

using namespace fmc;
using std::vector;

namespace
{
    auto edge() -> Structure { return parse_structure("vocab E/2\nstructure A\nelems v w\nrel E v w"); }
    auto loop() -> Structure { return parse_structure("vocab E/2\nstructure A\nelems u\nrel E u u"); }
    auto bare_point() -> Structure { return parse_structure("vocab E/2\nelems p\npoint p"); }
    auto loop_point() -> Structure { return parse_structure("vocab E/2\nelems q\nrel E q q\npoint q"); }

    /// Modal formulas over E and P up to the given depth, enumerated
    /// exhaustively from a small grammar.
    auto modal_formulas(int depth) -> vector<Formula>
    {
        vector<Formula> level{ Formula::top(), Formula::bottom(), Formula::prop("P"), Formula::neg_prop("P") };
        if (depth == 0)
            return level;
        auto below = modal_formulas(depth - 1);
        vector<Formula> out = level;
        for (auto & f : below) {
            out.push_back(Formula::diamond("E", f));
            out.push_back(Formula::box("E", f));
            out.push_back(Formula::conj({ Formula::prop("P"), Formula::diamond("E", f) }));
            out.push_back(Formula::disj({ Formula::neg_prop("P"), Formula::box("E", f) }));
        }
        return out;
    }
}

TEST_CASE("classify examples")
{
    auto a = classify(parse_formula("E x1. E x2. (E(x1,x2) & !(x1=x2))"));
    CHECK(a.rank == 2);
    CHECK(a.var_count == 2);
    CHECK(a.existential);
    CHECK_FALSE(a.positive);

    auto b = classify(parse_formula("A x1. E x2. E(x1,x2)"));
    CHECK(b.rank == 2);
    CHECK(b.positive);
    CHECK_FALSE(b.existential);

    auto c = classify(parse_formula("<R> (p & [R] q)"));
    CHECK(c.modal_depth == 2);
    CHECK_FALSE(c.existential);
    CHECK(c.positive);
}

TEST_CASE("parser round trip and errors")
{
    for (auto text : { "E x1. E x2. (E(x1,x2) & !(x1=x2))", "A x1. (E(x1,x1) | x1=x1)", "<E> (P & [E] !P)", "true",
             "E x1. A x2. (!E(x1,x2) | E x1. E(x2,x1))" }) {
        auto f = parse_formula(text);
        CHECK(parse_formula(to_string(f)) == f);
        CHECK(classify(parse_formula(to_string(f))).rank == classify(f).rank);
    }
    CHECK(parse_formula("(a & b) & c") == parse_formula("a & (b & c)"));
    CHECK_THROWS_AS(parse_formula("E y. true"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p & q"), ParseError);
}

TEST_CASE("negation stays in normal form")
{
    auto f = parse_formula("A x1. E x2. (E(x1,x2) & !(x1=x2))");
    auto g = negate(f);
    CHECK(g == parse_formula("E x1. A x2. (!E(x1,x2) | x1=x2)"));
    CHECK(negate(g) == f);
}

TEST_CASE("model checking examples")
{
    CHECK(model_check(parse_formula("E x1. E(x1,x1)"), loop()));
    auto f = parse_formula("E x1. E x2. (E(x1,x2) & !(x1=x2))");
    CHECK(model_check(f, edge()));
    CHECK_FALSE(model_check(f, loop()));

    auto k = parse_structure("vocab R/2 p/1\nelems a b\nrel R a b\nrel p b\npoint a");
    CHECK(holds_at(parse_formula("<R> p"), k, 0));
    CHECK_FALSE(holds_at(parse_formula("[R] !p"), k, 0));
    CHECK_THROWS_AS(model_check(parse_formula("E(x1,x2)"), edge()), PreconditionViolated);
    CHECK_THROWS_AS(model_check(parse_formula("<E> true"), parse_structure("vocab T/3\nelems a")), PreconditionViolated);
}

TEST_CASE("standard translation")
{
    CHECK(standard_translation(parse_formula("p"), 1) == parse_formula("p(x1)"));
    CHECK(standard_translation(parse_formula("<R> p"), 1) == parse_formula("E x2. (R(x1,x2) & p(x2))"));
    CHECK(standard_translation(parse_formula("[R] p"), 1) == parse_formula("A x2. (!R(x1,x2) | p(x2))"));

    auto models = testing::kripke_corpus(2);
    for (auto & f : modal_formulas(2)) {
        auto tr = standard_translation(f, 1);
        CHECK(free_variables(tr).size() <= 1);
        for (auto & m : models)
            for (int w = 0 ; w < m.size() ; ++w) {
                Assignment alpha;
                alpha.bind(1, w);
                CHECK(holds_at(f, m, w) == model_check(tr, m, alpha));
            }
    }
}

TEST_CASE("oracle examples")
{
    FragmentSpec ep{ FragmentFamily::QuantifierRank, 2, Mode::ExistentialPositive };
    CHECK(oracle_preserves(ep, edge(), loop()).preserved);

    FragmentSpec ex{ FragmentFamily::QuantifierRank, 2, Mode::Existential };
    auto v = oracle_preserves(ex, edge(), loop());
    REQUIRE_FALSE(v.preserved);
    REQUIRE(v.witness);
    CHECK(model_check(*v.witness, edge()));
    CHECK_FALSE(model_check(*v.witness, loop()));
    CHECK(in_fragment(*v.witness, ex));

    for (int k = 1 ; k <= 3 ; ++k) {
        FragmentSpec pos{ FragmentFamily::QuantifierRank, k, Mode::Positive };
        CHECK(oracle_preserves(pos, bare_point(), loop_point()).preserved);
    }

    for (auto family : { FragmentFamily::QuantifierRank, FragmentFamily::Variables })
        for (auto mode : all_modes)
            for (int k = 1 ; k <= 2 ; ++k)
                CHECK(oracle_preserves({ family, k, mode }, edge(), edge()).preserved);
}

TEST_CASE("oracle resource cap is an error, not a verdict")
{
    OracleOptions tiny;
    tiny.signature_cap = 3;
    CHECK_THROWS_AS(oracle_preserves({ FragmentFamily::QuantifierRank, 2, Mode::Full }, edge(), loop(), tiny),
            ResourceLimitExceeded);
    CHECK_THROWS_AS(oracle_preserves({ FragmentFamily::ModalDepth, 1, Mode::Full }, edge(), loop()),
            PreconditionViolated);
}

TEST_CASE("rank oracle agrees with the textbook EF game")
{
    auto corpus = testing::graph_corpus(2);
    for (auto & a : corpus)
        for (auto & b : corpus)
            for (int k = 1 ; k <= 2 ; ++k)
                for (auto mode : all_modes) {
                    auto v = oracle_preserves({ FragmentFamily::QuantifierRank, k, mode }, a, b);
                    CHECK(v.preserved == testing::ef_duplicator_wins(mode, a, b, k));
                    if (! v.preserved) {
                        REQUIRE(v.witness);
                        CHECK(model_check(*v.witness, a));
                        CHECK_FALSE(model_check(*v.witness, b));
                        CHECK(in_fragment(*v.witness, { FragmentFamily::QuantifierRank, k, mode }));
                    }
                }
}

TEST_CASE("modal oracle agrees with the textbook modal game")
{
    auto corpus = testing::kripke_corpus(2);
    for (auto & a : corpus)
        for (auto & b : corpus)
            for (int k = 1 ; k <= 2 ; ++k)
                for (auto mode : all_modes) {
                    auto v = oracle_preserves({ FragmentFamily::ModalDepth, k, mode }, a, b);
                    CHECK(v.preserved == testing::modal_duplicator_wins(mode, a, b, 0, 0, k));
                    if (! v.preserved) {
                        REQUIRE(v.witness);
                        CHECK(holds_at(*v.witness, a, 0));
                        CHECK_FALSE(holds_at(*v.witness, b, 0));
                    }
                }
}

TEST_CASE("variable oracle: monotone, transitive and sound")
{
    auto corpus = testing::graph_corpus(2);
    std::mt19937 rng(11);
    for (auto mode : all_modes)
        for (int t = 0 ; t < 60 ; ++t) {
            auto & a = corpus[rng() % corpus.size()];
            auto & b = corpus[rng() % corpus.size()];
            auto & c = corpus[rng() % corpus.size()];
            for (auto family : { FragmentFamily::QuantifierRank, FragmentFamily::Variables }) {
                auto ab = oracle_preserves({ family, 2, mode }, a, b).preserved;
                auto bc = oracle_preserves({ family, 2, mode }, b, c).preserved;
                auto ac = oracle_preserves({ family, 2, mode }, a, c);
                if (ab && bc)
                    CHECK(ac.preserved);
                if (! ac.preserved) {
                    CHECK(model_check(*ac.witness, a));
                    CHECK_FALSE(model_check(*ac.witness, c));
                    CHECK(in_fragment(*ac.witness, { family, 2, mode }));
                }
                // More resources preserve less.
                if (ac.preserved)
                    CHECK(oracle_preserves({ family, 1, mode }, a, c).preserved);
                for (auto weaker : all_modes)
                    if (ac.preserved && mode_implies(mode, weaker))
                        CHECK(oracle_preserves({ family, 2, weaker }, a, c).preserved);
            }
        }
}

TEST_CASE("signatures depend only on their free variables")
{
    auto a = parse_structure("vocab E/2\nelems a b c\nrel E a b\nrel E b c\nrel E c c");
    auto b = parse_structure("vocab E/2\nelems a b\nrel E a b\nrel E b a");
    vector<Signature> trace;
    OracleOptions options;
    options.trace = &trace;
    oracle_preserves({ FragmentFamily::Variables, 2, Mode::Full }, a, b, options);
    REQUIRE_FALSE(trace.empty());
    for (auto & s : trace) {
        if (s.vars != 2)
            continue;
        auto free = free_variables(s.formula);
        for (auto [side, size, table] : { std::tuple{ &a, a.size(), &s.truth_a }, std::tuple{ &b, b.size(), &s.truth_b } }) {
            REQUIRE(table->size() == std::size_t(size * size));
            for (int x1 = 0 ; x1 < size ; ++x1)
                for (int x2 = 0 ; x2 < size ; ++x2) {
                    Assignment alpha;
                    alpha.bind(1, x1).bind(2, x2);
                    // The recorded formula realises the table.
                    CHECK((*table)[x1 * size + x2] == model_check(s.formula, *side, alpha));
                    if (! free.contains(2))
                        CHECK((*table)[x1 * size + x2] == (*table)[x1 * size]);
                    if (! free.contains(1))
                        CHECK((*table)[x1 * size + x2] == (*table)[x2]);
                }
        }
    }
}
