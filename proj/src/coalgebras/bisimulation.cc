#include <fmc/coalgebras/bisimulation.hh>
#include <fmc/coalgebras/builders.hh>
#include <fmc/errors.hh>
#include <fmc/games/game.hh>

#include <map>

using std::optional;
using std::string;
using std::vector;

namespace fmc
{
    auto cofree(const Structure & a, BisimFamily family, int k) -> ForestCoalgebra
    {
        return family == BisimFamily::EFI ? build_ef(a, k, true) : build_modal(a, k);
    }

    namespace
    {
        using Key = vector<std::pair<int, int>>;

        auto key_index(const ForestCoalgebra & x) -> std::map<Key, int>
        {
            std::map<Key, int> index;
            for (int e = 0 ; e < x.size() ; ++e) {
                Key key;
                for (int y : x.chain(e))
                    key.push_back({ x.tag(y), x.counit(y) });
                index.emplace(std::move(key), e);
            }
            return index;
        }

        /// The forest of valid plays under Duplicator's strategy, with the two
        /// projections.
        struct Plays
        {
            vector<int> parent, p, q;
            vector<string> names;
        };

        auto valid_plays(const Game & game, const ForestCoalgebra & x, const ForestCoalgebra & y) -> Plays
        {
            auto index_x = key_index(x);
            auto index_y = key_index(y);
            bool modal = game.spec().family == GameFamily::Modal;
            // Identical structures: copy, so that W is the diagonal.
            bool copy = game.a() == game.b();

            Plays plays;
            vector<Position> positions;
            vector<Key> keys_x, keys_y;
            std::map<std::pair<int, int>, int> seen;

            auto add = [&] (int parent, Position pos, Key kx, Key ky) {
                int ex = index_x.at(kx), ey = index_y.at(ky);
                if (! seen.emplace(std::make_pair(ex, ey), int(plays.p.size())).second)
                    return;
                plays.parent.push_back(parent);
                plays.p.push_back(ex);
                plays.q.push_back(ey);
                plays.names.push_back("(" + x.carrier().element_name(ex) + "|" + y.carrier().element_name(ey) + ")");
                positions.push_back(std::move(pos));
                keys_x.push_back(std::move(kx));
                keys_y.push_back(std::move(ky));
            };

            auto expand = [&] (int parent, const Position & pos, const Key & kx, const Key & ky) {
                for (auto & move : game.legal_moves(pos)) {
                    auto reply = copy ? optional<int>(move.element) : game.duplicator_response(pos, move);
                    if (! reply)
                        throw VerificationFailure("winning strategy has no answer to " + game.describe(move));
                    auto next = game.apply(pos, move, *reply);
                    if (game.stage(next))
                        throw VerificationFailure("winning strategy leaves the winning region");
                    auto [ea, eb] = move.side == Side::A ? Pair{ move.element, *reply } : Pair{ *reply, move.element };
                    int tag = modal ? move.relation : -1;
                    Key cx = kx, cy = ky;
                    cx.push_back({ tag, ea });
                    cy.push_back({ tag, eb });
                    add(parent, std::move(next), std::move(cx), std::move(cy));
                }
            };

            auto start = game.initial();
            if (modal)
                add(-1, start, Key{ { -1, *game.a().point() } }, Key{ { -1, *game.b().point() } });
            else
                expand(-1, start, {}, {});
            for (std::size_t w = 0 ; w < positions.size() ; ++w) {
                auto pos = positions[w];
                auto kx = keys_x[w], ky = keys_y[w];
                expand(int(w), pos, kx, ky);
            }
            return plays;
        }

        /// Relations on chains of the play forest pulled back from `target`
        /// along `map`.
        auto pulled_back(const Plays & plays, const vector<int> & map, const ForestCoalgebra & kind_of,
                const ForestCoalgebra & target) -> ForestCoalgebra
        {
            auto & t = target.carrier();
            auto & vocabulary = t.vocabulary();
            int n = int(plays.parent.size());
            vector<vector<Tuple>> tuples(vocabulary.size());
            for (int w = 0 ; w < n ; ++w) {
                vector<int> chain;
                for (int v = w ; v != -1 ; v = plays.parent[v])
                    chain.insert(chain.begin(), v);
                int h = int(chain.size());
                for (int r = 0 ; r < vocabulary.size() ; ++r) {
                    int m = vocabulary.arity(r);
                    vector<int> pick(m, 0);
                    while (true) {
                        bool top = false;
                        Tuple tuple(m), image(m);
                        for (int i = 0 ; i < m ; ++i) {
                            tuple[i] = chain[pick[i]];
                            image[i] = map[tuple[i]];
                            top = top || pick[i] == h - 1;
                        }
                        if (top && t.holds(r, image))
                            tuples[r].push_back(std::move(tuple));
                        int i = m - 1;
                        while (i >= 0 && pick[i] == h - 1)
                            pick[i--] = 0;
                        if (i < 0)
                            break;
                        ++pick[i];
                    }
                }
            }
            optional<int> point;
            if (kind_of.kind() == CoalgebraKind::Modal && n > 0)
                point = 0;
            Structure carrier{ vocabulary, plays.names, std::move(tuples), point, "W" };
            return ForestCoalgebra{ kind_of.kind(), kind_of.k(), std::move(carrier), plays.parent };
        }

        auto game_family(BisimFamily family) -> GameFamily
        {
            return family == BisimFamily::EFI ? GameFamily::EF : GameFamily::Modal;
        }

        auto check_leg(const char * name, const ElementMap & map, const ForestCoalgebra & from,
                const ForestCoalgebra & to, vector<string> & reasons) -> void
        {
            if (auto r = check_pathwise_embedding(map, from, to) ; ! r)
                reasons.push_back(string(name) + " not a pathwise embedding: " + r.reason);
            else if (auto o = check_open(map, from, to) ; ! o)
                reasons.push_back(string(name) + ": " + o.reason);
        }

        auto check_valid(const char * name, const ForestCoalgebra & z, vector<string> & reasons) -> void
        {
            for (auto & problem : validate_coalgebra(z))
                reasons.push_back(string(name) + " invalid: " + problem);
        }
    }

    auto build_positive_bisim(const Structure & a, const Structure & b, BisimFamily family, int k)
        -> optional<PositiveBisimWitness>
    {
        Game game({ game_family(family), Mode::Positive, k }, a, b);
        if (! game.duplicator_wins())
            return std::nullopt;
        auto x = cofree(a, family, k);
        auto y = cofree(b, family, k);
        auto plays = valid_plays(game, x, y);

        PositiveBisimWitness w{ pulled_back(plays, plays.p, x, x), pulled_back(plays, plays.q, x, y), {}, plays.p, plays.q };
        for (int e = 0 ; e < w.z1.size() ; ++e)
            w.h.push_back(e);
        auto reasons = verify_positive_bisim(w, x, y);
        if (! reasons.empty())
            throw VerificationFailure("constructed positive bisimulation fails: " + reasons.front());
        return w;
    }

    auto build_bisimulation(const Structure & a, const Structure & b, BisimFamily family, int k) -> optional<BisimSpan>
    {
        Game game({ game_family(family), Mode::Full, k }, a, b);
        if (! game.duplicator_wins())
            return std::nullopt;
        auto x = cofree(a, family, k);
        auto y = cofree(b, family, k);
        auto plays = valid_plays(game, x, y);

        BisimSpan span{ pulled_back(plays, plays.p, x, x), plays.p, plays.q };
        auto reasons = verify_bisim(span, x, y);
        if (! reasons.empty())
            throw VerificationFailure("constructed bisimulation fails: " + reasons.front());
        return span;
    }

    auto verify_positive_bisim(const PositiveBisimWitness & w, const ForestCoalgebra & x, const ForestCoalgebra & y)
        -> vector<string>
    {
        vector<string> reasons;
        check_valid("Z1", w.z1, reasons);
        check_valid("Z2", w.z2, reasons);
        if (! check_bijection(w.h, w.z1, w.z2))
            reasons.push_back("h not bijective");
        else if (auto r = check_coalgebra_morphism(w.h, w.z1, w.z2) ; ! r)
            reasons.push_back("h not a coalgebra morphism: " + r.reason);
        check_leg("p", w.p, w.z1, x, reasons);
        check_leg("q", w.q, w.z2, y, reasons);
        return reasons;
    }

    auto verify_bisim(const BisimSpan & s, const ForestCoalgebra & x, const ForestCoalgebra & y) -> vector<string>
    {
        vector<string> reasons;
        check_valid("Z", s.z, reasons);
        check_leg("p", s.p, s.z, x, reasons);
        check_leg("q", s.q, s.z, y, reasons);
        return reasons;
    }

    auto back_forth_from_witness(const PositiveBisimWitness & w) -> BackForthSystem
    {
        BackForthSystem system;
        system.strong = true;
        system.pairs.insert({ -1, -1 });
        for (int m = 0 ; m < w.z1.size() ; ++m)
            system.pairs.insert({ w.p[m], w.q[w.h[m]] });
        return system;
    }
}

namespace fmc
{
    auto cofree_pair(const Structure & a, BisimFamily family, int k) -> CofreePair
    {
        if (family == BisimFamily::Modal) {
            auto m = build_modal(a, k);
            return { m, m };
        }
        return { build_ef(a, k, false), build_ef(a, k, true) };
    }

    auto coalgebra_preserves(Mode mode, const CofreePair & a, const CofreePair & b) -> bool
    {
        switch (mode) {
            case Mode::ExistentialPositive:
                return find_morphism(MorphismKind::Hom, a.plain, b.plain).has_value();
            case Mode::Existential:
                return find_morphism(MorphismKind::Pathwise, a.with_equality, b.with_equality).has_value();
            case Mode::Positive:
            case Mode::Full:
                return back_forth(mode, a.with_equality, b.with_equality).has_value();
        }
        return false;
    }
}
