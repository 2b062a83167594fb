#include <fmc/games/distinguish.hh>
#include <fmc/errors.hh>
#include <fmc/logic/formula_io.hh>
#include <fmc/logic/model_check.hh>

using std::string;
using std::vector;

namespace fmc
{
    namespace
    {
        auto iso_mode(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Existential;
        }

        /// (variable, pair) for every pair in play.
        auto variables(const Game & game, const Position & pos) -> vector<std::pair<int, Pair>>
        {
            vector<std::pair<int, Pair>> result;
            if (game.spec().family == GameFamily::Pebble) {
                for (std::size_t j = 0 ; j < pos.pebbles.size() ; ++j)
                    if (pos.pebbles[j])
                        result.push_back({ int(j) + 1, *pos.pebbles[j] });
            }
            else
                for (std::size_t i = 0 ; i < pos.played.size() ; ++i)
                    result.push_back({ int(i) + 1, pos.played[i] });
            return result;
        }

        /// A literal true of the A side and false of the B side.
        auto violated_literal(const Game & game, const Position & pos) -> Formula
        {
            auto & a = game.a();
            auto & b = game.b();
            bool iso = iso_mode(game.spec().mode);
            auto & vocabulary = a.vocabulary();

            if (game.spec().family == GameFamily::Modal) {
                auto [wa, wb] = pos.played.back();
                for (int r = 0 ; r < vocabulary.size() ; ++r) {
                    if (vocabulary.arity(r) != 1)
                        continue;
                    bool in_a = a.holds(r, { wa });
                    bool in_b = b.holds(r, { wb });
                    if (in_a && ! in_b)
                        return Formula::prop(vocabulary.name(r));
                    if (iso && in_b && ! in_a)
                        return Formula::neg_prop(vocabulary.name(r));
                }
                throw VerificationFailure("no violated literal at a dead modal position");
            }

            auto vars = variables(game, pos);
            int n = int(vars.size());
            for (int i = 0 ; i < n ; ++i)
                for (int j = i + 1 ; j < n ; ++j) {
                    auto [x, p] = vars[i];
                    auto [y, q] = vars[j];
                    if (p.first == q.first && p.second != q.second)
                        return Formula::eq(x, y);
                    if (iso && p.second == q.second && p.first != q.first)
                        return Formula::neg_eq(x, y);
                }

            for (int r = 0 ; r < vocabulary.size() ; ++r) {
                int m = vocabulary.arity(r);
                if (n == 0)
                    break;
                vector<int> pick(m, 0);
                while (true) {
                    vector<int> ta, tb, xs;
                    for (int p : pick) {
                        xs.push_back(vars[p].first);
                        ta.push_back(vars[p].second.first);
                        tb.push_back(vars[p].second.second);
                    }
                    bool in_a = a.holds(r, ta);
                    bool in_b = b.holds(r, tb);
                    if (in_a && ! in_b)
                        return Formula::atom(vocabulary.name(r), xs);
                    if (iso && in_b && ! in_a)
                        return Formula::neg_atom(vocabulary.name(r), xs);
                    int i = m - 1;
                    while (i >= 0 && pick[i] == n - 1)
                        pick[i--] = 0;
                    if (i < 0)
                        break;
                    ++pick[i];
                }
            }
            throw VerificationFailure("no violated literal at a dead position");
        }

        auto synthesize(const Game & game, const Position & pos) -> Formula
        {
            if (game.violation(pos))
                return violated_literal(game, pos);

            auto move = game.spoiler_move(pos);
            if (! move || ! game.stage(pos))
                throw VerificationFailure("Spoiler has no winning move at a losing position");

            vector<Formula> parts;
            for (int reply : game.replies(pos, *move))
                parts.push_back(synthesize(game, game.apply(pos, *move, reply)));

            bool in_a = move->side == Side::A;
            auto & spec = game.spec();
            if (spec.family == GameFamily::Modal) {
                auto & name = game.a().vocabulary().name(move->relation);
                return in_a ? Formula::diamond(name, Formula::conj(std::move(parts)))
                    : Formula::box(name, Formula::disj(std::move(parts)));
            }
            int var = spec.family == GameFamily::Pebble ? move->pebble : pos.round + 1;
            return in_a ? Formula::exists(var, Formula::conj(std::move(parts)))
                : Formula::forall(var, Formula::disj(std::move(parts)));
        }

        auto satisfied(const Game & game, const Formula & f, const Structure & s) -> bool
        {
            if (game.spec().family == GameFamily::Modal)
                return holds_at(f, s, *s.point());
            return model_check(f, s);
        }
    }

    auto check_distinguisher(const Game & game, const Formula & f) -> CheckResult
    {
        auto & spec = game.spec();
        if (! in_fragment(f, fragment_of(spec)))
            return CheckResult::fail("formula " + to_string(f) + " is outside the fragment");
        if (spec.family == GameFamily::Pebble) {
            auto death = game.stage(game.initial());
            if (death && classify(f).rank > *death)
                return CheckResult::fail("rank exceeds the death stage " + std::to_string(*death));
        }
        if (! free_variables(f).empty())
            return CheckResult::fail("formula has free variables");
        if (! satisfied(game, f, game.a()))
            return CheckResult::fail("formula is false in A");
        if (satisfied(game, f, game.b()))
            return CheckResult::fail("formula is true in B");
        return CheckResult::pass();
    }

    auto distinguish(const Game & game) -> Formula
    {
        if (game.duplicator_wins())
            throw PreconditionViolated("Duplicator wins; there is no distinguishing formula");
        auto f = synthesize(game, game.initial());
        if (auto check = check_distinguisher(game, f) ; ! check)
            throw VerificationFailure("synthesised formula fails verification: " + check.reason);
        return f;
    }
}
