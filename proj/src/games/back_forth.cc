#include <fmc/games/back_forth.hh>
#include <fmc/errors.hh>

#include <string>
#include <vector>

using std::vector;

namespace fmc
{
    namespace
    {
        auto iso_mode(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Existential;
        }

        /// Pairs are indexed (x + 1) * (|Y| + 1) + (y + 1) so ⊥ is 0.
        class Pairs
        {
            public:
                Pairs(Mode mode, const ForestCoalgebra & x, const ForestCoalgebra & y) :
                    _mode(mode), _x(x), _y(y)
                {
                    for (int e = 0 ; e < x.size() ; ++e)
                        _chain_x.push_back(x.chain(e));
                    for (int e = 0 ; e < y.size() ; ++e)
                        _chain_y.push_back(y.chain(e));
                }

                auto children_x(int e) const -> const vector<int> & { return e == -1 ? _x.roots() : _x.children(e); }
                auto children_y(int e) const -> const vector<int> & { return e == -1 ? _y.roots() : _y.children(e); }
                auto parent_x(int e) const -> int { return e == -1 ? -1 : _x.parent(e); }
                auto parent_y(int e) const -> int { return e == -1 ? -1 : _y.parent(e); }

                /// The chain map condition on tuples through the top pair.
                auto local(int e, int d) const -> bool
                {
                    if (e == -1 || d == -1)
                        return e == d;
                    auto & cx = _chain_x[e];
                    auto & cy = _chain_y[d];
                    int h = int(cx.size());
                    if (int(cy.size()) != h)
                        return false;
                    if (_x.has_pebbles() && _y.has_pebbles() && _x.pebble(e) != _y.pebble(d))
                        return false;
                    auto & a = _x.carrier();
                    auto & b = _y.carrier();
                    bool iso = iso_mode(_mode);
                    for (int r = 0 ; r < a.vocabulary().size() ; ++r) {
                        int m = a.vocabulary().arity(r);
                        vector<int> pick(m, 0), tx(m), ty(m);
                        while (true) {
                            bool top = false;
                            for (int i = 0 ; i < m ; ++i) {
                                tx[i] = cx[pick[i]];
                                ty[i] = cy[pick[i]];
                                top = top || pick[i] == h - 1;
                            }
                            if (top) {
                                bool in_x = a.holds(r, tx);
                                bool in_y = b.holds(r, ty);
                                if ((in_x && ! in_y) || (iso && in_y && ! in_x))
                                    return false;
                            }
                            int i = m - 1;
                            while (i >= 0 && pick[i] == h - 1)
                                pick[i--] = 0;
                            if (i < 0)
                                break;
                            ++pick[i];
                        }
                    }
                    return true;
                }

                auto compatible(int e, int d) const -> bool
                {
                    for (; e != -1 || d != -1 ; e = parent_x(e), d = parent_y(d))
                        if (! local(e, d))
                            return false;
                    return true;
                }

            private:
                Mode _mode;
                const ForestCoalgebra & _x;
                const ForestCoalgebra & _y;
                vector<vector<int>> _chain_x, _chain_y;
        };

        auto has_back(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Positive;
        }
    }

    auto back_forth(Mode mode, const ForestCoalgebra & x, const ForestCoalgebra & y) -> std::optional<BackForthSystem>
    {
        require_same_vocabulary(x.carrier(), y.carrier());
        if (x.kind() != y.kind())
            throw PreconditionViolated("back-and-forth systems need coalgebras of the same kind");
        for (auto * c : { &x, &y }) {
            auto problems = validate_coalgebra(*c);
            if (! problems.empty())
                throw PreconditionViolated("invalid coalgebra: " + problems.front());
        }

        Pairs pairs(mode, x, y);
        int nx = x.size() + 1, ny = y.size() + 1;
        auto index = [&] (int e, int d) { return (e + 1) * ny + (d + 1); };

        // compatible pairs, top-down so each pair only checks its top tuples
        vector<char> alive(std::size_t(nx) * ny, 0);
        alive[index(-1, -1)] = 1;
        for (int e : x.by_height())
            for (int d = 0 ; d < y.size() ; ++d)
                if (y.height(d) == x.height(e) && alive[index(x.parent(e), y.parent(d))] && pairs.local(e, d))
                    alive[index(e, d)] = 1;

        bool changed = true;
        while (changed) {
            changed = false;
            for (int e = -1 ; e < x.size() ; ++e)
                for (int d = -1 ; d < y.size() ; ++d) {
                    if (! alive[index(e, d)])
                        continue;
                    bool fine = true;
                    for (int c : pairs.children_x(e)) {
                        bool matched = false;
                        for (int c2 : pairs.children_y(d))
                            matched = matched || alive[index(c, c2)];
                        fine = fine && matched;
                    }
                    if (fine && has_back(mode))
                        for (int c2 : pairs.children_y(d)) {
                            bool matched = false;
                            for (int c : pairs.children_x(e))
                                matched = matched || alive[index(c, c2)];
                            fine = fine && matched;
                        }
                    if (! fine) {
                        alive[index(e, d)] = 0;
                        changed = true;
                    }
                }
        }
        if (! alive[index(-1, -1)])
            return std::nullopt;

        // keep what is reachable from (⊥, ⊥) through simultaneous covers
        BackForthSystem system;
        system.strong = true;
        vector<std::pair<int, int>> frontier{ { -1, -1 } };
        system.pairs.insert({ -1, -1 });
        while (! frontier.empty()) {
            auto [e, d] = frontier.back();
            frontier.pop_back();
            for (int c : pairs.children_x(e))
                for (int c2 : pairs.children_y(d))
                    if (alive[index(c, c2)] && system.pairs.insert({ c, c2 }).second)
                        frontier.push_back({ c, c2 });
        }
        return system;
    }

    auto check_back_forth(const BackForthSystem & system, Mode mode, const ForestCoalgebra & x,
            const ForestCoalgebra & y) -> CheckResult
    {
        Pairs pairs(mode, x, y);
        auto name_x = [&] (int e) { return e == -1 ? std::string("⊥") : x.carrier().element_name(e); };
        auto name_y = [&] (int d) { return d == -1 ? std::string("⊥") : y.carrier().element_name(d); };
        auto text = [&] (int e, int d) { return "(" + name_x(e) + ", " + name_y(d) + ")"; };

        if (! system.pairs.contains({ -1, -1 }))
            return CheckResult::fail("root pair (⊥, ⊥) missing");
        for (auto [e, d] : system.pairs) {
            if (e < -1 || e >= x.size() || d < -1 || d >= y.size())
                return CheckResult::fail("pair out of range");
            if ((e == -1) != (d == -1) || (e != -1 && x.height(e) != y.height(d)))
                return CheckResult::fail("pair " + text(e, d) + " has unequal heights");
            if (! pairs.compatible(e, d))
                return CheckResult::fail("chain map of " + text(e, d) + " is not a "
                        + (iso_mode(mode) ? "partial isomorphism" : "homomorphism"));
            for (int c : pairs.children_x(e)) {
                bool matched = false;
                for (int c2 : pairs.children_y(d))
                    matched = matched || system.pairs.contains({ c, c2 });
                if (! matched)
                    return CheckResult::fail("forth fails at " + text(e, d) + " for " + name_x(c));
            }
            if (has_back(mode))
                for (int c2 : pairs.children_y(d)) {
                    bool matched = false;
                    for (int c : pairs.children_x(e))
                        matched = matched || system.pairs.contains({ c, c2 });
                    if (! matched)
                        return CheckResult::fail("back fails at " + text(e, d) + " for " + name_y(c2));
                }
            if (system.strong && e != -1 && ! system.pairs.contains({ pairs.parent_x(e), pairs.parent_y(d) }))
                return CheckResult::fail("not strong: predecessor of " + text(e, d) + " missing");
        }
        return CheckResult::pass();
    }
}
