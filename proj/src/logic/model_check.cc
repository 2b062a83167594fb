#include <fmc/logic/model_check.hh>
#include <fmc/errors.hh>

using std::optional;
using std::vector;

namespace fmc
{
    auto Assignment::bind(int var, int element) -> Assignment &
    {
        if (var < 1)
            throw PreconditionViolated("variable indices are positive");
        if (int(_values.size()) <= var)
            _values.resize(var + 1, -1);
        _values[var] = element;
        return *this;
    }

    auto Assignment::unbind(int var) -> Assignment &
    {
        if (var < int(_values.size()))
            _values[var] = -1;
        while (! _values.empty() && _values.back() == -1)
            _values.pop_back();
        return *this;
    }

    auto Assignment::get(int var) const -> optional<int>
    {
        if (var < 0 || var >= int(_values.size()) || _values[var] == -1)
            return std::nullopt;
        return _values[var];
    }

    auto Assignment::bindings() const -> vector<std::pair<int, int>>
    {
        vector<std::pair<int, int>> result;
        for (int v = 0 ; v < int(_values.size()) ; ++v)
            if (_values[v] != -1)
                result.emplace_back(v, _values[v]);
        return result;
    }

    namespace
    {
        class FirstOrderChecker
        {
            public:
                FirstOrderChecker(const Structure & a, const Assignment & alpha) :
                    _a(a)
                {
                    for (auto [v, e] : alpha.bindings()) {
                        if (e < 0 || e >= a.size())
                            throw PreconditionViolated("assignment value outside the universe");
                        set(v, e);
                    }
                }

                auto eval(const Formula & f) -> bool
                {
                    switch (f.kind()) {
                        case FormulaKind::True: return true;
                        case FormulaKind::False: return false;
                        case FormulaKind::Atom: return atom(f);
                        case FormulaKind::NegAtom: return ! atom(f);
                        case FormulaKind::Eq: return value(f.vars()[0]) == value(f.vars()[1]);
                        case FormulaKind::NegEq: return value(f.vars()[0]) != value(f.vars()[1]);
                        case FormulaKind::And:
                            for (auto & c : f.children())
                                if (! eval(c))
                                    return false;
                            return true;
                        case FormulaKind::Or:
                            for (auto & c : f.children())
                                if (eval(c))
                                    return true;
                            return false;
                        case FormulaKind::Exists:
                        case FormulaKind::Forall: {
                            int v = f.bound_var();
                            int saved = raw(v);
                            bool universal = f.kind() == FormulaKind::Forall;
                            bool result = universal;
                            for (int e = 0 ; e < _a.size() ; ++e) {
                                set(v, e);
                                if (eval(f.body()) != universal) {
                                    result = ! universal;
                                    break;
                                }
                            }
                            set(v, saved);
                            return result;
                        }
                        default:
                            throw PreconditionViolated("modal node inside a first-order formula");
                    }
                }

            private:
                const Structure & _a;
                vector<int> _values;
                vector<int> _scratch;

                auto raw(int v) -> int
                {
                    return v < int(_values.size()) ? _values[v] : -1;
                }

                auto set(int v, int e) -> void
                {
                    if (int(_values.size()) <= v)
                        _values.resize(v + 1, -1);
                    _values[v] = e;
                }

                auto value(int v) -> int
                {
                    int e = raw(v);
                    if (e < 0)
                        throw PreconditionViolated("unbound free variable x" + std::to_string(v));
                    return e;
                }

                auto atom(const Formula & f) -> bool
                {
                    auto r = _a.vocabulary().find(f.symbol());
                    if (! r)
                        throw PreconditionViolated("unknown relation " + f.symbol());
                    if (_a.vocabulary().arity(*r) != int(f.vars().size()))
                        throw PreconditionViolated("arity mismatch for " + f.symbol());
                    _scratch.clear();
                    for (int v : f.vars())
                        _scratch.push_back(value(v));
                    return _a.holds(*r, _scratch);
                }
        };

        auto modal_relation(const Structure & a, const std::string & name, int arity) -> int
        {
            auto r = a.vocabulary().find(name);
            if (! r)
                throw PreconditionViolated("unknown relation " + name);
            if (a.vocabulary().arity(*r) != arity)
                throw PreconditionViolated(name + (arity == 1 ? " is not unary" : " is not binary"));
            return *r;
        }
    }

    auto holds_at(const Formula & f, const Structure & a, int world) -> bool
    {
        switch (f.kind()) {
            case FormulaKind::True: return true;
            case FormulaKind::False: return false;
            case FormulaKind::Prop: return a.holds(modal_relation(a, f.symbol(), 1), { world });
            case FormulaKind::NegProp: return ! a.holds(modal_relation(a, f.symbol(), 1), { world });
            case FormulaKind::And:
                for (auto & c : f.children())
                    if (! holds_at(c, a, world))
                        return false;
                return true;
            case FormulaKind::Or:
                for (auto & c : f.children())
                    if (holds_at(c, a, world))
                        return true;
                return false;
            case FormulaKind::Diamond:
            case FormulaKind::Box: {
                int r = modal_relation(a, f.symbol(), 2);
                bool universal = f.kind() == FormulaKind::Box;
                for (int next = 0 ; next < a.size() ; ++next)
                    if (a.holds(r, { world, next }) && holds_at(f.body(), a, next) != universal)
                        return ! universal;
                return universal;
            }
            default:
                throw PreconditionViolated("first-order node inside a modal formula");
        }
    }

    auto model_check(const Formula & f, const Structure & a, const Assignment & alpha) -> bool
    {
        if (has_modal_nodes(f)) {
            if (has_first_order_nodes(f))
                throw PreconditionViolated("formula mixes modal and first-order nodes");
            if (! a.vocabulary().is_modal())
                throw PreconditionViolated("modal formula over a non-modal vocabulary");
            auto world = alpha.get(1);
            if (! world)
                world = a.point();
            if (! world)
                throw PreconditionViolated("modal formula needs a point or a binding for x1");
            return holds_at(f, a, *world);
        }
        return FirstOrderChecker{ a, alpha }.eval(f);
    }

    auto standard_translation(const Formula & f, int var) -> Formula
    {
        if (has_first_order_nodes(f))
            throw PreconditionViolated("standard translation takes a modal formula");

        // x and the other variable of the pair {var, var + 1}
        auto other = [var] (int x) { return x == var ? var + 1 : var; };

        auto go = [&] (auto & self, const Formula & g, int x) -> Formula {
            switch (g.kind()) {
                case FormulaKind::True:
                case FormulaKind::False:
                    return g;
                case FormulaKind::Prop: return Formula::atom(g.symbol(), { x });
                case FormulaKind::NegProp: return Formula::neg_atom(g.symbol(), { x });
                case FormulaKind::And:
                case FormulaKind::Or: {
                    vector<Formula> parts;
                    for (auto & c : g.children())
                        parts.push_back(self(self, c, x));
                    return g.kind() == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
                }
                case FormulaKind::Diamond: {
                    int y = other(x);
                    return Formula::exists(y, Formula::conj({ Formula::atom(g.symbol(), { x, y }), self(self, g.body(), y) }));
                }
                case FormulaKind::Box: {
                    int y = other(x);
                    return Formula::forall(y, Formula::disj({ Formula::neg_atom(g.symbol(), { x, y }), self(self, g.body(), y) }));
                }
                default:
                    throw PreconditionViolated("standard translation takes a modal formula");
            }
        };
        return go(go, f, var);
    }
}
