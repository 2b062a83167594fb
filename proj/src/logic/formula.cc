#include <fmc/logic/formula.hh>
#include <fmc/errors.hh>

#include <algorithm>

using std::make_shared;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace fmc
{
    auto to_string(Mode m) -> string
    {
        switch (m) {
            case Mode::Full: return "full";
            case Mode::Existential: return "existential";
            case Mode::Positive: return "positive";
            case Mode::ExistentialPositive: return "ep";
        }
        return "?";
    }

    auto parse_mode(std::string_view s) -> optional<Mode>
    {
        if (s == "full") return Mode::Full;
        if (s == "existential" || s == "ex") return Mode::Existential;
        if (s == "positive" || s == "pos") return Mode::Positive;
        if (s == "ep" || s == "existential-positive") return Mode::ExistentialPositive;
        return std::nullopt;
    }

    auto to_string(FragmentFamily f) -> string
    {
        switch (f) {
            case FragmentFamily::QuantifierRank: return "FOrank";
            case FragmentFamily::Variables: return "Lvars";
            case FragmentFamily::ModalDepth: return "MLdepth";
        }
        return "?";
    }

    struct Formula::Node
    {
        FormulaKind kind;
        string symbol;
        vector<int> vars;
        vector<Formula> children;
    };

    Formula::Formula(std::shared_ptr<const Node> node) :
        _node(std::move(node))
    {
    }

    namespace
    {
        auto check_var(int v) -> void
        {
            if (v < 1)
                throw PreconditionViolated("variable indices are positive");
        }

        auto compare(const Formula & a, const Formula & b) -> int;

        auto compare_children(const vector<Formula> & a, const vector<Formula> & b) -> int
        {
            for (std::size_t i = 0 ; i < a.size() && i < b.size() ; ++i)
                if (int c = compare(a[i], b[i]) ; c != 0)
                    return c;
            return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
        }

        auto compare(const Formula & a, const Formula & b) -> int
        {
            if (a.kind() != b.kind())
                return a.kind() < b.kind() ? -1 : 1;
            if (int c = a.symbol().compare(b.symbol()) ; c != 0)
                return c < 0 ? -1 : 1;
            if (a.vars() != b.vars())
                return a.vars() < b.vars() ? -1 : 1;
            return compare_children(a.children(), b.children());
        }
    }

    auto Formula::top() -> Formula
    {
        static const Formula t{ make_shared<const Node>(Node{ FormulaKind::True, "", { }, { } }) };
        return t;
    }

    auto Formula::bottom() -> Formula
    {
        static const Formula f{ make_shared<const Node>(Node{ FormulaKind::False, "", { }, { } }) };
        return f;
    }

    auto Formula::atom(string relation, vector<int> vars) -> Formula
    {
        for (int v : vars)
            check_var(v);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Atom, std::move(relation), std::move(vars), { } }) };
    }

    auto Formula::neg_atom(string relation, vector<int> vars) -> Formula
    {
        for (int v : vars)
            check_var(v);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::NegAtom, std::move(relation), std::move(vars), { } }) };
    }

    auto Formula::eq(int x, int y) -> Formula
    {
        check_var(x);
        check_var(y);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Eq, "", { x, y }, { } }) };
    }

    auto Formula::neg_eq(int x, int y) -> Formula
    {
        check_var(x);
        check_var(y);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::NegEq, "", { x, y }, { } }) };
    }

    namespace
    {
        auto junction(FormulaKind kind, vector<Formula> parts) -> vector<Formula>
        {
            auto unit = kind == FormulaKind::And ? FormulaKind::True : FormulaKind::False;
            vector<Formula> flat;
            for (auto & p : parts) {
                if (p.kind() == kind) {
                    for (auto & c : p.children())
                        if (std::find(flat.begin(), flat.end(), c) == flat.end())
                            flat.push_back(c);
                }
                else if (p.kind() != unit && std::find(flat.begin(), flat.end(), p) == flat.end())
                    flat.push_back(p);
            }
            return flat;
        }
    }

    auto Formula::conj(vector<Formula> parts) -> Formula
    {
        auto flat = junction(FormulaKind::And, std::move(parts));
        if (flat.empty())
            return top();
        if (flat.size() == 1)
            return flat.front();
        for (auto & f : flat)
            if (f.kind() == FormulaKind::False)
                return bottom();
        return Formula{ make_shared<const Node>(Node{ FormulaKind::And, "", { }, std::move(flat) }) };
    }

    auto Formula::disj(vector<Formula> parts) -> Formula
    {
        auto flat = junction(FormulaKind::Or, std::move(parts));
        if (flat.empty())
            return bottom();
        if (flat.size() == 1)
            return flat.front();
        for (auto & f : flat)
            if (f.kind() == FormulaKind::True)
                return top();
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Or, "", { }, std::move(flat) }) };
    }

    auto Formula::exists(int var, Formula body) -> Formula
    {
        check_var(var);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Exists, "", { var }, { std::move(body) } }) };
    }

    auto Formula::forall(int var, Formula body) -> Formula
    {
        check_var(var);
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Forall, "", { var }, { std::move(body) } }) };
    }

    auto Formula::prop(string symbol) -> Formula
    {
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Prop, std::move(symbol), { }, { } }) };
    }

    auto Formula::neg_prop(string symbol) -> Formula
    {
        return Formula{ make_shared<const Node>(Node{ FormulaKind::NegProp, std::move(symbol), { }, { } }) };
    }

    auto Formula::diamond(string relation, Formula body) -> Formula
    {
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Diamond, std::move(relation), { }, { std::move(body) } }) };
    }

    auto Formula::box(string relation, Formula body) -> Formula
    {
        return Formula{ make_shared<const Node>(Node{ FormulaKind::Box, std::move(relation), { }, { std::move(body) } }) };
    }

    auto Formula::kind() const -> FormulaKind { return _node->kind; }
    auto Formula::symbol() const -> const string & { return _node->symbol; }
    auto Formula::vars() const -> const vector<int> & { return _node->vars; }
    auto Formula::children() const -> const vector<Formula> & { return _node->children; }

    auto Formula::operator== (const Formula & other) const -> bool
    {
        return _node == other._node || compare(*this, other) == 0;
    }

    auto Formula::operator< (const Formula & other) const -> bool
    {
        return compare(*this, other) < 0;
    }

    auto negate(const Formula & f) -> Formula
    {
        switch (f.kind()) {
            case FormulaKind::True: return Formula::bottom();
            case FormulaKind::False: return Formula::top();
            case FormulaKind::Atom: return Formula::neg_atom(f.symbol(), f.vars());
            case FormulaKind::NegAtom: return Formula::atom(f.symbol(), f.vars());
            case FormulaKind::Eq: return Formula::neg_eq(f.vars()[0], f.vars()[1]);
            case FormulaKind::NegEq: return Formula::eq(f.vars()[0], f.vars()[1]);
            case FormulaKind::Prop: return Formula::neg_prop(f.symbol());
            case FormulaKind::NegProp: return Formula::prop(f.symbol());
            case FormulaKind::Exists: return Formula::forall(f.bound_var(), negate(f.body()));
            case FormulaKind::Forall: return Formula::exists(f.bound_var(), negate(f.body()));
            case FormulaKind::Diamond: return Formula::box(f.symbol(), negate(f.body()));
            case FormulaKind::Box: return Formula::diamond(f.symbol(), negate(f.body()));
            case FormulaKind::And:
            case FormulaKind::Or: {
                vector<Formula> parts;
                for (auto & c : f.children())
                    parts.push_back(negate(c));
                return f.kind() == FormulaKind::And ? Formula::disj(std::move(parts)) : Formula::conj(std::move(parts));
            }
        }
        throw VerificationFailure("unreachable formula kind");
    }

    namespace
    {
        auto collect_free(const Formula & f, set<int> & bound, set<int> & out) -> void
        {
            switch (f.kind()) {
                case FormulaKind::Atom:
                case FormulaKind::NegAtom:
                case FormulaKind::Eq:
                case FormulaKind::NegEq:
                    for (int v : f.vars())
                        if (! bound.contains(v))
                            out.insert(v);
                    break;
                case FormulaKind::Exists:
                case FormulaKind::Forall: {
                    bool fresh = bound.insert(f.bound_var()).second;
                    collect_free(f.body(), bound, out);
                    if (fresh)
                        bound.erase(f.bound_var());
                    break;
                }
                default:
                    for (auto & c : f.children())
                        collect_free(c, bound, out);
            }
        }

        auto collect_all(const Formula & f, set<int> & out) -> void
        {
            for (int v : f.vars())
                out.insert(v);
            for (auto & c : f.children())
                collect_all(c, out);
        }

        auto is_modal_kind(FormulaKind k) -> bool
        {
            return k == FormulaKind::Prop || k == FormulaKind::NegProp || k == FormulaKind::Diamond || k == FormulaKind::Box;
        }

        auto is_first_order_kind(FormulaKind k) -> bool
        {
            switch (k) {
                case FormulaKind::Atom:
                case FormulaKind::NegAtom:
                case FormulaKind::Eq:
                case FormulaKind::NegEq:
                case FormulaKind::Exists:
                case FormulaKind::Forall:
                    return true;
                default:
                    return false;
            }
        }

        template <typename P_>
        auto any_node(const Formula & f, const P_ & p) -> bool
        {
            if (p(f.kind()))
                return true;
            for (auto & c : f.children())
                if (any_node(c, p))
                    return true;
            return false;
        }
    }

    auto free_variables(const Formula & f) -> set<int>
    {
        set<int> bound, out;
        collect_free(f, bound, out);
        return out;
    }

    auto all_variables(const Formula & f) -> set<int>
    {
        set<int> out;
        collect_all(f, out);
        return out;
    }

    auto has_modal_nodes(const Formula & f) -> bool { return any_node(f, is_modal_kind); }
    auto has_first_order_nodes(const Formula & f) -> bool { return any_node(f, is_first_order_kind); }

    auto is_modal_formula(const Formula & f) -> bool
    {
        return ! has_first_order_nodes(f);
    }

    auto size(const Formula & f) -> long
    {
        long result = 1;
        for (auto & c : f.children())
            result += size(c);
        return result;
    }

    auto Classification::in(Mode m) const -> bool
    {
        switch (m) {
            case Mode::Full: return full;
            case Mode::Existential: return existential;
            case Mode::Positive: return positive;
            case Mode::ExistentialPositive: return existential_positive;
        }
        return false;
    }

    namespace
    {
        auto rank_of(const Formula & f) -> int
        {
            int best = 0;
            for (auto & c : f.children())
                best = std::max(best, rank_of(c));
            if (f.kind() == FormulaKind::Exists || f.kind() == FormulaKind::Forall)
                ++best;
            return best;
        }

        auto depth_of(const Formula & f) -> int
        {
            int best = 0;
            for (auto & c : f.children())
                best = std::max(best, depth_of(c));
            if (f.kind() == FormulaKind::Diamond || f.kind() == FormulaKind::Box)
                ++best;
            return best;
        }
    }

    auto classify(const Formula & f) -> Classification
    {
        Classification c;
        c.rank = rank_of(f);
        c.var_count = int(all_variables(f).size());
        if (! has_first_order_nodes(f))
            c.modal_depth = depth_of(f);

        bool universal = any_node(f, [] (FormulaKind k) { return k == FormulaKind::Forall || k == FormulaKind::Box; });
        bool negation = any_node(f, [] (FormulaKind k) {
                return k == FormulaKind::NegAtom || k == FormulaKind::NegEq || k == FormulaKind::NegProp; });
        c.existential = ! universal;
        c.positive = ! negation;
        c.existential_positive = ! universal && ! negation;
        return c;
    }

    auto in_fragment(const Formula & f, const FragmentSpec & spec) -> bool
    {
        auto c = classify(f);
        if (! c.in(spec.mode))
            return false;
        switch (spec.family) {
            case FragmentFamily::QuantifierRank:
                return ! has_modal_nodes(f) && c.rank <= spec.k;
            case FragmentFamily::Variables: {
                if (has_modal_nodes(f))
                    return false;
                for (int v : all_variables(f))
                    if (v > spec.k)
                        return false;
                return true;
            }
            case FragmentFamily::ModalDepth:
                return c.modal_depth && *c.modal_depth <= spec.k;
        }
        return false;
    }
}
