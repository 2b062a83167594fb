#ifndef FMC_LOGIC_FORMULA_HH
#define FMC_LOGIC_FORMULA_HH

#include <fmc/logic/fragment.hh>

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fmc
{
    enum class FormulaKind
    {
        True,
        False,
        Atom,
        Eq,
        NegAtom,
        NegEq,
        And,
        Or,
        Exists,
        Forall,
        Prop,
        NegProp,
        Diamond,
        Box
    };

    /// Immutable formula in negation normal form. Copies share structure.
    ///
    /// Variables are positive integers (x1, x2, ...). Atoms name their
    /// relation symbol; props and modalities name unary and binary symbols
    /// of a modal vocabulary. And/Or are n-ary, flattened on construction.
    class Formula
    {
        public:
            static auto top() -> Formula;
            static auto bottom() -> Formula;
            static auto atom(std::string relation, std::vector<int> vars) -> Formula;
            static auto neg_atom(std::string relation, std::vector<int> vars) -> Formula;
            static auto eq(int x, int y) -> Formula;
            static auto neg_eq(int x, int y) -> Formula;

            /// Flattens nested conjunctions, drops `true` conjuncts and
            /// syntactic duplicates; empty conjunction is `true`.
            static auto conj(std::vector<Formula> parts) -> Formula;
            /// Dual of conj; empty disjunction is `false`.
            static auto disj(std::vector<Formula> parts) -> Formula;

            static auto exists(int var, Formula body) -> Formula;
            static auto forall(int var, Formula body) -> Formula;
            static auto prop(std::string symbol) -> Formula;
            static auto neg_prop(std::string symbol) -> Formula;
            static auto diamond(std::string relation, Formula body) -> Formula;
            static auto box(std::string relation, Formula body) -> Formula;

            auto kind() const -> FormulaKind;
            /// Relation / proposition / modality symbol, empty otherwise.
            auto symbol() const -> const std::string &;
            /// Atom arguments, the two sides of an equality, or the bound
            /// variable of a quantifier.
            auto vars() const -> const std::vector<int> &;
            auto bound_var() const -> int { return vars().front(); }
            auto children() const -> const std::vector<Formula> &;
            auto body() const -> const Formula & { return children().front(); }

            auto operator== (const Formula & other) const -> bool;
            auto operator< (const Formula & other) const -> bool;

        private:
            struct Node;
            explicit Formula(std::shared_ptr<const Node>);
            std::shared_ptr<const Node> _node;
    };

    /// Negation pushed to the literals (dualising connectives, quantifiers
    /// and modalities).
    auto negate(const Formula &) -> Formula;

    auto free_variables(const Formula &) -> std::set<int>;
    auto all_variables(const Formula &) -> std::set<int>;

    /// Prop/Diamond/Box present and no first-order node.
    auto is_modal_formula(const Formula &) -> bool;
    auto has_modal_nodes(const Formula &) -> bool;
    auto has_first_order_nodes(const Formula &) -> bool;

    auto size(const Formula &) -> long;

    struct Classification
    {
        int rank = 0;
        int var_count = 0;
        std::optional<int> modal_depth;
        bool full = true;
        bool existential = true;
        bool positive = true;
        bool existential_positive = true;

        auto in(Mode m) const -> bool;
    };

    auto classify(const Formula &) -> Classification;

    /// True if the formula lies in the fragment (family bound and mode).
    /// Sentences only are checked for free variables for first-order
    /// families; modal fragments take modal formulas.
    auto in_fragment(const Formula &, const FragmentSpec &) -> bool;
}

#endif
