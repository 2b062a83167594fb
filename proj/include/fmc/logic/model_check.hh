#ifndef FMC_LOGIC_MODEL_CHECK_HH
#define FMC_LOGIC_MODEL_CHECK_HH

#include <fmc/core/structure.hh>
#include <fmc/logic/formula.hh>

#include <optional>
#include <vector>

namespace fmc
{
    /// Partial map from variable index to element.
    class Assignment
    {
        public:
            Assignment() = default;

            auto bind(int var, int element) -> Assignment &;
            auto unbind(int var) -> Assignment &;
            auto get(int var) const -> std::optional<int>;
            auto bound(int var) const -> bool { return get(var).has_value(); }
            /// (variable, element) pairs in variable order.
            auto bindings() const -> std::vector<std::pair<int, int>>;

            auto operator== (const Assignment &) const -> bool = default;

        private:
            std::vector<int> _values;
    };

    /// Tarskian satisfaction. A modal formula is evaluated at the element
    /// bound to x1, or at the point when x1 is unbound. Throws
    /// PreconditionViolated for unbound free variables, unknown symbols,
    /// modal formulas over a non-modal vocabulary, or mixed formulas.
    auto model_check(const Formula & f, const Structure & a, const Assignment & alpha = {}) -> bool;

    /// Kripke satisfaction of a modal formula at a world.
    auto holds_at(const Formula & f, const Structure & a, int world) -> bool;

    /// First-order translation with `var` free; the bound variables
    /// alternate between `var` and `var + 1`, so at most two are used.
    auto standard_translation(const Formula & modal, int var = 1) -> Formula;
}

#endif
