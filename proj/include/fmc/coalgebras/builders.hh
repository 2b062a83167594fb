#ifndef FMC_COALGEBRAS_BUILDERS_HH
#define FMC_COALGEBRAS_BUILDERS_HH

#include <fmc/coalgebras/forest_coalgebra.hh>

#include <span>
#include <string>
#include <vector>

namespace fmc
{
    struct BuildOptions
    {
        /// Refuse to build more carrier elements than this.
        long cap = 100000;
    };

    /// F_k A: nonempty sequences of length <= k under the prefix order; a
    /// relation holds on pairwise comparable sequences whose last elements
    /// are related in A. With `with_equality` this is F^I_k A, where I
    /// relates comparable sequences with equal last elements.
    auto build_ef(const Structure & a, int k, bool with_equality, const BuildOptions & = {}) -> ForestCoalgebra;

    /// The k-unravelling of a pointed Kripke model: labelled paths of length
    /// <= k from the point.
    auto build_modal(const Structure & a, int k, const BuildOptions & = {}) -> ForestCoalgebra;

    /// Sequences of (pebble, element) moves of length <= n, related under
    /// conditions (E) and (P); a finite truncation of the pebbling comonad.
    auto build_pebble_truncated(const Structure & a, int k, int n, bool with_equality,
            const BuildOptions & = {}) -> ForestCoalgebra;

    /// Enough to rebuild the same comonad over another structure.
    struct ComonadSpec
    {
        CoalgebraKind kind = CoalgebraKind::EF;
        int k = 1;
        /// Truncation depth for pebble coalgebras.
        int depth = 1;
        bool with_equality = false;
    };

    auto build(const ComonadSpec & spec, const Structure & a, const BuildOptions & = {}) -> ForestCoalgebra;

    /// Last element of each sequence, endpoint of each path.
    auto counit_map(const ForestCoalgebra & x) -> ElementMap;

    struct Coextension
    {
        ForestCoalgebra target;
        ElementMap map;
    };

    /// f* for a homomorphism f from the carrier of `source` (built by `spec`)
    /// to B: prefixes are mapped pointwise and the result is looked up in the
    /// coalgebra built over B. Throws PreconditionViolated if f is not a
    /// homomorphism (against B with I added when the source carries I).
    auto coextend(const ComonadSpec & spec, const ForestCoalgebra & source, std::span<const int> f,
            const Structure & b) -> Coextension;

    struct LawReport
    {
        std::vector<std::string> failures;
        auto all_hold() const -> bool { return failures.empty(); }
    };

    /// The three comonad laws for f : G A -> B and g : G B -> D:
    /// counit coextends to the identity, counit after f* is f, and
    /// (g . f*)* = g* . f*.
    auto check_laws(const ComonadSpec & spec, const Structure & a, std::span<const int> f, const Structure & b,
            std::span<const int> g, const Structure & d) -> LawReport;
}

#endif
