#ifndef FMC_COALGEBRAS_BISIMULATION_HH
#define FMC_COALGEBRAS_BISIMULATION_HH

#include <fmc/coalgebras/forest_coalgebra.hh>
#include <fmc/games/back_forth.hh>

#include <optional>
#include <string>
#include <vector>

namespace fmc
{
    enum class BisimFamily
    {
        /// EF comonad with the equality surrogate: F^I_k.
        EFI,
        Modal
    };

    /// F^I_k A or the modal unravelling M_k A.
    auto cofree(const Structure & a, BisimFamily family, int k) -> ForestCoalgebra;

    /// Z1 -h-> Z2 over X <-p- Z1, Z2 -q-> Y.
    struct PositiveBisimWitness
    {
        ForestCoalgebra z1, z2;
        ElementMap h, p, q;
    };

    /// A span X <-p- Z -q-> Y.
    struct BisimSpan
    {
        ForestCoalgebra z;
        ElementMap p, q;
    };

    /// Built from the valid plays of Duplicator's winning strategy in the
    /// positive game; none if Duplicator loses. The witness is verified
    /// before it is returned (VerificationFailure otherwise).
    auto build_positive_bisim(const Structure & a, const Structure & b, BisimFamily family, int k)
        -> std::optional<PositiveBisimWitness>;

    /// The same construction from the full game, giving a symmetric span.
    auto build_bisimulation(const Structure & a, const Structure & b, BisimFamily family, int k)
        -> std::optional<BisimSpan>;

    /// Reasons the witness fails; empty when valid.
    auto verify_positive_bisim(const PositiveBisimWitness & w, const ForestCoalgebra & x, const ForestCoalgebra & y)
        -> std::vector<std::string>;
    auto verify_bisim(const BisimSpan & s, const ForestCoalgebra & x, const ForestCoalgebra & y)
        -> std::vector<std::string>;

    /// The cofree coalgebras the coalgebra route compares: F_k A and F^I_k A
    /// for EF, M_k A twice for modal.
    struct CofreePair
    {
        ForestCoalgebra plain;
        ForestCoalgebra with_equality;
    };

    auto cofree_pair(const Structure & a, BisimFamily family, int k) -> CofreePair;

    /// Preservation decided on coalgebras: a homomorphism of the plain
    /// coalgebras (ep), a pathwise embedding (existential), or a positive /
    /// full back-and-forth system (positive / full).
    auto coalgebra_preserves(Mode mode, const CofreePair & a, const CofreePair & b) -> bool;

    /// {(⊥, ⊥)} together with (p(m), q(h(m))) for every m in Z1, marked strong.
    auto back_forth_from_witness(const PositiveBisimWitness & w) -> BackForthSystem;
}

#endif
