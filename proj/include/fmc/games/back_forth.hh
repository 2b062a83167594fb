#ifndef FMC_GAMES_BACK_FORTH_HH
#define FMC_GAMES_BACK_FORTH_HH

#include <fmc/coalgebras/forest_coalgebra.hh>
#include <fmc/coalgebras/morphisms.hh>
#include <fmc/logic/fragment.hh>

#include <optional>
#include <set>
#include <utility>

namespace fmc
{
    /// Pairs of branches (x, y), written by their top elements; -1 is the
    /// empty branch ⊥.
    struct BackForthSystem
    {
        std::set<std::pair<int, int>> pairs;
        bool strong = false;
    };

    /// Largest system of equal-height pairs whose chain map ↓x -> ↓y is a
    /// homomorphism (positive, ep) or an isomorphism (full, existential) of
    /// the induced substructures, closed under forth and, for full and
    /// positive, back; pruned to the pairs reachable from (⊥, ⊥) so the
    /// result is strong. None when (⊥, ⊥) is pruned.
    auto back_forth(Mode mode, const ForestCoalgebra & x, const ForestCoalgebra & y)
        -> std::optional<BackForthSystem>;

    /// Checks root pair, compatibility, forth, back where the mode has it,
    /// and downward closure when the system claims to be strong.
    auto check_back_forth(const BackForthSystem & system, Mode mode, const ForestCoalgebra & x,
            const ForestCoalgebra & y) -> CheckResult;
}

#endif
