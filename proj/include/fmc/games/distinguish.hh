#ifndef FMC_GAMES_DISTINGUISH_HH
#define FMC_GAMES_DISTINGUISH_HH

#include <fmc/coalgebras/morphisms.hh>
#include <fmc/games/game.hh>
#include <fmc/logic/formula.hh>

namespace fmc
{
    /// A sentence of the game's fragment true in A and false in B (modal:
    /// at the points), read off Spoiler's winning strategy. Existential
    /// moves in A become E x / <R>, moves in B become A x / [R]; pebble
    /// games reuse the pebble index as the variable. Verified by model
    /// checking before it is returned. Throws PreconditionViolated when
    /// Duplicator wins and VerificationFailure if the check fails.
    auto distinguish(const Game & game) -> Formula;

    /// Fragment membership, resource bounds (rank at most the death stage
    /// for pebble games), true in A and false in B.
    auto check_distinguisher(const Game & game, const Formula & f) -> CheckResult;
}

#endif
