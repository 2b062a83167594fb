#ifndef FMC_TOOLS_PLAY_HH
#define FMC_TOOLS_PLAY_HH

#include <fmc/games/game.hh>

#include <istream>
#include <ostream>

namespace fmc
{
    /// Line-oriented game against the engine. The human takes `human`'s
    /// role; commands are `move ...`, `side A|B`, `status`, `help`, `quit`.
    /// Returns 0 if the human won, 1 if the engine won, 2 on quit.
    auto run_play(const Game & game, bool human_is_spoiler, std::istream & in, std::ostream & out) -> int;
}

#endif
