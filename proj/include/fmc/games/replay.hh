#ifndef FMC_GAMES_REPLAY_HH
#define FMC_GAMES_REPLAY_HH

#include <fmc/games/game.hh>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmc
{
    struct Transcript
    {
        std::vector<std::string> lines;
        bool spoiler_won = false;
        int rounds_played = 0;

        auto text() const -> std::string;
    };

    /// Runs one play, keeping score and writing the transcript lines shared
    /// by replay and the interactive REPL.
    class Referee
    {
        public:
            explicit Referee(const Game & game);

            auto position() const -> const Position & { return _pos; }
            auto spoiler_won() const -> bool { return _spoiler_won; }
            /// Spoiler has won, or has no legal move left.
            auto finished() const -> bool;

            /// Spoiler moves and the engine answers with Duplicator's strategy.
            /// Throws PreconditionViolated for an illegal move.
            auto spoiler_plays(const Move & move) -> std::vector<std::string>;
            /// Spoiler moves and Duplicator answers with `reply`. Throws
            /// PreconditionViolated for an illegal move or reply.
            auto duplicator_answers(const Move & move, int reply) -> std::vector<std::string>;

            auto closing_line() const -> std::string;

        private:
            auto record(const Move & move, std::optional<int> reply) -> std::vector<std::string>;

            const Game & _game;
            Position _pos;
            bool _spoiler_won = false;
            int _rounds = 0;
    };

    /// Plays Duplicator's positional strategy against a scripted Spoiler.
    /// Throws PreconditionViolated naming the round of an illegal move, and
    /// VerificationFailure if the engine loses a game it was declared to win.
    auto replay(const Game & game, std::span<const Move> script) -> Transcript;

    /// Parses one Spoiler move from REPL/script words: `v` (EF), `2 v`
    /// (pebble), `E v` or `v` (modal, relation optional when only one binary
    /// relation exists). Element names are looked up on `side`.
    auto parse_move(const Game & game, Side side, const std::vector<std::string> & words) -> Move;
}

#endif
