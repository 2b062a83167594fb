#ifndef FMC_GAMES_GAME_HH
#define FMC_GAMES_GAME_HH

#include <fmc/core/structure.hh>
#include <fmc/logic/fragment.hh>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fmc
{
    enum class GameFamily
    {
        EF,
        Pebble,
        Modal
    };

    auto to_string(GameFamily) -> std::string;
    auto parse_game_family(std::string_view) -> std::optional<GameFamily>;

    struct GameSpec
    {
        GameFamily family = GameFamily::EF;
        Mode mode = Mode::Full;
        /// Rounds for EF and modal games, pebbles for the pebble game.
        int k = 1;
        /// Pebble only: play this many rounds instead of forever.
        std::optional<int> rounds;
    };

    /// The logic fragment whose preservation the game characterises.
    auto fragment_of(const GameSpec & spec) -> FragmentSpec;

    enum class Side
    {
        A,
        B
    };

    auto other(Side s) -> Side;

    struct Move
    {
        Side side = Side::A;
        int element = 0;
        /// Pebble game: 1..k.
        int pebble = 0;
        /// Modal game: index of the binary relation followed.
        int relation = -1;

        auto operator== (const Move &) const -> bool = default;
    };

    using Pair = std::pair<int, int>;

    struct Position
    {
        /// EF: chosen pairs in order. Modal: the current worlds along the play,
        /// starting with the two points.
        std::vector<Pair> played;
        /// Pebble: placement of pebbles 1..k.
        std::vector<std::optional<Pair>> pebbles;
        int round = 0;
    };

    /// First violated clause of the mode's winning condition on a set of
    /// pairs: "functionality violated", "injectivity violated", "relation
    /// E(v,w) not preserved", "relation E(u,u) not reflected".
    auto pair_violation(Mode mode, const Structure & a, const Structure & b, std::span<const Pair> pairs)
        -> std::optional<std::string>;

    /// The modal condition at a pair of worlds: "P(a) not preserved",
    /// "P(b) not reflected".
    auto world_violation(Mode mode, const Structure & a, const Structure & b, int world_a, int world_b)
        -> std::optional<std::string>;

    /// A solved game. EF and modal games are solved by backward induction
    /// with memoisation (EF positions keyed by their set of pairs); the
    /// pebble game by a greatest fixpoint over all placements. Strategies
    /// are read off positionally. Memo tables fill lazily, so one instance
    /// should not be shared between threads.
    class Game
    {
        public:
            /// Throws VocabularyMismatch, and PreconditionViolated for modal games
            /// without points or modal vocabulary, or k < 1.
            Game(GameSpec spec, Structure a, Structure b);

            auto spec() const -> const GameSpec & { return _spec; }
            auto a() const -> const Structure & { return _a; }
            auto b() const -> const Structure & { return _b; }
            auto structure(Side s) const -> const Structure & { return s == Side::A ? _a : _b; }

            auto duplicator_wins() const -> bool;

            auto initial() const -> Position;
            /// Rounds still to play; none for the unbounded pebble game.
            auto rounds_left(const Position & pos) const -> std::optional<int>;
            auto violation(const Position & pos) const -> std::optional<std::string>;

            /// Spoiler's legal moves in canonical order (side A first, then by
            /// pebble, relation and element).
            auto legal_moves(const Position & pos) const -> std::vector<Move>;
            auto is_legal(const Position & pos, const Move & move) const -> bool;
            /// Every legal answer of Duplicator, in element order.
            auto replies(const Position & pos, const Move & move) const -> std::vector<int>;
            auto apply(const Position & pos, const Move & move, int reply) const -> Position;

            /// Fewest further rounds in which Spoiler forces a violation (0 if
            /// the condition already fails), or none if Duplicator survives.
            auto stage(const Position & pos) const -> std::optional<int>;
            auto winning(const Position & pos) const -> bool { return ! stage(pos); }

            /// Duplicator's strategy: the first reply keeping a winning position,
            /// else the slowest-losing one; none if no reply exists.
            auto duplicator_response(const Position & pos, const Move & move) const -> std::optional<int>;
            /// Spoiler's strategy: the move with the lowest stage, ties broken
            /// canonically; the first legal move when Duplicator is winning.
            auto spoiler_move(const Position & pos) const -> std::optional<Move>;

            /// Current pairs as text, e.g. "{(v,u), (w,u)}".
            auto describe(const Position & pos) const -> std::string;
            auto describe(const Move & move) const -> std::string;

            /// Pebble game: death stage of every placement that dies, keyed by
            /// its description.
            auto stage_table() const -> std::map<std::string, int>;

        private:
            auto pairs(const Position & pos) const -> std::vector<Pair>;
            auto ef_lose(std::vector<int> key, int rounds) const -> bool;
            auto modal_lose(int a, int b, int rounds) const -> bool;
            auto pebble_code(const Position & pos) const -> long;
            auto pebble_decode(long code) const -> Position;
            auto solve_pebbles() -> void;
            auto move_stage(const Position & pos, const Move & move) const -> std::optional<int>;

            GameSpec _spec;
            Structure _a, _b;
            std::vector<int> _binary;

            mutable std::map<std::pair<std::vector<int>, int>, bool> _ef_memo;
            mutable std::vector<signed char> _modal_memo;
            std::vector<int> _pebble_stage;
    };
}

#endif
