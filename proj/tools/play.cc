#include "play.hh"

#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>
#include <fmc/games/replay.hh>

#include <string>
#include <vector>

using std::string;
using std::vector;

namespace fmc
{
    namespace
    {
        auto both_sides(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Positive;
        }

        auto side_name(Side s) -> string
        {
            return s == Side::A ? "A" : "B";
        }
    }

    auto run_play(const Game & game, bool human_is_spoiler, std::istream & in, std::ostream & out) -> int
    {
        Referee referee(game);
        Side side = Side::A;
        std::optional<Move> pending;

        auto say = [&] (const vector<string> & lines) {
            for (auto & line : lines)
                out << line << '\n';
        };

        auto finish = [&] {
            if (! referee.spoiler_won())
                out << referee.closing_line() << '\n';
            bool spoiler = referee.spoiler_won();
            out << (spoiler == human_is_spoiler ? "you win" : "engine wins") << '\n';
            return spoiler == human_is_spoiler ? 0 : 1;
        };

        auto engine_spoiler_moves = [&] {
            pending = game.spoiler_move(referee.position());
            if (pending)
                out << "Spoiler plays " << game.describe(*pending) << "; answer with: move <element in "
                    << side_name(other(pending->side)) << ">\n";
        };

        out << "playing " << to_string(game.spec().family) << " game, mode " << to_string(game.spec().mode)
            << ", k = " << game.spec().k << "; you are " << (human_is_spoiler ? "Spoiler" : "Duplicator") << '\n';
        if (referee.finished())
            return finish();
        if (! human_is_spoiler)
            engine_spoiler_moves();

        string line;
        while (out << "> " << std::flush, std::getline(in, line)) {
            auto words = detail::tokenize_line(line);
            if (words.empty())
                continue;
            auto command = words[0];
            vector<string> args(words.begin() + 1, words.end());
            try {
                if (command == "quit")
                    return 2;
                else if (command == "help")
                    out << "commands: move <element> | move <pebble> <element> | move [<R>] <element> (modal) | "
                        "side A|B | status | quit\n";
                else if (command == "status") {
                    auto & pos = referee.position();
                    auto v = game.violation(pos);
                    out << "round " << pos.round << ", position " << game.describe(pos) << ", condition: "
                        << (v ? *v : string("holds")) << ", solver: "
                        << (game.winning(pos) ? "Duplicator wins from here" : "Spoiler wins from here") << '\n';
                }
                else if (command == "side") {
                    if (! human_is_spoiler)
                        out << "only Spoiler chooses a side\n";
                    else if (args.size() != 1 || (args[0] != "A" && args[0] != "B"))
                        out << "usage: side A|B\n";
                    else if (args[0] == "B" && ! both_sides(game.spec().mode))
                        out << "in mode " << to_string(game.spec().mode) << " Spoiler plays only in A\n";
                    else {
                        side = args[0] == "A" ? Side::A : Side::B;
                        out << "playing in " << args[0] << '\n';
                    }
                }
                else if (command == "move") {
                    if (human_is_spoiler) {
                        say(referee.spoiler_plays(parse_move(game, side, args)));
                    }
                    else {
                        if (args.size() != 1)
                            throw PreconditionViolated("expected: move <element>");
                        auto & s = game.structure(other(pending->side));
                        auto e = s.find_element(args[0]);
                        if (! e)
                            throw PreconditionViolated("no element " + args[0] + " in " + side_name(other(pending->side)));
                        say(referee.duplicator_answers(*pending, *e));
                    }
                    if (referee.finished())
                        return finish();
                    if (! human_is_spoiler)
                        engine_spoiler_moves();
                }
                else
                    out << "unknown command " << command << "; try help\n";
            }
            catch (const Error & e) {
                out << "rejected: " << e.what() << '\n';
            }
        }
        return 2;
    }
}
