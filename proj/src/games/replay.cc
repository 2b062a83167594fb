#include <fmc/games/replay.hh>
#include <fmc/errors.hh>

#include <algorithm>

using std::string;
using std::vector;

namespace fmc
{
    auto Transcript::text() const -> string
    {
        string result;
        for (auto & line : lines)
            result += line + "\n";
        return result;
    }

    Referee::Referee(const Game & game) :
        _game(game), _pos(game.initial())
    {
    }

    auto Referee::finished() const -> bool
    {
        return _spoiler_won || _game.legal_moves(_pos).empty();
    }

    auto Referee::record(const Move & move, std::optional<int> reply) -> vector<string>
    {
        vector<string> lines;
        ++_rounds;
        if (! reply) {
            ++_pos.round;
            lines.push_back("round " + std::to_string(_pos.round) + ": Spoiler plays " + _game.describe(move)
                    + ", Duplicator cannot answer");
            lines.push_back("no response available, Spoiler wins round " + std::to_string(_pos.round));
            _spoiler_won = true;
            return lines;
        }
        Move answer = move;
        answer.side = other(move.side);
        answer.element = *reply;
        _pos = _game.apply(_pos, move, *reply);
        lines.push_back("round " + std::to_string(_pos.round) + ": Spoiler plays " + _game.describe(move)
                + ", Duplicator answers " + _game.describe(answer) + "; position " + _game.describe(_pos));
        if (auto v = _game.violation(_pos)) {
            lines.push_back(*v + ", Spoiler wins round " + std::to_string(_pos.round));
            _spoiler_won = true;
        }
        return lines;
    }

    auto Referee::spoiler_plays(const Move & move) -> vector<string>
    {
        if (finished() || ! _game.is_legal(_pos, move))
            throw PreconditionViolated("illegal move in round " + std::to_string(_pos.round + 1) + ": "
                    + _game.describe(move));
        return record(move, _game.duplicator_response(_pos, move));
    }

    auto Referee::duplicator_answers(const Move & move, int reply) -> vector<string>
    {
        if (finished() || ! _game.is_legal(_pos, move))
            throw PreconditionViolated("illegal move in round " + std::to_string(_pos.round + 1) + ": "
                    + _game.describe(move));
        auto options = _game.replies(_pos, move);
        if (std::find(options.begin(), options.end(), reply) == options.end())
            throw PreconditionViolated("illegal answer in round " + std::to_string(_pos.round + 1));
        return record(move, reply);
    }

    auto Referee::closing_line() const -> string
    {
        return "Duplicator survives " + std::to_string(_rounds) + " round" + (_rounds == 1 ? "" : "s");
    }

    auto replay(const Game & game, std::span<const Move> script) -> Transcript
    {
        Transcript t;
        Referee referee(game);
        for (auto & move : script) {
            for (auto & line : referee.spoiler_plays(move))
                t.lines.push_back(line);
            ++t.rounds_played;
            if (referee.spoiler_won()) {
                t.spoiler_won = true;
                if (game.duplicator_wins())
                    throw VerificationFailure("engine lost a game it was declared to win: " + t.lines.back());
                return t;
            }
        }
        t.lines.push_back(referee.closing_line());
        return t;
    }

    auto parse_move(const Game & game, Side side, const vector<string> & words) -> Move
    {
        auto & s = game.structure(side);
        auto element = [&] (const string & id) {
            auto e = s.find_element(id);
            if (! e)
                throw PreconditionViolated("no element " + id + " in " + (side == Side::A ? string("A") : string("B")));
            return *e;
        };

        Move move;
        move.side = side;
        switch (game.spec().family) {
            case GameFamily::EF:
                if (words.size() != 1)
                    throw PreconditionViolated("expected: move <element>");
                move.element = element(words[0]);
                break;
            case GameFamily::Pebble:
                if (words.size() != 2)
                    throw PreconditionViolated("expected: move <pebble> <element>");
                try {
                    move.pebble = std::stoi(words[0]);
                }
                catch (const std::exception &) {
                    throw PreconditionViolated("bad pebble index " + words[0]);
                }
                if (move.pebble < 1 || move.pebble > game.spec().k)
                    throw PreconditionViolated("pebble index " + words[0] + " outside 1.." + std::to_string(game.spec().k));
                move.element = element(words[1]);
                break;
            case GameFamily::Modal: {
                auto & vocabulary = s.vocabulary();
                if (words.size() == 2) {
                    auto r = vocabulary.find(words[0]);
                    if (! r || vocabulary.arity(*r) != 2)
                        throw PreconditionViolated("no binary relation " + words[0]);
                    move.relation = *r;
                    move.element = element(words[1]);
                }
                else if (words.size() == 1) {
                    vector<int> binary;
                    for (int r = 0 ; r < vocabulary.size() ; ++r)
                        if (vocabulary.arity(r) == 2)
                            binary.push_back(r);
                    if (binary.size() != 1)
                        throw PreconditionViolated("name the relation: move <R> <element>");
                    move.relation = binary[0];
                    move.element = element(words[0]);
                }
                else
                    throw PreconditionViolated("expected: move [<relation>] <element>");
                break;
            }
        }
        return move;
    }
}
