#include <fmc/games/game.hh>
#include <fmc/errors.hh>

#include <algorithm>
#include <climits>

using std::optional;
using std::span;
using std::string;
using std::vector;

namespace fmc
{
    auto to_string(GameFamily family) -> string
    {
        switch (family) {
            case GameFamily::EF: return "ef";
            case GameFamily::Pebble: return "pebble";
            case GameFamily::Modal: return "modal";
        }
        return "?";
    }

    auto parse_game_family(std::string_view text) -> optional<GameFamily>
    {
        if (text == "ef")
            return GameFamily::EF;
        if (text == "pebble")
            return GameFamily::Pebble;
        if (text == "modal")
            return GameFamily::Modal;
        return std::nullopt;
    }

    auto fragment_of(const GameSpec & spec) -> FragmentSpec
    {
        switch (spec.family) {
            case GameFamily::EF: return { FragmentFamily::QuantifierRank, spec.k, spec.mode };
            case GameFamily::Pebble: return { FragmentFamily::Variables, spec.k, spec.mode };
            case GameFamily::Modal: return { FragmentFamily::ModalDepth, spec.k, spec.mode };
        }
        throw PreconditionViolated("unknown game family");
    }

    auto other(Side s) -> Side
    {
        return s == Side::A ? Side::B : Side::A;
    }

    namespace
    {
        auto iso_mode(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Existential;
        }

        auto both_sides(Mode m) -> bool
        {
            return m == Mode::Full || m == Mode::Positive;
        }

        auto tuple_text(const Structure & s, int r, span<const int> t) -> string
        {
            string result = s.vocabulary().name(r) + "(";
            for (std::size_t i = 0 ; i < t.size() ; ++i)
                result += (i ? "," : "") + s.element_name(t[i]);
            return result + ")";
        }

        constexpr int alive = INT_MAX;
    }

    auto pair_violation(Mode mode, const Structure & a, const Structure & b, span<const Pair> pairs) -> optional<string>
    {
        bool iso = iso_mode(mode);
        for (std::size_t i = 0 ; i < pairs.size() ; ++i)
            for (std::size_t j = i + 1 ; j < pairs.size() ; ++j) {
                if (pairs[i].first == pairs[j].first && pairs[i].second != pairs[j].second)
                    return "functionality violated";
                if (iso && pairs[i].second == pairs[j].second && pairs[i].first != pairs[j].first)
                    return "injectivity violated";
            }

        int n = int(pairs.size());
        auto & vocabulary = a.vocabulary();
        vector<int> ta, tb;
        for (int r = 0 ; r < vocabulary.size() ; ++r) {
            int m = vocabulary.arity(r);
            if (n == 0)
                continue;
            vector<int> pick(m, 0);
            while (true) {
                ta.clear();
                tb.clear();
                for (int p : pick) {
                    ta.push_back(pairs[p].first);
                    tb.push_back(pairs[p].second);
                }
                bool in_a = a.holds(r, ta);
                bool in_b = b.holds(r, tb);
                if (in_a && ! in_b)
                    return "relation " + tuple_text(a, r, ta) + " not preserved";
                if (iso && in_b && ! in_a)
                    return "relation " + tuple_text(b, r, tb) + " not reflected";
                int i = m - 1;
                while (i >= 0 && pick[i] == n - 1)
                    pick[i--] = 0;
                if (i < 0)
                    break;
                ++pick[i];
            }
        }
        return std::nullopt;
    }

    auto world_violation(Mode mode, const Structure & a, const Structure & b, int world_a, int world_b) -> optional<string>
    {
        auto & vocabulary = a.vocabulary();
        for (int r = 0 ; r < vocabulary.size() ; ++r) {
            if (vocabulary.arity(r) != 1)
                continue;
            bool in_a = a.holds(r, { world_a });
            bool in_b = b.holds(r, { world_b });
            if (in_a && ! in_b)
                return vocabulary.name(r) + "(" + a.element_name(world_a) + ") not preserved";
            if (iso_mode(mode) && in_b && ! in_a)
                return vocabulary.name(r) + "(" + b.element_name(world_b) + ") not reflected";
        }
        return std::nullopt;
    }

    Game::Game(GameSpec spec, Structure a, Structure b) :
        _spec(spec), _a(std::move(a)), _b(std::move(b))
    {
        require_same_vocabulary(_a, _b);
        if (_spec.k < 0 || (_spec.family == GameFamily::Pebble && _spec.k < 1))
            throw PreconditionViolated("bad resource bound k = " + std::to_string(_spec.k));
        if (_spec.rounds && (_spec.family != GameFamily::Pebble || *_spec.rounds < 0))
            throw PreconditionViolated("a round bound applies to the pebble game only");

        if (_spec.family == GameFamily::Modal) {
            if (! _a.vocabulary().is_modal())
                throw PreconditionViolated("modal game needs a modal vocabulary");
            if (! _a.point() || ! _b.point())
                throw PreconditionViolated("modal game needs pointed structures");
            for (int r = 0 ; r < _a.vocabulary().size() ; ++r)
                if (_a.vocabulary().arity(r) == 2)
                    _binary.push_back(r);
            _modal_memo.assign(std::size_t(_spec.k + 1) * _a.size() * _b.size(), -1);
        }
        if (_spec.family == GameFamily::Pebble)
            solve_pebbles();
    }

    auto Game::initial() const -> Position
    {
        Position pos;
        if (_spec.family == GameFamily::Modal)
            pos.played.push_back({ *_a.point(), *_b.point() });
        if (_spec.family == GameFamily::Pebble)
            pos.pebbles.assign(_spec.k, std::nullopt);
        return pos;
    }

    auto Game::duplicator_wins() const -> bool
    {
        return winning(initial());
    }

    auto Game::rounds_left(const Position & pos) const -> optional<int>
    {
        if (_spec.family == GameFamily::Pebble) {
            if (! _spec.rounds)
                return std::nullopt;
            return *_spec.rounds - pos.round;
        }
        return _spec.k - pos.round;
    }

    auto Game::pairs(const Position & pos) const -> vector<Pair>
    {
        if (_spec.family == GameFamily::Pebble) {
            vector<Pair> result;
            for (auto & p : pos.pebbles)
                if (p)
                    result.push_back(*p);
            return result;
        }
        return pos.played;
    }

    auto Game::violation(const Position & pos) const -> optional<string>
    {
        if (_spec.family == GameFamily::Modal)
            return world_violation(_spec.mode, _a, _b, pos.played.back().first, pos.played.back().second);
        auto current = pairs(pos);
        return pair_violation(_spec.mode, _a, _b, current);
    }

    auto Game::legal_moves(const Position & pos) const -> vector<Move>
    {
        vector<Move> moves;
        auto left = rounds_left(pos);
        if (left && *left <= 0)
            return moves;
        vector<Side> sides{ Side::A };
        if (both_sides(_spec.mode))
            sides.push_back(Side::B);

        for (auto side : sides) {
            auto & s = structure(side);
            switch (_spec.family) {
                case GameFamily::EF:
                    for (int e = 0 ; e < s.size() ; ++e)
                        moves.push_back({ side, e });
                    break;
                case GameFamily::Pebble:
                    for (int p = 1 ; p <= _spec.k ; ++p)
                        for (int e = 0 ; e < s.size() ; ++e)
                            moves.push_back({ side, e, p });
                    break;
                case GameFamily::Modal: {
                    int world = side == Side::A ? pos.played.back().first : pos.played.back().second;
                    for (int r : _binary)
                        for (int e = 0 ; e < s.size() ; ++e)
                            if (s.holds(r, { world, e }))
                                moves.push_back({ side, e, 0, r });
                    break;
                }
            }
        }
        return moves;
    }

    auto Game::is_legal(const Position & pos, const Move & move) const -> bool
    {
        auto moves = legal_moves(pos);
        return std::find(moves.begin(), moves.end(), move) != moves.end();
    }

    auto Game::replies(const Position & pos, const Move & move) const -> vector<int>
    {
        vector<int> result;
        auto & s = structure(other(move.side));
        if (_spec.family == GameFamily::Modal) {
            int world = move.side == Side::A ? pos.played.back().second : pos.played.back().first;
            for (int e = 0 ; e < s.size() ; ++e)
                if (s.holds(move.relation, { world, e }))
                    result.push_back(e);
            return result;
        }
        for (int e = 0 ; e < s.size() ; ++e)
            result.push_back(e);
        return result;
    }

    auto Game::apply(const Position & pos, const Move & move, int reply) const -> Position
    {
        Position next = pos;
        Pair pair = move.side == Side::A ? Pair{ move.element, reply } : Pair{ reply, move.element };
        if (_spec.family == GameFamily::Pebble)
            next.pebbles[move.pebble - 1] = pair;
        else
            next.played.push_back(pair);
        ++next.round;
        return next;
    }

    auto Game::ef_lose(vector<int> key, int rounds) const -> bool
    {
        int nb = _b.size();
        vector<Pair> current;
        for (int code : key)
            current.push_back({ code / nb, code % nb });
        if (pair_violation(_spec.mode, _a, _b, current))
            return true;
        if (rounds == 0)
            return false;

        auto memo_key = std::make_pair(key, rounds);
        if (auto it = _ef_memo.find(memo_key) ; it != _ef_memo.end())
            return it->second;

        bool lose = false;
        for (auto side : { Side::A, Side::B }) {
            if (side == Side::B && ! both_sides(_spec.mode))
                break;
            auto & s = structure(side);
            auto & t = structure(other(side));
            for (int e = 0 ; e < s.size() && ! lose ; ++e) {
                bool all_replies_lose = true;
                for (int reply = 0 ; reply < t.size() && all_replies_lose ; ++reply) {
                    int code = side == Side::A ? e * nb + reply : reply * nb + e;
                    auto child = key;
                    auto at = std::lower_bound(child.begin(), child.end(), code);
                    if (at == child.end() || *at != code)
                        child.insert(at, code);
                    all_replies_lose = ef_lose(std::move(child), rounds - 1);
                }
                lose = all_replies_lose;
            }
            if (lose)
                break;
        }
        _ef_memo.emplace(std::move(memo_key), lose);
        return lose;
    }

    auto Game::modal_lose(int a, int b, int rounds) const -> bool
    {
        if (world_violation(_spec.mode, _a, _b, a, b))
            return true;
        if (rounds == 0)
            return false;
        auto & slot = _modal_memo[(std::size_t(rounds) * _a.size() + a) * _b.size() + b];
        if (slot != -1)
            return slot;

        bool lose = false;
        for (auto side : { Side::A, Side::B }) {
            if (side == Side::B && ! both_sides(_spec.mode))
                break;
            auto & s = structure(side);
            auto & t = structure(other(side));
            int here = side == Side::A ? a : b;
            int there = side == Side::A ? b : a;
            for (int r : _binary) {
                for (int e = 0 ; e < s.size() && ! lose ; ++e) {
                    if (! s.holds(r, { here, e }))
                        continue;
                    bool all_replies_lose = true;
                    for (int reply = 0 ; reply < t.size() && all_replies_lose ; ++reply)
                        if (t.holds(r, { there, reply }))
                            all_replies_lose = side == Side::A ? modal_lose(e, reply, rounds - 1)
                                : modal_lose(reply, e, rounds - 1);
                    lose = all_replies_lose;
                }
                if (lose)
                    break;
            }
            if (lose)
                break;
        }
        slot = lose;
        return lose;
    }

    auto Game::pebble_code(const Position & pos) const -> long
    {
        long code = 0;
        for (auto & p : pos.pebbles)
            code = code * (long(_a.size()) * _b.size() + 1) + (p ? 1 + p->first * _b.size() + p->second : 0);
        return code;
    }

    auto Game::pebble_decode(long code) const -> Position
    {
        long base = long(_a.size()) * _b.size() + 1;
        Position pos;
        pos.pebbles.assign(_spec.k, std::nullopt);
        for (int j = _spec.k - 1 ; j >= 0 ; --j) {
            long digit = code % base;
            code /= base;
            if (digit)
                pos.pebbles[j] = Pair{ int((digit - 1) / _b.size()), int((digit - 1) % _b.size()) };
        }
        return pos;
    }

    auto Game::solve_pebbles() -> void
    {
        long base = long(_a.size()) * _b.size() + 1;
        long total = 1;
        for (int j = 0 ; j < _spec.k ; ++j) {
            total *= base;
            if (total > (1l << 22))
                throw ResourceLimitExceeded("pebble game has too many placements");
        }
        vector<long> weight(_spec.k);
        long w = 1;
        for (int j = _spec.k - 1 ; j >= 0 ; --j) {
            weight[j] = w;
            w *= base;
        }

        _pebble_stage.assign(total, alive);
        for (long code = 0 ; code < total ; ++code)
            if (violation(pebble_decode(code)))
                _pebble_stage[code] = 0;

        int nb = _b.size();
        for (int s = 1 ; ; ++s) {
            vector<long> dying;
            for (long code = 0 ; code < total ; ++code) {
                if (_pebble_stage[code] != alive)
                    continue;
                bool dies = false;
                for (auto side : { Side::A, Side::B }) {
                    if (side == Side::B && ! both_sides(_spec.mode))
                        break;
                    auto & here = structure(side);
                    auto & there = structure(other(side));
                    for (int j = 0 ; j < _spec.k && ! dies ; ++j) {
                        long digit = (code / weight[j]) % base;
                        long cleared = code - digit * weight[j];
                        for (int e = 0 ; e < here.size() && ! dies ; ++e) {
                            bool all_replies_lose = true;
                            for (int reply = 0 ; reply < there.size() && all_replies_lose ; ++reply) {
                                long pair = side == Side::A ? 1 + long(e) * nb + reply : 1 + long(reply) * nb + e;
                                all_replies_lose = _pebble_stage[cleared + pair * weight[j]] < s;
                            }
                            dies = all_replies_lose;
                        }
                    }
                    if (dies)
                        break;
                }
                if (dies)
                    dying.push_back(code);
            }
            if (dying.empty())
                break;
            for (long code : dying)
                _pebble_stage[code] = s;
        }
    }

    auto Game::stage(const Position & pos) const -> optional<int>
    {
        if (violation(pos))
            return 0;
        switch (_spec.family) {
            case GameFamily::Pebble: {
                int s = _pebble_stage[pebble_code(pos)];
                auto left = rounds_left(pos);
                if (s == alive || (left && s > *left))
                    return std::nullopt;
                return s;
            }
            case GameFamily::EF: {
                vector<int> key;
                for (auto [x, y] : pos.played)
                    key.push_back(x * _b.size() + y);
                std::sort(key.begin(), key.end());
                key.erase(std::unique(key.begin(), key.end()), key.end());
                for (int r = 1 ; r <= *rounds_left(pos) ; ++r)
                    if (ef_lose(key, r))
                        return r;
                return std::nullopt;
            }
            case GameFamily::Modal: {
                auto [x, y] = pos.played.back();
                for (int r = 1 ; r <= *rounds_left(pos) ; ++r)
                    if (modal_lose(x, y, r))
                        return r;
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    auto Game::duplicator_response(const Position & pos, const Move & move) const -> optional<int>
    {
        optional<int> best;
        int best_stage = -1;
        for (int reply : replies(pos, move)) {
            auto s = stage(apply(pos, move, reply));
            if (! s)
                return reply;
            if (*s > best_stage) {
                best_stage = *s;
                best = reply;
            }
        }
        return best;
    }

    auto Game::move_stage(const Position & pos, const Move & move) const -> optional<int>
    {
        int worst = 0;
        for (int reply : replies(pos, move)) {
            auto s = stage(apply(pos, move, reply));
            if (! s)
                return std::nullopt;
            worst = std::max(worst, *s);
        }
        return worst + 1;
    }

    auto Game::spoiler_move(const Position & pos) const -> optional<Move>
    {
        auto moves = legal_moves(pos);
        if (moves.empty())
            return std::nullopt;
        if (! stage(pos))
            return moves.front();
        optional<Move> best;
        int best_stage = alive;
        for (auto & m : moves) {
            auto s = move_stage(pos, m);
            if (s && *s < best_stage) {
                best_stage = *s;
                best = m;
            }
        }
        return best ? best : moves.front();
    }

    auto Game::describe(const Position & pos) const -> string
    {
        auto pair_text = [&] (const Pair & p) { return "(" + _a.element_name(p.first) + "," + _b.element_name(p.second) + ")"; };
        string result = "{";
        if (_spec.family == GameFamily::Pebble) {
            bool first = true;
            for (std::size_t j = 0 ; j < pos.pebbles.size() ; ++j) {
                if (! pos.pebbles[j])
                    continue;
                result += (first ? "" : ", ") + std::to_string(j + 1) + ":" + pair_text(*pos.pebbles[j]);
                first = false;
            }
        }
        else if (_spec.family == GameFamily::Modal)
            result += pair_text(pos.played.back());
        else
            for (std::size_t i = 0 ; i < pos.played.size() ; ++i)
                result += (i ? ", " : "") + pair_text(pos.played[i]);
        return result + "}";
    }

    auto Game::describe(const Move & move) const -> string
    {
        auto & s = structure(move.side);
        string where = move.side == Side::A ? " in A" : " in B";
        switch (_spec.family) {
            case GameFamily::EF: return s.element_name(move.element) + where;
            case GameFamily::Pebble: return "pebble " + std::to_string(move.pebble) + " on " + s.element_name(move.element) + where;
            case GameFamily::Modal: return s.vocabulary().name(move.relation) + ":" + s.element_name(move.element) + where;
        }
        return "?";
    }

    auto Game::stage_table() const -> std::map<string, int>
    {
        std::map<string, int> table;
        for (long code = 0 ; code < long(_pebble_stage.size()) ; ++code)
            if (_pebble_stage[code] != alive)
                table.emplace(describe(pebble_decode(code)), _pebble_stage[code]);
        return table;
    }
}
