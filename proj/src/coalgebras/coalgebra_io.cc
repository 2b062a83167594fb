#include <fmc/coalgebras/coalgebra_io.hh>
#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>

#include <fstream>
#include <optional>
#include <sstream>

using std::string;
using std::vector;

namespace fmc
{
    auto parse_coalgebra(std::istream & in) -> ForestCoalgebra
    {
        std::optional<CoalgebraKind> kind;
        int k = 0, forest_line = 0;
        vector<std::pair<vector<string>, int>> lines;

        auto handler = [&] (const vector<string> & tokens, int line) {
            if (tokens[0] == "forest") {
                if (kind)
                    throw ParseError(line, "forest declared twice");
                if (tokens.size() != 3)
                    throw ParseError(line, "expected 'forest <ef|pebble|modal> <k>'");
                kind = parse_coalgebra_kind(tokens[1]);
                if (! kind)
                    throw ParseError(line, "unknown coalgebra kind " + tokens[1]);
                try {
                    k = std::stoi(tokens[2]);
                }
                catch (const std::exception &) {
                    throw ParseError(line, "bad bound " + tokens[2]);
                }
                forest_line = line;
                return true;
            }
            if (tokens[0] == "root" || tokens[0] == "parent" || tokens[0] == "pebble") {
                lines.emplace_back(tokens, line);
                return true;
            }
            return false;
        };

        auto carrier = detail::parse_structure_with(in, StructureParseOptions{ .allow_equality_surrogate = true }, handler);
        if (! kind)
            throw ParseError(forest_line, "missing 'forest' line");

        int n = carrier.size();
        vector<int> parent(n, -2), pebble;
        if (*kind == CoalgebraKind::Pebble)
            pebble.assign(n, 0);

        auto element = [&] (const string & id, int line) {
            auto e = carrier.find_element(id);
            if (! e)
                throw ParseError(line, "undeclared element " + id);
            return *e;
        };

        for (auto & [tokens, line] : lines) {
            auto & keyword = tokens[0];
            if (keyword == "root") {
                if (tokens.size() != 2)
                    throw ParseError(line, "expected 'root <id>'");
                int e = element(tokens[1], line);
                if (parent[e] != -2)
                    throw ParseError(line, "position of " + tokens[1] + " declared twice");
                parent[e] = -1;
            }
            else if (keyword == "parent") {
                if (tokens.size() != 3)
                    throw ParseError(line, "expected 'parent <child> <parent>'");
                int e = element(tokens[1], line);
                if (parent[e] != -2)
                    throw ParseError(line, "position of " + tokens[1] + " declared twice");
                parent[e] = element(tokens[2], line);
            }
            else {
                if (tokens.size() != 3)
                    throw ParseError(line, "expected 'pebble <id> <index>'");
                if (*kind != CoalgebraKind::Pebble)
                    throw ParseError(line, "pebble lines need a pebble forest");
                int e = element(tokens[1], line);
                try {
                    pebble[e] = std::stoi(tokens[2]);
                }
                catch (const std::exception &) {
                    throw ParseError(line, "bad pebble index " + tokens[2]);
                }
            }
        }

        for (int e = 0 ; e < n ; ++e) {
            if (parent[e] == -2)
                throw ParseError(forest_line, "no root or parent line for " + carrier.element_name(e));
            if (! pebble.empty() && pebble[e] == 0)
                throw ParseError(forest_line, "no pebble line for " + carrier.element_name(e));
        }

        try {
            return ForestCoalgebra{ *kind, k, std::move(carrier), std::move(parent), std::move(pebble) };
        }
        catch (const PreconditionViolated & e) {
            throw ParseError(forest_line, e.what());
        }
    }

    auto parse_coalgebra(std::string_view text) -> ForestCoalgebra
    {
        std::istringstream in{ string(text) };
        return parse_coalgebra(in);
    }

    auto read_coalgebra_file(const string & path) -> ForestCoalgebra
    {
        std::ifstream in(path);
        if (! in)
            throw Error("cannot open " + path);
        return parse_coalgebra(in);
    }

    auto serialize(const ForestCoalgebra & x) -> string
    {
        auto & a = x.carrier();
        std::ostringstream out;
        out << serialize(a);
        out << "forest " << to_string(x.kind()) << ' ' << x.k() << '\n';
        for (int e = 0 ; e < x.size() ; ++e) {
            if (x.parent(e) == -1)
                out << "root " << a.element_name(e) << '\n';
            else
                out << "parent " << a.element_name(e) << ' ' << a.element_name(x.parent(e)) << '\n';
        }
        if (x.has_pebbles())
            for (int e = 0 ; e < x.size() ; ++e)
                out << "pebble " << a.element_name(e) << ' ' << x.pebble(e) << '\n';
        return out.str();
    }
}
