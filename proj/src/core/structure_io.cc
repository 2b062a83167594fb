#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

using std::string;
using std::string_view;
using std::vector;

namespace fmc
{
    namespace detail
    {
        auto tokenize_line(string_view line) -> vector<string>
        {
            if (auto hash = line.find('#') ; hash != string_view::npos)
                line = line.substr(0, hash);
            vector<string> tokens;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                auto start = i;
                while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                if (i > start)
                    tokens.emplace_back(line.substr(start, i - start));
            }
            return tokens;
        }

        namespace
        {
            auto parse_symbol(const string & token, int line) -> RelationSymbol
            {
                auto slash = token.rfind('/');
                if (slash == string::npos || slash == 0 || slash + 1 == token.size())
                    throw ParseError(line, "expected <name>/<arity>, got '" + token + "'");
                int arity = 0;
                auto digits = string_view(token).substr(slash + 1);
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
                if (ec != std::errc{ } || ptr != digits.data() + digits.size())
                    throw ParseError(line, "bad arity in '" + token + "'");
                if (arity == 0)
                    throw ParseError(line, "arity-0 relation " + token.substr(0, slash) + " is not supported");
                return RelationSymbol{ token.substr(0, slash), arity };
            }
        }

        auto parse_structure_with(std::istream & in, const StructureParseOptions & options,
                const ExtraLineHandler & extra) -> Structure
        {
            std::optional<Vocabulary> vocabulary;
            string name;
            vector<string> elements;
            std::map<string, int> element_index;
            vector<vector<Tuple>> tuples;
            std::optional<int> point;
            bool seen_structure = false;

            string text;
            int line = 0;
            while (std::getline(in, text)) {
                ++line;
                auto tokens = tokenize_line(text);
                if (tokens.empty())
                    continue;
                auto & keyword = tokens[0];

                if (! vocabulary) {
                    if (keyword != "vocab")
                        throw ParseError(line, "expected 'vocab' line first");
                    vector<RelationSymbol> symbols;
                    std::map<string, int> seen;
                    for (std::size_t i = 1 ; i < tokens.size() ; ++i) {
                        auto symbol = parse_symbol(tokens[i], line);
                        if (symbol.name == equality_surrogate && ! options.allow_equality_surrogate)
                            throw ParseError(line, "relation name I is reserved for the equality surrogate");
                        if (! seen.emplace(symbol.name, 1).second)
                            throw ParseError(line, "duplicate relation declaration " + symbol.name);
                        symbols.push_back(std::move(symbol));
                    }
                    vocabulary.emplace(std::move(symbols));
                    tuples.resize(vocabulary->size());
                    continue;
                }

                if (keyword == "structure") {
                    if (tokens.size() != 2)
                        throw ParseError(line, "expected 'structure <name>'");
                    if (seen_structure)
                        throw ParseError(line, "only one structure per file");
                    seen_structure = true;
                    name = tokens[1];
                }
                else if (keyword == "elems") {
                    for (std::size_t i = 1 ; i < tokens.size() ; ++i) {
                        if (! element_index.emplace(tokens[i], int(elements.size())).second)
                            throw ParseError(line, "duplicate element " + tokens[i]);
                        elements.push_back(tokens[i]);
                    }
                }
                else if (keyword == "rel") {
                    if (tokens.size() < 2)
                        throw ParseError(line, "expected 'rel <name> <id> ...'");
                    auto r = vocabulary->find(tokens[1]);
                    if (! r)
                        throw ParseError(line, "undeclared relation " + tokens[1]);
                    if (int(tokens.size()) - 2 != vocabulary->arity(*r))
                        throw ParseError(line, "arity mismatch for " + tokens[1] + ": expected "
                                + std::to_string(vocabulary->arity(*r)) + " elements, got "
                                + std::to_string(tokens.size() - 2));
                    Tuple t;
                    for (std::size_t i = 2 ; i < tokens.size() ; ++i) {
                        auto e = element_index.find(tokens[i]);
                        if (e == element_index.end())
                            throw ParseError(line, "undeclared element " + tokens[i]);
                        t.push_back(e->second);
                    }
                    tuples[*r].push_back(std::move(t));
                }
                else if (keyword == "point") {
                    if (tokens.size() != 2)
                        throw ParseError(line, "expected 'point <id>'");
                    if (point)
                        throw ParseError(line, "point declared twice");
                    auto e = element_index.find(tokens[1]);
                    if (e == element_index.end())
                        throw ParseError(line, "undeclared element " + tokens[1]);
                    point = e->second;
                }
                else if (keyword == "vocab")
                    throw ParseError(line, "vocab declared twice");
                else if (! extra || ! extra(tokens, line))
                    throw ParseError(line, "unknown keyword '" + keyword + "'");
            }

            if (! vocabulary)
                throw ParseError(line, "missing 'vocab' line");
            return Structure{ std::move(*vocabulary), std::move(elements), std::move(tuples), point, name };
        }
    }

    auto parse_structure(std::istream & in, const StructureParseOptions & options) -> Structure
    {
        return detail::parse_structure_with(in, options, nullptr);
    }

    auto parse_structure(string_view text, const StructureParseOptions & options) -> Structure
    {
        std::istringstream in{ string(text) };
        return parse_structure(in, options);
    }

    auto read_structure_file(const string & path, const StructureParseOptions & options) -> Structure
    {
        std::ifstream in(path);
        if (! in)
            throw Error("cannot open " + path);
        return parse_structure(in, options);
    }

    auto serialize(const Structure & a) -> string
    {
        std::ostringstream out;
        out << "vocab";
        for (auto & r : a.vocabulary().relations())
            out << ' ' << r.name << '/' << r.arity;
        out << "\nstructure " << (a.name().empty() ? string("A") : a.name()) << '\n';
        if (a.size() > 0) {
            out << "elems";
            for (auto & e : a.element_names())
                out << ' ' << e;
            out << '\n';
        }
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r)) {
                out << "rel " << a.vocabulary().name(r);
                for (int x : t)
                    out << ' ' << a.element_name(x);
                out << '\n';
            }
        if (a.point())
            out << "point " << a.element_name(*a.point()) << '\n';
        return out.str();
    }
}
