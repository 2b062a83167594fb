#include <fmc/logic/formula_io.hh>
#include <fmc/errors.hh>

#include <cctype>

using std::string;
using std::string_view;
using std::vector;

namespace fmc
{
    namespace
    {
        class Parser
        {
            public:
                explicit Parser(string_view text) : _text(text) { }

                auto parse() -> Formula
                {
                    auto f = parse_disjunction();
                    skip_space();
                    if (_pos != _text.size())
                        fail("unexpected trailing input");
                    return f;
                }

            private:
                string_view _text;
                std::size_t _pos = 0;

                [[noreturn]] auto fail(const string & message) const -> void
                {
                    throw ParseError(1, "column " + std::to_string(_pos + 1) + ": " + message);
                }

                auto skip_space() -> void
                {
                    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                        ++_pos;
                }

                auto peek() -> char
                {
                    skip_space();
                    return _pos < _text.size() ? _text[_pos] : '\0';
                }

                auto accept(string_view token) -> bool
                {
                    skip_space();
                    if (_text.substr(_pos, token.size()) == token) {
                        _pos += token.size();
                        return true;
                    }
                    return false;
                }

                auto expect(string_view token) -> void
                {
                    if (! accept(token))
                        fail("expected '" + string(token) + "'");
                }

                static auto is_ident_start(char c) -> bool
                {
                    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
                }

                static auto is_ident_char(char c) -> bool
                {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                }

                auto identifier() -> string
                {
                    skip_space();
                    auto start = _pos;
                    if (_pos >= _text.size() || ! is_ident_start(_text[_pos]))
                        fail("expected identifier");
                    while (_pos < _text.size() && is_ident_char(_text[_pos]))
                        ++_pos;
                    return string(_text.substr(start, _pos - start));
                }

                static auto variable_index(string_view name) -> int
                {
                    if (name.size() < 2 || name[0] != 'x')
                        return 0;
                    int v = 0;
                    for (std::size_t i = 1 ; i < name.size() ; ++i) {
                        if (! std::isdigit(static_cast<unsigned char>(name[i])))
                            return 0;
                        v = v * 10 + (name[i] - '0');
                        if (v > 1'000'000)
                            return 0;
                    }
                    return v;
                }

                auto variable() -> int
                {
                    auto name = identifier();
                    int v = variable_index(name);
                    if (v < 1)
                        fail("expected variable x<n> with n >= 1, got '" + name + "'");
                    return v;
                }

                // 'E' or 'A' followed by a variable and '.' is a quantifier
                auto looks_like_quantifier() -> bool
                {
                    auto save = _pos;
                    skip_space();
                    bool result = false;
                    if (_pos < _text.size() && (_text[_pos] == 'E' || _text[_pos] == 'A')
                            && _pos + 1 < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos + 1]))) {
                        ++_pos;
                        skip_space();
                        auto start = _pos;
                        while (_pos < _text.size() && is_ident_char(_text[_pos]))
                            ++_pos;
                        result = variable_index(_text.substr(start, _pos - start)) > 0 && peek() == '.';
                    }
                    _pos = save;
                    return result;
                }

                auto parse_disjunction() -> Formula
                {
                    vector<Formula> parts{ parse_conjunction() };
                    while (accept("|"))
                        parts.push_back(parse_conjunction());
                    return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
                }

                auto parse_conjunction() -> Formula
                {
                    vector<Formula> parts{ parse_unary() };
                    while (accept("&"))
                        parts.push_back(parse_unary());
                    return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
                }

                auto parse_unary() -> Formula
                {
                    char c = peek();
                    if (c == '!') {
                        ++_pos;
                        return negate(parse_unary());
                    }
                    if (c == '(') {
                        ++_pos;
                        auto f = parse_disjunction();
                        expect(")");
                        return f;
                    }
                    if (c == '<') {
                        ++_pos;
                        auto r = identifier();
                        expect(">");
                        return Formula::diamond(r, parse_unary());
                    }
                    if (c == '[') {
                        ++_pos;
                        auto r = identifier();
                        expect("]");
                        return Formula::box(r, parse_unary());
                    }
                    if (looks_like_quantifier()) {
                        bool universal = peek() == 'A';
                        ++_pos;
                        int v = variable();
                        expect(".");
                        auto body = parse_unary();
                        return universal ? Formula::forall(v, body) : Formula::exists(v, body);
                    }
                    if (! is_ident_start(c))
                        fail(c == '\0' ? string("unexpected end of formula") : string("unexpected '") + c + "'");

                    auto name = identifier();
                    if (name == "true")
                        return Formula::top();
                    if (name == "false")
                        return Formula::bottom();
                    if (int v = variable_index(name) ; v > 0) {
                        if (accept("!=")) 
                            return Formula::neg_eq(v, variable());
                        if (accept("="))
                            return Formula::eq(v, variable());
                        fail("expected '=' after variable");
                    }
                    if (accept("(")) {
                        vector<int> vars;
                        if (! accept(")")) {
                            do
                                vars.push_back(variable());
                            while (accept(","));
                            expect(")");
                        }
                        if (vars.empty())
                            fail("atoms need at least one argument");
                        return Formula::atom(name, std::move(vars));
                    }
                    return Formula::prop(name);
                }
        };

        auto var_name(int v) -> string
        {
            return "x" + std::to_string(v);
        }

        auto write(const Formula & f, string & out) -> void
        {
            switch (f.kind()) {
                case FormulaKind::True: out += "true"; return;
                case FormulaKind::False: out += "false"; return;
                case FormulaKind::NegAtom: out += '!'; [[fallthrough]];
                case FormulaKind::Atom: {
                    out += f.symbol();
                    out += '(';
                    for (std::size_t i = 0 ; i < f.vars().size() ; ++i) {
                        if (i > 0)
                            out += ',';
                        out += var_name(f.vars()[i]);
                    }
                    out += ')';
                    return;
                }
                case FormulaKind::Eq:
                    out += var_name(f.vars()[0]) + "=" + var_name(f.vars()[1]);
                    return;
                case FormulaKind::NegEq:
                    out += "!(" + var_name(f.vars()[0]) + "=" + var_name(f.vars()[1]) + ")";
                    return;
                case FormulaKind::And:
                case FormulaKind::Or: {
                    out += '(';
                    for (std::size_t i = 0 ; i < f.children().size() ; ++i) {
                        if (i > 0)
                            out += f.kind() == FormulaKind::And ? " & " : " | ";
                        write(f.children()[i], out);
                    }
                    out += ')';
                    return;
                }
                case FormulaKind::Exists:
                case FormulaKind::Forall:
                    out += f.kind() == FormulaKind::Exists ? "E " : "A ";
                    out += var_name(f.bound_var()) + ". ";
                    write(f.body(), out);
                    return;
                case FormulaKind::Prop: out += f.symbol(); return;
                case FormulaKind::NegProp: out += "!" + f.symbol(); return;
                case FormulaKind::Diamond:
                case FormulaKind::Box:
                    out += f.kind() == FormulaKind::Diamond ? "<" : "[";
                    out += f.symbol();
                    out += f.kind() == FormulaKind::Diamond ? "> " : "] ";
                    write(f.body(), out);
                    return;
            }
        }
    }

    auto parse_formula(string_view text) -> Formula
    {
        return Parser{ text }.parse();
    }

    auto to_string(const Formula & f) -> string
    {
        string out;
        write(f, out);
        return out;
    }
}
