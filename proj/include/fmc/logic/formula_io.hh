#ifndef FMC_LOGIC_FORMULA_IO_HH
#define FMC_LOGIC_FORMULA_IO_HH

#include <fmc/logic/formula.hh>

#include <string>
#include <string_view>

namespace fmc
{
    /// Concrete syntax:
    ///
    ///     true | false | R(x1,x2) | x1=x2 | !R(x1,x2) | !(x1=x2) | (f & g) | (f | g)
    ///     | E x1. f | A x1. f | p | !p | <R> f | [R] f
    ///
    /// `!` in front of a compound formula is pushed inwards. Quantifier and
    /// modal bodies bind tightly; parenthesise conjunctions. Throws
    /// ParseError (line 1, column in the message).
    auto parse_formula(std::string_view text) -> Formula;

    auto to_string(const Formula &) -> std::string;
}

#endif
