#ifndef FMC_CORE_STRUCTURE_IO_HH
#define FMC_CORE_STRUCTURE_IO_HH

#include <fmc/core/structure.hh>

#include <functional>
#include <istream>
#include <string>
#include <string_view>

namespace fmc
{
    struct StructureParseOptions
    {
        /// Permit the reserved equality surrogate in the vocabulary line.
        bool allow_equality_surrogate = false;
    };

    /// Reads the line-oriented structure format:
    ///
    ///     vocab E/2 P/1
    ///     structure A
    ///     elems u v
    ///     rel E u v
    ///     point u
    ///
    /// '#' starts a comment. Throws ParseError with the offending line.
    auto parse_structure(std::istream & in, const StructureParseOptions & = {}) -> Structure;
    auto parse_structure(std::string_view text, const StructureParseOptions & = {}) -> Structure;

    auto read_structure_file(const std::string & path, const StructureParseOptions & = {}) -> Structure;

    /// Emits exactly the grammar above, one tuple per rel line.
    auto serialize(const Structure & a) -> std::string;

    namespace detail
    {
        /// Splits on whitespace after stripping a '#' comment.
        auto tokenize_line(std::string_view line) -> std::vector<std::string>;

        /// Receives lines whose keyword the structure grammar does not know,
        /// after the structure itself has been read. Returns false to reject.
        using ExtraLineHandler = std::function<bool (const std::vector<std::string> & tokens, int line)>;

        auto parse_structure_with(std::istream & in, const StructureParseOptions &,
                const ExtraLineHandler & extra) -> Structure;
    }
}

#endif
