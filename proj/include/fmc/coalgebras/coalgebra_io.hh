#ifndef FMC_COALGEBRAS_COALGEBRA_IO_HH
#define FMC_COALGEBRAS_COALGEBRA_IO_HH

#include <fmc/coalgebras/forest_coalgebra.hh>

#include <istream>
#include <string>
#include <string_view>

namespace fmc
{
    /// The structure format (I permitted) followed by a forest section:
    ///
    ///     forest ef 2
    ///     root [u]
    ///     parent [u,v] [u]
    ///     pebble [(1,u)] 1
    ///
    /// Every element needs exactly one root or parent line.
    auto parse_coalgebra(std::istream & in) -> ForestCoalgebra;
    auto parse_coalgebra(std::string_view text) -> ForestCoalgebra;
    auto read_coalgebra_file(const std::string & path) -> ForestCoalgebra;

    auto serialize(const ForestCoalgebra & x) -> std::string;
}

#endif
