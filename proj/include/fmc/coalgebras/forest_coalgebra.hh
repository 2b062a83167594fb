#ifndef FMC_COALGEBRAS_FOREST_COALGEBRA_HH
#define FMC_COALGEBRAS_FOREST_COALGEBRA_HH

#include <fmc/core/structure.hh>

#include <string>
#include <vector>

namespace fmc
{
    enum class CoalgebraKind
    {
        EF,
        Pebble,
        Modal
    };

    auto to_string(CoalgebraKind) -> std::string;
    auto parse_coalgebra_kind(std::string_view) -> std::optional<CoalgebraKind>;

    /// A structure with a forest order given by parent links. Heights start
    /// at 1 for roots. Pebble coalgebras carry a pebble index per element;
    /// modal ones are trees rooted at the carrier's point.
    ///
    /// Coalgebras produced by the builders also remember, per element, the
    /// base element it sits over (the counit) and a step tag: the pebble
    /// index for pebble sequences, the relation index of the last step for
    /// modal paths (-1 at the root), -1 for EF sequences.
    class ForestCoalgebra
    {
        public:
            ForestCoalgebra() = default;

            /// Throws PreconditionViolated if the parent links are out of range or
            /// cyclic, if pebbles are given for a non-pebble kind (or missing for
            /// a pebble one), or if counit and tag vectors have the wrong length.
            ForestCoalgebra(CoalgebraKind kind, int k, Structure carrier, std::vector<int> parent,
                    std::vector<int> pebble = {}, std::vector<int> counit = {}, std::vector<int> tag = {});

            auto kind() const -> CoalgebraKind { return _kind; }
            auto k() const -> int { return _k; }
            auto carrier() const -> const Structure & { return _carrier; }
            auto size() const -> int { return _carrier.size(); }

            auto parent(int x) const -> int { return _parent[x]; }
            auto parents() const -> const std::vector<int> & { return _parent; }
            auto children(int x) const -> const std::vector<int> & { return _children[x]; }
            auto roots() const -> const std::vector<int> & { return _roots; }
            auto height(int x) const -> int { return _height[x]; }
            auto max_height() const -> int;

            /// ↓x from the root down to x.
            auto chain(int x) const -> std::vector<int>;
            auto leq(int x, int y) const -> bool;
            auto comparable(int x, int y) const -> bool { return leq(x, y) || leq(y, x); }

            /// Elements sorted by height, canonical order within a level.
            auto by_height() const -> const std::vector<int> & { return _by_height; }

            auto has_pebbles() const -> bool { return ! _pebble.empty(); }
            auto pebble(int x) const -> int { return _pebble.empty() ? 0 : _pebble[x]; }
            auto pebbles() const -> const std::vector<int> & { return _pebble; }

            auto has_counit() const -> bool { return ! _counit.empty(); }
            auto counit(int x) const -> int;
            auto counits() const -> const std::vector<int> & { return _counit; }
            auto tag(int x) const -> int { return _tag.empty() ? -1 : _tag[x]; }
            auto tags() const -> const std::vector<int> & { return _tag; }

            /// Forgets counit information, as for a user-supplied coalgebra.
            auto without_origin() const -> ForestCoalgebra;
            auto with_carrier(Structure carrier) const -> ForestCoalgebra;

            auto operator== (const ForestCoalgebra &) const -> bool;

        private:
            CoalgebraKind _kind = CoalgebraKind::EF;
            int _k = 0;
            Structure _carrier;
            std::vector<int> _parent, _pebble, _counit, _tag;
            std::vector<std::vector<int>> _children;
            std::vector<int> _roots, _height, _by_height;
    };

    /// Every violated coalgebra condition, one line each with a witness;
    /// empty when valid.
    auto validate_coalgebra(const ForestCoalgebra & x) -> std::vector<std::string>;
}

#endif
