#ifndef FMC_COALGEBRAS_PATHS_HH
#define FMC_COALGEBRAS_PATHS_HH

#include <fmc/coalgebras/forest_coalgebra.hh>
#include <fmc/coalgebras/morphisms.hh>

#include <span>
#include <vector>

namespace fmc
{
    /// The tree of branches of a coalgebra. Node 0 is the empty branch ⊥;
    /// every other node is an explicit chain root..x of the forest, ordered
    /// by prefix.
    struct PathTree
    {
        std::vector<std::vector<int>> chains;
        std::vector<int> parent;
        std::vector<std::vector<int>> children;
    };

    auto path_tree(const ForestCoalgebra & x) -> PathTree;

    /// Path f: each branch goes to the branch of its image.
    auto path_map(std::span<const int> f, const ForestCoalgebra & x, const PathTree & source,
            const PathTree & target) -> std::vector<int>;

    /// Root kept and covers lifted. Throws PreconditionViolated if t is not
    /// a forest morphism between the trees.
    auto is_p_morphism(std::span<const int> t, const PathTree & source, const PathTree & target) -> CheckResult;

    /// f is a quotient when Path f is surjective.
    auto is_quotient(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> bool;

    /// Whether two forests given by parent links are order-isomorphic.
    auto forests_isomorphic(std::span<const int> parent_a, std::span<const int> parent_b) -> bool;

    /// The path tree with ⊥ removed, compared against the forest itself.
    auto path_tree_matches_forest(const ForestCoalgebra & x) -> bool;

    struct XoFactorization
    {
        /// Same universe, order and pebbles as X; relations pulled back from Y
        /// along f on every branch.
        ForestCoalgebra xo;
        ElementMap e;
        ElementMap g;
    };

    /// f = g . e with e the identity-carried map X -> X° and g a pathwise
    /// embedding X° -> Y. Throws PreconditionViolated if f is not a
    /// coalgebra morphism.
    auto factor_xo(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> XoFactorization;
}

#endif
