#ifndef FMC_COALGEBRAS_MORPHISMS_HH
#define FMC_COALGEBRAS_MORPHISMS_HH

#include <fmc/coalgebras/forest_coalgebra.hh>

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace fmc
{
    /// Outcome of a verifier: ok, or the first reason it failed.
    struct CheckResult
    {
        bool ok = true;
        std::string reason;

        static auto pass() -> CheckResult { return {}; }
        static auto fail(std::string why) -> CheckResult { return { false, std::move(why) }; }
        explicit operator bool() const { return ok; }
    };

    enum class MorphismKind
    {
        Hom,
        IMorphism,
        Pathwise,
        OpenPathwise
    };

    auto to_string(MorphismKind) -> std::string;
    auto parse_morphism_kind(std::string_view) -> std::optional<MorphismKind>;

    enum class MorphismTag
    {
        Forest,
        Hom,
        PebblePreserving,
        IMorphism,
        PathwiseEmbedding,
        Open,
        Bijection
    };

    auto to_string(MorphismTag) -> std::string;

    struct MorphismWitness
    {
        ElementMap map;
        std::set<MorphismTag> verified;
    };

    /// Roots to roots and covers to covers.
    auto check_forest_morphism(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Forest morphism, carrier homomorphism, pebbles kept.
    auto check_coalgebra_morphism(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Coalgebra morphism whose restriction to each branch ↓x is injective
    /// and reflects every relation on tuples from ↓x.
    auto check_pathwise_embedding(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Cover lifting on path trees: every root of Y is hit by a root of X,
    /// and each cover f(x) ⋖ y' is the image of some cover x ⋖ x'.
    auto check_open(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Openness by enumerating squares: for every branch ↓x (or the empty
    /// one) and every branch ↓y' of Y extending ↓f(x), search a branch of X
    /// extending ↓x that f maps isomorphically onto ↓y'.
    auto check_open_by_squares(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Coalgebra morphism with s ⊑ t, ε(s) = ε(t) implying ε(f s) = ε(f t).
    /// The counit comes from the builders, or from I in the carrier.
    auto check_i_morphism(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    auto check_bijection(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult;

    /// Every tag whose verifier accepts f.
    auto verify_tags(std::span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> std::set<MorphismTag>;

    struct SearchOptions
    {
        /// Run validate_coalgebra on both inputs first.
        bool validate = true;
    };

    /// First morphism of the given kind in canonical order, or none. Throws
    /// PreconditionViolated for mismatched kinds or invalid coalgebras and
    /// VocabularyMismatch for different vocabularies.
    auto find_morphism(MorphismKind kind, const ForestCoalgebra & x, const ForestCoalgebra & y,
            const SearchOptions & = {}) -> std::optional<MorphismWitness>;

    /// Up to `limit` morphisms of the kind, in canonical order.
    auto enumerate_morphisms(MorphismKind kind, const ForestCoalgebra & x, const ForestCoalgebra & y,
            std::size_t limit, const SearchOptions & = {}) -> std::vector<ElementMap>;
}

#endif
