#ifndef FMC_CORE_STRUCTURE_HH
#define FMC_CORE_STRUCTURE_HH

#include <fmc/core/vocabulary.hh>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmc
{
    using Tuple = std::vector<int>;

    /// A finite relational structure, optionally pointed. Elements are the
    /// integers 0..size()-1, each carrying an opaque id string; declaration
    /// order is the canonical order. Immutable once built.
    class Structure
    {
        public:
            Structure() = default;

            /// Tuples are deduplicated and sorted. Throws PreconditionViolated if a
            /// tuple has the wrong length or an out-of-range component, if element
            /// ids repeat, or if the point is out of range.
            Structure(Vocabulary vocabulary, std::vector<std::string> elements,
                    std::vector<std::vector<Tuple>> tuples, std::optional<int> point = std::nullopt,
                    std::string name = "");

            auto name() const -> const std::string & { return _name; }
            auto vocabulary() const -> const Vocabulary & { return _vocabulary; }
            auto size() const -> int { return int(_elements.size()); }
            auto empty() const -> bool { return _elements.empty(); }
            auto element_name(int e) const -> const std::string & { return _elements[e]; }
            auto element_names() const -> const std::vector<std::string> & { return _elements; }
            auto find_element(const std::string & id) const -> std::optional<int>;

            auto tuples(int relation) const -> const std::vector<Tuple> & { return _tuples[relation]; }
            auto holds(int relation, std::span<const int> tuple) const -> bool;
            auto holds(int relation, std::initializer_list<int> tuple) const -> bool
            {
                return holds(relation, std::span<const int>(tuple.begin(), tuple.size()));
            }

            auto point() const -> std::optional<int> { return _point; }
            auto is_pointed() const -> bool { return _point.has_value(); }

            auto with_point(std::optional<int> point) const -> Structure;
            auto with_name(std::string name) const -> Structure;

            /// Identical up to nothing: same vocabulary, ids, tuples and point.
            auto operator== (const Structure & other) const -> bool;

        private:
            std::string _name;
            Vocabulary _vocabulary;
            std::vector<std::string> _elements;
            std::vector<std::vector<Tuple>> _tuples;
            std::vector<std::vector<bool>> _dense;
            std::vector<bool> _is_dense;
            std::optional<int> _point;
    };

    using ElementMap = std::vector<int>;

    /// Checks that f preserves every relation (and the point when both
    /// structures are pointed). Throws VocabularyMismatch.
    auto is_homomorphism(std::span<const int> f, const Structure & a, const Structure & b) -> bool;

    /// Injective homomorphism that also reflects every relation.
    auto is_embedding(std::span<const int> f, const Structure & a, const Structure & b) -> bool;

    /// Up to `limit` homomorphisms A -> B, found by backtracking. Candidates
    /// are tried in element order, or in an order shuffled from `seed` when
    /// it is nonzero.
    auto homomorphisms(const Structure & a, const Structure & b, std::size_t limit, unsigned seed = 0)
        -> std::vector<ElementMap>;

    /// Gaifman graph as sorted neighbour lists; irreflexive and symmetric.
    auto gaifman(const Structure & a) -> std::vector<std::vector<int>>;

    /// Adds the equality surrogate I, interpreted as the diagonal.
    auto expand_equality(const Structure & a) -> Structure;

    /// Quotients the reduct without I by the equivalence closure of I.
    /// Class representatives are the least members; ids are kept.
    auto collapse_equality(const Structure & a) -> Structure;

    auto induced_substructure(const Structure & a, std::span<const int> elements) -> Structure;

    /// Canonical renaming under all permutations (point fixed first). Only
    /// meant for small structures; throws ResourceLimitExceeded above 9
    /// elements. Ids of the result are "0", "1", ...
    auto canonical_form(const Structure & a) -> Structure;

    auto isomorphic(const Structure & a, const Structure & b) -> bool;

    auto require_same_vocabulary(const Structure & a, const Structure & b) -> void;
}

#endif
