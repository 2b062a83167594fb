#ifndef FMC_CORE_VOCABULARY_HH
#define FMC_CORE_VOCABULARY_HH

#include <optional>
#include <string>
#include <vector>

namespace fmc
{
    /// Name of the binary relation standing in for equality in I-expanded
    /// structures.
    inline constexpr const char * equality_surrogate = "I";

    struct RelationSymbol
    {
        std::string name;
        int arity;

        auto operator== (const RelationSymbol &) const -> bool = default;
    };

    /// A finite relational signature. Relation names are pairwise distinct
    /// and the order of declaration is significant (it is the canonical
    /// order used by every search and serializer).
    class Vocabulary
    {
        public:
            Vocabulary() = default;
            explicit Vocabulary(std::vector<RelationSymbol> relations);

            auto relations() const -> const std::vector<RelationSymbol> & { return _relations; }
            auto size() const -> int { return int(_relations.size()); }
            auto operator[] (int r) const -> const RelationSymbol & { return _relations[r]; }
            auto arity(int r) const -> int { return _relations[r].arity; }
            auto name(int r) const -> const std::string & { return _relations[r].name; }

            auto find(const std::string & name) const -> std::optional<int>;
            auto index_of(const std::string & name) const -> int;

            /// True iff every arity is 1 or 2.
            auto is_modal() const -> bool;
            auto has_equality_surrogate() const -> bool;
            auto max_arity() const -> int;

            /// Same vocabulary plus a fresh binary I, appended last.
            auto with_equality_surrogate() const -> Vocabulary;
            auto without_equality_surrogate() const -> Vocabulary;

            auto operator== (const Vocabulary &) const -> bool = default;

        private:
            std::vector<RelationSymbol> _relations;
    };

    auto to_string(const Vocabulary &) -> std::string;
}

#endif
