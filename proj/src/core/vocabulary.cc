#include <fmc/core/vocabulary.hh>
#include <fmc/errors.hh>

#include <algorithm>
#include <set>

using std::optional;
using std::string;
using std::vector;

namespace fmc
{
    Vocabulary::Vocabulary(vector<RelationSymbol> relations) :
        _relations(std::move(relations))
    {
        std::set<string> seen;
        for (auto & r : _relations) {
            if (r.arity < 0)
                throw PreconditionViolated("relation " + r.name + " has negative arity");
            if (! seen.insert(r.name).second)
                throw PreconditionViolated("duplicate relation " + r.name);
        }
    }

    auto Vocabulary::find(const string & name) const -> optional<int>
    {
        for (int r = 0 ; r < size() ; ++r)
            if (_relations[r].name == name)
                return r;
        return std::nullopt;
    }

    auto Vocabulary::index_of(const string & name) const -> int
    {
        auto r = find(name);
        if (! r)
            throw PreconditionViolated("unknown relation " + name);
        return *r;
    }

    auto Vocabulary::is_modal() const -> bool
    {
        return std::all_of(_relations.begin(), _relations.end(),
                [] (const RelationSymbol & r) { return r.arity == 1 || r.arity == 2; });
    }

    auto Vocabulary::has_equality_surrogate() const -> bool
    {
        return find(equality_surrogate).has_value();
    }

    auto Vocabulary::max_arity() const -> int
    {
        int result = 0;
        for (auto & r : _relations)
            result = std::max(result, r.arity);
        return result;
    }

    auto Vocabulary::with_equality_surrogate() const -> Vocabulary
    {
        if (has_equality_surrogate())
            throw PreconditionViolated("vocabulary already contains I");
        auto relations = _relations;
        relations.push_back(RelationSymbol{ equality_surrogate, 2 });
        return Vocabulary{ std::move(relations) };
    }

    auto Vocabulary::without_equality_surrogate() const -> Vocabulary
    {
        vector<RelationSymbol> relations;
        for (auto & r : _relations)
            if (r.name != equality_surrogate)
                relations.push_back(r);
        return Vocabulary{ std::move(relations) };
    }

    auto to_string(const Vocabulary & v) -> string
    {
        string result;
        for (auto & r : v.relations()) {
            if (! result.empty())
                result += ' ';
            result += r.name + "/" + std::to_string(r.arity);
        }
        return result;
    }
}
