#include <fmc/core/structure.hh>
#include <fmc/errors.hh>

#include <algorithm>
#include <map>
#include <numeric>
#include <functional>
#include <random>
#include <set>

using std::optional;
using std::span;
using std::string;
using std::vector;

namespace fmc
{
    namespace
    {
        constexpr long long dense_limit = 1ll << 22;

        auto dense_size(int n, int arity) -> long long
        {
            long long result = 1;
            for (int i = 0 ; i < arity ; ++i) {
                result *= n;
                if (result > dense_limit)
                    return -1;
            }
            return result;
        }

        auto code(span<const int> tuple, int n) -> long long
        {
            long long result = 0;
            for (int x : tuple)
                result = result * n + x;
            return result;
        }
    }

    Structure::Structure(Vocabulary vocabulary, vector<string> elements, vector<vector<Tuple>> tuples,
            optional<int> point, string name) :
        _name(std::move(name)),
        _vocabulary(std::move(vocabulary)),
        _elements(std::move(elements)),
        _tuples(std::move(tuples)),
        _point(point)
    {
        if (int(_tuples.size()) != _vocabulary.size())
            throw PreconditionViolated("interpretation count does not match vocabulary");

        std::set<string> seen;
        for (auto & e : _elements)
            if (! seen.insert(e).second)
                throw PreconditionViolated("duplicate element " + e);

        int n = size();
        if (_point && (*_point < 0 || *_point >= n))
            throw PreconditionViolated("point out of range");

        _dense.resize(_vocabulary.size());
        _is_dense.assign(_vocabulary.size(), false);
        for (int r = 0 ; r < _vocabulary.size() ; ++r) {
            auto & ts = _tuples[r];
            for (auto & t : ts) {
                if (int(t.size()) != _vocabulary.arity(r))
                    throw PreconditionViolated("arity mismatch for " + _vocabulary.name(r));
                for (int x : t)
                    if (x < 0 || x >= n)
                        throw PreconditionViolated("tuple component out of range in " + _vocabulary.name(r));
            }
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

            auto d = dense_size(n, _vocabulary.arity(r));
            if (d >= 0) {
                _is_dense[r] = true;
                _dense[r].assign(d, false);
                for (auto & t : ts)
                    _dense[r][code(t, n)] = true;
            }
        }
    }

    auto Structure::find_element(const string & id) const -> optional<int>
    {
        for (int e = 0 ; e < size() ; ++e)
            if (_elements[e] == id)
                return e;
        return std::nullopt;
    }

    auto Structure::holds(int relation, span<const int> tuple) const -> bool
    {
        if (_is_dense[relation])
            return ! _dense[relation].empty() && _dense[relation][code(tuple, size())];
        auto & ts = _tuples[relation];
        return std::binary_search(ts.begin(), ts.end(), tuple,
                [] (const auto & x, const auto & y) {
                    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
                });
    }

    auto Structure::with_point(optional<int> point) const -> Structure
    {
        auto result = *this;
        if (point && (*point < 0 || *point >= size()))
            throw PreconditionViolated("point out of range");
        result._point = point;
        return result;
    }

    auto Structure::with_name(string name) const -> Structure
    {
        auto result = *this;
        result._name = std::move(name);
        return result;
    }

    auto Structure::operator== (const Structure & other) const -> bool
    {
        return _vocabulary == other._vocabulary && _elements == other._elements
            && _tuples == other._tuples && _point == other._point;
    }

    auto require_same_vocabulary(const Structure & a, const Structure & b) -> void
    {
        if (a.vocabulary() != b.vocabulary())
            throw VocabularyMismatch("vocabularies differ: [" + to_string(a.vocabulary()) + "] vs ["
                    + to_string(b.vocabulary()) + "]");
    }

    namespace
    {
        auto check_map(span<const int> f, const Structure & a, const Structure & b) -> void
        {
            require_same_vocabulary(a, b);
            if (int(f.size()) != a.size())
                throw PreconditionViolated("map is not total on the domain");
            for (int y : f)
                if (y < 0 || y >= b.size())
                    throw PreconditionViolated("map leaves the codomain");
        }

        auto preserves(span<const int> f, const Structure & a, const Structure & b) -> bool
        {
            vector<int> image;
            for (int r = 0 ; r < a.vocabulary().size() ; ++r)
                for (auto & t : a.tuples(r)) {
                    image.clear();
                    for (int x : t)
                        image.push_back(f[x]);
                    if (! b.holds(r, image))
                        return false;
                }
            if (a.point() && b.point() && f[*a.point()] != *b.point())
                return false;
            return true;
        }
    }

    auto is_homomorphism(span<const int> f, const Structure & a, const Structure & b) -> bool
    {
        check_map(f, a, b);
        return preserves(f, a, b);
    }

    auto is_embedding(span<const int> f, const Structure & a, const Structure & b) -> bool
    {
        check_map(f, a, b);
        if (! preserves(f, a, b))
            return false;

        vector<int> preimage(b.size(), -1);
        for (int x = 0 ; x < a.size() ; ++x) {
            if (preimage[f[x]] != -1)
                return false;
            preimage[f[x]] = x;
        }

        // every tuple of B inside the image must come from a tuple of A
        vector<int> back;
        for (int r = 0 ; r < b.vocabulary().size() ; ++r)
            for (auto & t : b.tuples(r)) {
                back.clear();
                for (int y : t)
                    back.push_back(preimage[y]);
                if (std::find(back.begin(), back.end(), -1) != back.end())
                    continue;
                if (! a.holds(r, back))
                    return false;
            }
        return true;
    }

    auto gaifman(const Structure & a) -> vector<vector<int>>
    {
        vector<std::set<int>> adjacent(a.size());
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r))
                for (int x : t)
                    for (int y : t)
                        if (x != y)
                            adjacent[x].insert(y);

        vector<vector<int>> result(a.size());
        for (int x = 0 ; x < a.size() ; ++x)
            result[x].assign(adjacent[x].begin(), adjacent[x].end());
        return result;
    }

    auto expand_equality(const Structure & a) -> Structure
    {
        auto vocabulary = a.vocabulary().with_equality_surrogate();
        vector<vector<Tuple>> tuples;
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            tuples.push_back(a.tuples(r));
        vector<Tuple> diagonal;
        for (int x = 0 ; x < a.size() ; ++x)
            diagonal.push_back({ x, x });
        tuples.push_back(std::move(diagonal));
        return Structure{ std::move(vocabulary), a.element_names(), std::move(tuples), a.point(), a.name() };
    }

    auto collapse_equality(const Structure & a) -> Structure
    {
        auto i = a.vocabulary().find(equality_surrogate);
        if (! i)
            throw PreconditionViolated("collapse requires the equality surrogate I");

        vector<int> leader(a.size());
        std::iota(leader.begin(), leader.end(), 0);
        auto find = [&] (int x) {
            while (leader[x] != x)
                x = leader[x] = leader[leader[x]];
            return x;
        };
        for (auto & t : a.tuples(*i)) {
            int x = find(t[0]), y = find(t[1]);
            if (x != y)
                leader[std::max(x, y)] = std::min(x, y);
        }

        vector<int> class_index(a.size(), -1);
        vector<string> names;
        for (int x = 0 ; x < a.size() ; ++x)
            if (find(x) == x) {
                class_index[x] = int(names.size());
                names.push_back(a.element_name(x));
            }

        auto reduct = a.vocabulary().without_equality_surrogate();
        vector<vector<Tuple>> tuples(reduct.size());
        for (int r = 0 ; r < reduct.size() ; ++r)
            for (auto & t : a.tuples(a.vocabulary().index_of(reduct.name(r)))) {
                Tuple image;
                for (int x : t)
                    image.push_back(class_index[find(x)]);
                tuples[r].push_back(std::move(image));
            }

        optional<int> point;
        if (a.point())
            point = class_index[find(*a.point())];
        return Structure{ std::move(reduct), std::move(names), std::move(tuples), point, a.name() };
    }

    auto induced_substructure(const Structure & a, span<const int> elements) -> Structure
    {
        vector<int> position(a.size(), -1);
        vector<string> names;
        for (int x : elements) {
            position[x] = int(names.size());
            names.push_back(a.element_name(x));
        }

        vector<vector<Tuple>> tuples(a.vocabulary().size());
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r)) {
                Tuple image;
                for (int x : t)
                    image.push_back(position[x]);
                if (std::find(image.begin(), image.end(), -1) == image.end())
                    tuples[r].push_back(std::move(image));
            }

        optional<int> point;
        if (a.point() && position[*a.point()] != -1)
            point = position[*a.point()];
        return Structure{ a.vocabulary(), std::move(names), std::move(tuples), point, a.name() };
    }

    namespace
    {
        using Key = std::pair<vector<vector<Tuple>>, optional<int>>;

        auto renamed(const Structure & a, const vector<int> & perm) -> Key
        {
            vector<vector<Tuple>> tuples(a.vocabulary().size());
            for (int r = 0 ; r < a.vocabulary().size() ; ++r) {
                for (auto & t : a.tuples(r)) {
                    Tuple image;
                    for (int x : t)
                        image.push_back(perm[x]);
                    tuples[r].push_back(std::move(image));
                }
                std::sort(tuples[r].begin(), tuples[r].end());
            }
            optional<int> point;
            if (a.point())
                point = perm[*a.point()];
            return { std::move(tuples), point };
        }
    }

    auto canonical_form(const Structure & a) -> Structure
    {
        if (a.size() > 9)
            throw ResourceLimitExceeded("canonical form is limited to 9 elements");

        vector<int> perm(a.size());
        std::iota(perm.begin(), perm.end(), 0);
        optional<Key> best;
        do {
            if (a.point() && perm[*a.point()] != 0)
                continue;
            auto key = renamed(a, perm);
            if (! best || key < *best)
                best = std::move(key);
        } while (std::next_permutation(perm.begin(), perm.end()));

        vector<string> names;
        for (int x = 0 ; x < a.size() ; ++x)
            names.push_back(std::to_string(x));
        return Structure{ a.vocabulary(), std::move(names), std::move(best->first), best->second, a.name() };
    }

    auto isomorphic(const Structure & a, const Structure & b) -> bool
    {
        if (a.vocabulary() != b.vocabulary() || a.size() != b.size() || a.is_pointed() != b.is_pointed())
            return false;
        auto x = canonical_form(a), y = canonical_form(b);
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            if (x.tuples(r) != y.tuples(r))
                return false;
        return x.point() == y.point();
    }
}

namespace fmc
{
    auto homomorphisms(const Structure & a, const Structure & b, std::size_t limit, unsigned seed) -> vector<ElementMap>
    {
        require_same_vocabulary(a, b);
        int n = a.size();

        // tuples grouped by their largest component, checked once it is assigned
        vector<vector<std::pair<int, const Tuple *>>> due(n);
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r))
                due[*std::max_element(t.begin(), t.end())].push_back({ r, &t });

        std::mt19937 rng(seed);
        vector<vector<int>> candidates(n);
        for (int e = 0 ; e < n ; ++e) {
            if (a.point() && b.point() && e == *a.point())
                candidates[e] = { *b.point() };
            else
                for (int v = 0 ; v < b.size() ; ++v)
                    candidates[e].push_back(v);
            if (seed != 0)
                std::shuffle(candidates[e].begin(), candidates[e].end(), rng);
        }

        vector<ElementMap> result;
        ElementMap f(n, -1);
        vector<int> image;
        std::function<void (int)> go = [&] (int e) {
            if (result.size() >= limit)
                return;
            if (e == n) {
                result.push_back(f);
                return;
            }
            for (int v : candidates[e]) {
                f[e] = v;
                bool fine = true;
                for (auto & [r, t] : due[e]) {
                    image.clear();
                    for (int x : *t)
                        image.push_back(f[x]);
                    if (! b.holds(r, image)) {
                        fine = false;
                        break;
                    }
                }
                if (fine)
                    go(e + 1);
                if (result.size() >= limit)
                    return;
            }
            f[e] = -1;
        };
        go(0);
        return result;
    }
}
