#include <fmc/coalgebras/forest_coalgebra.hh>
#include <fmc/errors.hh>

#include <algorithm>

using std::string;
using std::vector;

namespace fmc
{
    auto to_string(CoalgebraKind kind) -> string
    {
        switch (kind) {
            case CoalgebraKind::EF: return "ef";
            case CoalgebraKind::Pebble: return "pebble";
            case CoalgebraKind::Modal: return "modal";
        }
        return "?";
    }

    auto parse_coalgebra_kind(std::string_view text) -> std::optional<CoalgebraKind>
    {
        if (text == "ef")
            return CoalgebraKind::EF;
        if (text == "pebble")
            return CoalgebraKind::Pebble;
        if (text == "modal")
            return CoalgebraKind::Modal;
        return std::nullopt;
    }

    ForestCoalgebra::ForestCoalgebra(CoalgebraKind kind, int k, Structure carrier, vector<int> parent,
            vector<int> pebble, vector<int> counit, vector<int> tag) :
        _kind(kind),
        _k(k),
        _carrier(std::move(carrier)),
        _parent(std::move(parent)),
        _pebble(std::move(pebble)),
        _counit(std::move(counit)),
        _tag(std::move(tag))
    {
        int n = _carrier.size();
        if (int(_parent.size()) != n)
            throw PreconditionViolated("parent map does not cover the carrier");
        if ((kind == CoalgebraKind::Pebble) != ! _pebble.empty() && n > 0)
            throw PreconditionViolated("pebble indices are required exactly for pebble coalgebras");
        if (! _pebble.empty() && int(_pebble.size()) != n)
            throw PreconditionViolated("pebble map does not cover the carrier");
        if (! _counit.empty() && int(_counit.size()) != n)
            throw PreconditionViolated("counit does not cover the carrier");
        if (! _tag.empty() && int(_tag.size()) != n)
            throw PreconditionViolated("tags do not cover the carrier");
        for (int p : _pebble)
            if (p < 1 || p > k)
                throw PreconditionViolated("pebble index out of range");

        _children.resize(n);
        _height.assign(n, 0);
        for (int x = 0 ; x < n ; ++x) {
            int p = _parent[x];
            if (p < -1 || p >= n || p == x)
                throw PreconditionViolated("bad parent for " + _carrier.element_name(x));
            if (p == -1)
                _roots.push_back(x);
            else
                _children[p].push_back(x);
        }

        // heights by walking up; a walk longer than n means a cycle
        for (int x = 0 ; x < n ; ++x) {
            int h = 0;
            for (int y = x ; y != -1 ; y = _parent[y])
                if (++h > n)
                    throw PreconditionViolated("parent links form a cycle through " + _carrier.element_name(x));
            _height[x] = h;
        }

        _by_height.resize(n);
        for (int x = 0 ; x < n ; ++x)
            _by_height[x] = x;
        std::stable_sort(_by_height.begin(), _by_height.end(), [&] (int a, int b) { return _height[a] < _height[b]; });
    }

    auto ForestCoalgebra::max_height() const -> int
    {
        return _height.empty() ? 0 : *std::max_element(_height.begin(), _height.end());
    }

    auto ForestCoalgebra::chain(int x) const -> vector<int>
    {
        vector<int> result;
        for (int y = x ; y != -1 ; y = _parent[y])
            result.push_back(y);
        std::reverse(result.begin(), result.end());
        return result;
    }

    auto ForestCoalgebra::leq(int x, int y) const -> bool
    {
        if (_height[x] > _height[y])
            return false;
        while (_height[y] > _height[x])
            y = _parent[y];
        return x == y;
    }

    auto ForestCoalgebra::counit(int x) const -> int
    {
        if (_counit.empty())
            throw PreconditionViolated("coalgebra has no counit (not built from a structure)");
        return _counit[x];
    }

    auto ForestCoalgebra::without_origin() const -> ForestCoalgebra
    {
        return ForestCoalgebra{ _kind, _k, _carrier, _parent, _pebble };
    }

    auto ForestCoalgebra::with_carrier(Structure carrier) const -> ForestCoalgebra
    {
        return ForestCoalgebra{ _kind, _k, std::move(carrier), _parent, _pebble, _counit, _tag };
    }

    auto ForestCoalgebra::operator== (const ForestCoalgebra & other) const -> bool
    {
        return _kind == other._kind && _k == other._k && _carrier == other._carrier && _parent == other._parent
            && _pebble == other._pebble;
    }

    auto validate_coalgebra(const ForestCoalgebra & x) -> vector<string>
    {
        vector<string> problems;
        auto & a = x.carrier();
        auto name = [&] (int e) { return a.element_name(e); };

        // Pebble forests have no height bound; k counts pebbles there.
        int bound = x.kind() == CoalgebraKind::Modal ? x.k() + 1 : x.k();
        for (int e = 0 ; e < x.size() && x.kind() != CoalgebraKind::Pebble ; ++e)
            if (x.height(e) > bound) {
                problems.push_back("height of " + name(e) + " is " + std::to_string(x.height(e))
                        + ", above the bound " + std::to_string(bound));
                break;
            }

        auto adjacency = gaifman(a);
        for (int u = 0 ; u < x.size() ; ++u)
            for (int v : adjacency[u]) {
                if (v < u)
                    continue;
                if (! x.comparable(u, v)) {
                    problems.push_back("(E-bis) violated: " + name(u) + " ~ " + name(v) + " lie on different branches");
                    continue;
                }
                if (x.kind() != CoalgebraKind::Pebble)
                    continue;
                int low = x.leq(u, v) ? u : v, high = x.leq(u, v) ? v : u;
                for (int y = high ; y != low ; y = x.parent(y))
                    if (x.pebble(y) == x.pebble(low)) {
                        problems.push_back("(P-bis) violated: " + name(low) + " ~ " + name(high) + " but pebble "
                                + std::to_string(x.pebble(low)) + " is reused at " + name(y));
                        break;
                    }
            }

        if (x.kind() == CoalgebraKind::Modal) {
            auto & vocabulary = a.vocabulary();
            if (! vocabulary.is_modal())
                problems.push_back("(M-bis) violated: vocabulary is not modal");
            if (x.roots().size() > 1)
                problems.push_back("(M-bis) violated: more than one root (" + name(x.roots()[0]) + ", "
                        + name(x.roots()[1]) + ")");
            if (! a.point())
                problems.push_back("(M-bis) violated: no point");
            else if (x.parent(*a.point()) != -1)
                problems.push_back("(M-bis) violated: point " + name(*a.point()) + " is not the root");

            vector<vector<int>> labels(x.size());
            for (int r = 0 ; r < vocabulary.size() ; ++r) {
                if (vocabulary.arity(r) != 2)
                    continue;
                for (auto & t : a.tuples(r)) {
                    if (x.parent(t[1]) != t[0])
                        problems.push_back("(M-bis) violated: " + vocabulary.name(r) + "(" + name(t[0]) + "," + name(t[1])
                                + ") is not a cover");
                    else
                        labels[t[1]].push_back(r);
                }
            }
            for (int e = 0 ; e < x.size() ; ++e) {
                if (x.parent(e) == -1)
                    continue;
                if (labels[e].empty())
                    problems.push_back("(M-bis) violated: cover " + name(x.parent(e)) + " < " + name(e)
                            + " carries no relation");
                else if (labels[e].size() > 1)
                    problems.push_back("(M-bis) violated: cover " + name(x.parent(e)) + " < " + name(e)
                            + " carries both " + vocabulary.name(labels[e][0]) + " and " + vocabulary.name(labels[e][1]));
            }
        }
        return problems;
    }
}
