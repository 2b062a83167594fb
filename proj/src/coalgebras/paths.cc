#include <fmc/coalgebras/paths.hh>
#include <fmc/errors.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <string>

using std::span;
using std::string;
using std::vector;

namespace fmc
{
    auto path_tree(const ForestCoalgebra & x) -> PathTree
    {
        PathTree tree;
        tree.chains.push_back({});
        for (int e = 0 ; e < x.size() ; ++e)
            tree.chains.push_back(x.chain(e));

        // the parent of a branch is the longest proper prefix among the branches
        std::map<vector<int>, int> index;
        for (std::size_t n = 0 ; n < tree.chains.size() ; ++n)
            index.emplace(tree.chains[n], int(n));
        tree.parent.assign(tree.chains.size(), -1);
        tree.children.resize(tree.chains.size());
        for (std::size_t n = 1 ; n < tree.chains.size() ; ++n) {
            vector<int> prefix(tree.chains[n].begin(), tree.chains[n].end() - 1);
            int p = index.at(prefix);
            tree.parent[n] = p;
            tree.children[p].push_back(int(n));
        }
        return tree;
    }

    auto path_map(span<const int> f, const ForestCoalgebra & x, const PathTree & source,
            const PathTree & target) -> vector<int>
    {
        std::map<vector<int>, int> index;
        for (std::size_t n = 0 ; n < target.chains.size() ; ++n)
            index.emplace(target.chains[n], int(n));
        vector<int> result;
        for (auto & chain : source.chains) {
            vector<int> image;
            for (int e : chain)
                image.push_back(f[e]);
            auto it = index.find(image);
            if (it == index.end())
                throw PreconditionViolated("image of a branch of " + x.carrier().name() + " is not a branch");
            result.push_back(it->second);
        }
        return result;
    }

    auto is_p_morphism(span<const int> t, const PathTree & source, const PathTree & target) -> CheckResult
    {
        if (t.size() != source.chains.size())
            throw PreconditionViolated("map does not cover the path tree");
        if (t[0] != 0)
            throw PreconditionViolated("not a forest morphism: the root is not kept");
        for (std::size_t n = 1 ; n < t.size() ; ++n)
            if (target.parent[t[n]] != t[source.parent[n]])
                throw PreconditionViolated("not a forest morphism: a cover is not preserved");

        for (std::size_t n = 0 ; n < t.size() ; ++n)
            for (int d : target.children[t[n]]) {
                bool lifted = false;
                for (int c : source.children[n])
                    lifted = lifted || t[c] == d;
                if (! lifted)
                    return CheckResult::fail("cover of node " + std::to_string(t[n]) + " not lifted");
            }
        return CheckResult::pass();
    }

    auto is_quotient(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> bool
    {
        auto source = path_tree(x);
        auto target = path_tree(y);
        auto t = path_map(f, x, source, target);
        vector<bool> hit(target.chains.size(), false);
        for (int n : t)
            hit[n] = true;
        return std::all_of(hit.begin(), hit.end(), [] (bool b) { return b; });
    }

    namespace
    {
        /// AHU encoding of a rooted forest.
        auto encode(span<const int> parent) -> string
        {
            int n = int(parent.size());
            vector<vector<int>> children(n);
            vector<int> roots;
            for (int x = 0 ; x < n ; ++x) {
                if (parent[x] < -1 || parent[x] >= n)
                    throw PreconditionViolated("bad parent link");
                (parent[x] == -1 ? roots : children[parent[x]]).push_back(x);
            }
            std::function<string (int)> code = [&] (int x) {
                vector<string> parts;
                for (int c : children[x])
                    parts.push_back(code(c));
                std::sort(parts.begin(), parts.end());
                string result = "(";
                for (auto & p : parts)
                    result += p;
                return result + ")";
            };
            vector<string> parts;
            for (int r : roots)
                parts.push_back(code(r));
            std::sort(parts.begin(), parts.end());
            string result;
            for (auto & p : parts)
                result += p;
            return result;
        }
    }

    auto forests_isomorphic(span<const int> parent_a, span<const int> parent_b) -> bool
    {
        return parent_a.size() == parent_b.size() && encode(parent_a) == encode(parent_b);
    }

    auto path_tree_matches_forest(const ForestCoalgebra & x) -> bool
    {
        auto tree = path_tree(x);
        vector<int> without_bottom;
        for (std::size_t n = 1 ; n < tree.chains.size() ; ++n)
            without_bottom.push_back(tree.parent[n] == 0 ? -1 : tree.parent[n] - 1);
        if (! forests_isomorphic(without_bottom, x.parents()))
            return false;
        // the branch of x must be node x + 1, with the same order
        for (int e = 0 ; e < x.size() ; ++e)
            for (int f = 0 ; f < x.size() ; ++f) {
                auto & ce = tree.chains[e + 1];
                auto & cf = tree.chains[f + 1];
                bool prefix = ce.size() <= cf.size() && std::equal(ce.begin(), ce.end(), cf.begin());
                if (prefix != x.leq(e, f))
                    return false;
            }
        return true;
    }

    auto factor_xo(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> XoFactorization
    {
        if (auto r = check_coalgebra_morphism(f, x, y) ; ! r)
            throw PreconditionViolated("factorisation needs a coalgebra morphism: " + r.reason);

        auto & a = x.carrier();
        auto & b = y.carrier();
        vector<vector<Tuple>> tuples(a.vocabulary().size());
        for (int e = 0 ; e < x.size() ; ++e) {
            auto chain = x.chain(e);
            int h = int(chain.size());
            for (int r = 0 ; r < a.vocabulary().size() ; ++r) {
                int m = a.vocabulary().arity(r);
                vector<int> pick(m, 0);
                while (true) {
                    bool top = false;
                    Tuple t(m), image(m);
                    for (int i = 0 ; i < m ; ++i) {
                        t[i] = chain[pick[i]];
                        image[i] = f[t[i]];
                        top = top || pick[i] == h - 1;
                    }
                    if (top && b.holds(r, image))
                        tuples[r].push_back(std::move(t));
                    int i = m - 1;
                    while (i >= 0 && pick[i] == h - 1)
                        pick[i--] = 0;
                    if (i < 0)
                        break;
                    ++pick[i];
                }
            }
        }

        Structure carrier{ a.vocabulary(), a.element_names(), std::move(tuples), a.point(), a.name() + "o" };
        XoFactorization result{ x.with_carrier(std::move(carrier)), {}, ElementMap(f.begin(), f.end()) };
        for (int e = 0 ; e < x.size() ; ++e)
            result.e.push_back(e);
        return result;
    }
}
