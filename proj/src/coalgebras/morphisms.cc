#include <fmc/coalgebras/morphisms.hh>
#include <fmc/errors.hh>

#include <functional>

using std::span;
using std::string;
using std::vector;

namespace fmc
{
    auto to_string(MorphismKind kind) -> string
    {
        switch (kind) {
            case MorphismKind::Hom: return "hom";
            case MorphismKind::IMorphism: return "I";
            case MorphismKind::Pathwise: return "pathwise";
            case MorphismKind::OpenPathwise: return "open";
        }
        return "?";
    }

    auto parse_morphism_kind(std::string_view text) -> std::optional<MorphismKind>
    {
        if (text == "hom")
            return MorphismKind::Hom;
        if (text == "I" || text == "i")
            return MorphismKind::IMorphism;
        if (text == "pathwise")
            return MorphismKind::Pathwise;
        if (text == "open")
            return MorphismKind::OpenPathwise;
        return std::nullopt;
    }

    auto to_string(MorphismTag tag) -> string
    {
        switch (tag) {
            case MorphismTag::Forest: return "forest";
            case MorphismTag::Hom: return "hom";
            case MorphismTag::PebblePreserving: return "pebblePreserving";
            case MorphismTag::IMorphism: return "I-morphism";
            case MorphismTag::PathwiseEmbedding: return "pathwiseEmbedding";
            case MorphismTag::Open: return "open";
            case MorphismTag::Bijection: return "bijection";
        }
        return "?";
    }

    namespace
    {
        /// Calls fn on every position tuple over 0..h-1 that uses h-1.
        template <typename Fn_>
        auto for_each_top_tuple(int h, int arity, const Fn_ & fn) -> bool
        {
            if (h == 0)
                return true;
            vector<int> pick(arity, 0);
            while (true) {
                bool top = false;
                for (int p : pick)
                    top = top || p == h - 1;
                if (top && ! fn(pick))
                    return false;
                int i = arity - 1;
                while (i >= 0 && pick[i] == h - 1)
                    pick[i--] = 0;
                if (i < 0)
                    return true;
                ++pick[i];
            }
        }

        auto tuple_text(const Structure & a, int r, span<const int> t) -> string
        {
            string result = a.vocabulary().name(r) + "(";
            for (std::size_t i = 0 ; i < t.size() ; ++i)
                result += (i ? "," : "") + a.element_name(t[i]);
            return result + ")";
        }

        auto in_range(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
        {
            if (int(f.size()) != x.size())
                return CheckResult::fail("map does not cover the domain");
            for (int v : f)
                if (v < 0 || v >= y.size())
                    return CheckResult::fail("map leaves the codomain");
            return CheckResult::pass();
        }

        /// Whether two elements on one branch sit over the same base element.
        auto same_base(const ForestCoalgebra & x) -> std::function<bool (int, int)>
        {
            if (x.has_counit())
                return [&x] (int s, int t) { return x.counit(s) == x.counit(t); };
            auto i = x.carrier().vocabulary().find(equality_surrogate);
            if (i)
                return [&x, r = *i] (int s, int t) { return x.carrier().holds(r, { s, t }); };
            return nullptr;
        }
    }

    auto check_forest_morphism(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = in_range(f, x, y) ; ! r)
            return r;
        for (int e = 0 ; e < x.size() ; ++e) {
            int p = x.parent(e);
            if (p == -1 && y.parent(f[e]) != -1)
                return CheckResult::fail("root " + x.carrier().element_name(e) + " is not mapped to a root");
            if (p != -1 && y.parent(f[e]) != f[p])
                return CheckResult::fail("cover " + x.carrier().element_name(p) + " < " + x.carrier().element_name(e)
                        + " is not mapped to a cover");
        }
        return CheckResult::pass();
    }

    auto check_coalgebra_morphism(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = check_forest_morphism(f, x, y) ; ! r)
            return r;
        require_same_vocabulary(x.carrier(), y.carrier());
        auto & a = x.carrier();
        auto & b = y.carrier();
        for (int r = 0 ; r < a.vocabulary().size() ; ++r)
            for (auto & t : a.tuples(r)) {
                vector<int> image;
                for (int e : t)
                    image.push_back(f[e]);
                if (! b.holds(r, image))
                    return CheckResult::fail("relation " + tuple_text(a, r, t) + " not preserved");
            }
        if (a.point() && b.point() && f[*a.point()] != *b.point())
            return CheckResult::fail("point not preserved");
        if (x.has_pebbles() && y.has_pebbles())
            for (int e = 0 ; e < x.size() ; ++e)
                if (x.pebble(e) != y.pebble(f[e]))
                    return CheckResult::fail("pebble index changes at " + a.element_name(e));
        return CheckResult::pass();
    }

    auto check_pathwise_embedding(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = check_coalgebra_morphism(f, x, y) ; ! r)
            return r;
        auto & a = x.carrier();
        auto & b = y.carrier();
        for (int e = 0 ; e < x.size() ; ++e) {
            auto cx = x.chain(e);
            int h = int(cx.size());
            for (int r = 0 ; r < a.vocabulary().size() ; ++r) {
                vector<int> tx, ty;
                bool fine = for_each_top_tuple(h, a.vocabulary().arity(r), [&] (const vector<int> & pick) {
                        tx.clear();
                        ty.clear();
                        for (int p : pick) {
                            tx.push_back(cx[p]);
                            ty.push_back(f[cx[p]]);
                        }
                        return ! b.holds(r, ty) || a.holds(r, tx);
                    });
                if (! fine)
                    return CheckResult::fail("relation " + tuple_text(b, r, ty) + " not reflected on the branch of "
                            + a.element_name(e));
            }
        }
        return CheckResult::pass();
    }

    auto check_open(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = check_forest_morphism(f, x, y) ; ! r)
            return r;
        vector<bool> hit(y.size(), false);
        for (int e : x.roots())
            hit[f[e]] = true;
        for (int r : y.roots())
            if (! hit[r])
                return CheckResult::fail("open violated at root: " + y.carrier().element_name(r) + " is not hit");
        for (int e = 0 ; e < x.size() ; ++e) {
            for (int c : x.children(e))
                hit[f[c]] = true;
            for (int d : y.children(f[e]))
                if (! hit[d])
                    return CheckResult::fail("open violated at " + x.carrier().element_name(e) + ": cover "
                            + y.carrier().element_name(d) + " is not lifted");
            for (int c : x.children(e))
                hit[f[c]] = false;
        }
        return CheckResult::pass();
    }

    auto check_open_by_squares(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = check_forest_morphism(f, x, y) ; ! r)
            return r;
        auto & a = x.carrier();
        auto & b = y.carrier();

        // -1 stands for the empty branch
        for (int e = -1 ; e < x.size() ; ++e) {
            vector<int> p_chain = e == -1 ? vector<int>{} : x.chain(e);
            auto p = induced_substructure(a, p_chain);
            for (int target = 0 ; target < y.size() ; ++target) {
                auto q_chain = y.chain(target);
                if (q_chain.size() < p_chain.size())
                    continue;
                bool extends = true;
                for (std::size_t i = 0 ; i < p_chain.size() ; ++i)
                    extends = extends && q_chain[i] == f[p_chain[i]];
                if (! extends)
                    continue;
                auto q = induced_substructure(b, q_chain);

                // the square needs P -> Q to be an embedding
                vector<int> prefix(p_chain.size());
                for (std::size_t i = 0 ; i < prefix.size() ; ++i)
                    prefix[i] = int(i);
                if (! is_embedding(prefix, p.with_point(std::nullopt), q.with_point(std::nullopt)))
                    continue;

                bool filled = false;
                for (int candidate = 0 ; candidate < x.size() && ! filled ; ++candidate) {
                    if (f[candidate] != target || (e != -1 && ! x.leq(e, candidate)))
                        continue;
                    auto d_chain = x.chain(candidate);
                    auto d = induced_substructure(a, d_chain);
                    vector<int> diagonal(q_chain.size());
                    for (std::size_t i = 0 ; i < diagonal.size() ; ++i)
                        diagonal[i] = int(i);
                    filled = is_embedding(diagonal, q.with_point(std::nullopt), d.with_point(std::nullopt));
                }
                if (! filled)
                    return CheckResult::fail("open violated: no filler from the branch of "
                            + (e == -1 ? string("the root") : a.element_name(e)) + " to " + b.element_name(target));
            }
        }
        return CheckResult::pass();
    }

    auto check_i_morphism(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = check_coalgebra_morphism(f, x, y) ; ! r)
            return r;
        auto same_x = same_base(x);
        auto same_y = same_base(y);
        if (! same_x || ! same_y)
            throw PreconditionViolated("I-morphisms need built coalgebras or an I relation");
        for (int e = 0 ; e < x.size() ; ++e)
            for (int s = x.parent(e) ; s != -1 ; s = x.parent(s))
                if (same_x(s, e) && ! same_y(f[s], f[e]))
                    return CheckResult::fail("I-condition fails at " + x.carrier().element_name(s) + " below "
                            + x.carrier().element_name(e));
        return CheckResult::pass();
    }

    auto check_bijection(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> CheckResult
    {
        if (auto r = in_range(f, x, y) ; ! r)
            return r;
        if (x.size() != y.size())
            return CheckResult::fail("not bijective: sizes differ");
        vector<bool> hit(y.size(), false);
        for (int v : f) {
            if (hit[v])
                return CheckResult::fail("not bijective: " + y.carrier().element_name(v) + " hit twice");
            hit[v] = true;
        }
        return CheckResult::pass();
    }

    auto verify_tags(span<const int> f, const ForestCoalgebra & x, const ForestCoalgebra & y) -> std::set<MorphismTag>
    {
        std::set<MorphismTag> tags;
        if (! check_forest_morphism(f, x, y))
            return tags;
        tags.insert(MorphismTag::Forest);
        if (check_bijection(f, x, y))
            tags.insert(MorphismTag::Bijection);
        if (! check_coalgebra_morphism(f, x, y))
            return tags;
        tags.insert(MorphismTag::Hom);
        if (x.has_pebbles() && y.has_pebbles())
            tags.insert(MorphismTag::PebblePreserving);
        if (same_base(x) && same_base(y) && check_i_morphism(f, x, y))
            tags.insert(MorphismTag::IMorphism);
        if (check_pathwise_embedding(f, x, y)) {
            tags.insert(MorphismTag::PathwiseEmbedding);
            if (check_open(f, x, y))
                tags.insert(MorphismTag::Open);
        }
        return tags;
    }

    namespace
    {
        /// Tree dynamic programming: ok(x, y) holds when some morphism of the
        /// kind sends x to y, which fixes the map on ↓x.
        class Search
        {
            public:
                Search(MorphismKind kind, const ForestCoalgebra & x, const ForestCoalgebra & y) :
                    _kind(kind), _x(x), _y(y), _memo(std::size_t(x.size()) * y.size(), -1)
                {
                    for (int e = 0 ; e < x.size() ; ++e)
                        _chain_x.push_back(x.chain(e));
                    for (int e = 0 ; e < y.size() ; ++e)
                        _chain_y.push_back(y.chain(e));
                    if (kind == MorphismKind::IMorphism) {
                        _same_x = same_base(x);
                        _same_y = same_base(y);
                        if (! _same_x || ! _same_y)
                            throw PreconditionViolated("I-morphisms need built coalgebras or an I relation");
                    }
                }

                auto exists() -> bool { return family_ok(_x.roots(), _y.roots()); }

                auto first() -> ElementMap
                {
                    ElementMap f(_x.size(), -1);
                    assign_family(_x.roots(), _y.roots(), f);
                    return f;
                }

                auto enumerate(std::size_t limit) -> vector<ElementMap>
                {
                    vector<ElementMap> result;
                    if (! exists())
                        return result;
                    ElementMap f(_x.size(), -1);
                    auto & order = _x.by_height();
                    std::function<void (std::size_t)> go = [&] (std::size_t i) {
                        if (result.size() >= limit)
                            return;
                        if (i == order.size()) {
                            if (_kind != MorphismKind::OpenPathwise || check_open(f, _x, _y))
                                result.push_back(f);
                            return;
                        }
                        int e = order[i];
                        auto & options = _x.parent(e) == -1 ? _y.roots() : _y.children(f[_x.parent(e)]);
                        for (int d : options)
                            if (ok(e, d)) {
                                f[e] = d;
                                go(i + 1);
                            }
                        f[e] = -1;
                    };
                    go(0);
                    return result;
                }

            private:
                auto local(int e, int d) -> bool
                {
                    if (_x.has_pebbles() && _y.has_pebbles() && _x.pebble(e) != _y.pebble(d))
                        return false;
                    auto & cx = _chain_x[e];
                    auto & cy = _chain_y[d];
                    int h = int(cx.size());
                    if (int(cy.size()) != h)
                        return false;
                    auto & a = _x.carrier();
                    auto & b = _y.carrier();
                    bool reflect = _kind == MorphismKind::Pathwise || _kind == MorphismKind::OpenPathwise;
                    vector<int> tx, ty;
                    for (int r = 0 ; r < a.vocabulary().size() ; ++r) {
                        bool fine = for_each_top_tuple(h, a.vocabulary().arity(r), [&] (const vector<int> & pick) {
                                tx.clear();
                                ty.clear();
                                for (int p : pick) {
                                    tx.push_back(cx[p]);
                                    ty.push_back(cy[p]);
                                }
                                bool hx = a.holds(r, tx);
                                bool hy = b.holds(r, ty);
                                return reflect ? hx == hy : ! hx || hy;
                            });
                        if (! fine)
                            return false;
                    }
                    if (_kind == MorphismKind::IMorphism)
                        for (int i = 0 ; i + 1 < h ; ++i)
                            if (_same_x(cx[i], e) && ! _same_y(cy[i], d))
                                return false;
                    return true;
                }

                auto ok(int e, int d) -> bool
                {
                    auto & slot = _memo[std::size_t(e) * _y.size() + d];
                    if (slot == -1)
                        slot = local(e, d) && family_ok(_x.children(e), _y.children(d));
                    return slot;
                }

                /// Matches targets to distinct sources; match[t] = source index or -1.
                auto match_targets(const vector<int> & xs, const vector<int> & ys) -> vector<int>
                {
                    vector<int> match(ys.size(), -1), owner(xs.size(), -1);
                    std::function<bool (std::size_t, vector<bool> &)> augment = [&] (std::size_t t, vector<bool> & seen) {
                        for (std::size_t s = 0 ; s < xs.size() ; ++s) {
                            if (seen[s] || ! ok(xs[s], ys[t]))
                                continue;
                            seen[s] = true;
                            if (owner[s] == -1 || augment(owner[s], seen)) {
                                owner[s] = int(t);
                                match[t] = int(s);
                                return true;
                            }
                        }
                        return false;
                    };
                    for (std::size_t t = 0 ; t < ys.size() ; ++t) {
                        vector<bool> seen(xs.size(), false);
                        augment(t, seen);
                    }
                    return match;
                }

                auto family_ok(const vector<int> & xs, const vector<int> & ys) -> bool
                {
                    for (int e : xs) {
                        bool any = false;
                        for (int d : ys)
                            if (ok(e, d)) {
                                any = true;
                                break;
                            }
                        if (! any)
                            return false;
                    }
                    if (_kind != MorphismKind::OpenPathwise)
                        return true;
                    for (int m : match_targets(xs, ys))
                        if (m == -1)
                            return false;
                    return true;
                }

                auto assign_family(const vector<int> & xs, const vector<int> & ys, ElementMap & f) -> void
                {
                    if (_kind == MorphismKind::OpenPathwise) {
                        auto match = match_targets(xs, ys);
                        for (std::size_t t = 0 ; t < ys.size() ; ++t)
                            f[xs[match[t]]] = ys[t];
                    }
                    for (int e : xs) {
                        if (f[e] == -1)
                            for (int d : ys)
                                if (ok(e, d)) {
                                    f[e] = d;
                                    break;
                                }
                        assign_family(_x.children(e), _y.children(f[e]), f);
                    }
                }

                MorphismKind _kind;
                const ForestCoalgebra & _x;
                const ForestCoalgebra & _y;
                vector<signed char> _memo;
                vector<vector<int>> _chain_x, _chain_y;
                std::function<bool (int, int)> _same_x, _same_y;
        };

        auto prepare(const ForestCoalgebra & x, const ForestCoalgebra & y, const SearchOptions & options) -> void
        {
            if (x.kind() != y.kind())
                throw PreconditionViolated("morphism search needs coalgebras of the same kind");
            require_same_vocabulary(x.carrier(), y.carrier());
            if (options.validate)
                for (auto * c : { &x, &y }) {
                    auto problems = validate_coalgebra(*c);
                    if (! problems.empty())
                        throw PreconditionViolated("invalid coalgebra: " + problems.front());
                }
        }

        auto expected_tag(MorphismKind kind) -> MorphismTag
        {
            switch (kind) {
                case MorphismKind::Hom: return MorphismTag::Hom;
                case MorphismKind::IMorphism: return MorphismTag::IMorphism;
                case MorphismKind::Pathwise: return MorphismTag::PathwiseEmbedding;
                case MorphismKind::OpenPathwise: return MorphismTag::Open;
            }
            return MorphismTag::Hom;
        }
    }

    auto find_morphism(MorphismKind kind, const ForestCoalgebra & x, const ForestCoalgebra & y,
            const SearchOptions & options) -> std::optional<MorphismWitness>
    {
        prepare(x, y, options);
        Search search(kind, x, y);
        if (! search.exists())
            return std::nullopt;
        MorphismWitness witness{ search.first(), {} };
        witness.verified = verify_tags(witness.map, x, y);
        if (! witness.verified.contains(expected_tag(kind)))
            throw VerificationFailure("morphism search produced a map that fails its own check");
        return witness;
    }

    auto enumerate_morphisms(MorphismKind kind, const ForestCoalgebra & x, const ForestCoalgebra & y,
            std::size_t limit, const SearchOptions & options) -> vector<ElementMap>
    {
        prepare(x, y, options);
        Search search(kind, x, y);
        return search.enumerate(limit);
    }
}
