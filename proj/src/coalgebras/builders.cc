#include <fmc/coalgebras/builders.hh>
#include <fmc/errors.hh>

#include <algorithm>
#include <map>
#include <tuple>

using std::span;
using std::string;
using std::vector;

namespace fmc
{
    namespace
    {
        /// One step of a sequence or path: the tag (pebble, relation or -1) and
        /// the element reached.
        using Step = std::pair<int, int>;

        struct Draft
        {
            vector<string> names;
            vector<int> parent, counit, tag;
            vector<vector<Step>> steps;
        };

        auto check_size(long count, const BuildOptions & options) -> void
        {
            if (count > options.cap)
                throw ResourceLimitExceeded("coalgebra would exceed " + std::to_string(options.cap) + " elements");
        }

        /// Breadth-first extension: every element of length l spawns one child
        /// per step returned by `next`.
        template <typename Next_, typename Name_>
        auto grow(Draft & draft, int depth, const BuildOptions & options, const Next_ & next, const Name_ & name) -> void
        {
            std::size_t begin = 0;
            for (int level = 1 ; level < depth ; ++level) {
                std::size_t end = draft.steps.size();
                for (std::size_t x = begin ; x < end ; ++x)
                    for (auto step : next(draft.steps[x])) {
                        auto path = draft.steps[x];
                        path.push_back(step);
                        draft.names.push_back(name(path));
                        draft.parent.push_back(int(x));
                        draft.counit.push_back(step.second);
                        draft.tag.push_back(step.first);
                        draft.steps.push_back(std::move(path));
                        check_size(long(draft.steps.size()), options);
                    }
                begin = end;
            }
        }

        auto add_root(Draft & draft, Step step, string name) -> void
        {
            draft.names.push_back(std::move(name));
            draft.parent.push_back(-1);
            draft.counit.push_back(step.second);
            draft.tag.push_back(step.first);
            draft.steps.push_back({ step });
        }

        /// Tuples drawn from ↓x that contain x, for every x and relation.
        template <typename Accept_>
        auto chain_tuples(const Draft & draft, const Vocabulary & vocabulary, const Accept_ & accept) -> vector<vector<Tuple>>
        {
            vector<vector<Tuple>> tuples(vocabulary.size());
            for (std::size_t x = 0 ; x < draft.steps.size() ; ++x) {
                vector<int> chain;
                for (int y = int(x) ; y != -1 ; y = draft.parent[y])
                    chain.push_back(y);
                int h = int(chain.size());
                for (int r = 0 ; r < vocabulary.size() ; ++r) {
                    int m = vocabulary.arity(r);
                    vector<int> pick(m, 0);
                    while (true) {
                        bool has_top = false;
                        Tuple t(m);
                        for (int i = 0 ; i < m ; ++i) {
                            t[i] = chain[pick[i]];
                            has_top = has_top || pick[i] == 0;
                        }
                        if (has_top && accept(r, t))
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
            return tuples;
        }

        auto sequence_name(const Structure & a, const vector<Step> & path) -> string
        {
            string result = "[";
            for (std::size_t i = 0 ; i < path.size() ; ++i)
                result += (i ? "," : "") + a.element_name(path[i].second);
            return result + "]";
        }
    }

    auto build_ef(const Structure & input, int k, bool with_equality, const BuildOptions & options) -> ForestCoalgebra
    {
        if (k < 1)
            throw PreconditionViolated("k must be at least 1");
        if (with_equality && input.vocabulary().has_equality_surrogate())
            throw PreconditionViolated("structure already carries I");
        Structure a = with_equality ? expand_equality(input) : input;

        long total = 0, level = 1;
        for (int i = 1 ; i <= k ; ++i) {
            level *= a.size();
            total += level;
            check_size(total, options);
        }

        Draft draft;
        for (int e = 0 ; e < a.size() ; ++e)
            add_root(draft, { -1, e }, "[" + a.element_name(e) + "]");
        grow(draft, k, options,
                [&] (const vector<Step> &) {
                    vector<Step> result;
                    for (int e = 0 ; e < a.size() ; ++e)
                        result.push_back({ -1, e });
                    return result;
                },
                [&] (const vector<Step> & path) { return sequence_name(a, path); });

        auto tuples = chain_tuples(draft, a.vocabulary(), [&] (int r, const Tuple & t) {
                vector<int> last;
                for (int x : t)
                    last.push_back(draft.counit[x]);
                return a.holds(r, last);
            });

        Structure carrier{ a.vocabulary(), draft.names, std::move(tuples), std::nullopt, "F" + std::to_string(k) + a.name() };
        return ForestCoalgebra{ CoalgebraKind::EF, k, std::move(carrier), draft.parent, {}, draft.counit, draft.tag };
    }

    auto build_pebble_truncated(const Structure & input, int k, int n, bool with_equality,
            const BuildOptions & options) -> ForestCoalgebra
    {
        if (k < 1 || n < 1)
            throw PreconditionViolated("k and n must be at least 1");
        if (with_equality && input.vocabulary().has_equality_surrogate())
            throw PreconditionViolated("structure already carries I");
        Structure a = with_equality ? expand_equality(input) : input;

        long total = 0, level = 1;
        for (int i = 1 ; i <= n ; ++i) {
            level *= long(k) * a.size();
            total += level;
            check_size(total, options);
        }

        auto moves = [&] {
            vector<Step> result;
            for (int p = 1 ; p <= k ; ++p)
                for (int e = 0 ; e < a.size() ; ++e)
                    result.push_back({ p, e });
            return result;
        }();
        auto name = [&] (const vector<Step> & path) {
            string result = "[";
            for (std::size_t i = 0 ; i < path.size() ; ++i)
                result += (i ? ",(" : "(") + std::to_string(path[i].first) + "," + a.element_name(path[i].second) + ")";
            return result + "]";
        };

        Draft draft;
        for (auto & m : moves)
            add_root(draft, m, name({ m }));
        grow(draft, n, options, [&] (const vector<Step> &) { return moves; }, name);

        auto tuples = chain_tuples(draft, a.vocabulary(), [&] (int r, const Tuple & t) {
                vector<int> last;
                std::size_t longest = 0;
                int top = t[0];
                for (int x : t) {
                    last.push_back(draft.counit[x]);
                    if (draft.steps[x].size() > longest) {
                        longest = draft.steps[x].size();
                        top = x;
                    }
                }
                if (! a.holds(r, last))
                    return false;
                // (P): the pebble of each component is not moved again later
                auto & full = draft.steps[top];
                for (int x : t) {
                    std::size_t at = draft.steps[x].size();
                    for (std::size_t j = at ; j < full.size() ; ++j)
                        if (full[j].first == full[at - 1].first)
                            return false;
                }
                return true;
            });

        Structure carrier{ a.vocabulary(), draft.names, std::move(tuples), std::nullopt,
            "P" + std::to_string(k) + a.name() };
        return ForestCoalgebra{ CoalgebraKind::Pebble, k, std::move(carrier), draft.parent, draft.tag, draft.counit, draft.tag };
    }

    auto build_modal(const Structure & a, int k, const BuildOptions & options) -> ForestCoalgebra
    {
        if (k < 0)
            throw PreconditionViolated("k must be nonnegative");
        auto & vocabulary = a.vocabulary();
        if (! vocabulary.is_modal())
            throw PreconditionViolated("modal unravelling needs a modal vocabulary");
        if (! a.point())
            throw PreconditionViolated("modal unravelling needs a point");

        vector<vector<Step>> successors(a.size());
        for (int r = 0 ; r < vocabulary.size() ; ++r)
            if (vocabulary.arity(r) == 2)
                for (auto & t : a.tuples(r))
                    successors[t[0]].push_back({ r, t[1] });
        for (auto & s : successors)
            std::sort(s.begin(), s.end(), [] (Step x, Step y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });

        Draft draft;
        add_root(draft, { -1, *a.point() }, "[" + a.element_name(*a.point()) + "]");
        grow(draft, k + 1, options,
                [&] (const vector<Step> & path) { return successors[path.back().second]; },
                [&] (const vector<Step> & path) {
                    string result = "[" + a.element_name(path[0].second);
                    for (std::size_t i = 1 ; i < path.size() ; ++i)
                        result += "," + vocabulary.name(path[i].first) + ":" + a.element_name(path[i].second);
                    return result + "]";
                });

        vector<vector<Tuple>> tuples(vocabulary.size());
        for (std::size_t x = 0 ; x < draft.steps.size() ; ++x) {
            for (int r = 0 ; r < vocabulary.size() ; ++r)
                if (vocabulary.arity(r) == 1 && a.holds(r, { draft.counit[x] }))
                    tuples[r].push_back({ int(x) });
            if (draft.parent[x] != -1)
                tuples[draft.tag[x]].push_back({ draft.parent[x], int(x) });
        }

        Structure carrier{ vocabulary, draft.names, std::move(tuples), 0, "M" + std::to_string(k) + a.name() };
        return ForestCoalgebra{ CoalgebraKind::Modal, k, std::move(carrier), draft.parent, {}, draft.counit, draft.tag };
    }

    auto build(const ComonadSpec & spec, const Structure & a, const BuildOptions & options) -> ForestCoalgebra
    {
        switch (spec.kind) {
            case CoalgebraKind::EF: return build_ef(a, spec.k, spec.with_equality, options);
            case CoalgebraKind::Pebble: return build_pebble_truncated(a, spec.k, spec.depth, spec.with_equality, options);
            case CoalgebraKind::Modal: return build_modal(a, spec.k, options);
        }
        throw PreconditionViolated("unknown coalgebra kind");
    }

    auto counit_map(const ForestCoalgebra & x) -> ElementMap
    {
        if (! x.has_counit() && x.size() > 0)
            throw PreconditionViolated("coalgebra has no counit (not built from a structure)");
        return x.counits();
    }

    namespace
    {
        auto path_key(const ForestCoalgebra & x, int e) -> vector<Step>
        {
            vector<Step> key;
            for (int y : x.chain(e))
                key.push_back({ x.tag(y), x.counit(y) });
            return key;
        }
    }

    auto coextend(const ComonadSpec & spec, const ForestCoalgebra & source, span<const int> f,
            const Structure & b) -> Coextension
    {
        if (int(f.size()) != source.size())
            throw PreconditionViolated("map does not cover the coalgebra");
        bool carries_i = source.carrier().vocabulary().has_equality_surrogate();
        bool target_has_i = b.vocabulary().has_equality_surrogate();
        const Structure & against = b;
        Structure expanded;
        if (carries_i && ! target_has_i)
            expanded = expand_equality(b);
        auto & check = (carries_i && ! target_has_i) ? expanded : against;
        auto plain = source.carrier().with_point(check.point() ? source.carrier().point() : std::nullopt);
        if (! is_homomorphism(f, plain, check))
            throw PreconditionViolated("coextension needs a homomorphism");

        Coextension result{ build(spec, b), {} };
        std::map<vector<Step>, int> index;
        for (int y = 0 ; y < result.target.size() ; ++y)
            index.emplace(path_key(result.target, y), y);

        for (int x = 0 ; x < source.size() ; ++x) {
            vector<Step> key;
            for (int y : source.chain(x))
                key.push_back({ source.tag(y), f[y] });
            auto it = index.find(key);
            if (it == index.end())
                throw PreconditionViolated("image of " + source.carrier().element_name(x) + " is not in the target coalgebra");
            result.map.push_back(it->second);
        }
        return result;
    }

    auto check_laws(const ComonadSpec & spec, const Structure & a, span<const int> f, const Structure & b,
            span<const int> g, const Structure & d) -> LawReport
    {
        LawReport report;
        auto fa = build(spec, a);
        auto fb = build(spec, b);

        auto unit = coextend(spec, fa, counit_map(fa), a);
        for (int x = 0 ; x < fa.size() ; ++x)
            if (unit.map[x] != x) {
                report.failures.push_back("counit coextension is not the identity at " + fa.carrier().element_name(x));
                break;
            }

        auto f_star = coextend(spec, fa, f, b);
        for (int x = 0 ; x < fa.size() ; ++x)
            if (fb.counit(f_star.map[x]) != f[x]) {
                report.failures.push_back("counit after coextension differs from f at " + fa.carrier().element_name(x));
                break;
            }

        auto g_star = coextend(spec, fb, g, d);
        vector<int> g_after(fa.size());
        for (int x = 0 ; x < fa.size() ; ++x)
            g_after[x] = g[f_star.map[x]];
        auto left = coextend(spec, fa, g_after, d);
        for (int x = 0 ; x < fa.size() ; ++x)
            if (left.map[x] != g_star.map[f_star.map[x]]) {
                report.failures.push_back("(g . f*)* differs from g* . f* at " + fa.carrier().element_name(x));
                break;
            }
        return report;
    }
}
