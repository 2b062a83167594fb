#include <fmc/logic/oracle.hh>
#include <fmc/errors.hh>

#include <boost/dynamic_bitset.hpp>

#include <map>

using std::optional;
using std::size_t;
using std::vector;

namespace fmc
{
    namespace
    {
        using Bits = boost::dynamic_bitset<std::uint64_t>;

        struct Entry
        {
            Bits bits;
            Formula formula;
        };

        /// Assignment space of one side: n^vars points, digits precomputed.
        struct Side
        {
            const Structure * structure;
            int vars;
            long points;
            vector<vector<int>> digits;

            Side(const Structure & s, int v, long cap) :
                structure(&s), vars(v), points(1)
            {
                for (int i = 0 ; i < v ; ++i) {
                    points *= s.size();
                    if (points > cap)
                        throw ResourceLimitExceeded("assignment space too large for the signature oracle");
                }
                digits.assign(points, vector<int>(v));
                for (long p = 0 ; p < points ; ++p) {
                    long rest = p;
                    for (int j = v - 1 ; j >= 0 ; --j) {
                        digits[p][j] = int(rest % s.size());
                        rest /= s.size();
                    }
                }
            }

            auto stride(int var) const -> long
            {
                long result = 1;
                for (int j = var ; j < vars ; ++j)
                    result *= structure->size();
                return result;
            }
        };

        /// One table space (both sides) together with the first formula seen
        /// for every signature in it.
        class Space
        {
            public:
                Space(const Structure & a, const Structure & b, int vars, long cap, int tag,
                        std::vector<Signature> * trace) :
                    _a(a, vars, cap), _b(b, vars, cap), _tag(tag), _trace(trace)
                {
                }

                auto side_a() const -> const Side & { return _a; }
                auto side_b() const -> const Side & { return _b; }
                auto total() const -> long { return _a.points + _b.points; }
                auto offset_b() const -> long { return _a.points; }

                auto fresh() const -> Bits { return Bits(total()); }

                /// Returns the canonical (first-registered) entry for these bits.
                auto intern(Bits bits, const Formula & formula, size_t & budget) -> const Entry &
                {
                    auto [it, inserted] = _known.try_emplace(bits, Entry{ bits, formula });
                    if (inserted) {
                        if (budget == 0)
                            throw ResourceLimitExceeded("signature cap exceeded");
                        --budget;
                        if (_trace) {
                            Signature s;
                            s.vars = _tag;
                            s.formula = formula;
                            for (long p = 0 ; p < _a.points ; ++p)
                                s.truth_a.push_back(bits[p]);
                            for (long p = 0 ; p < _b.points ; ++p)
                                s.truth_b.push_back(bits[offset_b() + p]);
                            _trace->push_back(std::move(s));
                        }
                    }
                    return it->second;
                }

                template <typename Pred_>
                auto tabulate(const Pred_ & pred) const -> Bits
                {
                    auto bits = fresh();
                    for (long p = 0 ; p < _a.points ; ++p)
                        if (pred(*_a.structure, _a.digits[p]))
                            bits.set(p);
                    for (long p = 0 ; p < _b.points ; ++p)
                        if (pred(*_b.structure, _b.digits[p]))
                            bits.set(offset_b() + p);
                    return bits;
                }

            private:
                Side _a, _b;
                int _tag;
                std::vector<Signature> * _trace;
                std::map<Bits, Entry> _known;
        };

        struct Closure
        {
            vector<Entry> meets;
            vector<int> meet_of_point;
            vector<Entry> joins;
        };

        /// Closure of the generators under binary meet and join, represented
        /// by its join-irreducibles (least element containing each point) and
        /// meet-irreducibles (greatest element missing each point).
        auto close(Space & space, const vector<Entry> & gens, bool want_joins, size_t & budget) -> Closure
        {
            long total = space.total();
            vector<Bits> least(total, Bits(total).set());
            for (auto & g : gens)
                for (auto p = g.bits.find_first() ; p != Bits::npos ; p = g.bits.find_next(p))
                    least[p] &= g.bits;

            Closure result;
            result.meet_of_point.assign(total, -1);
            std::map<Bits, int> seen;
            for (long p = 0 ; p < total ; ++p) {
                auto [it, inserted] = seen.try_emplace(least[p], int(result.meets.size()));
                result.meet_of_point[p] = it->second;
                if (! inserted)
                    continue;

                Bits current = Bits(total).set();
                vector<Formula> parts;
                for (auto & g : gens) {
                    if (current == least[p])
                        break;
                    if (! g.bits[p])
                        continue;
                    Bits next = current & g.bits;
                    if (next != current) {
                        current = std::move(next);
                        parts.push_back(g.formula);
                    }
                }
                result.meets.push_back(space.intern(least[p], Formula::conj(std::move(parts)), budget));
            }

            if (want_joins) {
                std::map<Bits, int> joins_seen;
                for (long p = 0 ; p < total ; ++p) {
                    Bits current(total);
                    vector<Formula> parts;
                    for (auto & m : result.meets)
                        if (! m.bits[p] && ! m.bits.is_subset_of(current)) {
                            current |= m.bits;
                            parts.push_back(m.formula);
                        }
                    if (joins_seen.try_emplace(current, int(result.joins.size())).second)
                        result.joins.push_back(space.intern(current, Formula::disj(std::move(parts)), budget));
                }
            }
            return result;
        }

        auto same_meets(const Closure & x, const Closure & y) -> bool
        {
            for (std::size_t p = 0 ; p < x.meet_of_point.size() ; ++p)
                if (x.meets[x.meet_of_point[p]].bits != y.meets[y.meet_of_point[p]].bits)
                    return false;
            return true;
        }

        auto all_var_tuples(int vars, int arity) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> t(arity, 1);
            if (vars < 1 && arity > 0)
                return result;
            while (true) {
                result.push_back(t);
                int i = arity - 1;
                while (i >= 0 && t[i] == vars)
                    t[i--] = 1;
                if (i < 0)
                    break;
                ++t[i];
            }
            return result;
        }

        /// Literals over x1..x_vars admitted by the mode, plus true and false.
        auto first_order_literals(Space & space, const Vocabulary & vocabulary, int vars, Mode mode,
                size_t & budget) -> vector<Entry>
        {
            vector<Entry> result;
            auto add = [&] (Bits bits, Formula f) { result.push_back(space.intern(std::move(bits), f, budget)); };

            add(space.fresh().set(), Formula::top());
            add(space.fresh(), Formula::bottom());

            bool negation = admits_negation(mode);
            for (int r = 0 ; r < vocabulary.size() ; ++r)
                for (auto & t : all_var_tuples(vars, vocabulary.arity(r))) {
                    auto bits = space.tabulate([&] (const Structure & s, const vector<int> & d) {
                            vector<int> values;
                            for (int v : t)
                                values.push_back(d[v - 1]);
                            return s.holds(r, values);
                        });
                    if (negation) {
                        auto negated = bits;
                        negated.flip();
                        add(std::move(bits), Formula::atom(vocabulary.name(r), t));
                        add(std::move(negated), Formula::neg_atom(vocabulary.name(r), t));
                    }
                    else
                        add(std::move(bits), Formula::atom(vocabulary.name(r), t));
                }

            for (int x = 1 ; x <= vars ; ++x)
                for (int y = x + 1 ; y <= vars ; ++y) {
                    auto bits = space.tabulate([&] (const Structure &, const vector<int> & d) { return d[x - 1] == d[y - 1]; });
                    if (negation) {
                        auto negated = bits;
                        negated.flip();
                        add(std::move(bits), Formula::eq(x, y));
                        add(std::move(negated), Formula::neg_eq(x, y));
                    }
                    else
                        add(std::move(bits), Formula::eq(x, y));
                }
            return result;
        }

        auto quantified_formula(int var, const Formula & body, bool universal) -> Formula
        {
            return universal ? Formula::forall(var, body) : Formula::exists(var, body);
        }

        /// Quantifies x_var inside a space of fixed width.
        auto project_in_place(const Space & space, const Bits & bits, int var, bool universal) -> Bits
        {
            auto result = space.fresh();
            auto one_side = [&] (const Side & side, long offset) {
                long stride = side.stride(var);
                int n = side.structure->size();
                for (long p = 0 ; p < side.points ; ++p) {
                    long base = p - side.digits[p][var - 1] * stride;
                    bool value = universal;
                    for (int e = 0 ; e < n ; ++e)
                        if (bits[offset + base + e * stride] != universal) {
                            value = ! universal;
                            break;
                        }
                    if (value)
                        result.set(offset + p);
                }
            };
            one_side(space.side_a(), 0);
            one_side(space.side_b(), space.offset_b());
            return result;
        }

        /// Quantifies the last variable of `from` (width i + 1) into `to` (width i).
        auto project_down(const Space & from, const Space & to, const Bits & bits, bool universal) -> Bits
        {
            auto result = to.fresh();
            auto one_side = [&] (const Side & target, long from_offset, long to_offset) {
                int n = target.structure->size();
                for (long p = 0 ; p < target.points ; ++p) {
                    bool value = universal;
                    for (int e = 0 ; e < n ; ++e)
                        if (bits[from_offset + p * n + e] != universal) {
                            value = ! universal;
                            break;
                        }
                    if (value)
                        result.set(to_offset + p);
                }
            };
            one_side(to.side_a(), 0, 0);
            one_side(to.side_b(), from.offset_b(), to.offset_b());
            return result;
        }

        auto point_cap(const OracleOptions & options) -> long
        {
            return long(std::min<size_t>(options.signature_cap, size_t{ 1 } << 24));
        }

        auto decide_rank(const FragmentSpec & frag, const Structure & a, const Structure & b,
                const OracleOptions & options) -> OracleVerdict
        {
            size_t budget = options.signature_cap;
            bool universal = admits_universal(frag.mode);

            std::optional<Space> upper;
            Closure upper_closure;
            for (int level = frag.k ; level >= 0 ; --level) {
                Space space(a, b, level, point_cap(options), level, options.trace);
                auto gens = first_order_literals(space, a.vocabulary(), level, frag.mode, budget);
                if (upper) {
                    for (auto & m : upper_closure.meets)
                        gens.push_back(space.intern(project_down(*upper, space, m.bits, false),
                                    quantified_formula(level + 1, m.formula, false), budget));
                    if (universal)
                        for (auto & j : upper_closure.joins)
                            gens.push_back(space.intern(project_down(*upper, space, j.bits, true),
                                        quantified_formula(level + 1, j.formula, true), budget));
                }
                upper_closure = close(space, gens, universal && level > 0, budget);
                upper.emplace(std::move(space));
            }

            // level 0: one point per structure, the empty assignment
            OracleVerdict verdict;
            verdict.signatures = options.signature_cap - budget;
            auto & least = upper_closure.meets[upper_closure.meet_of_point[0]];
            if (! least.bits[1]) {
                verdict.preserved = false;
                verdict.witness = least.formula;
            }
            return verdict;
        }

        /// Closes x1..xk signatures to a fixpoint, then decides on sentences.
        auto decide_variables(const FragmentSpec & frag, const Structure & a, const Structure & b,
                const OracleOptions & options) -> OracleVerdict
        {
            if (frag.k < 1)
                throw PreconditionViolated("variable fragments need k >= 1");
            size_t budget = options.signature_cap;
            bool universal = admits_universal(frag.mode);

            Space space(a, b, frag.k, point_cap(options), frag.k, options.trace);
            auto literals = first_order_literals(space, a.vocabulary(), frag.k, frag.mode, budget);
            auto current = close(space, literals, universal, budget);
            while (true) {
                auto gens = literals;
                for (int var = 1 ; var <= frag.k ; ++var) {
                    for (auto & m : current.meets)
                        gens.push_back(space.intern(project_in_place(space, m.bits, var, false),
                                    quantified_formula(var, m.formula, false), budget));
                    if (universal)
                        for (auto & j : current.joins)
                            gens.push_back(space.intern(project_in_place(space, j.bits, var, true),
                                        quantified_formula(var, j.formula, true), budget));
                }
                auto next = close(space, gens, universal, budget);
                bool stable = same_meets(current, next);
                current = std::move(next);
                if (stable)
                    break;
            }

            // sentences: close { true, false, E x. M, A x. J } over the two structures
            auto close_over = [] (const Formula & body, bool all) {
                auto vars = free_variables(body);
                if (vars.empty())
                    vars.insert(1);
                Formula f = body;
                for (auto v = vars.rbegin() ; v != vars.rend() ; ++v)
                    f = quantified_formula(*v, f, all);
                return f;
            };

            Space sentences(a, b, 0, point_cap(options), -1, options.trace);
            vector<Entry> gens{ sentences.intern(sentences.fresh().set(), Formula::top(), budget),
                sentences.intern(sentences.fresh(), Formula::bottom(), budget) };
            auto sentence_bits = [&] (const Bits & bits, bool all) {
                auto result = sentences.fresh();
                auto side = [&] (long begin, long end, long target) {
                    bool value = all;
                    for (long p = begin ; p < end ; ++p)
                        if (bits[p] != all) {
                            value = ! all;
                            break;
                        }
                    if (value)
                        result.set(target);
                };
                side(0, space.offset_b(), 0);
                side(space.offset_b(), space.total(), 1);
                return result;
            };
            for (auto & m : current.meets)
                gens.push_back(sentences.intern(sentence_bits(m.bits, false), close_over(m.formula, false), budget));
            if (universal)
                for (auto & j : current.joins)
                    gens.push_back(sentences.intern(sentence_bits(j.bits, true), close_over(j.formula, true), budget));
            auto closure = close(sentences, gens, false, budget);

            OracleVerdict verdict;
            verdict.signatures = options.signature_cap - budget;
            auto & least = closure.meets[closure.meet_of_point[0]];
            if (! least.bits[1]) {
                verdict.preserved = false;
                verdict.witness = least.formula;
            }
            return verdict;
        }

        auto decide_modal(const FragmentSpec & frag, const Structure & a, const Structure & b,
                const OracleOptions & options) -> OracleVerdict
        {
            if (! a.vocabulary().is_modal())
                throw PreconditionViolated("modal fragments need a modal vocabulary");
            if (! a.point() || ! b.point())
                throw PreconditionViolated("modal fragments compare pointed structures");

            size_t budget = options.signature_cap;
            bool universal = admits_universal(frag.mode);
            auto & vocabulary = a.vocabulary();

            // one variable: the current world
            Space space(a, b, 1, point_cap(options), 1, options.trace);
            vector<Entry> literals{ space.intern(space.fresh().set(), Formula::top(), budget),
                space.intern(space.fresh(), Formula::bottom(), budget) };
            for (int r = 0 ; r < vocabulary.size() ; ++r) {
                if (vocabulary.arity(r) != 1)
                    continue;
                auto bits = space.tabulate([&] (const Structure & s, const vector<int> & d) { return s.holds(r, { d[0] }); });
                if (admits_negation(frag.mode)) {
                    auto negated = bits;
                    negated.flip();
                    literals.push_back(space.intern(bits, Formula::prop(vocabulary.name(r)), budget));
                    literals.push_back(space.intern(negated, Formula::neg_prop(vocabulary.name(r)), budget));
                }
                else
                    literals.push_back(space.intern(bits, Formula::prop(vocabulary.name(r)), budget));
            }

            auto step = [&] (const Bits & bits, int r, bool all) {
                auto result = space.fresh();
                auto side = [&] (const Structure & s, long offset) {
                    for (int w = 0 ; w < s.size() ; ++w) {
                        bool value = all;
                        for (int next = 0 ; next < s.size() ; ++next)
                            if (s.holds(r, { w, next }) && bits[offset + next] != all) {
                                value = ! all;
                                break;
                            }
                        if (value)
                            result.set(offset + w);
                    }
                };
                side(a, 0);
                side(b, space.offset_b());
                return result;
            };

            auto current = close(space, literals, universal, budget);
            for (int depth = 1 ; depth <= frag.k ; ++depth) {
                auto gens = literals;
                for (int r = 0 ; r < vocabulary.size() ; ++r) {
                    if (vocabulary.arity(r) != 2)
                        continue;
                    for (auto & m : current.meets)
                        gens.push_back(space.intern(step(m.bits, r, false), Formula::diamond(vocabulary.name(r), m.formula), budget));
                    if (universal)
                        for (auto & j : current.joins)
                            gens.push_back(space.intern(step(j.bits, r, true), Formula::box(vocabulary.name(r), j.formula), budget));
                }
                current = close(space, gens, universal, budget);
            }

            OracleVerdict verdict;
            verdict.signatures = options.signature_cap - budget;
            auto & least = current.meets[current.meet_of_point[*a.point()]];
            if (! least.bits[space.offset_b() + *b.point()]) {
                verdict.preserved = false;
                verdict.witness = least.formula;
            }
            return verdict;
        }
    }

    auto oracle_preserves(const FragmentSpec & fragment, const Structure & a, const Structure & b,
            const OracleOptions & options) -> OracleVerdict
    {
        require_same_vocabulary(a, b);
        if (fragment.k < 0)
            throw PreconditionViolated("negative resource bound");
        switch (fragment.family) {
            case FragmentFamily::QuantifierRank: return decide_rank(fragment, a, b, options);
            case FragmentFamily::Variables: return decide_variables(fragment, a, b, options);
            case FragmentFamily::ModalDepth: return decide_modal(fragment, a, b, options);
        }
        throw PreconditionViolated("unknown fragment family");
    }
}
