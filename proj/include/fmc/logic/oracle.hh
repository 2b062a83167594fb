#ifndef FMC_LOGIC_ORACLE_HH
#define FMC_LOGIC_ORACLE_HH

#include <fmc/core/structure.hh>
#include <fmc/logic/formula.hh>

#include <cstddef>
#include <optional>
#include <vector>

namespace fmc
{
    /// Truth tables of one formula over the assignment space of both
    /// structures. For quantifier rank the space at level i assigns
    /// x1..xi; for variable-bounded fragments it assigns x1..xk; for modal
    /// depth it is the set of worlds. Assignment index is base-|A| with x1
    /// most significant.
    struct Signature
    {
        int vars = 0;
        std::vector<bool> truth_a;
        std::vector<bool> truth_b;
        Formula formula = Formula::top();
    };

    struct OracleOptions
    {
        /// Cap on the number of signatures materialised in one run.
        std::size_t signature_cap = std::size_t{ 1 } << 20;
        /// When set, every signature produced is appended here.
        std::vector<Signature> * trace = nullptr;
    };

    struct OracleVerdict
    {
        bool preserved = true;
        /// A sentence of the fragment true in A and false in B (modal: true at
        /// the point of A, false at the point of B), when not preserved.
        std::optional<Formula> witness;
        std::size_t signatures = 0;
    };

    /// Decides whether every sentence of the fragment true in A is true in
    /// B, by closing atomic signatures under the connectives the fragment
    /// admits. Exact for the fixed pair. Throws VocabularyMismatch,
    /// PreconditionViolated (modal fragment without points or modal
    /// vocabulary, k < 1 for variable fragments) and ResourceLimitExceeded.
    auto oracle_preserves(const FragmentSpec & fragment, const Structure & a, const Structure & b,
            const OracleOptions & options = {}) -> OracleVerdict;
}

#endif
