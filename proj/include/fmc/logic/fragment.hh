#ifndef FMC_LOGIC_FRAGMENT_HH
#define FMC_LOGIC_FRAGMENT_HH

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace fmc
{
    /// Which connectives a fragment admits. Shared by logic fragments and by
    /// game variants.
    enum class Mode
    {
        Full,
        Existential,
        Positive,
        ExistentialPositive
    };

    inline constexpr std::array all_modes{ Mode::Full, Mode::Existential, Mode::Positive, Mode::ExistentialPositive };

    /// Universal quantifiers / boxes admitted.
    constexpr auto admits_universal(Mode m) -> bool { return m == Mode::Full || m == Mode::Positive; }

    /// Negated literals admitted.
    constexpr auto admits_negation(Mode m) -> bool { return m == Mode::Full || m == Mode::Existential; }

    /// true if `weaker` preservation is implied by `stronger` preservation.
    constexpr auto mode_implies(Mode stronger, Mode weaker) -> bool
    {
        if (stronger == weaker || weaker == Mode::ExistentialPositive)
            return true;
        return stronger == Mode::Full;
    }

    auto to_string(Mode) -> std::string;
    auto parse_mode(std::string_view) -> std::optional<Mode>;

    enum class FragmentFamily
    {
        QuantifierRank,
        Variables,
        ModalDepth
    };

    auto to_string(FragmentFamily) -> std::string;

    struct FragmentSpec
    {
        FragmentFamily family;
        int k;
        Mode mode;
    };
}

#endif
