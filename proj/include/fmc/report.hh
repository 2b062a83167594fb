#ifndef FMC_REPORT_HH
#define FMC_REPORT_HH

#include <fmc/games/game.hh>
#include <fmc/logic/formula.hh>
#include <fmc/logic/oracle.hh>

#include <json.hpp>

#include <optional>
#include <string>

namespace fmc
{
    inline constexpr int report_schema_version = 1;

    using Report = nlohmann::json;

    /// {family, mode, k, duplicatorWins, stageTable?, witnessFormula?} plus
    /// schemaVersion.
    auto game_report(const Game & game, const std::optional<Formula> & witness, bool with_stages) -> Report;

    auto oracle_report(const FragmentSpec & fragment, const OracleVerdict & verdict) -> Report;

    enum class ReportFormat
    {
        Text,
        Json
    };

    /// Keys come out sorted in both formats, so equal reports render to
    /// equal bytes. Text puts one `key: value` per line.
    auto render(const Report & report, ReportFormat format) -> std::string;
}

#endif
