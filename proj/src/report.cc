#include <fmc/report.hh>
#include <fmc/logic/formula_io.hh>

namespace fmc
{
    auto game_report(const Game & game, const std::optional<Formula> & witness, bool with_stages) -> Report
    {
        auto & spec = game.spec();
        Report r;
        r["schemaVersion"] = report_schema_version;
        r["family"] = to_string(spec.family);
        r["mode"] = to_string(spec.mode);
        r["k"] = spec.k;
        if (spec.rounds)
            r["rounds"] = *spec.rounds;
        r["duplicatorWins"] = game.duplicator_wins();
        if (with_stages && spec.family == GameFamily::Pebble) {
            Report table = Report::object();
            for (auto & [position, stage] : game.stage_table())
                table[position] = stage;
            r["stageTable"] = table;
        }
        if (witness)
            r["witnessFormula"] = to_string(*witness);
        return r;
    }

    auto oracle_report(const FragmentSpec & fragment, const OracleVerdict & verdict) -> Report
    {
        Report r;
        r["schemaVersion"] = report_schema_version;
        r["family"] = to_string(fragment.family);
        r["mode"] = to_string(fragment.mode);
        r["k"] = fragment.k;
        r["preserved"] = verdict.preserved;
        r["signatures"] = verdict.signatures;
        if (verdict.witness)
            r["witnessFormula"] = to_string(*verdict.witness);
        return r;
    }

    namespace
    {
        auto text_lines(const Report & r, const std::string & prefix, std::string & out) -> void
        {
            for (auto & [key, value] : r.items()) {
                if (value.is_object() && ! value.empty())
                    text_lines(value, prefix + key + ".", out);
                else
                    out += prefix + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
            }
        }
    }

    auto render(const Report & report, ReportFormat format) -> std::string
    {
        if (format == ReportFormat::Json)
            return report.dump(2) + "\n";
        std::string out;
        text_lines(report, "", out);
        return out;
    }
}
