#include "play.hh"

#include <fmc/coalgebras/bisimulation.hh>
#include <fmc/coalgebras/builders.hh>
#include <fmc/coalgebras/coalgebra_io.hh>
#include <fmc/coalgebras/morphisms.hh>
#include <fmc/core/structure_io.hh>
#include <fmc/errors.hh>
#include <fmc/games/distinguish.hh>
#include <fmc/games/game.hh>
#include <fmc/logic/formula_io.hh>
#include <fmc/logic/model_check.hh>
#include <fmc/logic/oracle.hh>
#include <fmc/report.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fmc;
using std::optional;
using std::string;
using std::vector;

namespace
{
    struct GameOptions
    {
        string family = "ef";
        string mode = "full";
        int k = 1;
        optional<int> n;
        string format = "text";
    };

    auto add_game_options(CLI::App * cmd, GameOptions & o) -> void
    {
        cmd->add_option("--family", o.family, "ef, pebble or modal")->check(CLI::IsMember({ "ef", "pebble", "modal" }));
        cmd->add_option("--mode", o.mode, "full, existential, positive or ep")
            ->check(CLI::IsMember({ "full", "existential", "positive", "ep", "existential-positive" }));
        cmd->add_option("-k", o.k, "rounds, pebbles or modal depth")->check(CLI::NonNegativeNumber);
        cmd->add_option("-n", o.n, "pebble game: number of rounds")->check(CLI::PositiveNumber);
        cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({ "text", "json" }));
    }

    auto game_spec(const GameOptions & o) -> GameSpec
    {
        GameSpec spec;
        spec.family = *parse_game_family(o.family);
        spec.mode = *parse_mode(o.mode);
        spec.k = o.k;
        if (o.n) {
            if (spec.family != GameFamily::Pebble)
                throw PreconditionViolated("-n applies to the pebble game only");
            spec.rounds = o.n;
        }
        return spec;
    }

    auto format_of(const GameOptions & o) -> ReportFormat
    {
        return o.format == "json" ? ReportFormat::Json : ReportFormat::Text;
    }

    auto read_formula(const string & text) -> Formula
    {
        if (! text.empty() && text[0] == '@') {
            std::ifstream in(text.substr(1));
            if (! in)
                throw Error("cannot open " + text.substr(1));
            std::stringstream buffer;
            buffer << in.rdbuf();
            auto content = buffer.str();
            while (! content.empty() && (content.back() == '\n' || content.back() == '\r'))
                content.pop_back();
            return parse_formula(content);
        }
        return parse_formula(text);
    }

    auto bisim_family(GameFamily family) -> BisimFamily
    {
        if (family == GameFamily::Pebble)
            throw Error("the coalgebra route is available for ef and modal games only");
        return family == GameFamily::EF ? BisimFamily::EFI : BisimFamily::Modal;
    }

    /// One direction of `check`; returns the report with "preserved".
    auto check_direction(const GameSpec & spec, const string & via, const Structure & a, const Structure & b) -> Report
    {
        if (via == "game") {
            Game game(spec, a, b);
            optional<Formula> witness;
            if (! game.duplicator_wins())
                witness = distinguish(game);
            auto r = game_report(game, witness, false);
            r["preserved"] = game.duplicator_wins();
            r["via"] = via;
            return r;
        }
        if (via == "oracle") {
            if (spec.rounds)
                throw Error("the oracle decides the unbounded pebble game only");
            auto r = oracle_report(fragment_of(spec), oracle_preserves(fragment_of(spec), a, b));
            r["via"] = via;
            return r;
        }
        auto family = bisim_family(spec.family);
        bool preserved = coalgebra_preserves(spec.mode, cofree_pair(a, family, spec.k), cofree_pair(b, family, spec.k));
        Report r;
        r["schemaVersion"] = report_schema_version;
        r["family"] = to_string(spec.family);
        r["mode"] = to_string(spec.mode);
        r["k"] = spec.k;
        r["preserved"] = preserved;
        r["via"] = via;
        return r;
    }

    auto print(const Report & r, ReportFormat format) -> void
    {
        std::cout << render(r, format);
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{ "Finite model comparison: games, comonadic coalgebras and a signature oracle" };
    app.require_subcommand(1);

    GameOptions check_opts;
    string via = "game";
    bool both = false;
    vector<string> check_files;
    auto check = app.add_subcommand("check", "Decide preservation (or equivalence with --both)");
    add_game_options(check, check_opts);
    check->add_option("--via", via, "game, oracle or coalgebra")->check(CLI::IsMember({ "game", "oracle", "coalgebra" }));
    check->add_flag("--both", both, "check both directions");
    check->add_option("files", check_files, "A.fms B.fms")->required()->expected(2);

    GameOptions dist_opts;
    vector<string> dist_files;
    auto dist = app.add_subcommand("distinguish", "Synthesise a distinguishing sentence");
    add_game_options(dist, dist_opts);
    dist->add_option("files", dist_files, "A.fms B.fms")->required()->expected(2);

    string mc_formula, mc_file;
    vector<string> mc_assign;
    optional<string> mc_world;
    auto mc = app.add_subcommand("modelcheck", "Evaluate a formula (inline or @file)");
    mc->add_option("formula", mc_formula)->required();
    mc->add_option("file", mc_file)->required();
    mc->add_option("--assign", mc_assign, "x1=v bindings");
    mc->add_option("--world", mc_world, "world for modal formulas (default: the point)");

    GameOptions build_opts;
    bool with_i = false;
    string build_file, build_out;
    auto build_cmd = app.add_subcommand("build", "Build a cofree coalgebra");
    add_game_options(build_cmd, build_opts);
    build_cmd->add_flag("--with-I", with_i, "add the equality surrogate I");
    build_cmd->add_option("-o", build_out, "output file (default stdout)");
    build_cmd->add_option("file", build_file)->required();

    string validate_file;
    auto validate = app.add_subcommand("validate", "Check the coalgebra conditions of a .fmc file");
    validate->add_option("file", validate_file)->required();

    string morph_kind = "hom";
    vector<string> morph_files;
    auto morph = app.add_subcommand("morphism", "Search a morphism between two .fmc files");
    morph->add_option("--kind", morph_kind, "hom, I, pathwise or open")->check(CLI::IsMember({ "hom", "I", "pathwise", "open" }));
    morph->add_option("files", morph_files, "X.fmc Y.fmc")->required()->expected(2);

    GameOptions laws_opts;
    bool laws_i = false;
    string laws_file;
    auto laws = app.add_subcommand("laws", "Check the comonad laws over a structure");
    add_game_options(laws, laws_opts);
    laws->add_flag("--with-I", laws_i, "use the equality surrogate");
    laws->add_option("file", laws_file)->required();

    GameOptions oracle_opts;
    vector<string> oracle_files;
    auto oracle = app.add_subcommand("oracle", "Decide preservation with the signature oracle");
    add_game_options(oracle, oracle_opts);
    oracle->add_option("files", oracle_files, "A.fms B.fms")->required()->expected(2);

    GameOptions play_opts;
    string role = "spoiler";
    vector<string> play_files;
    auto play = app.add_subcommand("play", "Play a game against the engine");
    add_game_options(play, play_opts);
    play->add_option("--as", role, "spoiler or duplicator")->check(CLI::IsMember({ "spoiler", "duplicator" }));
    play->add_option("files", play_files, "A.fms B.fms")->required()->expected(2);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) {
            auto spec = game_spec(check_opts);
            auto a = read_structure_file(check_files[0]);
            auto b = read_structure_file(check_files[1]);
            auto forward = check_direction(spec, via, a, b);
            if (! both) {
                print(forward, format_of(check_opts));
                return forward["preserved"].get<bool>() ? 0 : 1;
            }
            auto backward = check_direction(spec, via, b, a);
            Report r;
            r["schemaVersion"] = report_schema_version;
            r["forward"] = forward;
            r["backward"] = backward;
            bool equivalent = forward["preserved"].get<bool>() && backward["preserved"].get<bool>();
            r["equivalent"] = equivalent;
            print(r, format_of(check_opts));
            return equivalent ? 0 : 1;
        }

        if (*dist) {
            Game game(game_spec(dist_opts), read_structure_file(dist_files[0]), read_structure_file(dist_files[1]));
            if (game.duplicator_wins()) {
                std::cout << "no distinguishing formula: Duplicator wins\n";
                return 1;
            }
            std::cout << to_string(distinguish(game)) << '\n';
            return 0;
        }

        if (*mc) {
            auto f = read_formula(mc_formula);
            auto a = read_structure_file(mc_file);
            bool value;
            if (is_modal_formula(f) || has_modal_nodes(f)) {
                int world = *a.point();
                if (mc_world) {
                    auto w = a.find_element(*mc_world);
                    if (! w)
                        throw Error("no element " + *mc_world);
                    world = *w;
                }
                else if (! a.point())
                    throw Error("modal formula needs a point or --world");
                value = holds_at(f, a, world);
            }
            else {
                Assignment alpha;
                for (auto & binding : mc_assign) {
                    auto eq = binding.find('=');
                    if (eq == string::npos || binding.size() < 2 || binding[0] != 'x')
                        throw Error("bad binding " + binding + " (expected x1=v)");
                    auto e = a.find_element(binding.substr(eq + 1));
                    if (! e)
                        throw Error("no element " + binding.substr(eq + 1));
                    alpha.bind(std::stoi(binding.substr(1, eq - 1)), *e);
                }
                value = model_check(f, a, alpha);
            }
            std::cout << (value ? "true" : "false") << '\n';
            return value ? 0 : 1;
        }

        if (*build_cmd) {
            auto a = read_structure_file(build_file);
            ComonadSpec spec;
            spec.kind = *parse_coalgebra_kind(build_opts.family);
            spec.k = build_opts.k;
            spec.depth = build_opts.n.value_or(1);
            spec.with_equality = with_i;
            auto text = serialize(build(spec, a));
            if (build_out.empty())
                std::cout << text;
            else {
                std::ofstream out(build_out);
                if (! out)
                    throw Error("cannot write " + build_out);
                out << text;
            }
            return 0;
        }

        if (*validate) {
            auto problems = validate_coalgebra(read_coalgebra_file(validate_file));
            if (problems.empty()) {
                std::cout << "valid\n";
                return 0;
            }
            for (auto & p : problems)
                std::cout << p << '\n';
            return 1;
        }

        if (*morph) {
            auto x = read_coalgebra_file(morph_files[0]);
            auto y = read_coalgebra_file(morph_files[1]);
            auto w = find_morphism(*parse_morphism_kind(morph_kind), x, y);
            if (! w) {
                std::cout << "none\n";
                return 1;
            }
            for (int e = 0 ; e < x.size() ; ++e)
                std::cout << "map " << x.carrier().element_name(e) << ' ' << y.carrier().element_name(w->map[e]) << '\n';
            std::cout << "verified";
            for (auto tag : w->verified)
                std::cout << ' ' << to_string(tag);
            std::cout << '\n';
            return 0;
        }

        if (*laws) {
            auto a = read_structure_file(laws_file);
            ComonadSpec spec;
            spec.kind = *parse_coalgebra_kind(laws_opts.family);
            spec.k = laws_opts.k;
            spec.depth = laws_opts.n.value_or(1);
            spec.with_equality = laws_i;
            auto fa = build(spec, a);
            auto counit = counit_map(fa);
            auto endos = homomorphisms(a, a, 8);
            vector<string> failures;
            for (auto & h : endos)
                for (auto & h2 : endos) {
                    vector<int> f, g;
                    for (int c : counit) {
                        f.push_back(h[c]);
                        g.push_back(h2[c]);
                    }
                    for (auto & failure : check_laws(spec, a, f, a, g, a).failures)
                        failures.push_back(failure);
                }
            if (failures.empty()) {
                std::cout << "all laws hold (" << endos.size() * endos.size() << " instances)\n";
                return 0;
            }
            for (auto & f : failures)
                std::cout << f << '\n';
            return 1;
        }

        if (*oracle) {
            auto spec = game_spec(oracle_opts);
            if (spec.rounds)
                throw Error("the oracle decides the unbounded pebble game only");
            auto verdict = oracle_preserves(fragment_of(spec), read_structure_file(oracle_files[0]),
                    read_structure_file(oracle_files[1]));
            print(oracle_report(fragment_of(spec), verdict), format_of(oracle_opts));
            return verdict.preserved ? 0 : 1;
        }

        if (*play) {
            Game game(game_spec(play_opts), read_structure_file(play_files[0]), read_structure_file(play_files[1]));
            return run_play(game, role == "spoiler", std::cin, std::cout);
        }
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
