#include "hkh/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv)
{
    CLI::App app{"Homotopical Khovanov homology of links in thickened surfaces"};
    app.require_subcommand(1);

    hkh::RunConfig config;
    std::string flavor = "homotopical";
    std::string format = "text";
    bool no_shift = false;

    auto add_common = [&](CLI::App* sub, bool input_required) {
        auto* opt = sub->add_option("input", config.input, "Diagram JSON file");
        if (input_required)
            opt->required();
        sub->add_option("--flavor", flavor, "homotopical or classical")
            ->check(CLI::IsMember({"homotopical", "classical"}));
        sub->add_flag("--no-shift", no_shift, "Skip the n+/n- grading shifts");
        sub->add_option("--seed", config.seed, "Random seed");
    };

    auto* compute = app.add_subcommand("compute", "Print the homology table");
    add_common(compute, true);
    compute->add_option("--format", format, "text, tsv or json")->check(CLI::IsMember({"text", "tsv", "json"}));

    auto* d2 = app.add_subcommand("verify-d2", "Check d o d = 0 in every slice (random diagrams without input)");
    add_common(d2, false);
    d2->add_option("--fuzz", config.fuzz, "Number of random diagrams")->check(CLI::NonNegativeNumber);

    auto* moves = app.add_subcommand("verify-moves", "Compare tables across Reidemeister moves");
    add_common(moves, true);
    moves->add_option("--moves", config.moves, "Move list, e.g. \"r1+:edge=3,r2:edges=1,4\"");

    auto* table1 = app.add_subcommand("verify-table1", "Check the face commutativity relations");

    auto* dump = app.add_subcommand("dump-cube", "Print resolutions and bifurcations");
    add_common(dump, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    static const std::map<CLI::App*, hkh::Command> commands{
        {compute, hkh::Command::compute},
        {d2, hkh::Command::verify_d2},
        {moves, hkh::Command::verify_moves},
        {table1, hkh::Command::verify_table1},
        {dump, hkh::Command::dump_cube},
    };
    config.command = commands.at(app.get_subcommands().front());
    config.flavor = flavor == "classical" ? hkh::Flavor::classical : hkh::Flavor::homotopical;
    config.format = format == "json" ? hkh::ReportFormat::json
                    : format == "tsv" ? hkh::ReportFormat::tsv
                                      : hkh::ReportFormat::text;
    config.shift = !no_shift;
    return hkh::run(config, std::cout, std::cerr);
}
