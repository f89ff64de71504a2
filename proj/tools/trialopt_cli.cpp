// trialopt solve|sweep|policy|paid|hetero|verify --scenario <file> --out <file>
//          [--mode interior|binding_ir|report_only] [--round-T]

#include "trialopt/error.hpp"
#include "trialopt/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <utility>

int main(int argc, char** argv) {
    CLI::App app{"Free-trial contract solver"};
    app.require_subcommand(1, 1);

    std::string scenario_path, out_path, mode;
    bool round_T = false;
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "joint optimum of trial length and renewal price"},
        {"sweep", "re-solve or evaluate along the scenario's sweep grid"},
        {"policy", "baseline vs attention-shocked optimum"},
        {"paid", "paid-trial optimum with introductory price"},
        {"hetero", "mixture loss against a point mass at the mean"},
        {"verify", "check model invariants, exit 3 on any failure"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        sub->add_option("--out", out_path, "output CSV file")->required();
        sub->add_option("--mode", mode, "participation handling")
            ->check(CLI::IsMember({"interior", "binding_ir", "report_only"}));
        sub->add_flag("--round-T", round_T, "report T* rounded to whole days");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    trialopt::RunOptions opt;
    opt.round_T = round_T;
    if (!mode.empty()) opt.mode = trialopt::participation_mode_from_string(mode);
    const auto command = trialopt::command_from_string(app.get_subcommands().front()->get_name());
    return trialopt::run(command, scenario_path, out_path, opt, std::cerr);
}
