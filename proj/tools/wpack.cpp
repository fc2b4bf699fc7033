#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wpk/commands.hpp"
#include "wpk/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wave packet approximation checks"};
    app.require_subcommand(1);
    std::string config_path;
    std::vector<std::string> sets;

    for (const auto& name : wpk::command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value config file")->required();
        sub->add_option("--set", sets, "override key=value")->take_all();
    }
    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        wpk::RunConfig cfg = wpk::load_config(config_path, command, sets);
        wpk::CommandResult r = wpk::run_command(cfg);
        for (const auto& c : r.checks)
            std::cout << fmt::format("{:<32} {:>14.6e} {} {:<12.6g} {}\n", c.name, c.value, c.relation, c.threshold, c.pass ? "pass" : "FAIL");
        std::cout << "csv: " << r.csv_path << "\nplot: " << r.plt_path << "\n";
        return r.ok() ? 0 : 1;
    } catch (const wpk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << command << ": " << e.what() << "\n";
        return 3;
    }
}
