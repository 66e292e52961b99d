/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "difftower/error.hpp"

namespace {

std::string command_list() {
    std::string s = "commands:\n";
    for (const auto& [name, synopsis] : difftower::cli::command_table()) s += "  " + synopsis + "\n";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace difftower;
    CLI::App app{"Exact differential algebra over towers of Q(x)", "difftower"};
    app.usage("Usage: difftower [OPTIONS] COMMAND [ARGS...]");
    app.footer(command_list());
    std::string tower_file, command;
    std::vector<std::string> args;
    bool json_out = false;
    cli::Options options;
    std::uint64_t seed = 0;
    app.add_option("--tower", tower_file, "tower script file")->check(CLI::ExistingFile);
    app.add_flag("--json", json_out, "print the structured report");
    auto* seed_opt = app.add_option("--seed", seed, "random seed for sampling commands");
    app.add_option("--bound-degree", options.bounds.degree, "degree bound of the polynomial part at infinity")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--bound-nodes", options.bounds.nodes, "node budget of the factorization search")
        ->check(CLI::PositiveNumber);
    // Everything after the command name is passed through verbatim, so
    // arguments may start with '-' or contain brackets.
    app.prefix_command();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::exit_ok : cli::exit_usage;
    }
    std::vector<std::string> rest = app.remaining();
    if (rest.empty()) {
        std::cerr << "error: missing command\n" << app.help();
        return cli::exit_usage;
    }
    command = rest.front();
    args.assign(rest.begin() + 1, rest.end());
    if (*seed_opt) options.seed = seed;

    Script script;
    try {
        if (!tower_file.empty()) {
            std::ifstream in(tower_file);
            std::stringstream buf;
            buf << in.rdbuf();
            script = parse_script(buf.str());
        } else {
            script = parse_script("");
        }
    } catch (const ParseError& e) {
        std::cerr << tower_file << ": syntax error: " << e.what() << "\n";
        return cli::exit_usage;
    }

    const cli::Report report = cli::run_command(script, command, args, options);
    if (json_out)
        std::cout << nlohmann::json(report).dump(2) << "\n";
    else if (report.exit_code == cli::exit_ok)
        std::cout << report.text << "\n";
    if (report.exit_code != cli::exit_ok) std::cerr << "error: " << report.error << "\n";
    return report.exit_code;
}
