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

// Command dispatch for the difftower tool and the structured report.

#ifndef DIFFTOWER_CLI_COMMANDS_HPP
#define DIFFTOWER_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "difftower/solver.hpp"
#include "difftower/syntax.hpp"
#include "json.hpp"

namespace difftower::cli {

/// Wrong arity, unknown command or malformed argument outside the grammar.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum ExitCode { exit_ok = 0, exit_domain = 1, exit_usage = 2 };

struct Options {
    std::optional<std::uint64_t> seed;
    SearchBounds bounds;
};

struct Report {
    std::string command;
    std::vector<std::string> args;
    nlohmann::json result = nlohmann::json::object();
    nlohmann::json provenance = nlohmann::json::object();
    std::string text;   // plain-text output
    std::string error;  // empty on success
    int exit_code = exit_ok;

    friend bool operator==(const Report&, const Report&) = default;
};

void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// Machine-readable mirror of a verdict.
nlohmann::json verdict_json(const Verdict& v, const Tower& tower);

/// Names and one-line synopses of every command.
const std::vector<std::pair<std::string, std::string>>& command_table();

/// Runs one command. Errors are reported in the result, never thrown:
/// syntax and usage errors give exit code 2, domain errors 1.
Report run_command(const Script& script, const std::string& command, const std::vector<std::string>& args,
                   const Options& options = {});

}  // namespace difftower::cli

#endif  // DIFFTOWER_CLI_COMMANDS_HPP
