#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ramify {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::string action;  // group sylow|complement|conjnil
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::uint32_t r = 1;
    std::uint32_t k = 2;
    std::uint32_t N = 8;
    std::size_t M = 0;  // 0: smallest precision the command needs
    std::size_t s_max = 6;
    std::uint32_t S = 3;
    std::size_t window = 0;
    std::size_t trials = 200;
    std::string law = "honda";
    bool rational = false;
    std::string algebra = "poly:2";
    std::string algebra_file;
    std::string gens;
    std::string format = "table";
    std::optional<std::string> out;
    std::uint64_t seed = 0;
};

struct Report {
    std::string command;
    nlohmann::json params;
    nlohmann::json result;
    std::string verdict;
    std::vector<std::string> lines;
    int exit_code = 0;

    std::string render(const std::string& format) const;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int precondition = 2;
inline constexpr int inconclusive = 3;
inline constexpr int unknown_command = 64;
inline constexpr int malformed_input = 65;
} // namespace exit_code

/// Thrown for unreadable or ill-formed input files.
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs one validated configuration. Precondition failures propagate as exceptions.
Report run(const RunConfig& config);

/// Full command-line entry point; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ramify
