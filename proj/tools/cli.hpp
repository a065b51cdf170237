#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fhodge {

enum ExitCode { kExitOk = 0, kExitDomain = 1, kExitMalformed = 2 };

/// Flags of the individual commands.
struct CommandOptions {
    bool check_iso = false;      // dual
    bool report = false;         // univ-ext
    std::string profile;         // gen
    std::uint64_t seed = 1;      // gen
    std::uint64_t seeds = 1000;  // suite
    unsigned threads = 0;        // suite
};

/// Exit code plus the text destined for stdout and stderr.
struct CommandResult {
    int code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs one command on document texts already in memory.
CommandResult execute(const std::string& command, const std::vector<std::string>& texts,
                      const CommandOptions& opts = {});

/// Runs one command line (without the program name). Results go to `out` as
/// JSON, diagnostics to `err` as JSON.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fhodge
