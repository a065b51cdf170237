// Runs the acceptance battery and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fhodge/acceptance.hpp"

using namespace fhodge;

namespace {

constexpr double kRoundTripLimitSeconds = 120.0;

bool capture(const std::string& command, std::string& output) {
    output.clear();
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return false;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    int status = pclose(pipe);
    // the suite exits 1 when a criterion fails; the report is still complete
    return status != -1 && !output.empty();
}

void line(int id, bool pass, const std::string& title, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  (" << detail << ")"
              << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance battery"};
    BatteryOptions opts;
    std::string tool = FHODGE_TOOL_PATH;
    app.add_option("--seeds", opts.seeds, "Battery scale (1000 = full counts)");
    app.add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    app.add_option("--tool", tool, "Path of the fhodge command-line tool");
    CLI11_PARSE(app, argc, argv);

    std::vector<CriterionResult> results;
    bool all = true;
    for (int id = 1; id <= 8; ++id) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = run_criterion(id, opts);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = r.pass();
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1fs", secs);
        std::string detail = "samples=" + std::to_string(r.samples) + " failures=" + std::to_string(r.failures) +
                             " time=" + timing;
        if (id == 1) {
            pass = pass && secs < kRoundTripLimitSeconds;
            detail += " limit=120s";
        }
        line(id, pass, r.title, detail);
        for (const auto& e : r.failure_examples) std::cout << "      " << e << "\n";
        all = all && pass;
        results.push_back(std::move(r));
    }

    // 9: the same battery from two separate processes, byte for byte, and equal to this run
    std::string expected = dump(battery_to_json(results, opts));
    std::string cmd = "\"" + tool + "\" suite --seeds " + std::to_string(opts.seeds);
    std::string first, second;
    bool ran = capture(cmd, first) && capture(cmd, second);
    bool same = ran && first == second && first == expected;
    std::string detail = !ran ? "could not run " + tool
                              : "runs=2 bytes=" + std::to_string(first.size()) +
                                    (first == second ? " identical" : " differ") +
                                    (first == expected ? ", matches in-process run" : ", differs from in-process run");
    line(9, same, "determinism of suite reports", detail);
    all = all && same;
    return all ? 0 : 1;
}
