// Acceptance runner: executes the full verification battery and prints one
// PASS/FAIL line per check.  With --fixture FILE the derived values are also
// compared against a recorded run; --record FILE (re)writes that record.
// Exit status is zero only when everything passes.

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "wpl/suite.hpp"

int main(int argc, char** argv) {
    std::string fixture_path, record_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--fixture" && i + 1 < argc) {
            fixture_path = argv[++i];
        } else if (arg == "--record" && i + 1 < argc) {
            record_path = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--fixture FILE] [--record FILE]\n";
            return 2;
        }
    }

    const wpl::SuiteReport report = wpl::run_suite();
    wpl::print_suite(std::cout, report);
    const nlohmann::json values = wpl::suite_fixture(report);
    bool ok = report.all_pass();

    if (!record_path.empty()) {
        std::ofstream out(record_path);
        out << values.dump(2) << '\n';
        if (!out) {
            std::cerr << "failed to write " << record_path << '\n';
            return 2;
        }
        std::cout << "recorded " << record_path << '\n';
    }
    if (!fixture_path.empty()) {
        std::ifstream in(fixture_path);
        if (!in) {
            std::cerr << "failed to read " << fixture_path << '\n';
            return 2;
        }
        const nlohmann::json expected = nlohmann::json::parse(in);
        const bool match = values == expected;
        std::cout << "[fx] " << (match ? "PASS" : "FAIL")
                  << "  recorded values match the fixture\n";
        ok = ok && match;
    }
    return ok ? 0 : 1;
}
