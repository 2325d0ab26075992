#pragma once

#include "qg/hopf.hpp"
#include "qg/io.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qg {

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, FNV-1a digest
    unsigned long seed = 0;
    double tolerance = 1e-9;
    std::vector<Check> checks;
    io::json results = io::json::object();
    double seconds = 0.0;

    bool pass() const;
    io::json to_json() const;
    std::string to_text() const;
};

inline constexpr double kDefaultTolerance = 1e-9;

// QG_TOLERANCE if set, else kDefaultTolerance; throws ParseError on junk.
double tolerance_from_env();

// The `qg` front end. Exit status: 0 all checks passed, 1 a check failed,
// 2 bad command line, unreadable or malformed input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qg
