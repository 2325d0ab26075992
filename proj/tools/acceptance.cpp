// Runs the ten acceptance criteria and prints one line per criterion.
#include "qg/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"qg acceptance suite"};
    unsigned long seed = 0;
    std::vector<int> only;
    bool verbose = false;
    app.add_option("--seed", seed, "random seed");
    app.add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, qg::kCriteria));
    app.add_flag("-v,--verbose", verbose, "print every check");
    CLI11_PARSE(app, argc, argv);
    if (only.empty())
        for (int i = 1; i <= qg::kCriteria; ++i) only.push_back(i);

    int failed = 0;
    for (int id : only) {
        qg::Criterion c = qg::run_criterion(id, seed);
        std::cout << qg::summary_line(c) << std::endl;
        if (verbose || !c.pass())
            for (const auto& k : c.checks)
                if (verbose || !k.pass)
                    std::cout << "      " << (k.pass ? "ok   " : "FAIL ") << k.name << "  " << k.residual << " <= "
                              << k.threshold << "\n";
        failed += !c.pass();
    }
    std::cout << (failed ? "FAILED " : "PASSED ") << only.size() - failed << "/" << only.size() << " criteria" << std::endl;
    return failed ? 1 : 0;
}
