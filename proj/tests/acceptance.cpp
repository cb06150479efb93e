// Runs acceptance criteria 1-11; one PASS/FAIL line per criterion.
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <thread>

#include "powellkit/selftest.hpp"

int main(int argc, char** argv) {
    pk::SelftestConfig cfg;
    cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    auto results = pk::run_selftest(cfg, nullptr, only);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << pk::format_result(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) + " criteria" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
