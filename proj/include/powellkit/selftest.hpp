#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pk {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct SelftestConfig {
    std::vector<int> genera{2, 3};
    std::optional<std::string> table_path;  // replaces the built-in table at its genus
    int jobs = 1;
    std::uint64_t seed = 20240611;
    int bound = 64;
};

std::string criterion_name(int id);

// Runs the acceptance criteria (all of 1..11 when `only` is empty). Progress
// lines go to `progress` as criteria finish; results come back in id order.
std::vector<CriterionResult> run_selftest(const SelftestConfig& config, std::ostream* progress = nullptr,
                                          const std::set<int>& only = {});

std::string format_result(const CriterionResult& r);

}  // namespace pk
