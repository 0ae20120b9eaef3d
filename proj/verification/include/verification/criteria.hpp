#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "landis/parallel.hpp"
#include "landis/report.hpp"

namespace verification {

struct CriterionOutcome {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string summary;
    double limit_seconds = 0.0;  // 0: no runtime limit
    double seconds = 0.0;
    landis::ExperimentReport report;
    std::vector<landis::Table> tables;
};

inline constexpr int kCriteria = 9;

/// Runs one acceptance criterion (1..9). Criterion 9 runs the corpus twice in
/// scratch directories under `scratch` and compares the bytes.
CriterionOutcome run_criterion(int id, landis::Exec exec = landis::Exec::parallel,
                               const std::filesystem::path& scratch = {});

/// Criteria 1..8 with their artifacts written to dir/criterion_<k>/.
std::vector<CriterionOutcome> run_corpus(const std::filesystem::path& dir, landis::Exec exec = landis::Exec::parallel);

/// First differing relative path, or empty when both trees hold identical files.
std::string compare_trees(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace verification
