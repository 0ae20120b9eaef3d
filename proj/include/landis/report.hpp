#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "landis/config.hpp"

namespace landis {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Everything a run reports. Wall-clock time is kept out of the files.
struct ExperimentReport {
    std::string subcommand;
    std::string digest;
    Json config = Json::object();
    Json mesh = Json::object();
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, bool>> flags;
    std::vector<std::pair<std::string, std::string>> notes;
    double wall_clock = 0.0;

    void scalar(const std::string& k, double v) { scalars.emplace_back(k, v); }
    void flag(const std::string& k, bool v) { flags.emplace_back(k, v); }
    void note(const std::string& k, const std::string& v) { notes.emplace_back(k, v); }
    bool passed() const;
    Json to_json() const;
};

/// Header row then one row per entry, 17 significant digits.
std::string table_csv(const Table& t);

/// Writes report.json and <name>.csv per table into `dir`, each atomically.
/// Throws std::runtime_error on IO failure.
void emit_tables(const ExperimentReport& report, const std::vector<Table>& tables, const std::filesystem::path& dir);

}  // namespace landis
