#include "landis/report.hpp"

#include <cmath>
#include <stdexcept>

#include "landis/grid_io.hpp"

namespace landis {

bool ExperimentReport::passed() const {
    for (const auto& [k, v] : flags)
        if (!v) return false;
    return true;
}

Json ExperimentReport::to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    j["inputs_digest"] = digest;
    j["status"] = passed() ? "pass" : "fail";
    Json f = Json::object();
    for (const auto& [k, v] : flags) f[k] = v;
    j["flags"] = f;
    Json s = Json::object();
    // non-finite values have no JSON literal; keep them readable as strings
    for (const auto& [k, v] : scalars) s[k] = std::isfinite(v) ? Json(v) : Json(format_double(v));
    j["scalars"] = s;
    Json n = Json::object();
    for (const auto& [k, v] : notes) n[k] = v;
    j["notes"] = n;
    j["mesh"] = mesh;
    j["config"] = config;
    return j;
}

std::string table_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) throw std::logic_error("table '" + t.name + "': ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_double(row[c]);
        out += '\n';
    }
    return out;
}

void emit_tables(const ExperimentReport& report, const std::vector<Table>& tables, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_file_atomic(dir / "report.json", report.to_json().dump(2) + "\n");
    for (const Table& t : tables) write_file_atomic(dir / (t.name + ".csv"), table_csv(t));
}

}  // namespace landis
