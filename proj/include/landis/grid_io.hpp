#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "landis/grid_function.hpp"
#include "landis/params.hpp"

namespace landis {

/// Shortest-safe decimal for bit-exact round trips (17 significant digits).
std::string format_double(double x);

/// Columnar text: `params`, `domain`, `tail` header rows of key,value pairs, then
/// one row per node (index, coordinates, value).
void write_grid_csv(std::ostream& os, const GridFunction& u, const Params& params);

struct LoadedGrid {
    Params params;
    GridFunction u;
};
LoadedGrid read_grid_csv(std::istream& is);

/// Writes to a temporary file next to `path`, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

void save_grid_csv(const std::filesystem::path& path, const GridFunction& u, const Params& params);
LoadedGrid load_grid_csv(const std::filesystem::path& path);

}  // namespace landis
