#pragma once

// Optional static plot layer: polylines of already-computed columns versus
// depth. Derived output only; never feeds back into CSV content.

#include <filesystem>

#include "channelspin/csv.hpp"

namespace channelspin {

// First column is the x axis, the rest become polylines. Deterministic
// output (no timestamps). Throws IoError.
void write_polyline_svg(const std::filesystem::path& path,
                        const std::vector<CsvColumn>& columns,
                        const std::string& title);

}  // namespace channelspin
