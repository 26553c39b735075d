#pragma once

// Locale-independent CSV emission: '.' decimal separator, LF line endings,
// 17 significant digits (round-trip exact for doubles), no trailing comma.

#include <filesystem>
#include <string>
#include <vector>

namespace channelspin {

struct CsvColumn {
    std::string name;            // header cell, units suffixed (e.g. depth_m)
    std::vector<double> values;
};

std::string format_double(double value);  // via std::to_chars, 17 digits

std::string render_csv(const std::vector<CsvColumn>& columns);

// Writes render_csv() output. Throws IoError.
void write_csv(const std::filesystem::path& path, const std::vector<CsvColumn>& columns);

}  // namespace channelspin
