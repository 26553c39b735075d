#include "channelspin/csv.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>

#include "channelspin/errors.hpp"

namespace channelspin {

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value,
                      std::chars_format::general, 17);
    return std::string(buffer, ptr);
}

std::string render_csv(const std::vector<CsvColumn>& columns) {
    if (columns.empty()) {
        throw ValidationError("CSV requires at least one column");
    }
    const std::size_t n_rows = columns.front().values.size();
    for (const CsvColumn& column : columns) {
        if (column.values.size() != n_rows) {
            throw GridMismatch("CSV columns must have equal length");
        }
    }
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += columns[c].name;
    }
    out += '\n';
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += format_double(columns[c].values[r]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<CsvColumn>& columns) {
    const std::string body = render_csv(columns);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file.write(body.data(), static_cast<std::streamsize>(body.size()));
    file.flush();
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace channelspin
