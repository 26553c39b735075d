#include "channelspin/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>

#include "channelspin/errors.hpp"

namespace channelspin {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 84.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 56.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fixed2(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed, 2);
    return std::string(buffer, ptr);
}

std::string label(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 6);
    return std::string(buffer, ptr);
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo;
    double hi;
    double span() const { return hi - lo; }
};

Range padded(Range range) {
    if (!(range.span() > 0.0)) {
        const double pad = range.lo == 0.0 ? 1.0 : std::abs(range.lo) * 0.5;
        return {range.lo - pad, range.hi + pad};
    }
    return range;
}

}  // namespace

void write_polyline_svg(const std::filesystem::path& path,
                        const std::vector<CsvColumn>& columns,
                        const std::string& title) {
    if (columns.size() < 2) {
        throw ValidationError("SVG plot requires an x column and at least one series");
    }
    const std::vector<double>& xs = columns.front().values;
    for (const CsvColumn& column : columns) {
        if (column.values.size() != xs.size()) {
            throw GridMismatch("SVG columns must have equal length");
        }
    }
    if (xs.empty()) {
        throw ValidationError("SVG plot requires at least one sample");
    }

    Range x_range{xs.front(), xs.front()};
    for (const double x : xs) {
        x_range.lo = std::min(x_range.lo, x);
        x_range.hi = std::max(x_range.hi, x);
    }
    Range y_range{columns[1].values.front(), columns[1].values.front()};
    for (std::size_t c = 1; c < columns.size(); ++c) {
        for (const double y : columns[c].values) {
            y_range.lo = std::min(y_range.lo, y);
            y_range.hi = std::max(y_range.hi, y);
        }
    }
    x_range = padded(x_range);
    y_range = padded(y_range);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto to_px = [&](double x) {
        return kMarginLeft + (x - x_range.lo) / x_range.span() * plot_w;
    };
    const auto to_py = [&](double y) {
        return kMarginTop + (y_range.hi - y) / y_range.span() * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"540\" "
           "viewBox=\"0 0 960 540\">\n";
    out += "<rect width=\"960\" height=\"540\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"480\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\" fill=\"#222222\">" + escape(title) + "</text>\n";

    // Frame and ticks.
    out += "<rect x=\"" + fixed2(kMarginLeft) + "\" y=\"" + fixed2(kMarginTop) +
           "\" width=\"" + fixed2(plot_w) + "\" height=\"" + fixed2(plot_h) +
           "\" fill=\"none\" stroke=\"#444444\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = x_range.lo + x_range.span() * i / kTicks;
        const double px = to_px(fx);
        out += "<line x1=\"" + fixed2(px) + "\" y1=\"" + fixed2(kMarginTop + plot_h) +
               "\" x2=\"" + fixed2(px) + "\" y2=\"" + fixed2(kMarginTop + plot_h + 6.0) +
               "\" stroke=\"#444444\"/>\n";
        out += "<text x=\"" + fixed2(px) + "\" y=\"" + fixed2(kMarginTop + plot_h + 22.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" + label(fx) + "</text>\n";

        const double fy = y_range.lo + y_range.span() * i / kTicks;
        const double py = to_py(fy);
        out += "<line x1=\"" + fixed2(kMarginLeft - 6.0) + "\" y1=\"" + fixed2(py) +
               "\" x2=\"" + fixed2(kMarginLeft) + "\" y2=\"" + fixed2(py) +
               "\" stroke=\"#444444\"/>\n";
        out += "<text x=\"" + fixed2(kMarginLeft - 10.0) + "\" y=\"" + fixed2(py + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" + label(fy) + "</text>\n";
    }
    out += "<text x=\"" + fixed2(kMarginLeft + plot_w / 2.0) + "\" y=\"" +
           fixed2(kHeight - 10.0) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" fill=\"#222222\">" + escape(columns.front().name) +
           "</text>\n";

    // Series.
    for (std::size_t c = 1; c < columns.size(); ++c) {
        const char* color = kPalette[(c - 1) % kPaletteSize];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += fixed2(to_px(xs[i]));
            out += ',';
            out += fixed2(to_py(columns[c].values[i]));
        }
        out += "\"/>\n";

        const double ly = kMarginTop + 18.0 + 18.0 * static_cast<double>(c - 1);
        out += "<line x1=\"" + fixed2(kMarginLeft + plot_w - 150.0) + "\" y1=\"" +
               fixed2(ly - 4.0) + "\" x2=\"" + fixed2(kMarginLeft + plot_w - 126.0) +
               "\" y2=\"" + fixed2(ly - 4.0) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"3\"/>\n";
        out += "<text x=\"" + fixed2(kMarginLeft + plot_w - 120.0) + "\" y=\"" +
               fixed2(ly) + "\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" + escape(columns[c].name) + "</text>\n";
    }
    out += "</svg>\n";

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    file.flush();
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace channelspin
