#include "tbw/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace tbw {

void write_manifest(const std::string& path, const std::string& command, const Config& resolved,
                    std::uint64_t dataset_checksum, const std::vector<std::string>& artifacts) {
    std::ofstream os(path);
    if (!os) throw MissingArtifact("write_manifest: cannot open " + path);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(dataset_checksum));
    os << "# tbwq run-manifest v1\n";
    os << "command = " << command << '\n';
    os << "dataset_checksum = " << buf << '\n';
    for (const std::string& a : artifacts) os << "artifact = " << a << '\n';
    os << '\n' << resolved.serialize();
}

namespace {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return (hi > lo) ? hi - lo : 1.0; }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<SvgSeries>& series) {
    const int W = 960, H = 540, ml = 70, mr = 20, mt = 40, mb = 50;
    Extent ex, ey;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.xy) {
            if (std::isfinite(x) && std::isfinite(y)) {
                ex.add(x);
                ey.add(y);
            }
        }
    }
    if (!std::isfinite(ex.lo)) {
        ex = {0.0, 1.0};
        ey = {0.0, 1.0};
    }
    const auto px = [&](double x) { return ml + (x - ex.lo) / ex.span() * (W - ml - mr); };
    const auto py = [&](double y) { return H - mb - (y - ey.lo) / ey.span() * (H - mt - mb); };

    std::ofstream os(path);
    if (!os) throw MissingArtifact("write_svg_plot: cannot open " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << W / 2 << "' y='22' text-anchor='middle' font-size='16'>" << title
       << "</text>\n";
    os << "<text x='" << W / 2 << "' y='" << H - 12 << "' text-anchor='middle' font-size='13'>"
       << xlabel << "</text>\n";
    os << "<text x='16' y='" << H / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
       << H / 2 << ")'>" << ylabel << "</text>\n";
    os << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr << "' height='"
       << H - mt - mb << "' fill='none' stroke='#888'/>\n";
    char buf[64];
    for (int i = 0; i <= 4; ++i) {
        const double xv = ex.lo + ex.span() * i / 4.0;
        const double yv = ey.lo + ey.span() * i / 4.0;
        std::snprintf(buf, sizeof buf, "%.3g", xv);
        os << "<text x='" << px(xv) << "' y='" << H - mb + 18
           << "' text-anchor='middle' font-size='11'>" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.3g", yv);
        os << "<text x='" << ml - 6 << "' y='" << py(yv) + 4
           << "' text-anchor='end' font-size='11'>" << buf << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % 6];
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.2' points='";
        for (const auto& [x, y] : series[k].xy) {
            if (std::isfinite(x) && std::isfinite(y)) os << px(x) << ',' << py(y) << ' ';
        }
        os << "'/>\n";
        os << "<text x='" << W - mr - 8 << "' y='" << mt + 16 + 16 * k
           << "' text-anchor='end' font-size='12' fill='" << color << "'>" << series[k].name
           << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace tbw
