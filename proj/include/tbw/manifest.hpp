#pragma once

#include <string>
#include <vector>

#include "tbw/config.hpp"

namespace tbw {

// Everything needed to reproduce a run bit-exactly: the resolved config, the
// dataset checksum and the artifacts the run wrote.
void write_manifest(const std::string& path, const std::string& command, const Config& resolved,
                    std::uint64_t dataset_checksum, const std::vector<std::string>& artifacts);

// Tiny SVG polyline plot; the CSV is the contract, this is convenience.
struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> xy;
};

void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<SvgSeries>& series);

} // namespace tbw
