#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monoband/bands.hpp"
#include "monoband/simulate.hpp"

namespace monoband {

// Raw observations from a file: either one decimal per line (column empty) or
// delimiter-separated rows with a named value column. Throws input_error on
// unreadable, malformed or empty input.
std::vector<double> read_observations(const std::string& path,
                                      const std::string& column,
                                      char delimiter);

// CDF table rows (y, F) from a two-column delimited file with header "y,F".
std::vector<std::pair<double, double>> read_cdf_table(const std::string& path,
                                                      char delimiter);

void write_file(const std::string& path, const std::string& content);

// All numeric output is rendered at 6 significant digits.
std::string format_number(double v);

std::string band_to_csv(const BandResult& band, const std::vector<double>& ecdf);
std::string band_to_json(const BandResult& band,
                         const std::vector<double>& ecdf);
std::string band_to_svg(const BandResult& band, const std::vector<double>& ecdf);

std::string report_to_json(const CoverageReport& report);
std::string report_to_csv(const CoverageReport& report);

std::string profile_to_csv(const WidthProfile& profile);

// One panel per sample size, the signed envelope-minus-truth curves of every
// method in it.
std::string profiles_to_svg(
    const std::vector<std::pair<std::size_t, std::vector<WidthProfile>>>&
        panels);

}  // namespace monoband
