#pragma once

// Two-column CSV used for traces and spectra. Lines starting with '#' carry
// metadata; the first other line is the column header.

#include "erspin/spectral.hpp"
#include "erspin/trace.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace erspin {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

void write_trace_csv(std::ostream& os, const Trace& t, const std::string& x_name,
                     const std::string& y_name, const Metadata& meta = {});

/// Throws InputError on malformed rows.
Trace read_trace_csv(std::istream& is);

/// Header "frequency_hz,value"; value is alpha.
void write_profile_csv(std::ostream& os, const SpectrumProfile& p);
SpectrumProfile read_profile_csv(std::istream& is, double baseline = 0.0);

}  // namespace erspin
