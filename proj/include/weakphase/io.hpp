#pragma once

#include <iosfwd>
#include <string>

#include "weakphase/dic.hpp"
#include "weakphase/pointer.hpp"

namespace weakphase {

// CSV files: one header line, comma separated, doubles printed with 17
// significant digits so that values round-trip exactly.

/// t,re,im
void write_envelope_csv(std::ostream& os, const Envelope& env);
/// omega,intensity
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
/// x,intensity,valid
void write_dic_csv(std::ostream& os, const DicImage& img);

/// Reads "x,phase" rows (an optional non-numeric header line is skipped).
/// The x column must be uniformly spaced. Throws ParseError.
PhaseProfile read_phase_profile_csv(std::istream& is);
PhaseProfile read_phase_profile_csv_file(const std::string& path);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace weakphase
