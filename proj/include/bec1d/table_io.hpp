#pragma once

#include <iosfwd>
#include <string>

#include "bec1d/spectra.hpp"

namespace bec1d {

// 17 significant digits, scientific, locale independent.
std::string format_double(double value);

// "# key=value" lines, a header, then one row per line. Spectrum tables use
// delta,T,R,L; Bragg tables use delta_q,R,T,L. Trailing cutoff,converged
// columns record the per-row grid.
void write_csv(std::ostream& out, const SpectrumTable& table);
void write_json(std::ostream& out, const SpectrumTable& table);

SpectrumTable read_csv(std::istream& in);
SpectrumTable read_json(std::istream& in);

}  // namespace bec1d
