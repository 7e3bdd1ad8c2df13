/// @file field_io.hpp
/// @brief Flat CSV serialization of fields. Header row `# grid n=<n> L=<L> N=<N>`,
///        then one row per node (scalar) or per ordered pair (off-diagonal).
///        Doubles are emitted with 17 significant digits so the round trip is
///        bit-exact.

#pragma once

#include <iosfwd>
#include <string>

#include "odfrac/fields.hpp"

namespace odfrac {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

void write_scalar_csv(std::ostream& os, const ScalarField& f);
void write_od_csv(std::ostream& os, const OffDiagonalField& f);

/// Parse errors carry the 1-based line number of the offending row.
ScalarField read_scalar_csv(std::istream& is);
OffDiagonalField read_od_csv(std::istream& is);

void save_scalar_csv(const std::string& path, const ScalarField& f);
void save_od_csv(const std::string& path, const OffDiagonalField& f);
ScalarField load_scalar_csv(const std::string& path);
OffDiagonalField load_od_csv(const std::string& path);

}  // namespace odfrac
