#pragma once

// Action of a map of U x R on the two ends {+inf, -inf} of the line, and the
// rotation rule used when too few boundary features survive to pin down a
// circle map.

#include <string>

#include "primend/circle_map.hpp"
#include "primend/error.hpp"
#include "primend/scalar.hpp"

namespace primend {

enum class Ends { Fixes, Swaps };

/// Ends action of a composition: swaps iff an odd number of parts swap.
inline Ends operator*(Ends a, Ends b) { return a == b ? Ends::Fixes : Ends::Swaps; }

inline std::string to_string(Ends e) { return e == Ends::Fixes ? "fixes" : "swaps"; }

inline Ends ends_from_string(const std::string& s) {
  if (s == "fixes") return Ends::Fixes;
  if (s == "swaps") return Ends::Swaps;
  throw Error(ErrorCode::ParseError, "ends must be 'fixes' or 'swaps', got '" + s + "'");
}

/// Flipping the line direction reverses orientation of the product.
inline Orientation line_orientation(Ends e) { return e == Ends::Fixes ? Orientation::Preserving : Orientation::Reversing; }

/// Rotation number when at most two boundary features are available.
/// Returns 0 for an orientation reversing map that fixes the ends and for
/// an orientation preserving map that swaps them. Otherwise 0 when the
/// features are left in place and 1/2 when they are permuted.
inline Rational edge_rule(Orientation orientation3, Ends ends, bool fixes_features) {
  const bool reversing = orientation3 == Orientation::Reversing;
  if ((reversing && ends == Ends::Fixes) || (!reversing && ends == Ends::Swaps)) return Rational(0);
  return fixes_features ? Rational(0) : Rational(1, 2);
}

}  // namespace primend
