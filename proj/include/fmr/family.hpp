#pragma once

#include "fmr/scalar.hpp"

#include <string>

namespace fmr {

enum class Family { Double, Hypersurface };

inline const char* family_name(Family f) { return f == Family::Double ? "double" : "hypersurface"; }

inline Family parse_family(const std::string& s) {
    if (s == "double") return Family::Double;
    if (s == "hypersurface") return Family::Hypersurface;
    throw FieldError("unknown family '" + s + "' (expected double or hypersurface)");
}

}  // namespace fmr
