#pragma once

#include <set>
#include <string>

#include "timedc/source.hpp"

namespace timedc {

// Flag that the frontend always defines, so tool-specific preludes in emitted
// C can be guarded with `#ifndef __TIMEDC__`.
inline constexpr const char* kToolFlag = "__TIMEDC__";

// Conditional-inclusion only: #if/#ifdef/#ifndef/#else/#endif over flags, plus
// #include lines, which are dropped. Macro definitions are rejected. Removed
// lines become empty so line numbers are unchanged.
SourceUnit preprocess(const SourceUnit& src, const std::set<std::string>& defines);

}  // namespace timedc
