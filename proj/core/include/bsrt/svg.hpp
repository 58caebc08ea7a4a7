#pragma once

#include <string>

#include "bsrt/tree.hpp"
#include "bsrt/types.hpp"

namespace bsrt {

/// Static debug view: one rectangle per symbol box with its label and, when
/// a tree is given, one labeled arrow per edge. Output is deterministic
/// (fixed element order and number formatting), so reruns are byte-identical.
std::string render_svg(const Expression& expression, const Bsrt* tree = nullptr);

}  // namespace bsrt
