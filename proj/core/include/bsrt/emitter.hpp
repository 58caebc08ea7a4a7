#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bsrt/tree.hpp"

namespace bsrt {

/// Canonical LaTeX token list: backslash commands, single characters, and
/// the structural tokens { } ^ _. Scripts are always brace-wrapped.
using TokenSequence = std::vector<std::string>;

/// Serializes a tree depth-first: Right chains concatenate; a "-" node with
/// Above and Below slots becomes \frac{above}{below} (the bar token itself
/// is consumed); a container node with an Inside slot wraps its content in
/// braces after its own token; scripts emit as ^{...} then _{...}. Children
/// sharing a slot are emitted in ascending x_min order.
/// Throws ContractError when the tree violates the Bsrt invariants or
/// carries Above/Below edges outside a fraction.
TokenSequence emit_latex(const Bsrt& tree);

/// Tokenizes a LaTeX string into the canonical form: longest-match backslash
/// commands, whitespace and $ dropped, \left( / \right) normalized to bare
/// parens, \dfrac aliased to \frac, unbraced single-token scripts braced.
/// Throws TokenizeError (with character position) on unbalanced braces or an
/// unknown command.
TokenSequence tokenize_latex(std::string_view s);

/// Joins tokens with single spaces; tokenize_latex(render_string(t)) == t.
std::string render_string(const TokenSequence& tokens);

}  // namespace bsrt
