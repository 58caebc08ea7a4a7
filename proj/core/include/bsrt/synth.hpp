#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsrt/emitter.hpp"
#include "bsrt/types.hpp"

namespace bsrt {

/// Expression AST used by the synthetic layout generator. This is the
/// independent grammar the full pipeline is round-tripped against.
struct ExprAst {
    enum class Kind { Symbol, Row, Frac, Sqrt, Scripted };

    Kind kind = Kind::Symbol;
    std::string token;  // Symbol: the glyph; Scripted: the base glyph

    /// Row: all children. Frac: [numerator, denominator]. Sqrt: [radicand].
    /// Scripted: superscript (when has_sup) followed by subscript (when
    /// has_sub).
    std::vector<ExprAst> children;
    bool has_sup = false;
    bool has_sub = false;

    static ExprAst symbol(std::string tok);
    static ExprAst row(std::vector<ExprAst> children);
    static ExprAst frac(ExprAst num, ExprAst den);
    static ExprAst sqrt(ExprAst radicand);
    static ExprAst scripted(std::string base, const ExprAst* sup, const ExprAst* sub);
};

struct LayoutParams {
    double glyph_size = 32.0;   // base glyph height, pixels
    double script_scale = 0.6;  // per script level, in (0, 1)
    double gap = 9.6;           // horizontal spacing between row items, pixels
    double jitter = 0.0;        // translation noise as a fraction of the local glyph size, in [0, 0.5)
    std::uint64_t seed = 0;
};

/// Deterministic random AST with the given depth bound. Leaf tokens come
/// from the vocabulary minus the structural tokens "-" and "\sqrt". The top
/// level is always a Row; max_depth 1 yields a Row of plain symbols.
ExprAst random_ast(std::uint64_t seed, int max_depth, const Vocabulary& vocab);

/// Default vocabulary for synthetic expressions: digits, a few letters,
/// + = ( ), plus the structural tokens "-" and "\sqrt".
Vocabulary synth_vocabulary();

/// Places one box per leaf glyph plus a bar box per fraction and an
/// enclosing box per radical. Placement targets the default rule bands so
/// that at zero jitter the tree builder reconstructs the AST exactly.
/// Throws LayoutError when nesting shrinks glyphs below one pixel, or
/// ValidationError on jitter outside [0, 0.5).
std::vector<SymbolBox> layout(const ExprAst& ast, const LayoutParams& params);

/// Direct recursive printer for the AST, same canonical form as
/// emit_latex but implemented independently of the tree pipeline.
TokenSequence latex_of_ast(const ExprAst& ast);

}  // namespace bsrt
