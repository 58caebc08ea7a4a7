#include "bsrt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bsrt/errors.hpp"

namespace bsrt {

ExprAst ExprAst::symbol(std::string tok) {
    ExprAst a;
    a.kind = Kind::Symbol;
    a.token = std::move(tok);
    return a;
}

ExprAst ExprAst::row(std::vector<ExprAst> children) {
    if (children.empty()) {
        throw ValidationError("Row must be non-empty");
    }
    ExprAst a;
    a.kind = Kind::Row;
    a.children = std::move(children);
    return a;
}

ExprAst ExprAst::frac(ExprAst num, ExprAst den) {
    ExprAst a;
    a.kind = Kind::Frac;
    a.children.push_back(std::move(num));
    a.children.push_back(std::move(den));
    return a;
}

ExprAst ExprAst::sqrt(ExprAst radicand) {
    ExprAst a;
    a.kind = Kind::Sqrt;
    a.children.push_back(std::move(radicand));
    return a;
}

ExprAst ExprAst::scripted(std::string base, const ExprAst* sup, const ExprAst* sub) {
    if (!sup && !sub) {
        throw ValidationError("Scripted needs at least one script");
    }
    ExprAst a;
    a.kind = Kind::Scripted;
    a.token = std::move(base);
    a.has_sup = sup != nullptr;
    a.has_sub = sub != nullptr;
    if (sup) a.children.push_back(*sup);
    if (sub) a.children.push_back(*sub);
    return a;
}

Vocabulary synth_vocabulary() {
    Vocabulary v;
    int id = 0;
    for (char c : std::string("0123456789abcdxyzABXY")) {
        v.insert(id++, std::string(1, c));
    }
    v.insert(id++, "+");
    v.insert(id++, "=");
    v.insert(id++, "(");
    v.insert(id++, ")");
    v.insert(id++, "-");
    v.insert(id++, "\\sqrt");
    return v;
}

namespace {

// Deterministic uniform in [0, 1); avoids std::uniform_real_distribution,
// whose output is implementation-defined.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

ExprAst gen_ast(std::mt19937_64& rng, int depth, const std::vector<std::string>& leaves) {
    auto leaf = [&] { return ExprAst::symbol(leaves[next_below(rng, leaves.size())]); };
    if (depth <= 1) {
        return leaf();
    }
    const std::uint64_t roll = next_below(rng, 100);
    if (roll < 25) {
        return leaf();
    }
    if (roll < 55) {
        std::vector<ExprAst> children;
        const std::uint64_t n = 2 + next_below(rng, 2);
        for (std::uint64_t i = 0; i < n; ++i) children.push_back(gen_ast(rng, depth - 1, leaves));
        return ExprAst::row(std::move(children));
    }
    if (roll < 70) {
        ExprAst num = gen_ast(rng, depth - 1, leaves);
        ExprAst den = gen_ast(rng, depth - 1, leaves);
        return ExprAst::frac(std::move(num), std::move(den));
    }
    if (roll < 85) {
        return ExprAst::sqrt(gen_ast(rng, depth - 1, leaves));
    }
    const std::uint64_t which = next_below(rng, 5);
    const std::string base = leaves[next_below(rng, leaves.size())];
    if (which < 2) {
        const ExprAst sup = gen_ast(rng, depth - 1, leaves);
        return ExprAst::scripted(base, &sup, nullptr);
    }
    if (which < 4) {
        const ExprAst sub = gen_ast(rng, depth - 1, leaves);
        return ExprAst::scripted(base, nullptr, &sub);
    }
    const ExprAst sup = gen_ast(rng, depth - 1, leaves);
    const ExprAst sub = gen_ast(rng, depth - 1, leaves);
    return ExprAst::scripted(base, &sup, &sub);
}

}  // namespace

ExprAst random_ast(std::uint64_t seed, int max_depth, const Vocabulary& vocab) {
    if (max_depth < 1) {
        throw ValidationError("random_ast: max_depth must be >= 1");
    }
    std::vector<std::string> leaves;
    for (const std::string& tok : vocab.tokens()) {
        if (tok != "-" && tok != "\\sqrt") leaves.push_back(tok);
    }
    if (leaves.empty()) {
        throw InputError("random_ast: vocabulary has no usable leaf tokens");
    }
    std::mt19937_64 rng(seed);
    std::vector<ExprAst> children;
    const std::uint64_t n = 1 + next_below(rng, 4);
    for (std::uint64_t i = 0; i < n; ++i) children.push_back(gen_ast(rng, max_depth, leaves));
    return ExprAst::row(std::move(children));
}

namespace {

// Placement constants as fractions of the local glyph size. Chosen so that
// every placement lands in the interior of the default rule bands:
//   - script axis offset 0.85 with scale 0.6 keeps even alternating
//     sub-of-sup chains at least 0.34 glyph heights off the baseline,
//     clear of the 0.25 script return band;
//   - the leading script glyph sees theta ~ 0.31*pi from its base, inside
//     the closed [0.1*pi, 0.4*pi] superscript band;
//   - fraction decks are x-centered on the bar, giving theta = +-pi/2.
constexpr double kGlyphW = 0.62;
constexpr double kThinGlyphH = 0.12;  // "-" drawn as a short dash
constexpr double kBarH = 0.12;
constexpr double kFracVGap = 0.25;
constexpr double kFracPad = 0.18;  // only when a side is composite
constexpr double kSqrtPad = 0.22;
constexpr double kScriptDx = 0.08;
constexpr double kScriptShift = 0.85;

struct PlacedBox {
    SymbolBox box;
    double local_size;  // glyph size at this box's nesting level
};

// A laid-out subtree in local coordinates: x in [0, width], y = 0 on the
// axis (the row line), negative y above it.
struct Sublayout {
    std::vector<PlacedBox> boxes;
    double width = 0.0;
    double up = 0.0;    // extent above the axis
    double down = 0.0;  // extent below the axis

    void absorb(Sublayout other, double dx, double dy) {
        for (PlacedBox& pb : other.boxes) {
            pb.box.x_min += dx;
            pb.box.y_min += dy;
            boxes.push_back(std::move(pb));
        }
        up = std::max(up, other.up - dy);
        down = std::max(down, other.down + dy);
        width = std::max(width, dx + other.width);
    }
};

class LayoutEngine {
public:
    explicit LayoutEngine(const LayoutParams& params) : params_(params) {}

    Sublayout node(const ExprAst& ast, double scale) {
        const double s = params_.glyph_size * scale;
        if (s < 1.0) {
            throw LayoutError("layout: glyph size fell below one pixel; reduce depth");
        }
        switch (ast.kind) {
            case ExprAst::Kind::Symbol: return glyph(ast.token, s);
            case ExprAst::Kind::Row: return row(ast, scale);
            case ExprAst::Kind::Frac: return frac(ast, scale);
            case ExprAst::Kind::Sqrt: return sqrt(ast, scale);
            case ExprAst::Kind::Scripted: return scripted(ast, scale);
        }
        throw LayoutError("layout: unknown node kind");
    }

private:
    Sublayout glyph(const std::string& token, double s) {
        Sublayout out;
        const double h = token == "-" ? kThinGlyphH * s : s;
        SymbolBox b;
        b.label = token;
        b.x_min = 0.0;
        b.y_min = -h / 2.0;
        b.width = kGlyphW * s;
        b.height = h;
        out.boxes.push_back({b, s});
        out.width = b.width;
        out.up = h / 2.0;
        out.down = h / 2.0;
        return out;
    }

    Sublayout row(const ExprAst& ast, double scale) {
        const double s = params_.glyph_size * scale;
        const double gap = params_.gap / params_.glyph_size * s;
        Sublayout out;
        double cursor = 0.0;
        for (const ExprAst& child : ast.children) {
            Sublayout sub = node(child, scale);
            const double w = sub.width;
            out.absorb(std::move(sub), cursor, 0.0);
            cursor += w + gap;
        }
        return out;
    }

    Sublayout frac(const ExprAst& ast, double scale) {
        const double s = params_.glyph_size * scale;
        Sublayout num = node(ast.children[0], scale);
        Sublayout den = node(ast.children[1], scale);
        const bool composite = num.boxes.size() > 1 || den.boxes.size() > 1;
        const double pad = composite ? kFracPad * s : 0.0;
        const double bar_w = std::max(num.width, den.width) + 2.0 * pad;
        const double bar_h = kBarH * s;
        const double vgap = kFracVGap * s;

        Sublayout out;
        SymbolBox bar;
        bar.label = "-";
        bar.x_min = 0.0;
        bar.y_min = -bar_h / 2.0;
        bar.width = bar_w;
        bar.height = bar_h;
        out.boxes.push_back({bar, s});
        out.width = bar_w;
        out.up = bar_h / 2.0;
        out.down = bar_h / 2.0;

        const double num_dy = -(bar_h / 2.0 + vgap + num.down);
        const double den_dy = bar_h / 2.0 + vgap + den.up;
        const double num_w = num.width;
        const double den_w = den.width;
        out.absorb(std::move(num), (bar_w - num_w) / 2.0, num_dy);
        out.absorb(std::move(den), (bar_w - den_w) / 2.0, den_dy);
        return out;
    }

    Sublayout sqrt(const ExprAst& ast, double scale) {
        const double s = params_.glyph_size * scale;
        Sublayout rad = node(ast.children[0], scale);
        const double pad = kSqrtPad * s;
        // Enclosing box is centered on the axis regardless of content shape.
        const double half_h = std::max(rad.up, rad.down) + pad;
        Sublayout out;
        SymbolBox box;
        box.label = "\\sqrt";
        box.x_min = 0.0;
        box.y_min = -half_h;
        box.width = rad.width + 2.0 * pad;
        box.height = 2.0 * half_h;
        out.boxes.push_back({box, s});
        out.width = box.width;
        out.up = half_h;
        out.down = half_h;
        out.absorb(std::move(rad), pad, 0.0);
        return out;
    }

    Sublayout scripted(const ExprAst& ast, double scale) {
        const double s = params_.glyph_size * scale;
        Sublayout out = glyph(ast.token, s);
        const double shift = kScriptShift * s;
        double x0 = out.width + kScriptDx * s;
        std::size_t child = 0;
        if (ast.has_sup) {
            Sublayout sup = node(ast.children[child++], scale * params_.script_scale);
            const double w = sup.width;
            out.absorb(std::move(sup), x0, -shift);
            // Staggering the subscript keeps the two script stacks x-disjoint,
            // which the x-overlap grouping rules rely on.
            if (ast.has_sub) x0 += w + kScriptDx * s;
        }
        if (ast.has_sub) {
            out.absorb(node(ast.children[child++], scale * params_.script_scale), x0, shift);
        }
        return out;
    }

    const LayoutParams& params_;
};

}  // namespace

std::vector<SymbolBox> layout(const ExprAst& ast, const LayoutParams& params) {
    if (params.jitter < 0.0 || params.jitter >= 0.5) {
        throw ValidationError("layout: jitter must lie in [0, 0.5)");
    }
    if (params.script_scale <= 0.0 || params.script_scale >= 1.0) {
        throw ValidationError("layout: script_scale must lie in (0, 1)");
    }
    if (params.glyph_size < 1.0) {
        throw ValidationError("layout: glyph_size must be at least one pixel");
    }

    LayoutEngine engine(params);
    Sublayout top = engine.node(ast, 1.0);

    std::mt19937_64 rng(params.seed);
    if (params.jitter > 0.0) {
        for (PlacedBox& pb : top.boxes) {
            const double mag = params.jitter * pb.local_size;
            pb.box.x_min += (next_unit(rng) * 2.0 - 1.0) * mag;
            pb.box.y_min += (next_unit(rng) * 2.0 - 1.0) * mag;
        }
    }

    // Shift into positive image coordinates.
    double min_x = 0.0, min_y = 0.0;
    for (const PlacedBox& pb : top.boxes) {
        min_x = std::min(min_x, pb.box.x_min);
        min_y = std::min(min_y, pb.box.y_min);
    }
    const double margin = params.glyph_size * 0.25;
    std::vector<SymbolBox> out;
    out.reserve(top.boxes.size());
    for (PlacedBox& pb : top.boxes) {
        pb.box.x_min += margin - min_x;
        pb.box.y_min += margin - min_y;
        out.push_back(std::move(pb.box));
    }
    return out;
}

namespace {

void print_ast(const ExprAst& ast, TokenSequence& out) {
    switch (ast.kind) {
        case ExprAst::Kind::Symbol:
            out.push_back(ast.token);
            return;
        case ExprAst::Kind::Row:
            for (const ExprAst& child : ast.children) print_ast(child, out);
            return;
        case ExprAst::Kind::Frac:
            out.push_back("\\frac");
            out.push_back("{");
            print_ast(ast.children[0], out);
            out.push_back("}");
            out.push_back("{");
            print_ast(ast.children[1], out);
            out.push_back("}");
            return;
        case ExprAst::Kind::Sqrt:
            out.push_back("\\sqrt");
            out.push_back("{");
            print_ast(ast.children[0], out);
            out.push_back("}");
            return;
        case ExprAst::Kind::Scripted: {
            out.push_back(ast.token);
            std::size_t child = 0;
            if (ast.has_sup) {
                out.push_back("^");
                out.push_back("{");
                print_ast(ast.children[child++], out);
                out.push_back("}");
            }
            if (ast.has_sub) {
                out.push_back("_");
                out.push_back("{");
                print_ast(ast.children[child++], out);
                out.push_back("}");
            }
            return;
        }
    }
}

}  // namespace

TokenSequence latex_of_ast(const ExprAst& ast) {
    TokenSequence out;
    print_ast(ast, out);
    return out;
}

}  // namespace bsrt
