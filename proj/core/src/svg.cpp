#include "bsrt/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "bsrt/errors.hpp"
#include "bsrt/geometry.hpp"

namespace bsrt {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const Expression& expression, const Bsrt* tree) {
    if (expression.symbols.empty()) {
        throw ValidationError("render_svg: expression has no symbols");
    }
    double x0 = expression.symbols[0].x_min, y0 = expression.symbols[0].y_min;
    double x1 = expression.symbols[0].x_max(), y1 = expression.symbols[0].y_max();
    for (const SymbolBox& b : expression.symbols) {
        x0 = std::min(x0, b.x_min);
        y0 = std::min(y0, b.y_min);
        x1 = std::max(x1, b.x_max());
        y1 = std::max(y1, b.y_max());
    }
    const double margin = 16.0;
    const double w = x1 - x0 + 2 * margin;
    const double h = y1 - y0 + 2 * margin;
    const double ox = margin - x0;
    const double oy = margin - y0;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    out << "  <defs>\n"
        << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\n"
        << "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#d62728\"/>\n"
        << "    </marker>\n"
        << "  </defs>\n";

    for (const SymbolBox& b : expression.symbols) {
        out << "  <rect x=\"" << num(b.x_min + ox) << "\" y=\"" << num(b.y_min + oy)
            << "\" width=\"" << num(b.width) << "\" height=\"" << num(b.height)
            << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << num(b.x_min + ox + 1.5) << "\" y=\"" << num(b.y_min + oy - 2)
            << "\" font-size=\"10\" fill=\"#1f77b4\">" << escape(b.label) << "</text>\n";
    }

    if (tree) {
        for (const BsrtEdge& e : tree->edges) {
            const Point a = center(tree->nodes[e.parent].box);
            const Point b = center(tree->nodes[e.child].box);
            const double mx = (a.x + b.x) / 2.0;
            const double my = (a.y + b.y) / 2.0;
            out << "  <line x1=\"" << num(a.x + ox) << "\" y1=\"" << num(a.y + oy)
                << "\" x2=\"" << num(b.x + ox) << "\" y2=\"" << num(b.y + oy)
                << "\" stroke=\"#d62728\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>\n";
            out << "  <text x=\"" << num(mx + ox + 2) << "\" y=\"" << num(my + oy - 2)
                << "\" font-size=\"8\" fill=\"#d62728\">" << to_string(e.relation)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace bsrt
