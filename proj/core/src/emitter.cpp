#include "bsrt/emitter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

#include "bsrt/errors.hpp"

namespace bsrt {

namespace {

struct Slots {
    std::vector<int> above, below, right, sup, sub, inside;
};

class Emitter {
public:
    explicit Emitter(const Bsrt& tree) : tree_(tree) {
        if (tree.nodes.empty()) {
            throw ContractError("emit_latex: empty tree");
        }
        slots_.resize(tree.nodes.size());
        std::vector<int> parent_count(tree.nodes.size(), 0);
        for (const BsrtEdge& e : tree.edges) {
            if (e.parent < 0 || e.parent >= static_cast<int>(tree.nodes.size()) ||
                e.child < 0 || e.child >= static_cast<int>(tree.nodes.size())) {
                throw ContractError("emit_latex: edge references unknown node");
            }
            parent_count[e.child]++;
            Slots& s = slots_[e.parent];
            switch (e.relation) {
                case RelationLabel::Above: s.above.push_back(e.child); break;
                case RelationLabel::Below: s.below.push_back(e.child); break;
                case RelationLabel::Right: s.right.push_back(e.child); break;
                case RelationLabel::Superscript: s.sup.push_back(e.child); break;
                case RelationLabel::Subscript: s.sub.push_back(e.child); break;
                case RelationLabel::Inside: s.inside.push_back(e.child); break;
                case RelationLabel::Unrelated:
                    throw ContractError("emit_latex: Unrelated edge in tree");
            }
        }
        if (tree.root < 0 || tree.root >= static_cast<int>(tree.nodes.size())) {
            throw ContractError("emit_latex: missing root");
        }
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const int expected = static_cast<int>(i) == tree.root ? 0 : 1;
            if (parent_count[i] != expected) {
                throw ContractError("emit_latex: node " + std::to_string(i) +
                                    " has " + std::to_string(parent_count[i]) + " parents");
            }
        }
        auto by_x = [&](int a, int b) {
            return tree.nodes[a].box.x_min < tree.nodes[b].box.x_min;
        };
        for (Slots& s : slots_) {
            std::sort(s.above.begin(), s.above.end(), by_x);
            std::sort(s.below.begin(), s.below.end(), by_x);
            std::sort(s.right.begin(), s.right.end(), by_x);
            std::sort(s.sup.begin(), s.sup.end(), by_x);
            std::sort(s.sub.begin(), s.sub.end(), by_x);
            std::sort(s.inside.begin(), s.inside.end(), by_x);
        }
    }

    TokenSequence run() {
        TokenSequence out;
        emit(tree_.root, out);
        if (visited_ != tree_.nodes.size()) {
            throw ContractError("emit_latex: tree is not connected");
        }
        return out;
    }

private:
    void emit_group(const std::vector<int>& children, TokenSequence& out) {
        for (int c : children) emit(c, out);
    }

    void emit(int id, TokenSequence& out) {
        if (++visited_ > tree_.nodes.size()) {
            throw ContractError("emit_latex: cycle detected");
        }
        const Slots& s = slots_[id];
        const std::string& label = tree_.nodes[id].box.label;
        const bool is_fraction = label == "-" && !s.above.empty() && !s.below.empty();
        if (is_fraction) {
            if (!s.inside.empty()) {
                throw ContractError("emit_latex: fraction bar with Inside children");
            }
            out.push_back("\\frac");
            out.push_back("{");
            emit_group(s.above, out);
            out.push_back("}");
            out.push_back("{");
            emit_group(s.below, out);
            out.push_back("}");
        } else {
            if (!s.above.empty() || !s.below.empty()) {
                throw ContractError("emit_latex: Above/Below edges outside a fraction");
            }
            out.push_back(label);
            if (!s.inside.empty()) {
                out.push_back("{");
                emit_group(s.inside, out);
                out.push_back("}");
            }
        }
        if (!s.sup.empty()) {
            out.push_back("^");
            out.push_back("{");
            emit_group(s.sup, out);
            out.push_back("}");
        }
        if (!s.sub.empty()) {
            out.push_back("_");
            out.push_back("{");
            emit_group(s.sub, out);
            out.push_back("}");
        }
        emit_group(s.right, out);
    }

    const Bsrt& tree_;
    std::vector<Slots> slots_;
    std::size_t visited_ = 0;
};

}  // namespace

TokenSequence emit_latex(const Bsrt& tree) {
    return Emitter(tree).run();
}

namespace {

bool is_command_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

// Raw scan: commands, structural characters, single characters. Whitespace
// and $ are dropped; \left / \right pairs normalize to bare delimiters.
std::vector<std::pair<std::string, std::size_t>> scan(std::string_view s) {
    static const std::map<std::string, std::string, std::less<>> aliases = {
        {"\\dfrac", "\\frac"},
        {"\\cdot", "\\cdot"},
        {"\\frac", "\\frac"},
        {"\\sqrt", "\\sqrt"},
        {"\\{", "\\{"},
        {"\\}", "\\}"},
    };
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '$') {
            ++i;
            continue;
        }
        if (c == '\\') {
            const std::size_t start = i;
            ++i;
            if (i >= s.size()) {
                throw TokenizeError("dangling backslash", start);
            }
            std::string cmd = "\\";
            if (is_command_char(s[i])) {
                while (i < s.size() && is_command_char(s[i])) cmd += s[i++];
            } else {
                cmd += s[i++];
            }
            if (cmd == "\\left" || cmd == "\\right") {
                if (i >= s.size()) {
                    throw TokenizeError(cmd + " without a delimiter", start);
                }
                out.emplace_back(std::string(1, s[i]), start);
                ++i;
                continue;
            }
            const auto it = aliases.find(cmd);
            if (it == aliases.end()) {
                throw TokenizeError("unknown command " + cmd, start);
            }
            out.emplace_back(it->second, start);
            continue;
        }
        out.emplace_back(std::string(1, c), i);
        ++i;
    }
    return out;
}

}  // namespace

TokenSequence tokenize_latex(std::string_view s) {
    const auto raw = scan(s);

    long depth = 0;
    for (const auto& [tok, pos] : raw) {
        if (tok == "{") ++depth;
        if (tok == "}") {
            if (--depth < 0) {
                throw TokenizeError("unbalanced '}'", pos);
            }
        }
    }
    if (depth != 0) {
        throw TokenizeError("unbalanced '{'", s.size());
    }

    TokenSequence out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& [tok, pos] = raw[i];
        out.push_back(tok);
        if (tok == "^" || tok == "_") {
            if (i + 1 >= raw.size()) {
                throw TokenizeError("script without an argument", pos);
            }
            if (raw[i + 1].first != "{") {
                out.push_back("{");
                out.push_back(raw[++i].first);
                out.push_back("}");
            }
        }
    }
    return out;
}

std::string render_string(const TokenSequence& tokens) {
    std::ostringstream out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out << ' ';
        out << tokens[i];
    }
    return out.str();
}

}  // namespace bsrt
