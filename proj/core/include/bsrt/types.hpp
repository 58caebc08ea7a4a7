#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsrt/errors.hpp"

namespace bsrt {

/// One detected symbol: a LaTeX token plus an axis-aligned bounding box in
/// image coordinates (origin top-left, y grows downward). Extents are in
/// pixels but stored as reals; detectors emit fractional boxes.
struct SymbolBox {
    std::string label;
    double x_min = 0.0;
    double y_min = 0.0;
    double width = 0.0;
    double height = 0.0;
    double score = 1.0;

    double x_max() const { return x_min + width; }
    double y_max() const { return y_min + height; }
    double area() const { return width * height; }
};

/// All detections for one input image.
struct Expression {
    std::string image_id;
    std::vector<SymbolBox> symbols;
};

/// Bijective mapping between detector class ids and LaTeX tokens.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Throws InputError when the id or the token is already present.
    void insert(int id, const std::string& token);

    bool contains_token(const std::string& token) const {
        return token_to_id_.count(token) > 0;
    }
    std::optional<std::string> token_of(int id) const;
    std::optional<int> id_of(const std::string& token) const;

    std::size_t size() const { return id_to_token_.size(); }
    bool empty() const { return id_to_token_.empty(); }

    /// True when the structural tokens "-" and "\sqrt" are present. The
    /// synthetic generator requires them; plain detection loading does not.
    bool has_structural_tokens() const {
        return contains_token("-") && contains_token("\\sqrt");
    }

    /// Tokens in ascending id order.
    std::vector<std::string> tokens() const;

    const std::map<int, std::string>& entries() const { return id_to_token_; }

private:
    std::map<int, std::string> id_to_token_;
    std::unordered_map<std::string, int> token_to_id_;
};

/// Checks the SymbolBox invariants; throws ValidationError (extent, score) or
/// VocabularyError (unknown label, when a vocabulary is supplied) naming the
/// offending expression and symbol index.
void validate_symbol(const SymbolBox& box, const std::string& image_id,
                     std::size_t index, const Vocabulary* vocab = nullptr);

}  // namespace bsrt
