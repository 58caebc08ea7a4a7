#include "bsrt/detections.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bsrt/geometry.hpp"

namespace bsrt {

void Vocabulary::insert(int id, const std::string& token) {
    if (id_to_token_.count(id)) {
        throw InputError("vocabulary: duplicate id " + std::to_string(id));
    }
    if (token_to_id_.count(token)) {
        throw InputError("vocabulary: duplicate token '" + token + "'");
    }
    id_to_token_.emplace(id, token);
    token_to_id_.emplace(token, id);
}

std::optional<std::string> Vocabulary::token_of(int id) const {
    const auto it = id_to_token_.find(id);
    if (it == id_to_token_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Vocabulary::id_of(const std::string& token) const {
    const auto it = token_to_id_.find(token);
    if (it == token_to_id_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Vocabulary::tokens() const {
    std::vector<std::string> out;
    out.reserve(id_to_token_.size());
    for (const auto& [id, tok] : id_to_token_) out.push_back(tok);
    return out;
}

void validate_symbol(const SymbolBox& box, const std::string& image_id,
                     std::size_t index, const Vocabulary* vocab) {
    const std::string where = image_id + " symbol " + std::to_string(index);
    if (!(box.width > 0.0) || !(box.height > 0.0)) {
        throw ValidationError(where + ": non-positive extent");
    }
    if (!(box.score >= 0.0 && box.score <= 1.0)) {
        throw ValidationError(where + ": score outside [0, 1]");
    }
    if (box.label.empty()) {
        throw ValidationError(where + ": empty label");
    }
    if (vocab && !vocab->contains_token(box.label)) {
        throw VocabularyError(where + ": label '" + box.label + "' not in vocabulary");
    }
}

double box_iou(const SymbolBox& a, const SymbolBox& b) {
    const double w = interval_overlap(a.x_min, a.x_max(), b.x_min, b.x_max());
    const double h = interval_overlap(a.y_min, a.y_max(), b.y_min, b.y_max());
    const double inter = w * h;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

std::vector<SymbolBox> deduplicate_boxes(std::vector<SymbolBox> boxes, double iou_threshold) {
    std::vector<char> alive(boxes.size(), 1);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (!alive[i]) continue;
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            if (!alive[j] || boxes[i].label != boxes[j].label) continue;
            if (box_iou(boxes[i], boxes[j]) > iou_threshold) {
                if (boxes[j].score > boxes[i].score) {
                    alive[i] = 0;
                    break;
                }
                alive[j] = 0;
            }
        }
    }
    std::vector<SymbolBox> out;
    out.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (alive[i]) out.push_back(std::move(boxes[i]));
    }
    return out;
}

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (allowed.count(key) == 0) {
            throw ValidationError(where + ": unknown field '" + key + "'");
        }
    }
}

Expression finalize_expression(Expression expr, const Vocabulary* vocab) {
    if (expr.image_id.empty()) {
        throw ValidationError("expression with empty image_id");
    }
    for (std::size_t i = 0; i < expr.symbols.size(); ++i) {
        validate_symbol(expr.symbols[i], expr.image_id, i, vocab);
    }
    expr.symbols = deduplicate_boxes(std::move(expr.symbols));
    if (expr.symbols.empty()) {
        throw ValidationError(expr.image_id + ": expression has no symbols");
    }
    return expr;
}

}  // namespace

std::vector<Expression> parse_detections_json(const std::string& text, const Vocabulary* vocab) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("detections: ") + e.what(), e.byte);
    }
    if (!j.is_object()) {
        throw ValidationError("detections: top level must be an object");
    }
    reject_unknown_fields(j, {"expressions"}, "detections");
    if (!j.contains("expressions") || !j["expressions"].is_array()) {
        throw ValidationError("detections: missing \"expressions\" array");
    }
    std::vector<Expression> out;
    for (const json& je : j["expressions"]) {
        if (!je.is_object()) {
            throw ValidationError("detections: expression entries must be objects");
        }
        reject_unknown_fields(je, {"image_id", "symbols"}, "expression");
        Expression expr;
        try {
            expr.image_id = je.at("image_id").get<std::string>();
            for (const json& js : je.at("symbols")) {
                reject_unknown_fields(
                    js, {"label", "x_min", "y_min", "width", "height", "score"},
                    expr.image_id);
                SymbolBox box;
                box.label = js.at("label").get<std::string>();
                box.x_min = js.at("x_min").get<double>();
                box.y_min = js.at("y_min").get<double>();
                box.width = js.at("width").get<double>();
                box.height = js.at("height").get<double>();
                box.score = js.value("score", 1.0);
                expr.symbols.push_back(std::move(box));
            }
        } catch (const json::exception& e) {
            throw ValidationError(std::string("detections: ") + e.what());
        }
        out.push_back(finalize_expression(std::move(expr), vocab));
    }
    return out;
}

std::vector<Expression> load_detections_json(const std::filesystem::path& path,
                                             const Vocabulary* vocab) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open detections file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_detections_json(ss.str(), vocab);
}

std::string detections_to_json_text(const std::vector<Expression>& expressions) {
    nlohmann::ordered_json j;
    j["expressions"] = nlohmann::ordered_json::array();
    for (const Expression& expr : expressions) {
        nlohmann::ordered_json je;
        je["image_id"] = expr.image_id;
        je["symbols"] = nlohmann::ordered_json::array();
        for (const SymbolBox& b : expr.symbols) {
            je["symbols"].push_back({{"label", b.label},
                                     {"x_min", b.x_min},
                                     {"y_min", b.y_min},
                                     {"width", b.width},
                                     {"height", b.height},
                                     {"score", b.score}});
        }
        j["expressions"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

Expression parse_yolo_text(const std::string& text, const std::string& image_id,
                           const Vocabulary& vocab, int image_w, int image_h) {
    Expression expr;
    expr.image_id = image_id;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        int class_id = 0;
        double cx = 0, cy = 0, w = 0, h = 0, score = 1.0;
        if (!(ls >> class_id)) {
            continue;  // blank line
        }
        if (!(ls >> cx >> cy >> w >> h)) {
            throw ParseError(image_id + ":" + std::to_string(line_no) +
                             ": expected 'class_id cx cy w h [score]'");
        }
        if (!(ls >> score)) score = 1.0;
        for (double v : {cx, cy, w, h}) {
            if (v < 0.0 || v > 1.0) {
                throw ValidationError(image_id + ":" + std::to_string(line_no) +
                                      ": coordinate outside [0, 1]");
            }
        }
        const auto token = vocab.token_of(class_id);
        if (!token) {
            throw VocabularyError(image_id + ":" + std::to_string(line_no) +
                                  ": class id " + std::to_string(class_id) +
                                  " not in vocabulary");
        }
        SymbolBox box;
        box.label = *token;
        box.x_min = (cx - w / 2.0) * image_w;
        box.y_min = (cy - h / 2.0) * image_h;
        box.width = w * image_w;
        box.height = h * image_h;
        box.score = score;
        expr.symbols.push_back(std::move(box));
    }
    return finalize_expression(std::move(expr), &vocab);
}

std::vector<Expression> load_detections_yolo(
    const std::filesystem::path& dir, const Vocabulary& vocab,
    const std::map<std::string, std::pair<int, int>>& image_sizes) {
    if (!std::filesystem::is_directory(dir)) {
        throw InputError("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<Expression> out;
    for (const auto& file : files) {
        const std::string image_id = file.stem().string();
        const auto it = image_sizes.find(image_id);
        if (it == image_sizes.end()) {
            throw InputError("no image size for '" + image_id + "'");
        }
        std::ifstream in(file, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out.push_back(parse_yolo_text(ss.str(), image_id, vocab, it->second.first,
                                      it->second.second));
    }
    return out;
}

Vocabulary parse_vocabulary(const std::string& text) {
    Vocabulary vocab;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("vocabulary line " + std::to_string(line_no) +
                             ": expected id<TAB>token");
        }
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(line.substr(0, tab), &used);
            if (used != tab) throw std::invalid_argument(line);
        } catch (const std::exception&) {
            throw ParseError("vocabulary line " + std::to_string(line_no) +
                             ": bad id '" + line.substr(0, tab) + "'");
        }
        const std::string token = line.substr(tab + 1);
        if (token.empty()) {
            throw ParseError("vocabulary line " + std::to_string(line_no) + ": empty token");
        }
        vocab.insert(id, token);
    }
    return vocab;
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open vocabulary file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_vocabulary(ss.str());
}

}  // namespace bsrt
