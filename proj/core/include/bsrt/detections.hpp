#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bsrt/types.hpp"

namespace bsrt {

/// Intersection-over-union of two boxes.
double box_iou(const SymbolBox& a, const SymbolBox& b);

/// Drops near-duplicate detections: same label, IoU above the threshold,
/// keeping the higher score. Detectors routinely emit such duplicates and
/// the tree builder assumes one box per glyph.
std::vector<SymbolBox> deduplicate_boxes(std::vector<SymbolBox> boxes,
                                         double iou_threshold = 0.9);

/// Loads the detection JSON schema
/// {"expressions":[{"image_id":...,"symbols":[{label,x_min,y_min,width,height,score}]}]}.
/// Unknown fields are rejected. Every box is validated (and checked against
/// vocab when one is given); duplicates are removed per deduplicate_boxes.
std::vector<Expression> load_detections_json(const std::filesystem::path& path,
                                             const Vocabulary* vocab = nullptr);
std::vector<Expression> parse_detections_json(const std::string& text,
                                              const Vocabulary* vocab = nullptr);

std::string detections_to_json_text(const std::vector<Expression>& expressions);

/// Loads YOLO text files (one per image, lines "class_id cx cy w h [score]",
/// all normalized to [0, 1]) and denormalizes to pixel boxes:
/// x_min = (cx - w/2) * W, width = w * W, and analogously for y. Files are
/// read in sorted name order; image_id is the file stem, which must appear
/// in image_sizes as (W, H).
std::vector<Expression> load_detections_yolo(
    const std::filesystem::path& dir, const Vocabulary& vocab,
    const std::map<std::string, std::pair<int, int>>& image_sizes);

/// Single-file variant of the YOLO loader, used by tests and the directory walker.
Expression parse_yolo_text(const std::string& text, const std::string& image_id,
                           const Vocabulary& vocab, int image_w, int image_h);

/// Vocabulary file: lines "id<TAB>token". Duplicate ids or tokens are errors.
Vocabulary load_vocabulary(const std::filesystem::path& path);
Vocabulary parse_vocabulary(const std::string& text);

}  // namespace bsrt
