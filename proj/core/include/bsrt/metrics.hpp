#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsrt/emitter.hpp"

namespace bsrt {

struct PerExpression {
    std::string image_id;
    /// Token edit distance; nullopt marks a ground-truth id with no
    /// prediction (a miss, failing at every tolerance level).
    std::optional<std::size_t> distance;
};

/// Expression recognition rates at exact, <=1 and <=2 token-edit tolerance.
struct EvalReport {
    std::size_t n_expressions = 0;
    double exprate = 0.0;
    double exprate_le1 = 0.0;
    double exprate_le2 = 0.0;
    std::vector<PerExpression> per_expression;
};

/// Token-level Levenshtein distance, unit cost per insert/delete/substitute.
std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b);

using SequencePairs = std::vector<std::pair<std::string, TokenSequence>>;

/// Scores predictions against ground truth. Every predicted id must exist in
/// the ground truth (InputError otherwise, also on duplicate predicted ids);
/// ground-truth ids without a prediction are recorded as misses. Rates are
/// fractions of the ground-truth expression count.
EvalReport evaluate(const SequencePairs& preds, const SequencePairs& gts);

/// TSV lines "image_id<TAB>latex"; latex is tokenized on load.
SequencePairs load_gt_tsv(const std::filesystem::path& path);

std::string report_to_json_text(const EvalReport& report);

/// Three-column percentage table (ExpRate, <=1, <=2). When with_reference is
/// true a published-baseline row is appended for visual comparison; it is
/// labeled as external and is not computed by this tool.
std::string report_to_table(const EvalReport& report, bool with_reference = false);

}  // namespace bsrt
