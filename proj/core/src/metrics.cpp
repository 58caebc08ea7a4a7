#include "bsrt/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bsrt/errors.hpp"

namespace bsrt {

std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

EvalReport evaluate(const SequencePairs& preds, const SequencePairs& gts) {
    std::map<std::string, const TokenSequence*> pred_map;
    for (const auto& [id, tokens] : preds) {
        if (!pred_map.emplace(id, &tokens).second) {
            throw InputError("duplicate predicted image_id: " + id);
        }
    }
    std::set<std::string> gt_ids;
    for (const auto& [id, tokens] : gts) {
        if (!gt_ids.insert(id).second) {
            throw InputError("duplicate ground-truth image_id: " + id);
        }
    }
    for (const auto& [id, tokens] : preds) {
        if (gt_ids.count(id) == 0) {
            throw InputError("predicted image_id not in ground truth: " + id);
        }
    }

    EvalReport report;
    report.n_expressions = gts.size();
    std::size_t exact = 0, le1 = 0, le2 = 0;
    for (const auto& [id, gt_tokens] : gts) {
        const auto it = pred_map.find(id);
        if (it == pred_map.end()) {
            report.per_expression.push_back({id, std::nullopt});  // miss
            continue;
        }
        const std::size_t d = edit_distance(*it->second, gt_tokens);
        report.per_expression.push_back({id, d});
        if (d == 0) ++exact;
        if (d <= 1) ++le1;
        if (d <= 2) ++le2;
    }
    const double n = static_cast<double>(report.n_expressions);
    if (report.n_expressions > 0) {
        report.exprate = static_cast<double>(exact) / n;
        report.exprate_le1 = static_cast<double>(le1) / n;
        report.exprate_le2 = static_cast<double>(le2) / n;
    }
    return report;
}

SequencePairs load_gt_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open ground-truth file: " + path.string());
    }
    SequencePairs out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected image_id<TAB>latex");
        }
        const std::string id = line.substr(0, tab);
        if (id.empty()) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": empty image_id");
        }
        out.emplace_back(id, tokenize_latex(line.substr(tab + 1)));
    }
    return out;
}

std::string report_to_json_text(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["n_expressions"] = report.n_expressions;
    j["exprate"] = report.exprate;
    j["exprate_le1"] = report.exprate_le1;
    j["exprate_le2"] = report.exprate_le2;
    j["per_expression"] = nlohmann::ordered_json::array();
    for (const PerExpression& p : report.per_expression) {
        nlohmann::ordered_json entry;
        entry["image_id"] = p.image_id;
        if (p.distance) {
            entry["distance"] = *p.distance;
        } else {
            entry["distance"] = nullptr;
        }
        j["per_expression"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

namespace {

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", v * 100.0);
    return buf;
}

std::string row(const std::string& method, const std::string& a, const std::string& b,
                const std::string& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-18s %9s %9s %9s", method.c_str(), a.c_str(),
                  b.c_str(), c.c_str());
    return buf;
}

}  // namespace

std::string report_to_table(const EvalReport& report, bool with_reference) {
    std::ostringstream out;
    out << row("Method", "ExpRate", "<=1", "<=2") << "\n";
    out << row("predictions", percent(report.exprate), percent(report.exprate_le1),
               percent(report.exprate_le2))
        << "\n";
    if (with_reference) {
        out << row("IDN (published)", "67.82%", "82.91%", "88.37%")
            << "  [external baseline, not computed by this tool]\n";
    }
    return out.str();
}

}  // namespace bsrt
