// Command-line front end: parse detections into trees and LaTeX, evaluate
// predictions, generate synthetic fixtures, render debug SVGs, binarize PGMs.
//
// Exit codes: 0 success, 1 input/IO error, 2 partial structural failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsrt/detections.hpp"
#include "bsrt/emitter.hpp"
#include "bsrt/errors.hpp"
#include "bsrt/metrics.hpp"
#include "bsrt/preprocess.hpp"
#include "bsrt/relations.hpp"
#include "bsrt/svg.hpp"
#include "bsrt/synth.hpp"
#include "bsrt/tree.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitStructural = 2;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw bsrt::InputError("cannot write: " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

bsrt::RuleConfig rules_from_flag(const std::string& rules_path) {
    if (rules_path.empty()) {
        return bsrt::default_config();
    }
    return bsrt::load_rules(rules_path);
}

// splitmix-style stream derivation so each expression gets its own seed
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int cmd_parse(const std::string& detections_path, const std::string& rules_path,
              const std::string& emit_mode, const std::string& out_path) {
    const bsrt::RuleConfig config = rules_from_flag(rules_path);
    const std::vector<bsrt::Expression> expressions =
        bsrt::load_detections_json(detections_path);

    std::ostringstream out;
    bool any_failure = false;
    for (const bsrt::Expression& expr : expressions) {
        try {
            const bsrt::Bsrt tree = bsrt::build_tree(expr.symbols, config);
            nlohmann::ordered_json line;
            line["image_id"] = expr.image_id;
            if (emit_mode == "latex" || emit_mode == "both") {
                const bsrt::TokenSequence tokens = bsrt::emit_latex(tree);
                line["latex"] = bsrt::render_string(tokens);
                line["tokens"] = tokens;
            }
            if (emit_mode == "tree" || emit_mode == "both") {
                line["tree"] = nlohmann::ordered_json::parse(bsrt::tree_to_json_text(tree));
            }
            out << line.dump() << "\n";
        } catch (const bsrt::StructureError& e) {
            any_failure = true;
            std::cerr << "bsrt: " << expr.image_id << ": " << e.what() << "\n";
        }
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << out.str();
    } else {
        write_text(out_path, out.str());
    }
    return any_failure ? kExitStructural : kExitOk;
}

bsrt::SequencePairs load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw bsrt::InputError("cannot open predictions file: " + path.string());
    }
    std::string first_line;
    std::getline(in, first_line);
    in.seekg(0);
    const auto start = first_line.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && first_line[start] == '{') {
        // JSON-lines output of `parse`
        bsrt::SequencePairs out;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                throw bsrt::ParseError(path.string() + ":" + std::to_string(line_no) +
                                           ": " + e.what(),
                                       e.byte);
            }
            const std::string id = j.at("image_id").get<std::string>();
            if (j.contains("tokens")) {
                out.emplace_back(id, j["tokens"].get<bsrt::TokenSequence>());
            } else if (j.contains("latex")) {
                out.emplace_back(id, bsrt::tokenize_latex(j["latex"].get<std::string>()));
            } else {
                throw bsrt::InputError(path.string() + ":" + std::to_string(line_no) +
                                       ": line has neither tokens nor latex");
            }
        }
        return out;
    }
    return bsrt::load_gt_tsv(path);
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path,
             const std::string& out_path, bool paper_baseline) {
    const bsrt::SequencePairs preds = load_predictions(pred_path);
    const bsrt::SequencePairs gts = bsrt::load_gt_tsv(gt_path);
    const bsrt::EvalReport report = bsrt::evaluate(preds, gts);
    if (!out_path.empty()) {
        write_text(out_path, bsrt::report_to_json_text(report));
    }
    std::cout << bsrt::report_to_table(report, paper_baseline);
    return kExitOk;
}

int cmd_synth(std::uint64_t seed, int count, int depth, double jitter,
              const std::string& out_dir) {
    if (count < 0 || depth < 1) {
        throw bsrt::InputError("synth: count must be >= 0 and depth >= 1");
    }
    if (jitter < 0.0 || jitter >= 0.5) {
        throw bsrt::InputError("synth: jitter must lie in [0, 0.5)");
    }
    const bsrt::Vocabulary vocab = bsrt::synth_vocabulary();
    std::filesystem::create_directories(out_dir);

    std::vector<bsrt::Expression> expressions;
    std::ostringstream gt;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t expr_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        const bsrt::ExprAst ast = bsrt::random_ast(expr_seed, depth, vocab);
        bsrt::LayoutParams params;
        params.jitter = jitter;
        params.seed = expr_seed;
        char id[32];
        std::snprintf(id, sizeof id, "synth_%06d", i);
        bsrt::Expression expr;
        expr.image_id = id;
        expr.symbols = bsrt::layout(ast, params);
        expressions.push_back(std::move(expr));
        gt << id << "\t" << bsrt::render_string(bsrt::latex_of_ast(ast)) << "\n";
    }
    const std::filesystem::path dir(out_dir);
    write_text(dir / "detections.json", bsrt::detections_to_json_text(expressions));
    write_text(dir / "gt.tsv", gt.str());
    return kExitOk;
}

int cmd_render(const std::string& detections_path, const std::string& rules_path,
               bool with_tree, std::size_t index, const std::string& out_path) {
    const std::vector<bsrt::Expression> expressions =
        bsrt::load_detections_json(detections_path);
    if (index >= expressions.size()) {
        throw bsrt::InputError("render: expression index " + std::to_string(index) +
                               " out of range (file has " +
                               std::to_string(expressions.size()) + ")");
    }
    const bsrt::Expression& expr = expressions[index];
    std::string svg;
    if (with_tree) {
        const bsrt::RuleConfig config = rules_from_flag(rules_path);
        try {
            const bsrt::Bsrt tree = bsrt::build_tree(expr.symbols, config);
            svg = bsrt::render_svg(expr, &tree);
        } catch (const bsrt::StructureError& e) {
            std::cerr << "bsrt: " << expr.image_id << ": " << e.what() << "\n";
            return kExitStructural;
        }
    } else {
        svg = bsrt::render_svg(expr);
    }
    write_text(out_path, svg);
    return kExitOk;
}

int cmd_binarize(const std::string& in_path, const std::string& out_path) {
    const bsrt::GrayImage img = bsrt::read_pgm(in_path);
    const int t = bsrt::otsu_threshold(img);
    bsrt::write_pgm(bsrt::binarize(img, t), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"baseline symbol relationship trees for handwritten math detections"};
    app.require_subcommand(1);

    std::string detections_path, rules_path, out_path;
    std::string emit_mode = "latex";
    auto* parse = app.add_subcommand("parse", "detections JSON -> LaTeX / tree JSON lines");
    parse->add_option("detections", detections_path, "detection JSON file")->required();
    parse->add_option("--rules", rules_path, "rule table JSON (default: built-in)");
    parse->add_option("--emit", emit_mode, "latex | tree | both")
        ->check(CLI::IsMember({"latex", "tree", "both"}));
    parse->add_option("--out", out_path, "output path (default: stdout)");

    std::string pred_path, gt_path, report_path;
    bool paper_baseline = false;
    auto* eval = app.add_subcommand("eval", "score predictions against ground truth");
    eval->add_option("--pred", pred_path, "predictions (parse JSONL or TSV)")->required();
    eval->add_option("--gt", gt_path, "ground truth TSV (image_id<TAB>latex)")->required();
    eval->add_option("--out", report_path, "write report JSON here");
    eval->add_flag("--paper-baseline", paper_baseline,
                   "append the published IDN reference row to the table");

    std::uint64_t seed = 0;
    int count = 10;
    int depth = 3;
    double jitter = 0.0;
    std::string out_dir;
    auto* synth = app.add_subcommand("synth", "generate a synthetic eval fixture");
    synth->add_option("--seed", seed, "rng seed");
    synth->add_option("--count", count, "number of expressions");
    synth->add_option("--depth", depth, "max AST depth");
    synth->add_option("--jitter", jitter, "box translation noise in [0, 0.5)");
    synth->add_option("--out", out_dir, "output directory")->required();

    std::string render_in, render_rules, render_out;
    bool render_tree = false;
    std::size_t render_index = 0;
    auto* render = app.add_subcommand("render", "debug SVG of boxes and relations");
    render->add_option("detections", render_in, "detection JSON file")->required();
    render->add_option("--rules", render_rules, "rule table JSON");
    render->add_flag("--tree", render_tree, "build the tree and draw labeled edges");
    render->add_option("--index", render_index, "expression index in the file");
    render->add_option("--out", render_out, "output SVG path")->required();

    std::string pgm_in, pgm_out;
    auto* binarize = app.add_subcommand("binarize", "Otsu-binarize a P5 PGM image");
    binarize->add_option("input", pgm_in, "input PGM")->required();
    binarize->add_option("output", pgm_out, "output PGM")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse->parsed()) {
            return cmd_parse(detections_path, rules_path, emit_mode, out_path);
        }
        if (eval->parsed()) {
            return cmd_eval(pred_path, gt_path, report_path, paper_baseline);
        }
        if (synth->parsed()) {
            return cmd_synth(seed, count, depth, jitter, out_dir);
        }
        if (render->parsed()) {
            return cmd_render(render_in, render_rules, render_tree, render_index, render_out);
        }
        if (binarize->parsed()) {
            return cmd_binarize(pgm_in, pgm_out);
        }
    } catch (const bsrt::StructureError& e) {
        std::cerr << "bsrt: " << e.what() << "\n";
        return kExitStructural;
    } catch (const bsrt::Error& e) {
        std::cerr << "bsrt: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "bsrt: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
