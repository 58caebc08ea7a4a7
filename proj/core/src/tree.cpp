#include "bsrt/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsrt/errors.hpp"
#include "bsrt/geometry.hpp"

namespace bsrt {

std::vector<SymbolBox> reading_order(std::vector<SymbolBox> symbols) {
    std::stable_sort(symbols.begin(), symbols.end(),
                     [](const SymbolBox& a, const SymbolBox& b) {
                         if (a.x_min != b.x_min) return a.x_min < b.x_min;
                         if (a.y_min != b.y_min) return a.y_min < b.y_min;
                         return a.label < b.label;
                     });
    return symbols;
}

namespace {

// A fragment is an already-built subtree together with the box used when
// classifying it against other items. Glyphs anchor on their own box; built
// units (fractions, radicals) anchor on a baseline footprint so that chains
// and script regions see them at their axis with a glyph-like height.
struct Fragment {
    int root;
    SymbolBox anchor;
    std::vector<int> nodes;  // every node id in this subtree

    bool is_leaf() const { return nodes.size() == 1; }
};

double upper_median(std::vector<double> values) {
    std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
    return values[values.size() / 2];
}

struct TreeBuilder {
    const RuleConfig& config;
    const std::vector<SymbolBox>& boxes;  // canonical order; node id = index
    std::vector<BsrtEdge> edges;
    std::vector<int> orphans;

    const std::string& label_of(const Fragment& f) const { return boxes[f.root].label; }

    SymbolBox fragment_bbox(const Fragment& f) const {
        SymbolBox out = boxes[f.nodes.front()];
        out.label.clear();
        double x1 = out.x_max(), y1 = out.y_max();
        for (int id : f.nodes) {
            const SymbolBox& b = boxes[id];
            out.x_min = std::min(out.x_min, b.x_min);
            out.y_min = std::min(out.y_min, b.y_min);
            x1 = std::max(x1, b.x_max());
            y1 = std::max(y1, b.y_max());
        }
        out.width = x1 - out.x_min;
        out.height = y1 - out.y_min;
        return out;
    }

    double median_node_height(const Fragment& f) const {
        std::vector<double> hs;
        hs.reserve(f.nodes.size());
        for (int id : f.nodes) hs.push_back(boxes[id].height);
        return upper_median(std::move(hs));
    }

    // Footprint: the unit's horizontal extent at its axis, with a typical
    // glyph height, so lambda/theta behave as they would for a plain symbol.
    SymbolBox footprint(const Fragment& f, const SymbolBox& axis_box) const {
        SymbolBox a;
        a.label = boxes[f.root].label;
        a.x_min = axis_box.x_min;
        a.width = axis_box.width;
        a.height = median_node_height(f);
        const double cy = axis_box.y_min + axis_box.height / 2.0;
        a.y_min = cy - a.height / 2.0;
        a.score = 1.0;
        return a;
    }

    static SymbolBox union_of_anchors(const std::vector<Fragment>& items,
                                      const std::vector<std::size_t>& idx) {
        SymbolBox out = items[idx.front()].anchor;
        out.label.clear();
        double x1 = out.x_max(), y1 = out.y_max();
        for (std::size_t i : idx) {
            const SymbolBox& b = items[i].anchor;
            out.x_min = std::min(out.x_min, b.x_min);
            out.y_min = std::min(out.y_min, b.y_min);
            x1 = std::max(x1, b.x_max());
            y1 = std::max(y1, b.y_max());
        }
        out.width = x1 - out.x_min;
        out.height = y1 - out.y_min;
        return out;
    }

    void add_edge(int parent, int child, RelationLabel rel) {
        edges.push_back({parent, child, rel});
    }

    // Collapses a claimed group into the claiming fragment.
    static std::vector<Fragment> take(std::vector<Fragment>& items,
                                      const std::vector<std::size_t>& idx) {
        std::vector<Fragment> out;
        out.reserve(idx.size());
        for (std::size_t i : idx) out.push_back(std::move(items[i]));
        return out;
    }

    static void erase_claimed(std::vector<Fragment>& items, std::vector<char>& claimed) {
        std::vector<Fragment> left;
        left.reserve(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (!claimed[i]) left.push_back(std::move(items[i]));
        }
        items = std::move(left);
        claimed.assign(items.size(), 0);
    }

    // Pass 1: raw container glyphs absorb everything lying inside their box.
    // Outermost (largest) containers claim first; nesting resolves in the
    // recursion, which sees the inner container as raw again.
    void containment_pass(std::vector<Fragment>& items) {
        std::vector<char> claimed(items.size(), 0);
        std::vector<std::size_t> containers;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].is_leaf() && config.container_labels.count(label_of(items[i]))) {
                containers.push_back(i);
            }
        }
        std::sort(containers.begin(), containers.end(),
                  [&](std::size_t a, std::size_t b) {
                      const double aa = items[a].anchor.area(), ab = items[b].anchor.area();
                      if (aa != ab) return aa > ab;
                      return items[a].root < items[b].root;
                  });
        bool any = false;
        for (std::size_t ci : containers) {
            if (claimed[ci]) continue;
            const SymbolBox cbox = boxes[items[ci].root];
            std::vector<std::size_t> members;
            for (std::size_t j = 0; j < items.size(); ++j) {
                if (j == ci || claimed[j]) continue;
                if (containment(cbox, fragment_bbox(items[j])) >= config.inside_containment_min) {
                    members.push_back(j);
                }
            }
            if (members.empty()) continue;  // bare container glyph stays a symbol
            for (std::size_t j : members) claimed[j] = 1;
            Fragment& c = items[ci];
            std::vector<Fragment> group = take(items, members);
            for (const Fragment& g : group) {
                c.nodes.insert(c.nodes.end(), g.nodes.begin(), g.nodes.end());
            }
            const int sub_root = attach_items(std::move(group));
            add_edge(c.root, sub_root, RelationLabel::Inside);
            c.anchor = footprint(c, cbox);
            any = true;
        }
        if (any) erase_claimed(items, claimed);
    }

    // Pass 2: a "-" glyph with a stacked partner group on each side is a
    // fraction bar. Side membership is x-overlap with the bar; the partner
    // test applies classify to each member and to the side's composite box,
    // so multi-glyph numerators whose members sit off the bar's axis still
    // qualify. Widest bars resolve first, which orders nested fractions.
    void fraction_pass(std::vector<Fragment>& items) {
        for (;;) {
            std::vector<std::size_t> bars;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (items[i].is_leaf() && label_of(items[i]) == "-") bars.push_back(i);
            }
            std::sort(bars.begin(), bars.end(), [&](std::size_t a, std::size_t b) {
                const double wa = items[a].anchor.width, wb = items[b].anchor.width;
                if (wa != wb) return wa > wb;
                return items[a].root < items[b].root;
            });

            bool progressed = false;
            for (std::size_t bi : bars) {
                const SymbolBox bar = boxes[items[bi].root];
                const double bar_cy = bar.y_min + bar.height / 2.0;
                std::vector<std::size_t> above, below;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    if (j == bi) continue;
                    const SymbolBox& a = items[j].anchor;
                    if (interval_overlap(a.x_min, a.x_max(), bar.x_min, bar.x_max()) <= 0.0) {
                        continue;
                    }
                    const double cy = a.y_min + a.height / 2.0;
                    if (cy < bar_cy) above.push_back(j);
                    else if (cy > bar_cy) below.push_back(j);
                }
                if (above.empty() || below.empty()) continue;

                auto side_ok = [&](const std::vector<std::size_t>& side, RelationLabel want) {
                    for (std::size_t j : side) {
                        if (classify(items[j].anchor, bar, config) == want) return true;
                    }
                    return classify(union_of_anchors(items, side), bar, config) == want;
                };
                if (!side_ok(above, RelationLabel::Below) ||
                    !side_ok(below, RelationLabel::Above)) {
                    continue;
                }

                std::vector<char> claimed(items.size(), 0);
                for (std::size_t j : above) claimed[j] = 1;
                for (std::size_t j : below) claimed[j] = 1;
                Fragment& b = items[bi];
                std::vector<Fragment> num = take(items, above);
                std::vector<Fragment> den = take(items, below);
                for (const auto& g : num) b.nodes.insert(b.nodes.end(), g.nodes.begin(), g.nodes.end());
                for (const auto& g : den) b.nodes.insert(b.nodes.end(), g.nodes.begin(), g.nodes.end());
                const int num_root = attach_items(std::move(num));
                const int den_root = attach_items(std::move(den));
                add_edge(b.root, num_root, RelationLabel::Above);
                add_edge(b.root, den_root, RelationLabel::Below);
                b.anchor = footprint(b, bar);
                erase_claimed(items, claimed);
                progressed = true;
                break;
            }
            if (!progressed) return;
        }
    }

    // Pass 3: chain the remaining items left to right. Superscript/Subscript
    // open a script region that collects items while their centers stay
    // beyond the return band on that side of the current baseline symbol.
    int baseline_pass(std::vector<Fragment>& items) {
        std::sort(items.begin(), items.end(), [&](const Fragment& a, const Fragment& b) {
            if (a.anchor.x_min != b.anchor.x_min) return a.anchor.x_min < b.anchor.x_min;
            if (a.anchor.y_min != b.anchor.y_min) return a.anchor.y_min < b.anchor.y_min;
            return a.anchor.label < b.anchor.label;
        });

        // A bare minus participates in the baseline with a line-height
        // footprint; its raw box is too thin to pass the Right lambda rule.
        std::vector<double> level_heights;
        for (const Fragment& f : items) level_heights.push_back(f.anchor.height);
        const double level_h = upper_median(std::move(level_heights));
        for (Fragment& f : items) {
            if (f.is_leaf() && label_of(f) == "-" && f.anchor.height < level_h) {
                const double cy = f.anchor.y_min + f.anchor.height / 2.0;
                f.anchor.height = level_h;
                f.anchor.y_min = cy - level_h / 2.0;
            }
        }

        const int root = items.front().root;
        std::size_t base = 0;  // index of the current baseline fragment
        std::size_t i = 1;
        while (i < items.size()) {
            const Fragment& b = items[base];
            const RelationLabel rel = classify(b.anchor, items[i].anchor, config);
            if (rel == RelationLabel::Right) {
                add_edge(b.root, items[i].root, RelationLabel::Right);
                base = i;
                ++i;
                continue;
            }
            if (rel == RelationLabel::Superscript || rel == RelationLabel::Subscript) {
                const bool sup = rel == RelationLabel::Superscript;
                const int base_root = b.root;
                const double base_cy = b.anchor.y_min + b.anchor.height / 2.0;
                const double band = config.script_return_band * b.anchor.height;
                std::vector<std::size_t> region{i};
                ++i;
                while (i < items.size()) {
                    const SymbolBox& a = items[i].anchor;
                    const double dy = base_cy - (a.y_min + a.height / 2.0);  // + = above
                    const bool in_region = sup ? dy > band : dy < -band;
                    if (!in_region) break;
                    region.push_back(i);
                    ++i;
                }
                std::vector<Fragment> group = take(items, region);
                std::vector<char> claimed(items.size(), 0);
                for (std::size_t r : region) claimed[r] = 1;
                erase_claimed(items, claimed);
                // the region lies strictly after the base, whose index is stable
                i = base + 1;
                const int sub_root = attach_items(std::move(group));
                add_edge(base_root, sub_root, sup ? RelationLabel::Superscript
                                                  : RelationLabel::Subscript);
                continue;
            }
            // Unattachable at this level: record and skip.
            for (int id : items[i].nodes) orphans.push_back(id);
            items.erase(items.begin() + static_cast<long>(i));
        }
        return root;
    }

    int attach_items(std::vector<Fragment> items) {
        containment_pass(items);
        fraction_pass(items);
        return baseline_pass(items);
    }
};

}  // namespace

Bsrt build_tree(const std::vector<SymbolBox>& symbols, const RuleConfig& config) {
    if (symbols.empty()) {
        throw ValidationError("build_tree: empty symbol list");
    }
    const std::vector<SymbolBox> canon = reading_order(symbols);

    Bsrt tree;
    tree.nodes.reserve(canon.size());
    for (std::size_t i = 0; i < canon.size(); ++i) {
        tree.nodes.push_back({static_cast<int>(i), canon[i]});
    }

    TreeBuilder builder{config, canon, {}, {}};
    std::vector<Fragment> items;
    items.reserve(canon.size());
    for (std::size_t i = 0; i < canon.size(); ++i) {
        items.push_back({static_cast<int>(i), canon[i], {static_cast<int>(i)}});
    }
    const int root = builder.attach_items(std::move(items));

    if (!builder.orphans.empty()) {
        std::sort(builder.orphans.begin(), builder.orphans.end());
        std::string msg = "unattachable symbols:";
        for (int id : builder.orphans) {
            msg += " " + std::to_string(id) + "(" + canon[id].label + ")";
        }
        throw StructureError(msg, builder.orphans);
    }

    tree.root = root;
    tree.edges = std::move(builder.edges);
    orphan_check(tree, canon.size());
    return tree;
}

void orphan_check(const Bsrt& tree, std::size_t n_symbols) {
    if (tree.nodes.size() != n_symbols) {
        throw StructureError("tree has " + std::to_string(tree.nodes.size()) +
                                 " nodes for " + std::to_string(n_symbols) + " symbols",
                             {});
    }
    if (tree.edges.size() + 1 != n_symbols) {
        throw StructureError("tree with " + std::to_string(n_symbols) + " nodes has " +
                                 std::to_string(tree.edges.size()) + " edges",
                             {});
    }
}

std::string tree_to_json_text(const Bsrt& tree) {
    nlohmann::ordered_json j;
    j["root"] = tree.root;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const BsrtNode& n : tree.nodes) {
        j["nodes"].push_back({{"id", n.id},
                              {"label", n.box.label},
                              {"x_min", n.box.x_min},
                              {"y_min", n.box.y_min},
                              {"width", n.box.width},
                              {"height", n.box.height},
                              {"score", n.box.score}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const BsrtEdge& e : tree.edges) {
        j["edges"].push_back({{"parent", e.parent},
                              {"child", e.child},
                              {"relation", std::string(to_string(e.relation))}});
    }
    return j.dump();
}

}  // namespace bsrt
