#pragma once

#include <string>
#include <vector>

#include "bsrt/relations.hpp"
#include "bsrt/types.hpp"

namespace bsrt {

struct BsrtNode {
    int id;
    SymbolBox box;
};

struct BsrtEdge {
    int parent;
    int child;
    RelationLabel relation;  // never Unrelated
};

/// Baseline symbol relationship tree: one node per detected symbol, edges
/// labeled with the spatial relation of the child to its parent. Rooted at
/// the leftmost baseline symbol; connected and acyclic; node ids index the
/// canonical reading-order symbol list.
struct Bsrt {
    std::vector<BsrtNode> nodes;
    std::vector<BsrtEdge> edges;
    int root = -1;
};

/// Canonical symbol order: x_min ascending, ties by y_min, then label.
std::vector<SymbolBox> reading_order(std::vector<SymbolBox> symbols);

/// Builds the relationship tree in four steps: (1) containment pass groups
/// symbols lying inside container symbols (\sqrt) and recurses on each
/// group; (2) fraction pass turns "-" symbols with stacked partners on both
/// sides into fraction bars, recursing on the numerator and denominator
/// groups; (3) baseline pass chains the remaining top-level items left to
/// right, opening script regions on Superscript/Subscript and closing them
/// when an item's vertical center returns within the script return band of
/// the current baseline symbol; (4) the leftmost baseline item is the root.
///
/// Throws StructureError (listing orphan node ids) when some symbol cannot
/// be attached; never returns a partial tree. Throws ValidationError on an
/// empty symbol list.
Bsrt build_tree(const std::vector<SymbolBox>& symbols, const RuleConfig& config);

/// Verifies node conservation: tree node count equals n_symbols.
void orphan_check(const Bsrt& tree, std::size_t n_symbols);

/// Debug serialization: {"root":..,"nodes":[{id,label,box}],"edges":[...]}.
std::string tree_to_json_text(const Bsrt& tree);

}  // namespace bsrt
