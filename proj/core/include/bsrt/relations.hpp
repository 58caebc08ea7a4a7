#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "bsrt/geometry.hpp"
#include "bsrt/types.hpp"

namespace bsrt {

/// The seven spatial relations an ordered symbol pair can take.
enum class RelationLabel {
    Above,
    Below,
    Right,
    Superscript,
    Subscript,
    Inside,
    Unrelated,
};

std::string_view to_string(RelationLabel label);
RelationLabel relation_from_string(std::string_view name);

/// Threshold table driving classify(). Angles are radians here; the JSON
/// serialization stores them as multiples of pi ("units": "pi_radians").
///
/// Band boundary semantics are fixed: the above/below theta band is open,
/// the superscript/subscript band is closed, and the right band is
/// |theta| < right_theta_abs_max. The bands partition cleanly because the
/// open above band hands its boundary to the closed superscript band.
struct RuleConfig {
    double above_theta_min;
    double above_theta_max;
    double above_mu_min;

    double below_theta_min;
    double below_theta_max;
    double below_mu_min;

    double sup_theta_min;
    double sup_theta_max;
    double sup_mu_max;

    double sub_theta_min;
    double sub_theta_max;
    double sub_mu_max;

    double right_theta_abs_max;
    double right_lambda_min;

    double inside_containment_min;
    std::set<std::string> container_labels;

    /// Width of the vertical band (as a fraction of the baseline symbol's
    /// height) within which a symbol is considered back on the baseline,
    /// closing an open script region.
    double script_return_band;
};

/// Default thresholds:
///   Above:       theta in (0.4pi, 0.6pi), mu > 0.5
///   Below:       theta in (-0.6pi, -0.4pi), mu > 0.5
///   Superscript: theta in [0.1pi, 0.4pi], mu <= 0.5
///   Subscript:   theta in [-0.4pi, -0.1pi], mu <= 0.5
///   Right:       |theta| < 0.1pi, lambda > 0.3
///   Inside:      containment(adj in ref) >= 0.85 and ref is a container
///   container labels {"\sqrt"}, script return band 0.25
RuleConfig default_config();

/// Fraction of inner's area covered by outer: area(outer ∩ inner) / area(inner).
double containment(const SymbolBox& outer, const SymbolBox& inner);

/// First relation in priority order (Inside, Above, Below, Superscript,
/// Subscript, Right) whose predicates hold; Unrelated otherwise. Total:
/// degenerate pairs (coincident centers) map to Unrelated.
RelationLabel classify(const SymbolBox& ref, const SymbolBox& adj, const RuleConfig& config);

/// JSON round-trip for rule tables. Angles in the file are multiples of pi.
/// Throws ParseError / ValidationError on malformed or out-of-range content.
RuleConfig load_rules(const std::filesystem::path& path);
void save_rules(const RuleConfig& config, const std::filesystem::path& path);
RuleConfig rules_from_json_text(const std::string& text);
std::string rules_to_json_text(const RuleConfig& config);

}  // namespace bsrt
