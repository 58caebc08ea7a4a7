#include "bsrt/relations.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "bsrt/errors.hpp"

namespace bsrt {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string_view to_string(RelationLabel label) {
    switch (label) {
        case RelationLabel::Above: return "above";
        case RelationLabel::Below: return "below";
        case RelationLabel::Right: return "right";
        case RelationLabel::Superscript: return "superscript";
        case RelationLabel::Subscript: return "subscript";
        case RelationLabel::Inside: return "inside";
        case RelationLabel::Unrelated: return "unrelated";
    }
    return "unrelated";
}

RelationLabel relation_from_string(std::string_view name) {
    if (name == "above") return RelationLabel::Above;
    if (name == "below") return RelationLabel::Below;
    if (name == "right") return RelationLabel::Right;
    if (name == "superscript") return RelationLabel::Superscript;
    if (name == "subscript") return RelationLabel::Subscript;
    if (name == "inside") return RelationLabel::Inside;
    if (name == "unrelated") return RelationLabel::Unrelated;
    throw InputError("unknown relation name: " + std::string(name));
}

RuleConfig default_config() {
    RuleConfig c;
    c.above_theta_min = 0.4 * kPi;
    c.above_theta_max = 0.6 * kPi;
    c.above_mu_min = 0.5;

    c.below_theta_min = -0.6 * kPi;
    c.below_theta_max = -0.4 * kPi;
    c.below_mu_min = 0.5;

    c.sup_theta_min = 0.1 * kPi;
    c.sup_theta_max = 0.4 * kPi;
    c.sup_mu_max = 0.5;

    c.sub_theta_min = -0.4 * kPi;
    c.sub_theta_max = -0.1 * kPi;
    c.sub_mu_max = 0.5;

    c.right_theta_abs_max = 0.1 * kPi;
    c.right_lambda_min = 0.3;

    c.inside_containment_min = 0.85;
    c.container_labels = {"\\sqrt"};
    c.script_return_band = 0.25;
    return c;
}

double containment(const SymbolBox& outer, const SymbolBox& inner) {
    const double w = interval_overlap(outer.x_min, outer.x_max(), inner.x_min, inner.x_max());
    const double h = interval_overlap(outer.y_min, outer.y_max(), inner.y_min, inner.y_max());
    return (w * h) / inner.area();
}

RelationLabel classify(const SymbolBox& ref, const SymbolBox& adj, const RuleConfig& config) {
    if (config.container_labels.count(ref.label) > 0 &&
        containment(ref, adj) >= config.inside_containment_min) {
        return RelationLabel::Inside;
    }
    const auto features = pair_features(ref, adj);
    if (!features) {
        return RelationLabel::Unrelated;  // degenerate pair
    }
    const double theta = features->theta;
    const double lambda = features->lambda;
    const double mu = features->mu;

    if (theta > config.above_theta_min && theta < config.above_theta_max &&
        mu > config.above_mu_min) {
        return RelationLabel::Above;
    }
    if (theta > config.below_theta_min && theta < config.below_theta_max &&
        mu > config.below_mu_min) {
        return RelationLabel::Below;
    }
    if (theta >= config.sup_theta_min && theta <= config.sup_theta_max &&
        mu <= config.sup_mu_max) {
        return RelationLabel::Superscript;
    }
    if (theta >= config.sub_theta_min && theta <= config.sub_theta_max &&
        mu <= config.sub_mu_max) {
        return RelationLabel::Subscript;
    }
    if (std::abs(theta) < config.right_theta_abs_max && lambda > config.right_lambda_min) {
        return RelationLabel::Right;
    }
    return RelationLabel::Unrelated;
}

namespace {

using nlohmann::json;

void check_band(double lo, double hi, const std::string& name) {
    if (!(lo < hi)) {
        throw ValidationError("rules: band " + name + " must have lower < upper");
    }
}

void check_unit_interval(double v, const std::string& name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("rules: " + name + " must lie in [0, 1]");
    }
}

RuleConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ValidationError("rules: top level must be an object");
    }
    if (j.value("units", "") != std::string("pi_radians")) {
        throw ValidationError("rules: missing or unsupported \"units\" (expected \"pi_radians\")");
    }
    RuleConfig c = default_config();
    auto angle = [&](const json& obj, const char* key) {
        return obj.at(key).get<double>() * kPi;
    };
    const json& above = j.at("above");
    c.above_theta_min = angle(above, "theta_min");
    c.above_theta_max = angle(above, "theta_max");
    c.above_mu_min = above.at("mu_min").get<double>();
    const json& below = j.at("below");
    c.below_theta_min = angle(below, "theta_min");
    c.below_theta_max = angle(below, "theta_max");
    c.below_mu_min = below.at("mu_min").get<double>();
    const json& sup = j.at("superscript");
    c.sup_theta_min = angle(sup, "theta_min");
    c.sup_theta_max = angle(sup, "theta_max");
    c.sup_mu_max = sup.at("mu_max").get<double>();
    const json& sub = j.at("subscript");
    c.sub_theta_min = angle(sub, "theta_min");
    c.sub_theta_max = angle(sub, "theta_max");
    c.sub_mu_max = sub.at("mu_max").get<double>();
    const json& right = j.at("right");
    c.right_theta_abs_max = angle(right, "theta_abs_max");
    c.right_lambda_min = right.at("lambda_min").get<double>();
    const json& inside = j.at("inside");
    c.inside_containment_min = inside.at("containment_min").get<double>();
    c.container_labels.clear();
    for (const auto& label : inside.at("containers")) {
        c.container_labels.insert(label.get<std::string>());
    }
    c.script_return_band = j.at("script_return_band").get<double>();

    check_band(c.above_theta_min, c.above_theta_max, "above");
    check_band(c.below_theta_min, c.below_theta_max, "below");
    check_band(c.sup_theta_min, c.sup_theta_max, "superscript");
    check_band(c.sub_theta_min, c.sub_theta_max, "subscript");
    check_unit_interval(c.above_mu_min, "above.mu_min");
    check_unit_interval(c.below_mu_min, "below.mu_min");
    check_unit_interval(c.sup_mu_max, "superscript.mu_max");
    check_unit_interval(c.sub_mu_max, "subscript.mu_max");
    check_unit_interval(c.right_lambda_min, "right.lambda_min");
    if (!(c.inside_containment_min > 0.0 && c.inside_containment_min <= 1.0)) {
        throw ValidationError("rules: inside.containment_min must lie in (0, 1]");
    }
    return c;
}

json config_to_json(const RuleConfig& c) {
    json j;
    j["units"] = "pi_radians";
    j["above"] = {{"theta_min", c.above_theta_min / kPi},
                  {"theta_max", c.above_theta_max / kPi},
                  {"mu_min", c.above_mu_min}};
    j["below"] = {{"theta_min", c.below_theta_min / kPi},
                  {"theta_max", c.below_theta_max / kPi},
                  {"mu_min", c.below_mu_min}};
    j["superscript"] = {{"theta_min", c.sup_theta_min / kPi},
                        {"theta_max", c.sup_theta_max / kPi},
                        {"mu_max", c.sup_mu_max}};
    j["subscript"] = {{"theta_min", c.sub_theta_min / kPi},
                      {"theta_max", c.sub_theta_max / kPi},
                      {"mu_max", c.sub_mu_max}};
    j["right"] = {{"theta_abs_max", c.right_theta_abs_max / kPi},
                  {"lambda_min", c.right_lambda_min}};
    j["inside"] = {{"containment_min", c.inside_containment_min},
                   {"containers", c.container_labels}};
    j["script_return_band"] = c.script_return_band;
    return j;
}

}  // namespace

RuleConfig rules_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("rules: ") + e.what(), e.byte);
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("rules: ") + e.what());
    }
}

std::string rules_to_json_text(const RuleConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

RuleConfig load_rules(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open rules file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return rules_from_json_text(ss.str());
}

void save_rules(const RuleConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write rules file: " + path.string());
    }
    out << rules_to_json_text(config);
}

}  // namespace bsrt
