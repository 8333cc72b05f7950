#include "vdt/baselines.hpp"

namespace vdt {

std::optional<PolicyPair> parse_policy(const std::string& name) {
    if (name == "vthb") return PolicyPair{ConfigRule::Learned, PriceRule::Learned};
    if (name == "stcf") return PolicyPair{ConfigRule::Fixed, PriceRule::Learned};
    if (name == "rdcf") return PolicyPair{ConfigRule::Random, PriceRule::Learned};
    if (name == "stp") return PolicyPair{ConfigRule::Learned, PriceRule::Fixed};
    if (name == "rdp") return PolicyPair{ConfigRule::Learned, PriceRule::Random};
    if (name == "linp") return PolicyPair{ConfigRule::Learned, PriceRule::Linear};
    if (name == "conp") return PolicyPair{ConfigRule::Learned, PriceRule::Convex};
    return std::nullopt;
}

std::optional<ConfigRule> parse_config_rule(const std::string& name) {
    if (name == "ccb" || name == "learned") return ConfigRule::Learned;
    if (name == "stcf" || name == "fixed") return ConfigRule::Fixed;
    if (name == "rdcf" || name == "random") return ConfigRule::Random;
    return std::nullopt;
}

std::optional<PriceRule> parse_price_rule(const std::string& name) {
    if (name == "cpb" || name == "learned") return PriceRule::Learned;
    if (name == "stp" || name == "fixed") return PriceRule::Fixed;
    if (name == "rdp" || name == "random") return PriceRule::Random;
    if (name == "linp" || name == "linear") return PriceRule::Linear;
    if (name == "conp" || name == "convex") return PriceRule::Convex;
    return std::nullopt;
}

std::string policy_name(const PolicyPair& pair) {
    if (pair.config == ConfigRule::Learned) {
        switch (pair.price) {
            case PriceRule::Learned: return "vthb";
            case PriceRule::Fixed: return "stp";
            case PriceRule::Random: return "rdp";
            case PriceRule::Linear: return "linp";
            case PriceRule::Convex: return "conp";
        }
    }
    if (pair.price == PriceRule::Learned) {
        if (pair.config == ConfigRule::Fixed) return "stcf";
        if (pair.config == ConfigRule::Random) return "rdcf";
    }
    std::string out = pair.config == ConfigRule::Fixed    ? "fixed"
                      : pair.config == ConfigRule::Random ? "random"
                                                          : "ccb";
    out += "+";
    switch (pair.price) {
        case PriceRule::Learned: out += "cpb"; break;
        case PriceRule::Fixed: out += "stp"; break;
        case PriceRule::Random: out += "rdp"; break;
        case PriceRule::Linear: out += "linp"; break;
        case PriceRule::Convex: out += "conp"; break;
    }
    return out;
}

}  // namespace vdt
