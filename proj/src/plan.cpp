#include "dmf/plan.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace dmf {

int MixSplitPlan::sample_dispenses() const {
    int count = 1;  // the initial sample droplet of O_1
    for (const Reagent& r : reagents) count += r.cf_value();
    return count;
}

int MixSplitPlan::buffer_dispenses() const {
    return op_count() + 1 - sample_dispenses();
}

MixSplitPlan build_plan(const TargetCF& target) {
    MixSplitPlan plan{target, {}};
    plan.reagents.reserve(target.accuracy - 1);
    // r_i = bit i of the numerator; bit 0 (always 1, x is odd) is consumed
    // by the initial sample droplet of O_1.
    for (int i = 1; i < target.accuracy; ++i) {
        const bool sample = (target.numerator >> i) & 1;
        plan.reagents.push_back(sample ? kSample : kBuffer);
    }
    return plan;
}

std::vector<Rational> ideal_cf_sequence(const MixSplitPlan& plan) {
    std::vector<Rational> cfs;
    cfs.reserve(plan.op_count());
    Rational c{1, 2};
    cfs.push_back(c);
    for (const Reagent& r : plan.reagents) {
        c = (c + r.cf_value()) / 2;
        cfs.push_back(c);
    }
    return cfs;
}

IdealResult ideal_simulate(const MixSplitPlan& plan) {
    return {ideal_cf_sequence(plan).back(), Rational{1}};
}

namespace {

const char* reagent_name(Reagent r) {
    return r.kind == ReagentKind::Sample ? "sample" : "buffer";
}

Reagent reagent_from_name(const std::string& name) {
    if (name == "sample") return kSample;
    if (name == "buffer") return kBuffer;
    throw std::invalid_argument("unknown reagent '" + name + "'");
}

}  // namespace

std::string plan_to_json(const MixSplitPlan& plan) {
    nlohmann::json ops = nlohmann::json::array();
    ops.push_back({{"index", 1},
                   {"inputs", {"sample", "buffer"}},
                   {"reagent", nullptr}});
    for (std::size_t i = 0; i < plan.reagents.size(); ++i) {
        const char* r = reagent_name(plan.reagents[i]);
        ops.push_back({{"index", static_cast<int>(i) + 2},
                       {"inputs", {"carried", r}},
                       {"reagent", r}});
    }
    nlohmann::json j{{"target",
                      {{"numerator", plan.target.numerator},
                       {"accuracy", plan.target.accuracy}}},
                     {"ops", ops}};
    return j.dump(2);
}

MixSplitPlan plan_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid plan JSON: ") + e.what());
    }
    const auto target = TargetCF::make(j.at("target").at("numerator").get<std::int64_t>(),
                                       j.at("target").at("accuracy").get<int>());
    MixSplitPlan plan{target, {}};
    const auto& ops = j.at("ops");
    if (!ops.is_array() || ops.size() != static_cast<std::size_t>(target.accuracy))
        throw std::invalid_argument("plan JSON: ops length must equal accuracy");
    for (std::size_t i = 1; i < ops.size(); ++i)
        plan.reagents.push_back(
            reagent_from_name(ops[i].at("reagent").get<std::string>()));
    if (ideal_simulate(plan).concentration != target.value<Rational>())
        throw std::invalid_argument(
            "plan JSON: reagent schedule does not realize the stated target");
    return plan;
}

std::string plan_to_dot(const MixSplitPlan& plan) {
    const int n = plan.op_count();
    std::ostringstream out;
    out << "digraph mix_split_plan {\n";
    out << "  rankdir=LR;\n";
    out << "  label=\"target " << plan.target.str() << "\";\n";

    // Dispense nodes: two for O_1, one fresh reagent per later op.
    out << "  d1 [shape=box label=\"dispense sample\"];\n";
    out << "  d2 [shape=box label=\"dispense buffer\"];\n";
    for (int i = 2; i <= n; ++i)
        out << "  d" << i + 1 << " [shape=box label=\"dispense "
            << reagent_name(plan.reagents[i - 2]) << "\"];\n";
    for (int i = 1; i <= n; ++i)
        out << "  m" << i << " [shape=ellipse label=\"mix-split O" << i
            << "\"];\n";

    out << "  d1 -> m1 [label=\"1\"];\n";
    out << "  d2 -> m1 [label=\"1\"];\n";
    for (int i = 2; i <= n; ++i) {
        out << "  d" << i + 1 << " -> m" << i << " [label=\"1\"];\n";
        out << "  m" << i - 1 << " -> m" << i << " [label=\"1\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace dmf
