#include "fpa/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fpa {

namespace {

using nlohmann::json;

json dist_to_json(const ValueDistribution& f) {
    return std::visit(
        [](const auto& d) -> json {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                return {{"type", "point"}, {"v", d.v}};
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                return {{"type", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
            } else {
                json atoms = json::array();
                for (const auto& [v, p] : d.atoms) atoms.push_back({v, p});
                return {{"type", "discrete"}, {"atoms", atoms}};
            }
        },
        f);
}

json competitor_to_json(const CompetitorModel& g) {
    return std::visit(
        [](const auto& d) -> json {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantBid>) {
                return {{"type", "constant"}, {"m", d.m}};
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                return {{"type", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
            } else {
                json atoms = json::array();
                for (const auto& [v, p] : d.atoms) atoms.push_back({v, p});
                return {{"type", "discrete"}, {"atoms", atoms}};
            }
        },
        g);
}

DiscreteDist discrete_from_json(const json& j) {
    DiscreteDist d;
    for (const auto& atom : j.at("atoms"))
        d.atoms.emplace_back(atom.at(0).get<double>(), atom.at(1).get<double>());
    return d;
}

ValueDistribution dist_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "point") return PointMass{j.at("v").get<double>()};
    if (type == "uniform") return UniformDist{j.at("lo").get<double>(), j.at("hi").get<double>()};
    if (type == "discrete") return discrete_from_json(j);
    throw std::invalid_argument("unknown value distribution type: " + type);
}

CompetitorModel competitor_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") return ConstantBid{j.at("m").get<double>()};
    if (type == "uniform") return UniformDist{j.at("lo").get<double>(), j.at("hi").get<double>()};
    if (type == "discrete") return discrete_from_json(j);
    throw std::invalid_argument("unknown competitor type: " + type);
}

}  // namespace

std::string to_json(const InstanceDocument& doc) {
    json j;
    j["params"] = {{"a", doc.instance.params.a},
                   {"b", doc.instance.params.b},
                   {"T", doc.instance.params.T},
                   {"B", doc.instance.params.B}};
    j["values"] = json::array();
    for (const auto& f : doc.instance.values) j["values"].push_back(dist_to_json(f));
    j["competitor"] = competitor_to_json(doc.instance.competitor);
    if (doc.plan) {
        json plan = {{"rho_hat", doc.plan->rho_hat}};
        if (doc.plan->eps) plan["eps"] = *doc.plan->eps;
        j["plan"] = plan;
    }
    return j.dump(2) + "\n";
}

InstanceDocument instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("bad instance JSON: ") + e.what());
    }
    InstanceDocument doc;
    try {
        const json& p = j.at("params");
        doc.instance.params.a = p.at("a").get<double>();
        doc.instance.params.b = p.at("b").get<double>();
        doc.instance.params.T = p.at("T").get<int>();
        doc.instance.params.B = p.at("B").get<double>();
        for (const auto& f : j.at("values")) doc.instance.values.push_back(dist_from_json(f));
        doc.instance.competitor = competitor_from_json(j.at("competitor"));
        if (j.contains("plan")) {
            doc.plan.emplace();
            doc.plan->rho_hat = j.at("plan").at("rho_hat").get<std::vector<double>>();
            if (j.at("plan").contains("eps"))
                doc.plan->eps = j.at("plan").at("eps").get<std::vector<double>>();
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad instance JSON: ") + e.what());
    }
    validate(doc.instance);
    if (doc.plan) validate(*doc.plan, doc.instance.params);
    return doc;
}

InstanceDocument load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

void save_instance(const InstanceDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    out << to_json(doc);
    if (!out) throw std::runtime_error("failed writing instance file: " + path);
}

}  // namespace fpa
