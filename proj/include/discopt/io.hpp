#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "discopt/edge_cover_solver.hpp"
#include "discopt/instance.hpp"
#include "discopt/reverse_auction.hpp"

namespace discopt {

namespace io_detail {

inline nlohmann::json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out)
        throw ParseError(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

inline std::string element_key(const ProblemInstance& inst, int element) {
    if (inst.kind == ProblemKind::reverse_auction)
        return std::to_string(element);
    auto [u, v] = edge_vertices(inst.n, element);
    return std::to_string(u) + "-" + std::to_string(v);
}

inline int parse_element_key(const ProblemInstance& inst, const std::string& key, const std::string& ctx) {
    if (inst.kind == ProblemKind::reverse_auction) {
        try {
            std::size_t pos = 0;
            int item = std::stoi(key, &pos);
            if (pos != key.size() || item < 0 || item >= inst.n)
                throw std::invalid_argument("range");
            return item;
        } catch (const std::exception&) {
            throw ParseError(ctx + ": bad item key '" + key + "'");
        }
    }
    auto dash = key.find('-');
    if (dash == std::string::npos)
        throw ParseError(ctx + ": bad edge key '" + key + "'");
    try {
        int u = std::stoi(key.substr(0, dash));
        int v = std::stoi(key.substr(dash + 1));
        if (u < 0 || v < 0 || u >= inst.n || v >= inst.n || u >= v)
            throw std::invalid_argument("range");
        return edge_id(inst.n, u, v);
    } catch (const std::exception&) {
        throw ParseError(ctx + ": bad edge key '" + key + "'");
    }
}

} // namespace io_detail

inline nlohmann::json curve_to_json(const DiscountCurve& curve) {
    nlohmann::json j;
    j["breakpoints"] = nlohmann::json::array();
    for (const auto& [x, y] : curve.breakpoints)
        j["breakpoints"].push_back({x, y});
    j["final_slope"] = curve.final_slope;
    return j;
}

inline DiscountCurve curve_from_json(const nlohmann::json& j, const std::string& ctx) {
    DiscountCurve curve;
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("final_slope"))
        throw ParseError(ctx + ": discount needs breakpoints and final_slope");
    for (const auto& bp : j.at("breakpoints")) {
        if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number())
            throw ParseError(ctx + ": breakpoints must be [x, y] pairs");
        curve.breakpoints.emplace_back(bp[0].get<double>(), bp[1].get<double>());
    }
    if (!j.at("final_slope").is_number())
        throw ParseError(ctx + ": final_slope must be a number");
    curve.final_slope = j.at("final_slope").get<double>();
    CurveReport report = validate(curve);
    if (!report.ok) {
        std::string msg = ctx + ": invalid discount curve";
        for (const auto& v : report.violations) msg += "; " + v;
        throw ParseError(msg);
    }
    return curve;
}

inline nlohmann::json instance_to_json(const ProblemInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["kind"] = kind_name(inst.kind);
    if (inst.kind == ProblemKind::shortest_path) {
        j["s"] = inst.s;
        j["t"] = inst.t;
    }
    j["agents"] = nlohmann::json::array();
    for (const auto& agent : inst.agents) {
        nlohmann::json ja;
        ja["id"] = agent.id;
        ja["discount"] = curve_to_json(agent.discount);
        nlohmann::json costs = nlohmann::json::object();
        for (int e = 0; e < inst.element_count(); ++e)
            costs[io_detail::element_key(inst, e)] = agent.cost(e);
        ja["costs"] = std::move(costs);
        j["agents"].push_back(std::move(ja));
    }
    return j;
}

inline ProblemInstance instance_from_json(const nlohmann::json& j, const std::string& ctx) {
    ProblemInstance inst;
    if (!j.is_object())
        throw ParseError(ctx + ": instance must be an object");
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw ParseError(ctx + ": missing integer field 'n'");
    inst.n = j.at("n").get<int>();
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ParseError(ctx + ": missing string field 'kind'");
    auto kind = kind_from_name(j.at("kind").get<std::string>());
    if (!kind)
        throw ParseError(ctx + ": unknown kind '" + j.at("kind").get<std::string>() + "'");
    inst.kind = *kind;
    if (inst.kind == ProblemKind::shortest_path) {
        if (!j.contains("s") || !j.contains("t"))
            throw ParseError(ctx + ": shortest_path needs fields 's' and 't'");
        inst.s = j.at("s").get<int>();
        inst.t = j.at("t").get<int>();
    }
    if (!j.contains("agents") || !j.at("agents").is_array() || j.at("agents").empty())
        throw ParseError(ctx + ": missing non-empty 'agents' array");

    int position = 0;
    for (const auto& ja : j.at("agents")) {
        std::string actx = ctx + ": agent " + std::to_string(position);
        AgentSpec agent;
        if (!ja.contains("id") || !ja.at("id").is_number_integer())
            throw ParseError(actx + ": missing integer 'id'");
        agent.id = ja.at("id").get<int>();
        if (!ja.contains("discount"))
            throw ParseError(actx + ": missing 'discount'");
        agent.discount = curve_from_json(ja.at("discount"), actx);
        if (!ja.contains("costs") || !ja.at("costs").is_object())
            throw ParseError(actx + ": missing 'costs' object");

        const double missing = std::numeric_limits<double>::quiet_NaN();
        agent.costs.assign(static_cast<std::size_t>(inst.element_count()), missing);
        for (const auto& [key, value] : ja.at("costs").items()) {
            int element = io_detail::parse_element_key(inst, key, actx);
            if (!value.is_number())
                throw ParseError(actx + ": cost for '" + key + "' must be a number");
            if (!std::isnan(agent.costs[static_cast<std::size_t>(element)]))
                throw ParseError(actx + ": duplicate cost for '" + key + "'");
            agent.costs[static_cast<std::size_t>(element)] = value.get<double>();
        }
        for (int e = 0; e < inst.element_count(); ++e)
            if (std::isnan(agent.costs[static_cast<std::size_t>(e)]))
                throw ParseError(actx + ": missing cost for '" + io_detail::element_key(inst, e) + "'");
        for (const auto& prev : inst.agents)
            if (prev.id == agent.id)
                throw ParseError(actx + ": duplicate agent id " + std::to_string(agent.id));
        inst.agents.push_back(std::move(agent));
        ++position;
    }
    try {
        inst.check();
    } catch (const DomainError& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    return inst;
}

inline void write_instance(const std::string& path, const ProblemInstance& inst) {
    io_detail::save_file(path, instance_to_json(inst));
}

inline ProblemInstance read_instance(const std::string& path) {
    return instance_from_json(io_detail::load_file(path), path);
}

struct AllocationFile {
    Allocation allocation;
    double price = 0.0;
};

inline void write_allocation(const std::string& path, const ProblemInstance& inst, const Allocation& alloc) {
    nlohmann::json j;
    nlohmann::json assignment = nlohmann::json::object();
    for (const auto& [element, agent] : alloc.assignment)
        assignment[io_detail::element_key(inst, element)] = agent;
    j["assignment"] = std::move(assignment);
    j["price"] = total_price(inst, alloc);
    io_detail::save_file(path, j);
}

inline AllocationFile read_allocation(const std::string& path, const ProblemInstance& inst) {
    nlohmann::json j = io_detail::load_file(path);
    if (!j.is_object() || !j.contains("assignment") || !j.at("assignment").is_object())
        throw ParseError(path + ": missing 'assignment' object");
    AllocationFile file;
    for (const auto& [key, value] : j.at("assignment").items()) {
        int element = io_detail::parse_element_key(inst, key, path);
        if (!value.is_number_integer())
            throw ParseError(path + ": agent for '" + key + "' must be an integer");
        int agent = value.get<int>();
        if (agent < 0 || agent >= static_cast<int>(inst.agents.size()))
            throw ParseError(path + ": unknown agent " + std::to_string(agent) + " for '" + key + "'");
        file.allocation.assignment[element] = agent;
    }
    if (j.contains("price")) {
        if (!j.at("price").is_number())
            throw ParseError(path + ": 'price' must be a number");
        file.price = j.at("price").get<double>();
    } else {
        file.price = total_price(inst, file.allocation);
    }
    return file;
}

inline void write_ledger(const std::string& path, const PotentialLedger& ledger, int contracted_count) {
    nlohmann::json j;
    j["entries"] = nlohmann::json::array();
    for (const auto& entry : ledger.entries)
        j["entries"].push_back({{"id", entry.id}, {"potential", entry.potential}, {"phase", entry.phase}});
    if (contracted_count > 0)
        j["contracted_count"] = contracted_count;
    io_detail::save_file(path, j);
}

inline nlohmann::json set_cover_to_json(const SetCoverInstance& sc) {
    nlohmann::json j;
    j["universe"] = sc.universe;
    j["sets"] = nlohmann::json::array();
    for (const auto& s : sc.sets)
        j["sets"].push_back({{"elements", s.elements}, {"weight", s.weight}});
    return j;
}

inline SetCoverInstance set_cover_from_json(const nlohmann::json& j, const std::string& ctx) {
    SetCoverInstance sc;
    if (!j.is_object() || !j.contains("universe") || !j.at("universe").is_number_integer())
        throw ParseError(ctx + ": missing integer field 'universe'");
    sc.universe = j.at("universe").get<int>();
    if (!j.contains("sets") || !j.at("sets").is_array())
        throw ParseError(ctx + ": missing 'sets' array");
    int index = 0;
    for (const auto& js : j.at("sets")) {
        std::string sctx = ctx + ": set " + std::to_string(index++);
        SetCoverInstance::Set s;
        if (!js.contains("elements") || !js.at("elements").is_array())
            throw ParseError(sctx + ": missing 'elements' array");
        for (const auto& e : js.at("elements")) {
            if (!e.is_number_integer())
                throw ParseError(sctx + ": elements must be integers");
            s.elements.push_back(e.get<int>());
        }
        if (!js.contains("weight") || !js.at("weight").is_number())
            throw ParseError(sctx + ": missing numeric 'weight'");
        s.weight = js.at("weight").get<double>();
        sc.sets.push_back(std::move(s));
    }
    try {
        sc.check();
    } catch (const DomainError& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    return sc;
}

inline void write_set_cover(const std::string& path, const SetCoverInstance& sc) {
    io_detail::save_file(path, set_cover_to_json(sc));
}

inline SetCoverInstance read_set_cover(const std::string& path) {
    return set_cover_from_json(io_detail::load_file(path), path);
}

} // namespace discopt
