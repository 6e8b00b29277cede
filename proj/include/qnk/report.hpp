#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qnk/chern.hpp"
#include "qnk/numeric.hpp"
#include "qnk/sod.hpp"

namespace qnk {

using Json = nlohmann::ordered_json;

// One table row: a named quantity, its integer parameters in print order,
// and the exact value as a decimal string (integer or p/q rational).
struct ReportRow {
    std::string quantity;
    std::vector<std::pair<std::string, long long>> params;
    std::string value;
};

// One verification instance: both sides of the identity are kept so a
// failure report is self-contained.
struct VerifyCheck {
    std::string name;
    std::vector<std::pair<std::string, long long>> params;
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

inline std::string int_string(const Int& v) { return v.str(); }

inline std::string params_compact(std::span<const std::pair<std::string, long long>> params,
                                  char sep = ' ') {
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty()) out += sep;
        out += key;
        out += '=';
        out += std::to_string(value);
    }
    return out;
}

inline Json params_json(std::span<const std::pair<std::string, long long>> params) {
    Json obj = Json::object();
    for (const auto& [key, value] : params) obj[key] = value;
    return obj;
}

inline Json row_to_json(const ReportRow& row) {
    Json obj;
    obj["quantity"] = row.quantity;
    obj["params"] = params_json(row.params);
    obj["value"] = row.value;
    return obj;
}

inline Json check_to_json(const VerifyCheck& check) {
    Json obj;
    obj["name"] = check.name;
    obj["params"] = params_json(check.params);
    obj["lhs"] = check.lhs;
    obj["rhs"] = check.rhs;
    obj["pass"] = check.pass;
    return obj;
}

// CSV cells here never contain commas: params are ;-joined key=value pairs
// and values are decimal integers or p/q strings.
inline std::string rows_to_csv(std::span<const ReportRow> rows) {
    std::string out = "quantity,params,value\n";
    for (const ReportRow& row : rows) {
        out += row.quantity;
        out += ',';
        out += params_compact(row.params, ';');
        out += ',';
        out += row.value;
        out += '\n';
    }
    return out;
}

inline std::string checks_to_csv(std::span<const VerifyCheck> checks) {
    std::string out = "name,params,lhs,rhs,pass\n";
    for (const VerifyCheck& check : checks) {
        out += check.name;
        out += ',';
        out += params_compact(check.params, ';');
        out += ',';
        out += check.lhs;
        out += ',';
        out += check.rhs;
        out += ',';
        out += check.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline std::string surface_kind_name(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::DelPezzo: return "del_pezzo";
        case SurfaceKind::K3: return "k3";
        case SurfaceKind::Abelian: return "abelian";
        case SurfaceKind::Other: return "other";
    }
    return "other";
}

inline Json surface_to_json(const SurfaceInvariants& s) {
    Json obj;
    obj["euler"] = s.euler;
    obj["chi_O"] = s.chi_O;
    obj["h1_O"] = s.h1_O;
    obj["kind"] = surface_kind_name(s.kind);
    return obj;
}

/* Expansion trace as a JSON document. Fixed fields: seed (the input class
 * and d, ch2 split into numerator and denominator), steps (every rewrite
 * with rule tag and children), terminal (the j -> multiplicity table).
 * Multiplicities are decimal strings. When the run knew a surface, each
 * child also carries its expected dimension and an emptiness flag, and the
 * surface is echoed at top level. */
inline Json trace_to_json(const SODResult& result,
                          const std::optional<SurfaceInvariants>& surface = {}) {
    Json doc;
    Json seed;
    seed["w0"] = result.seed_w.rank;
    seed["h_dot_c1"] = result.seed_w.h_dot_c1;
    seed["c1_sq"] = result.seed_w.c1_sq;
    seed["ch2_num"] = static_cast<long long>(numerator(result.seed_w.ch2));
    seed["ch2_den"] = static_cast<long long>(denominator(result.seed_w.ch2));
    seed["d"] = result.seed_d;
    doc["seed"] = std::move(seed);
    if (surface) doc["surface"] = surface_to_json(*surface);

    Json steps = Json::array();
    for (const TraceStep& step : result.steps) {
        Json entry;
        entry["parent_id"] = step.parent_id;
        entry["rule"] = step.rule;
        Json children = Json::array();
        for (const TraceChild& child : step.children) {
            Json node;
            node["id"] = child.id;
            node["k"] = child.k;
            node["multiplicity"] = int_string(child.multiplicity);
            if (child.dim) {
                node["dim"] = int_string(*child.dim);
                node["negative_dim"] = *child.dim < 0;
            }
            children.push_back(std::move(node));
        }
        entry["children"] = std::move(children);
        steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);

    Json terminal = Json::array();
    for (const auto& [j, multiplicity] : result.terminal) {
        Json entry;
        entry["j"] = j;
        entry["multiplicity"] = int_string(multiplicity);
        terminal.push_back(std::move(entry));
    }
    doc["terminal"] = std::move(terminal);
    return doc;
}

}  // namespace qnk
