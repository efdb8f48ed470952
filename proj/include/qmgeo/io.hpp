#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmgeo/controls.hpp"
#include "qmgeo/cross_ratio.hpp"
#include "qmgeo/errors.hpp"
#include "qmgeo/hyperbolic.hpp"
#include "qmgeo/maps.hpp"
#include "qmgeo/metrize.hpp"
#include "qmgeo/perfectness.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

using json = nlohmann::json;

// --- space files: {"name": ..., "labels": [...], "rho": [[...]]} ---

inline json space_to_json(const QuasiMetricSpace& space) {
    return json{{"name", space.name()},
                {"labels", space.labels()},
                {"rho", space.matrix().to_rows()}};
}

inline QuasiMetricSpace space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("labels") || !j.contains("rho"))
        throw MalformedInput("space file must carry labels and rho");
    try {
        const auto labels = j.at("labels").get<std::vector<std::string>>();
        const auto rows = j.at("rho").get<std::vector<std::vector<double>>>();
        const std::string name = j.value("name", "");
        if (rows.size() != labels.size()) throw MalformedInput("label/matrix size mismatch");
        return QuasiMetricSpace(labels, SquareMatrix::from_rows(rows), name);
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("space file: ") + e.what());
    }
}

inline void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

inline void save_space(const QuasiMetricSpace& space, const std::string& path) {
    save_json(space_to_json(space), path);
}

inline QuasiMetricSpace load_space(const std::string& path) {
    return space_from_json(load_json(path));
}

// --- map files: {"source": path, "target": path, "bijection": [...]} ---

inline PointMap load_map(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("source") || !j.contains("target"))
        throw MalformedInput("map file must carry source and target space paths");
    const QuasiMetricSpace src = load_space(j.at("source").get<std::string>());
    const QuasiMetricSpace tgt = load_space(j.at("target").get<std::string>());
    std::vector<std::size_t> bij;
    if (j.contains("bijection")) {
        bij = j.at("bijection").get<std::vector<std::size_t>>();
    } else {
        bij.resize(src.size());
        for (std::size_t i = 0; i < bij.size(); ++i) bij[i] = i;
    }
    return PointMap(src, tgt, bij);
}

// --- reports ---

inline json validation_to_json(const ValidationReport& rep) {
    json j{{"pass", rep.pass()},
           {"zero_diagonal", rep.zero_diagonal},
           {"symmetric", rep.symmetric},
           {"positive_off_diagonal", rep.positive_off_diagonal},
           {"k_finite", rep.k_finite}};
    if (!rep.zero_diagonal) j["bad_diagonal_index"] = rep.bad_diagonal_index;
    if (!rep.symmetric) j["asymmetric_pair"] = {rep.asymmetric_pair.first, rep.asymmetric_pair.second};
    if (!rep.positive_off_diagonal)
        j["nonpositive_pair"] = {rep.nonpositive_pair.first, rep.nonpositive_pair.second};
    return j;
}

inline json bk_report_to_json(const BkBoundsReport& rep) {
    return json{{"checked", rep.checked},
                {"violations", rep.violations},
                {"k_used", rep.k_used},
                {"worst",
                 {{"indices", rep.worst},
                  {"r", rep.worst_r},
                  {"bracket", rep.worst_bracket},
                  {"slack", rep.max_slack}}}};
}

inline json perfectness_to_json(const PerfectnessReport& rep) {
    return json{{"mu_hat", rep.mu_hat},
                {"vacuous", rep.vacuous},
                {"witness", {{"point", rep.witness_point}, {"radius", rep.witness_radius}}},
                {"window", {{"r_min", rep.window_min}, {"r_max", rep.window_max}}}};
}

inline json hd_to_json(const HdReport& rep) {
    return json{{"lambda1", rep.lambda1}, {"lambda2", rep.lambda2},
                {"pair_floor", rep.pair_floor}, {"feasible", rep.feasible},
                {"vacuous", rep.vacuous},
                {"worst_pair", {rep.worst_pair[0], rep.worst_pair[1]}}};
}

inline json condition4_to_json(const Condition4Report& rep) {
    return json{{"mu1", rep.mu1}, {"mu2", rep.mu2}, {"feasible", rep.feasible},
                {"vacuous", rep.vacuous}, {"triples_checked", rep.triples_checked},
                {"triples_vacuous", rep.triples_vacuous},
                {"worst_triple", {rep.worst_triple[0], rep.worst_triple[1], rep.worst_triple[2]}}};
}

inline json sigma_to_json(const SigmaReport& rep) {
    return json{{"sigma_hat", rep.sigma_hat}, {"infinite", rep.infinite},
                {"pairs_checked", rep.pairs_checked}, {"chains_built", rep.chains_built},
                {"interval", condition4_to_json(rep.interval)}};
}

inline json equivalence_to_json(const EquivalenceReport& rep) {
    const auto signal = [](const std::optional<bool>& s) {
        return s ? json(*s) : json(nullptr);
    };
    return json{{"up", perfectness_to_json(rep.up)},
                {"hd", hd_to_json(rep.hd)},
                {"sigma", sigma_to_json(rep.sigma)},
                {"condition4", condition4_to_json(rep.cond4)},
                {"signals",
                 {{"up", signal(rep.up_signal)},
                  {"hd", signal(rep.hd_signal)},
                  {"sigma", signal(rep.sigma_signal)},
                  {"condition4", signal(rep.cond4_signal)}}},
                {"consistent", rep.consistent}};
}

inline json control_to_json(const PowerControl& c) {
    return json{{"kind", c.kind == ControlKind::symmetric ? "symmetric" : "mobius"},
                {"M", c.m},
                {"alpha", c.alpha}};
}

inline PowerControl control_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "symmetric" && kind != "mobius")
            throw MalformedInput("control kind must be symmetric or mobius");
        return PowerControl(kind == "symmetric" ? ControlKind::symmetric : ControlKind::mobius,
                            j.at("M").get<double>(), j.at("alpha").get<double>());
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("control file: ") + e.what());
    }
}

inline json metrization_to_json(const MetrizationResult& m) {
    return json{{"epsilon", m.epsilon},
                {"min_ratio", m.min_ratio},
                {"guarantee_active", m.guarantee_active},
                {"k_eps", m.k_eps}};
}

inline json graph_to_json(const HypGraph& g) {
    json vertices = json::array();
    for (const auto& v : g.vertices) vertices.push_back({{"level", v.level}, {"center", v.center}});
    json edges = json::array();
    for (std::size_t v = 0; v < g.adjacency.size(); ++v)
        for (std::size_t w : g.adjacency[v])
            if (v < w) edges.push_back({v, w});
    return json{{"r", g.r}, {"levels", g.levels}, {"vertices", vertices}, {"edges", edges}};
}

// --- envelope CSV: header then one (t, s) row per staircase point ---

inline void save_envelope_csv(const DistortionEnvelope& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << "t,s\n";
    char buf[64];
    for (const auto& [t, s] : env.points) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", t, s);
        out << buf;
    }
}

inline DistortionEnvelope load_envelope_csv(const std::string& path, ControlKind kind) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot read " + path);
    DistortionEnvelope env;
    env.kind = kind;
    std::string line;
    if (!std::getline(in, line)) throw MalformedInput(path + ": empty envelope file");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw MalformedInput(path + ": malformed CSV row");
        try {
            env.points.emplace_back(std::stod(line.substr(0, comma)),
                                    std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw MalformedInput(path + ": malformed CSV row");
        }
    }
    env.raw_count = env.points.size();
    return env;
}

} // namespace qmgeo
