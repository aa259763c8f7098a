#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chambers/complex.hpp"
#include "chambers/connectivity.hpp"
#include "chambers/coxeter.hpp"
#include "chambers/errors.hpp"
#include "chambers/graph.hpp"
#include "chambers/lattice.hpp"

namespace chambers {

using Json = nlohmann::ordered_json;

// Coxeter systems: {"rank": n, "m": [[...]]} with 0 encoding an infinite
// order of st.

inline Json coxeter_to_json(const CoxeterMatrix& cm) {
    Json j;
    j["rank"] = cm.rank();
    j["m"] = cm.entries();
    return j;
}

inline CoxeterMatrix coxeter_from_json(const Json& j) {
    if (!j.contains("rank") || !j.contains("m"))
        fail(ErrorCode::BadInput, "coxeter json needs rank and m");
    auto m = j.at("m").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(m.size()) != j.at("rank").get<int>())
        fail(ErrorCode::BadInput, "rank does not match the matrix size");
    return CoxeterMatrix(std::move(m));
}

// Pure complexes: {"dimension": d, "chambers": [[v,...],...]}.

inline Json complex_to_json(const PureComplex& k) {
    Json j;
    j["dimension"] = k.dimension();
    j["chambers"] = k.chambers();
    return j;
}

inline PureComplex complex_from_json(const Json& j) {
    if (!j.contains("dimension") || !j.contains("chambers"))
        fail(ErrorCode::BadInput, "complex json needs dimension and chambers");
    return PureComplex(j.at("dimension").get<int>(),
                       j.at("chambers").get<std::vector<std::vector<int>>>());
}

// Chamber graphs: {"vertices": [...], "edges": [[a,b,label?],...],
// "complete": bool, "provenance": str}.

inline Json graph_to_json(const ChamberGraph& g) {
    Json j;
    std::vector<int> vertices(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) vertices[static_cast<size_t>(v)] = v;
    j["vertices"] = vertices;
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json edge = Json::array({e.a, e.b});
        if (e.label) edge.push_back(*e.label);
        edges.push_back(edge);
    }
    j["edges"] = edges;
    j["complete"] = g.complete();
    j["provenance"] = g.provenance();
    return j;
}

inline ChamberGraph graph_from_json(const Json& j) {
    if (!j.contains("vertices") || !j.contains("edges"))
        fail(ErrorCode::BadInput, "graph json needs vertices and edges");
    auto vertices = j.at("vertices").get<std::vector<int>>();
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] != static_cast<int>(i))
            fail(ErrorCode::BadInput, "vertex ids must be 0..n-1 in order");
    ChamberGraph g(static_cast<int>(vertices.size()),
                   j.value("provenance", std::string("generic")));
    for (const auto& edge : j.at("edges")) {
        if (!edge.is_array() || edge.size() < 2 || edge.size() > 3)
            fail(ErrorCode::BadInput, "edge entries are [a,b] or [a,b,label]");
        std::optional<int> label;
        if (edge.size() == 3) label = edge.at(2).get<int>();
        g.add_edge(edge.at(0).get<int>(), edge.at(1).get<int>(), label);
    }
    g.set_complete(j.value("complete", true));
    g.finalize();
    return g;
}

// Path families: {"source": id, "target": id, "paths": [[ids...],...],
// "provenance": str}.

inline Json family_to_json(const PathFamily& f) {
    Json j;
    j["source"] = f.source;
    j["target"] = f.target;
    j["paths"] = f.paths;
    j["provenance"] = f.provenance;
    return j;
}

inline PathFamily family_from_json(const Json& j) {
    if (!j.contains("source") || !j.contains("target") || !j.contains("paths"))
        fail(ErrorCode::BadInput, "family json needs source, target and paths");
    PathFamily f;
    f.source = j.at("source").get<int>();
    f.target = j.at("target").get<int>();
    f.paths = j.at("paths").get<std::vector<std::vector<int>>>();
    f.provenance = j.value("provenance", std::string("generic"));
    return f;
}

// Lattices: {"elements": N, "rank": [...], "covers": [[a,b],...]} with
// bottom = id 0, top = id N-1.

inline Json lattice_to_json(const GeometricLattice& p) {
    Json j;
    j["elements"] = p.size();
    std::vector<int> ranks(static_cast<size_t>(p.size()));
    for (int x = 0; x < p.size(); ++x) ranks[static_cast<size_t>(x)] = p.rank(x);
    j["rank"] = ranks;
    Json covers = Json::array();
    for (int x = 0; x < p.size(); ++x)
        for (int y : p.up_covers(x)) covers.push_back(Json::array({x, y}));
    j["covers"] = covers;
    return j;
}

inline GeometricLattice lattice_from_json(const Json& j) {
    if (!j.contains("elements") || !j.contains("rank") || !j.contains("covers"))
        fail(ErrorCode::BadInput, "lattice json needs elements, rank and covers");
    auto ranks = j.at("rank").get<std::vector<int>>();
    if (static_cast<int>(ranks.size()) != j.at("elements").get<int>())
        fail(ErrorCode::BadInput, "rank array does not match the element count");
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers"))
        covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    return GeometricLattice(std::move(ranks), covers, "imported");
}

// Certificates and connectivity reports.

inline Json certificate_to_json(const FamilyCertificate& cert) {
    Json j;
    j["accepted"] = cert.ok;
    if (!cert.ok) {
        j["violation"] = cert.violation;
        if (cert.path_a >= 0) j["path_a"] = cert.path_a;
        if (cert.path_b >= 0) j["path_b"] = cert.path_b;
        if (cert.shared_vertex >= 0) j["shared_vertex"] = cert.shared_vertex;
    }
    return j;
}

inline Json report_to_json(const ConnectivityReport& rep) {
    Json j;
    j["method"] = rep.method;
    j["lower"] = rep.lower;
    j["upper"] = rep.upper;
    if (rep.lower == rep.upper) j["kappa"] = rep.lower;
    j["passed"] = rep.passed;
    if (rep.witness_pair)
        j["witness_pair"] = Json::array({rep.witness_pair->first, rep.witness_pair->second});
    if (!rep.separating_set.empty()) j["separating_set"] = rep.separating_set;
    return j;
}

} // namespace chambers
