#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "chambers/errors.hpp"
#include "chambers/graph.hpp"

namespace chambers {

/// DOT rendering with deterministic statement order: vertices ascending,
/// then edges in canonical order, labels as `label` attributes.
inline std::string graph_to_dot(const ChamberGraph& g, const std::string& name = "chambers") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
    for (const auto& e : g.edges()) {
        out << "  " << e.a << " -- " << e.b;
        if (e.label) out << " [label=\"" << *e.label << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

/// Parses the subset of DOT emitted by graph_to_dot; used to round-trip
/// exports in tests and the CLI.
inline ChamberGraph graph_from_dot(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<int, int, std::optional<int>>> edges;
    int max_vertex = -1;
    bool header_seen = false;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::string body = line.substr(first);
        if (body.rfind("graph", 0) == 0) {
            header_seen = true;
            continue;
        }
        if (body.rfind("}", 0) == 0) break;
        auto semi = body.find(';');
        if (semi == std::string::npos) fail(ErrorCode::BadInput, "dot statement without ';'");
        body = body.substr(0, semi);
        auto dash = body.find("--");
        if (dash == std::string::npos) {
            max_vertex = std::max(max_vertex, std::stoi(body));
            continue;
        }
        int a = std::stoi(body.substr(0, dash));
        std::string rest = body.substr(dash + 2);
        std::optional<int> label;
        auto bracket = rest.find('[');
        if (bracket != std::string::npos) {
            auto quote = rest.find('"', bracket);
            if (quote == std::string::npos) fail(ErrorCode::BadInput, "malformed label");
            label = std::stoi(rest.substr(quote + 1));
            rest = rest.substr(0, bracket);
        }
        int b = std::stoi(rest);
        edges.emplace_back(a, b, label);
        max_vertex = std::max(max_vertex, std::max(a, b));
    }
    if (!header_seen) fail(ErrorCode::BadInput, "not a dot graph");
    ChamberGraph g(max_vertex + 1, "generic");
    for (auto [a, b, label] : edges) g.add_edge(a, b, label);
    g.finalize();
    return g;
}

} // namespace chambers
