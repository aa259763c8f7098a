// Command-line frontend: builds chamber graphs of Coxeter systems, flag
// buildings, geometric lattices and generic complexes, constructs disjoint
// path families, runs the connectivity engine and certifies families.
//
// Exit codes: 0 success, 2 parse/input error, 3 resource cap exceeded,
// 4 verification failure, 5 domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "chambers/building.hpp"
#include "chambers/complex.hpp"
#include "chambers/connectivity.hpp"
#include "chambers/coxeter.hpp"
#include "chambers/dot.hpp"
#include "chambers/json_io.hpp"
#include "chambers/lattice.hpp"

namespace {

using namespace chambers;

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerify = 4;
constexpr int kExitDomain = 5;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::BadInput:
            return kExitParse;
        case ErrorCode::ResourceLimit:
            return kExitCap;
        default:
            return kExitDomain;
    }
}

long long configured_cap(std::optional<long long> flag_cap) {
    if (flag_cap) return *flag_cap;
    if (const char* env = std::getenv("CHAMBERS_VERTEX_CAP")) return std::atoll(env);
    return 100000;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::BadInput, std::string("json parse error: ") + e.what());
    }
    return j;
}

void emit(const Json& artifact, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << artifact.dump(2) << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) fail(ErrorCode::BadInput, "cannot write " + output_path);
    out << artifact.dump(2) << "\n";
}

Word parse_generator_word(const std::string& text, int rank) {
    Word word;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 's') continue;
        size_t j = i + 1;
        std::string digits;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
            digits += text[j++];
        if (digits.empty()) fail(ErrorCode::BadInput, "expected sK generator tokens");
        int g = std::stoi(digits) - 1;
        if (g < 0 || g >= rank) fail(ErrorCode::BadInput, "generator out of range: s" + digits);
        word.push_back(g);
        i = j - 1;
    }
    if (word.empty()) fail(ErrorCode::BadInput, "no generators in '" + text + "'");
    return word;
}

std::pair<int, int> parse_int_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) fail(ErrorCode::BadInput, "expected 'a,b'");
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

// One object spec per run: the CLI accepts exactly one of these.
struct ObjectSpec {
    std::string coxeter_file;
    int radius = -1;
    std::string building;   // "n,p"
    std::string lattice;    // boolean:N | partition:N | subspace:N,P | flats:FILE
    std::string complex_file;
    std::string graph_file;
    std::optional<long long> cap;

    int count() const {
        return (coxeter_file.empty() ? 0 : 1) + (building.empty() ? 0 : 1) +
               (lattice.empty() ? 0 : 1) + (complex_file.empty() ? 0 : 1) +
               (graph_file.empty() ? 0 : 1);
    }

    Json describe() const {
        Json j;
        if (!coxeter_file.empty()) {
            j["kind"] = "coxeter";
            j["file"] = coxeter_file;
            if (radius >= 0) j["radius"] = radius;
        } else if (!building.empty()) {
            j["kind"] = "building";
            j["spec"] = building;
        } else if (!lattice.empty()) {
            j["kind"] = "lattice";
            j["spec"] = lattice;
        } else if (!complex_file.empty()) {
            j["kind"] = "complex";
            j["file"] = complex_file;
        } else {
            j["kind"] = "graph";
            j["file"] = graph_file;
        }
        return j;
    }
};

void add_object_flags(CLI::App* cmd, ObjectSpec& spec, bool with_graph) {
    cmd->add_option("--coxeter", spec.coxeter_file, "Coxeter matrix json file");
    cmd->add_option("--radius", spec.radius, "Cayley ball radius (coxeter objects)");
    cmd->add_option("--building", spec.building, "flag building 'n,p'");
    cmd->add_option("--lattice", spec.lattice,
                    "lattice spec: boolean:N | partition:N | subspace:N,P | flats:FILE");
    cmd->add_option("--complex", spec.complex_file, "pure complex json file");
    if (with_graph) cmd->add_option("--graph", spec.graph_file, "chamber graph json file");
    cmd->add_option("--cap", spec.cap, "resource cap override (also CHAMBERS_VERTEX_CAP)");
}

GeometricLattice lattice_from_spec(const std::string& spec, long long cap) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::BadInput, "lattice spec must be kind:params");
    std::string kind = spec.substr(0, colon);
    std::string params = spec.substr(colon + 1);
    if (kind == "boolean") return boolean_lattice(std::stoi(params), cap);
    if (kind == "partition") return partition_lattice(std::stoi(params), cap);
    if (kind == "subspace") {
        auto [n, p] = parse_int_pair(params);
        return subspace_lattice(n, p, cap);
    }
    if (kind == "flats") {
        Json j = read_json_file(params);
        PrimeField f(j.at("p").get<int>());
        return flats_lattice(f, j.at("columns").get<FpMatrix>(), cap);
    }
    fail(ErrorCode::BadInput, "unknown lattice kind: " + kind);
}

// Built object with its chamber graph; exactly one member is engaged.
struct BuiltObject {
    std::optional<CayleyBall> ball;
    std::optional<FlagBuilding> building;
    std::optional<GeometricLattice> lattice;
    std::optional<ChainComplex> chains;
    std::optional<PureComplex> complex;
    std::optional<ChamberGraph> graph;

    const ChamberGraph& chamber_graph() const {
        if (ball) return ball->graph();
        if (building) return building->graph();
        if (chains) return chains->graph;
        return *graph;
    }
};

BuiltObject build_object(const ObjectSpec& spec) {
    if (spec.count() != 1)
        fail(ErrorCode::BadInput, "exactly one object spec per run is required");
    long long cap = configured_cap(spec.cap);
    BuiltObject obj;
    if (!spec.coxeter_file.empty()) {
        auto cm = coxeter_from_json(read_json_file(spec.coxeter_file));
        if (spec.radius < 0)
            fail(ErrorCode::BadInput, "coxeter objects need --radius");
        obj.ball.emplace(cm, spec.radius, static_cast<int>(cap));
    } else if (!spec.building.empty()) {
        auto [n, p] = parse_int_pair(spec.building);
        obj.building.emplace(n, p, cap);
    } else if (!spec.lattice.empty()) {
        obj.lattice.emplace(lattice_from_spec(spec.lattice, cap));
        obj.chains.emplace(lattice_chamber_graph(*obj.lattice));
    } else if (!spec.complex_file.empty()) {
        obj.complex.emplace(complex_from_json(read_json_file(spec.complex_file)));
        auto labeling = balanced_type_labeling(*obj.complex);
        obj.graph.emplace(
            chamber_graph_from_complex(*obj.complex, labeling ? &*labeling : nullptr));
    } else {
        Json j = read_json_file(spec.graph_file);
        while (!j.contains("vertices") && j.contains("graph")) j = j.at("graph");
        obj.graph.emplace(graph_from_json(j));
    }
    return obj;
}

int run_build(const ObjectSpec& spec, const std::string& output, const std::string& dot_path,
              std::uint64_t seed) {
    auto obj = build_object(spec);
    Json artifact;
    artifact["seed"] = seed;
    artifact["object"] = spec.describe();
    artifact["graph"] = graph_to_json(obj.chamber_graph());
    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) fail(ErrorCode::BadInput, "cannot write " + dot_path);
        out << graph_to_dot(obj.chamber_graph());
    }
    emit(artifact, output);
    return 0;
}

int run_params(const ObjectSpec& spec, const std::string& output, std::uint64_t seed) {
    auto obj = build_object(spec);
    const auto& g = obj.chamber_graph();
    Json artifact;
    artifact["seed"] = seed;
    artifact["object"] = spec.describe();
    artifact["chambers"] = g.vertex_count();
    artifact["complete"] = g.complete();
    int min_deg = g.vertex_count() ? g.degree(0) : 0, max_deg = min_deg;
    for (int v = 0; v < g.vertex_count(); ++v) {
        min_deg = std::min(min_deg, g.degree(v));
        max_deg = std::max(max_deg, g.degree(v));
    }
    artifact["min_degree"] = min_deg;
    artifact["max_degree"] = max_deg;
    artifact["regular"] = min_deg == max_deg;
    if (obj.building) {
        auto params = obj.building->parameters();
        Json qs;
        for (auto [s, q] : params.q_s) qs[std::to_string(s)] = q;
        artifact["q_s"] = qs;
        artifact["q_total"] = params.q_total;
    }
    if (obj.lattice) {
        auto validation = validate_geometric(*obj.lattice);
        artifact["geometric"] = validation.ok();
        if (!validation.ok()) {
            artifact["counterexample"] = validation.first_counterexample;
        } else {
            auto width = q_of_lattice(*obj.lattice);
            artifact["q"] = width.q;
            artifact["q_witness"] = width.witness;
            artifact["rank"] = obj.lattice->height();
        }
    }
    if (obj.ball) artifact["generators"] = obj.ball->matrix().rank();
    emit(artifact, output);
    return 0;
}

Json family_with_certificate(const ChamberGraph& g, const PathFamily& fam, bool& accepted) {
    auto cert = verify_disjoint_family(g, fam);
    accepted = accepted && cert.ok;
    Json j;
    j["family"] = family_to_json(fam);
    j["edge_lengths"] = fam.edge_lengths();
    j["certificate"] = certificate_to_json(cert);
    return j;
}

int run_paths(const ObjectSpec& spec, const std::string& from, const std::string& to,
              const std::string& pair, int sample, std::uint64_t seed,
              const std::string& output) {
    auto obj = build_object(spec);
    Json artifact;
    artifact["seed"] = seed;
    artifact["object"] = spec.describe();
    bool accepted = true;

    if (obj.ball) {
        if (from.empty() || to.empty())
            fail(ErrorCode::BadInput, "coxeter paths need --from and --to");
        const auto& cm = obj.ball->matrix();
        auto fan = coxeter_disjoint_fan(cm, parse_generator_word(from, cm.rank()),
                                        parse_generator_word(to, cm.rank()));
        auto fam = to_path_family(*obj.ball, fan);
        artifact["endpoints"] = Json::array({from, to});
        artifact["result"] = family_with_certificate(obj.ball->graph(), fam, accepted);
    } else if (obj.building || obj.chains) {
        const auto& g = obj.chamber_graph();
        std::vector<std::pair<int, int>> pairs;
        if (!pair.empty()) {
            pairs.push_back(parse_int_pair(pair));
        } else {
            pairs = g.distance_two_pairs();
            if (sample > 0 && sample < static_cast<int>(pairs.size())) {
                std::mt19937_64 rng(seed);
                std::shuffle(pairs.begin(), pairs.end(), rng);
                pairs.resize(static_cast<size_t>(sample));
                std::sort(pairs.begin(), pairs.end());
            }
        }
        Json results = Json::array();
        for (auto [u, v] : pairs) {
            PathFamily fam;
            if (obj.building) {
                fam = building_disjoint_paths(*obj.building, u, v);
            } else {
                auto lf = lattice_disjoint_paths(*obj.lattice,
                                                 obj.chains->chains[static_cast<size_t>(u)],
                                                 obj.chains->chains[static_cast<size_t>(v)]);
                fam = to_path_family(*obj.chains, lf);
            }
            Json entry = family_with_certificate(g, fam, accepted);
            entry["pair"] = Json::array({u, v});
            results.push_back(entry);
        }
        artifact["results"] = results;
    } else {
        fail(ErrorCode::BadInput, "paths needs a coxeter, building or lattice object");
    }
    artifact["all_accepted"] = accepted;
    emit(artifact, output);
    return accepted ? 0 : kExitVerify;
}

int run_connectivity(const ObjectSpec& spec, const std::string& mode, int k,
                     const std::string& pair, int jobs, bool allow_incomplete,
                     std::uint64_t seed, const std::string& output) {
    auto obj = build_object(spec);
    const auto& g = obj.chamber_graph();
    Json artifact;
    artifact["seed"] = seed;
    artifact["object"] = spec.describe();
    artifact["mode"] = mode;
    if (mode == "exact") {
        artifact["report"] = report_to_json(vertex_connectivity(g));
    } else if (mode == "liu") {
        if (k <= 0) fail(ErrorCode::BadInput, "liu mode needs --k");
        LiuOptions opts;
        opts.allow_incomplete = allow_incomplete;
        opts.jobs = jobs;
        auto rep = liu_check(g, k, opts);
        artifact["report"] = report_to_json(rep);
        if (!g.complete()) artifact["bound_semantics"] = "lower bound (truncated ball)";
    } else if (mode == "local") {
        if (pair.empty()) fail(ErrorCode::BadInput, "local mode needs --pair");
        auto [u, v] = parse_int_pair(pair);
        LocalConnectivityOptions opts;
        opts.allow_incomplete = allow_incomplete;
        auto res = local_connectivity(g, u, v, opts);
        artifact["value"] = res.value;
        artifact["lower_bound_only"] = res.lower_bound_only;
        artifact["family"] = family_to_json(res.family);
        artifact["min_cut"] = res.min_cut;
    } else {
        fail(ErrorCode::BadInput, "mode must be liu, exact or local");
    }
    emit(artifact, output);
    return 0;
}

// Accepts a raw object or the same object wrapped inside a CLI artifact.
Json unwrap(Json j, const std::string& key) {
    while (!j.contains("vertices") && !j.contains("source")) {
        if (j.contains(key))
            j = j.at(key);
        else if (j.contains("result"))
            j = j.at("result");
        else
            break;
    }
    return j;
}

int run_verify(const std::string& graph_file, const std::string& family_file,
               std::uint64_t seed, const std::string& output) {
    auto g = graph_from_json(unwrap(read_json_file(graph_file), "graph"));
    auto fam = family_from_json(unwrap(read_json_file(family_file), "family"));
    auto cert = verify_disjoint_family(g, fam);
    Json artifact;
    artifact["seed"] = seed;
    artifact["graph"] = graph_file;
    artifact["family"] = family_file;
    artifact["certificate"] = certificate_to_json(cert);
    emit(artifact, output);
    return cert.ok ? 0 : kExitVerify;
}

int run_export(const ObjectSpec& spec, const std::string& output) {
    auto obj = build_object(spec);
    std::string dot = graph_to_dot(obj.chamber_graph());
    if (output.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(output);
        if (!out) fail(ErrorCode::BadInput, "cannot write " + output);
        out << dot;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chamber graphs of Coxeter complexes, buildings and geometric lattices"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed may follow the subcommand

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed recorded in artifacts and used for sampling")
        ->capture_default_str();

    ObjectSpec spec;
    std::string output, dot_path, from, to, pair, mode = "exact", graph_file, family_file;
    int k = 0, jobs = 1, sample = 0;
    bool allow_incomplete = false;

    auto* build_cmd = app.add_subcommand("build", "construct an object and emit its chamber graph");
    add_object_flags(build_cmd, spec, true);
    build_cmd->add_option("--output,-o", output, "artifact file (default stdout)");
    build_cmd->add_option("--dot", dot_path, "also write a DOT rendering");

    auto* params_cmd = app.add_subcommand("params", "q parameters and regularity report");
    add_object_flags(params_cmd, spec, true);
    params_cmd->add_option("--output,-o", output, "artifact file (default stdout)");

    auto* paths_cmd = app.add_subcommand("paths", "construct disjoint path families");
    add_object_flags(paths_cmd, spec, false);
    paths_cmd->add_option("--from", from, "source generator word (coxeter)");
    paths_cmd->add_option("--to", to, "target generator word (coxeter)");
    paths_cmd->add_option("--pair", pair, "chamber id pair 'a,b' (building/lattice)");
    paths_cmd->add_option("--sample", sample, "sample this many distance-2 pairs");
    paths_cmd->add_option("--output,-o", output, "artifact file (default stdout)");

    auto* conn_cmd = app.add_subcommand("connectivity", "liu | exact | local connectivity");
    add_object_flags(conn_cmd, spec, true);
    conn_cmd->add_option("--mode", mode, "liu | exact | local")->capture_default_str();
    conn_cmd->add_option("--k", k, "connectivity target for liu mode");
    conn_cmd->add_option("--pair", pair, "vertex pair 'a,b' for local mode");
    conn_cmd->add_option("--jobs", jobs, "parallel flow computations")->capture_default_str();
    conn_cmd->add_flag("--allow-incomplete", allow_incomplete,
                       "accept truncated balls (results become lower bounds)");
    conn_cmd->add_option("--output,-o", output, "artifact file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "certify a path family file");
    verify_cmd->add_option("--graph", graph_file, "chamber graph json")->required();
    verify_cmd->add_option("--family", family_file, "path family json")->required();
    verify_cmd->add_option("--output,-o", output, "artifact file (default stdout)");

    auto* export_cmd = app.add_subcommand("export", "emit DOT with stable ordering");
    add_object_flags(export_cmd, spec, true);
    export_cmd->add_option("--output,-o", output, "DOT file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (build_cmd->parsed()) return run_build(spec, output, dot_path, seed);
        if (params_cmd->parsed()) return run_params(spec, output, seed);
        if (paths_cmd->parsed()) return run_paths(spec, from, to, pair, sample, seed, output);
        if (conn_cmd->parsed())
            return run_connectivity(spec, mode, k, pair, jobs, allow_incomplete, seed, output);
        if (verify_cmd->parsed()) return run_verify(graph_file, family_file, seed, output);
        if (export_cmd->parsed()) return run_export(spec, output);
    } catch (const Error& e) {
        Json err;
        err["error"]["code"] = error_code_name(e.code());
        err["error"]["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        Json err;
        err["error"]["code"] = "Unexpected";
        err["error"]["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return kExitParse;
    }
    return kExitParse;
}
