#ifndef EPSCHAIN_IO_HPP
#define EPSCHAIN_IO_HPP

// JSON documents for clouds, chains, verdicts and reports. Every document
// carries `schema_version` and `kind`.

#include <cstddef>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "epschain/chain.hpp"
#include "epschain/homotopy.hpp"
#include "epschain/joinability.hpp"
#include "epschain/rips.hpp"
#include "epschain/space.hpp"

namespace epschain::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json header(const char* kind) {
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = kind;
    return j;
}

inline void expect_kind(const json& j, const char* kind) {
    if (!j.is_object())
        throw DocumentError("document must be a JSON object");
    if (!j.contains("schema_version") || j["schema_version"] != schema_version)
        throw DocumentError("unsupported or missing schema_version");
    if (j.contains("kind") && j["kind"] != kind)
        throw DocumentError(std::string("expected a '") + kind + "' document");
}

// ---------------------------------------------------------------------------
// files

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DocumentError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DocumentError("'" + path + "': " + e.what());
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DocumentError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw DocumentError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// clouds

inline json to_json(const PointCloud& c) {
    json j = header("cloud");
    j["name"] = c.name();
    if (c.has_coordinates()) {
        json pts = json::array();
        for (const Point2& p : c.points())
            pts.push_back({p.x, p.y});
        j["points"] = std::move(pts);
    } else {
        j["matrix"] = c.matrix();
    }
    if (c.has_labels()) {
        j["parts"] = c.parts();
        j["labels"] = c.labels();
    }
    return j;
}

inline PointCloud cloud_from_json(const json& j) {
    expect_kind(j, "cloud");
    try {
        const std::string name = j.value("name", std::string{});
        std::vector<std::string> parts, labels;
        if (j.contains("labels")) {
            labels = j["labels"].get<std::vector<std::string>>();
            parts = j.contains("parts") ? j["parts"].get<std::vector<std::string>>() : std::vector<std::string>{};
        }
        const bool has_points = j.contains("points"), has_matrix = j.contains("matrix");
        if (has_points == has_matrix)
            throw DocumentError("cloud needs exactly one of 'points' or 'matrix'");
        if (has_points) {
            std::vector<Point2> pts;
            for (const auto& p : j["points"]) {
                if (!p.is_array() || p.size() != 2)
                    throw DocumentError("each point must be a pair [x, y]");
                pts.push_back({p[0].get<double>(), p[1].get<double>()});
            }
            return PointCloud::from_points(name, std::move(pts), std::move(parts), std::move(labels));
        }
        return PointCloud::from_matrix(name, j["matrix"].get<std::vector<std::vector<double>>>(), std::move(parts),
                                       std::move(labels));
    } catch (const json::exception& e) {
        throw DocumentError(std::string("malformed cloud document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("invalid cloud: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// chains and moves

inline json to_json(const Chain& c) {
    json j = header("chain");
    j["space"] = c.cloud().name();
    j["epsilon"] = c.scale().epsilon();
    j["vertices"] = c.vertex_list();
    return j;
}

/// Chain fields without the document header, for embedding in reports.
inline json chain_body(const Chain& c) {
    json j;
    j["epsilon"] = c.scale().epsilon();
    j["vertices"] = c.vertex_list();
    return j;
}

inline Chain chain_from_json(const json& j, const PointCloud& cloud) {
    expect_kind(j, "chain");
    try {
        if (j.contains("space") && j["space"].get<std::string>() != cloud.name())
            throw DocumentError("chain refers to space '" + j["space"].get<std::string>() + "', not '" +
                                cloud.name() + "'");
        return Chain(cloud, j.at("vertices").get<std::vector<VertexId>>(), Scale(j.at("epsilon").get<double>()));
    } catch (const json::exception& e) {
        throw DocumentError(std::string("malformed chain document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("invalid chain: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw DocumentError(std::string("invalid chain: ") + e.what());
    }
}

inline json to_json(const ElementaryMove& m) {
    if (m.kind == ElementaryMove::Kind::insert)
        return json{{"op", "insert"}, {"position", m.position}, {"point", m.point}};
    return json{{"op", "remove"}, {"position", m.position}};
}

inline ElementaryMove move_from_json(const json& j) {
    const std::string op = j.at("op").get<std::string>();
    const auto pos = j.at("position").get<std::size_t>();
    if (op == "insert")
        return ElementaryMove::insert(pos, j.at("point").get<VertexId>());
    if (op == "remove")
        return ElementaryMove::remove(pos);
    throw DocumentError("unknown move op '" + op + "'");
}

inline json to_json(const SearchBudget& b) {
    return json{{"max_chain_length", b.max_chain_length}, {"max_states", b.max_states}};
}

/// With a skeleton, the certificate support is listed as vertex pairs too.
inline json to_json(const HomotopyVerdict& v, const RipsSkeleton* skeleton = nullptr) {
    json j;
    j["outcome"] = outcome_name(v.outcome);
    j["method"] = v.method;
    j["states_explored"] = v.states_explored;
    j["exhausted"] = v.exhausted;
    j["budget"] = to_json(v.budget);
    if (v.homotopic()) {
        json w = json::array();
        for (const auto& m : v.witness)
            w.push_back(to_json(m));
        j["witness"] = std::move(w);
    }
    if (v.certificate) {
        json c;
        c["edge_ids"] = v.certificate->residue;
        if (skeleton) {
            json support = json::array();
            for (EdgeId e : v.certificate->residue)
                support.push_back({skeleton->edges()[e].a, skeleton->edges()[e].b});
            c["support"] = std::move(support);
        }
        j["certificate"] = std::move(c);
    }
    return j;
}

inline std::vector<ElementaryMove> witness_from_json(const json& verdict) {
    std::vector<ElementaryMove> out;
    for (const auto& m : verdict.at("witness"))
        out.push_back(move_from_json(m));
    return out;
}

// ---------------------------------------------------------------------------
// joinability

inline json to_json(const ShortChainSearch& s) {
    json j;
    j["from"] = s.from;
    j["to"] = s.to;
    j["outcome"] = pair_outcome_name(s.outcome);
    if (const auto* w = s.winner()) {
        j["chain"] = chain_body(w->chain);
        j["verdict"] = to_json(w->verdict);
    }
    j["candidates_tried"] = s.candidates.size();
    j["distinct_classes"] = s.distinct_classes;
    json cands = json::array();
    for (const auto& c : s.candidates) {
        json e;
        e["length"] = c.chain.size();
        e["outcome"] = outcome_name(c.verdict.outcome);
        e["method"] = c.verdict.method;
        cands.push_back(std::move(e));
    }
    j["candidates"] = std::move(cands);
    if (!s.detail.empty())
        j["detail"] = s.detail;
    return j;
}

inline json to_json(const ScanParameters& p) {
    json j;
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    if (p.sigmas.empty())
        j["sigma"] = p.sigma;
    else
        j["sigmas"] = p.sigmas;
    j["budget"] = to_json(p.budget);
    j["seed"] = p.seed;
    j["max_candidates"] = p.max_candidates;
    j["full_scan_limit"] = p.full_scan_limit;
    j["sample_size"] = p.sample_size;
    return j;
}

inline json to_json(const JoinabilityReport& r, const char* kind = "joinability_report") {
    json j = header(kind);
    j["space"] = r.space;
    j["parameters"] = to_json(r.parameters);
    j["sampled"] = r.sampled;
    j["pairs_tested"] = r.entries.size();
    j["passed"] = r.passed;
    j["refuted"] = r.refuted;
    j["unknown"] = r.unknown;
    j["pass"] = r.pass;
    json entries = json::array();
    for (const auto& e : r.entries) {
        json x = to_json(e.search);
        x["distance"] = e.distance;
        x["sigma"] = e.sigma.epsilon();
        entries.push_back(std::move(x));
    }
    j["pairs"] = std::move(entries);
    return j;
}

inline json to_json(const RefinementResult& r) {
    json j;
    j["ok"] = r.ok;
    if (r.chain)
        j["chain"] = chain_body(*r.chain);
    if (r.failed_hop)
        j["failed_hop"] = *r.failed_hop;
    json hops = json::array();
    for (const auto& h : r.hops)
        hops.push_back(to_json(h));
    j["hops"] = std::move(hops);
    if (r.composed)
        j["composed"] = to_json(*r.composed);
    return j;
}

inline json to_json(const GeneralizedPathApprox& gp) {
    json j = header("generalized_path");
    j["filtration"] = gp.filtration.values();
    j["levels_requested"] = gp.filtration.size();
    j["from"] = gp.from;
    j["to"] = gp.to;
    j["status"] = gp.accepted ? "ACCEPTED" : "FAILED";
    json levels = json::array();
    for (const auto& c : gp.levels)
        levels.push_back(chain_body(c));
    j["levels"] = std::move(levels);
    json compat = json::array();
    for (const auto& v : gp.compatibility)
        compat.push_back(to_json(v));
    j["compatibility"] = std::move(compat);
    if (gp.shortness)
        j["level1_shortness"] = to_json(*gp.shortness);
    if (gp.failure) {
        json f;
        f["level"] = gp.failure->level;
        if (gp.failure->hop)
            f["hop"] = *gp.failure->hop;
        f["kind"] = pair_outcome_name(gp.failure->kind);
        f["reason"] = gp.failure->reason;
        if (!gp.refinements.empty() && !gp.refinements.back().ok && !gp.refinements.back().hops.empty())
            f["search"] = to_json(gp.refinements.back().hops.back());
        j["failure"] = std::move(f);
    }
    return j;
}

inline json to_json(const DichotomyResult& d) {
    json j;
    j["result"] = d.disconnected;
    j["sigma"] = d.sigma;
    j["cutoff_x"] = d.cutoff;
    j["deleted_vertices"] = d.deleted;
    j["x"] = d.pair.upper;
    j["y"] = d.pair.lower;
    if (d.surviving_chain)
        j["surviving_chain"] = chain_body(*d.surviving_chain);
    return j;
}

// ---------------------------------------------------------------------------
// neighborhood graph export

/// "a b" per line, a < b, ascending; preceded by a comment line with the
/// vertex count and scale.
inline void write_edge_list(std::ostream& out, const NeighborhoodGraph& g) {
    std::ostringstream eps;
    eps.precision(17);
    eps << g.scale().epsilon();
    out << "# vertices " << g.vertex_count() << " epsilon " << eps.str() << "\n";
    for (auto [a, b] : g.edge_list())
        out << a << ' ' << b << '\n';
}

}  // namespace epschain::io

#endif
