#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "combicalc/fields.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/refine.hpp"

namespace combicalc {

using json = nlohmann::ordered_json;

namespace detail {

inline json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string(what) + ": " + e.what());
    }
}

/// Read a dense id-indexed array: every element carries an "id" and the ids
/// must be exactly 0..n-1 (any order).
template <typename Fill>
void read_dense(const json& arr, const char* what, Fill&& fill) {
    if (!arr.is_array()) throw std::runtime_error(std::string(what) + ": expected an array");
    std::vector<bool> seen(arr.size(), false);
    for (std::size_t pos = 0; pos < arr.size(); ++pos) {
        const json& item = arr[pos];
        std::uint64_t id = item.at("id").get<std::uint64_t>();
        if (id >= arr.size() || seen[id])
            throw std::runtime_error(std::string(what) + "[" + std::to_string(pos) +
                                     "]: ids must be dense from 0 without repeats");
        seen[id] = true;
        fill(static_cast<std::uint32_t>(id), item);
    }
}

inline Vec2 read_vec2(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error(std::string(what) + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

/**
 * Mesh file format (JSON):
 *   {"vertices":[{"id":0,"xy":[x,y]?},...],
 *    "edges":[{"id":0,"src":0,"dst":1,"poly":[[x,y],...]?},...],
 *    "faces":[{"id":0,"cycle":[[edgeId,dir],...]},...],
 *    "boundary":[edgeIds]}
 * with dir in {1,-1} relative to the stored edge direction. Ids are dense
 * from 0. Loading resolves references but does not check the surface
 * axioms; run validate() for that.
 */
inline CombSurface load_mesh(const std::string& text) {
    json j = detail::parse_json(text, "mesh");
    CombSurface s;

    const json& jv = j.at("vertices");
    s.vertices.resize(jv.size());
    detail::read_dense(jv, "vertices", [&](std::uint32_t id, const json& item) {
        if (item.contains("xy")) s.vertices[id].xy = detail::read_vec2(item["xy"], "vertices.xy");
    });

    const json& je = j.at("edges");
    s.edges.resize(je.size());
    detail::read_dense(je, "edges", [&](std::uint32_t id, const json& item) {
        std::uint64_t src = item.at("src").get<std::uint64_t>();
        std::uint64_t dst = item.at("dst").get<std::uint64_t>();
        if (src >= s.vertices.size() || dst >= s.vertices.size())
            throw std::runtime_error("edges[" + std::to_string(id) +
                                     "]: dangling vertex reference");
        s.edges[id].src = static_cast<VertexId>(src);
        s.edges[id].dst = static_cast<VertexId>(dst);
        if (item.contains("poly"))
            for (const json& p : item["poly"])
                s.edges[id].poly.push_back(detail::read_vec2(p, "edges.poly"));
    });

    const json& jf = j.at("faces");
    s.faces.resize(jf.size());
    detail::read_dense(jf, "faces", [&](std::uint32_t id, const json& item) {
        for (const json& step : item.at("cycle")) {
            if (!step.is_array() || step.size() != 2)
                throw std::runtime_error("faces[" + std::to_string(id) +
                                         "].cycle: expected [edgeId, dir]");
            std::uint64_t e = step[0].get<std::uint64_t>();
            int dir = step[1].get<int>();
            if (e >= s.edges.size())
                throw std::runtime_error("faces[" + std::to_string(id) +
                                         "].cycle: dangling edge reference");
            if (dir != 1 && dir != -1)
                throw std::runtime_error("faces[" + std::to_string(id) +
                                         "].cycle: dir must be 1 or -1");
            s.faces[id].cycle.push_back({static_cast<EdgeId>(e), dir == 1});
        }
    });

    for (const json& b : j.at("boundary")) {
        std::uint64_t e = b.get<std::uint64_t>();
        if (e >= s.edges.size()) throw std::runtime_error("boundary: dangling edge reference");
        s.boundary_edges.push_back(static_cast<EdgeId>(e));
    }
    std::sort(s.boundary_edges.begin(), s.boundary_edges.end());
    s.boundary_edges.erase(std::unique(s.boundary_edges.begin(), s.boundary_edges.end()),
                           s.boundary_edges.end());
    return s;
}

inline std::string save_mesh(const CombSurface& s) {
    json j;
    j["vertices"] = json::array();
    for (VertexId v = 0; v < s.vertex_count(); ++v) {
        json item{{"id", v}};
        if (s.vertices[v].xy) item["xy"] = {s.vertices[v].xy->x, s.vertices[v].xy->y};
        j["vertices"].push_back(item);
    }
    j["edges"] = json::array();
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        json item{{"id", e}, {"src", s.edges[e].src}, {"dst", s.edges[e].dst}};
        if (!s.edges[e].poly.empty()) {
            json poly = json::array();
            for (const Vec2& p : s.edges[e].poly) poly.push_back({p.x, p.y});
            item["poly"] = poly;
        }
        j["edges"].push_back(item);
    }
    j["faces"] = json::array();
    for (FaceId f = 0; f < s.face_count(); ++f) {
        json cycle = json::array();
        for (const DirectedEdge& d : s.faces[f].cycle)
            cycle.push_back({d.edge, d.forward ? 1 : -1});
        j["faces"].push_back(json{{"id", f}, {"cycle", cycle}});
    }
    j["boundary"] = s.boundary_edges;
    return j.dump(2);
}

/**
 * Field file format (JSON): {"kind":"vsf"|"fsf"|"cvf","values":{...}} with
 * scalar fields keyed by vertex/face id and CVF entries keyed by edge id as
 * {"dir":1|-1,"value":v}, dir relative to the stored mesh direction.
 */
struct FieldFile {
    enum class Kind { Vsf, Fsf, Cvf } kind;
    std::map<std::uint32_t, double> scalar;
    std::map<std::uint32_t, CVF::Entry> vector;
};

inline FieldFile load_field(const std::string& text) {
    json j = detail::parse_json(text, "field");
    std::string kind = j.at("kind").get<std::string>();
    FieldFile f;
    if (kind == "vsf")
        f.kind = FieldFile::Kind::Vsf;
    else if (kind == "fsf")
        f.kind = FieldFile::Kind::Fsf;
    else if (kind == "cvf")
        f.kind = FieldFile::Kind::Cvf;
    else
        throw std::runtime_error("field: kind must be vsf, fsf, or cvf");

    for (auto& [key, value] : j.at("values").items()) {
        std::uint32_t id;
        try {
            id = static_cast<std::uint32_t>(std::stoul(key));
        } catch (...) {
            throw std::runtime_error("field.values: non-numeric id '" + key + "'");
        }
        if (f.kind == FieldFile::Kind::Cvf) {
            int dir = value.at("dir").get<int>();
            if (dir != 1 && dir != -1)
                throw std::runtime_error("field.values[" + key + "]: dir must be 1 or -1");
            f.vector[id] = {dir == 1, value.at("value").get<double>()};
        } else {
            f.scalar[id] = value.get<double>();
        }
    }
    return f;
}

namespace detail {

template <typename Map>
void require_dense_keys(const Map& m, std::size_t n, const char* what) {
    if (m.size() != n)
        throw std::runtime_error(std::string(what) + ": expected " + std::to_string(n) +
                                 " values, got " + std::to_string(m.size()));
    if (!m.empty() && (m.begin()->first != 0 || m.rbegin()->first != n - 1))
        throw std::runtime_error(std::string(what) + ": ids must be dense from 0");
}

}  // namespace detail

inline VSF as_vsf(const FieldFile& f, const CombSurface& s) {
    if (f.kind != FieldFile::Kind::Vsf) throw std::runtime_error("field: expected kind vsf");
    detail::require_dense_keys(f.scalar, s.vertex_count(), "vsf");
    VSF out = zero_vsf(s);
    for (auto [id, v] : f.scalar) out.values[id] = v;
    return out;
}

inline FSF as_fsf(const FieldFile& f, const CombSurface& s) {
    if (f.kind != FieldFile::Kind::Fsf) throw std::runtime_error("field: expected kind fsf");
    detail::require_dense_keys(f.scalar, s.face_count(), "fsf");
    FSF out = zero_fsf(s);
    for (auto [id, v] : f.scalar) out.values[id] = v;
    return out;
}

inline CVF as_cvf(const FieldFile& f, const CombSurface& s) {
    if (f.kind != FieldFile::Kind::Cvf) throw std::runtime_error("field: expected kind cvf");
    detail::require_dense_keys(f.vector, s.edge_count(), "cvf");
    CVF out = zero_cvf(s);
    for (auto [id, e] : f.vector) out.entries[id] = e;
    return out;
}

inline std::string save_cvf(const CVF& f) {
    json values = json::object();
    for (EdgeId e = 0; e < f.entries.size(); ++e)
        values[std::to_string(e)] =
            json{{"dir", f.entries[e].forward ? 1 : -1}, {"value", f.entries[e].value}};
    return json{{"kind", "cvf"}, {"values", values}}.dump(2);
}

inline std::string save_vsf(const VSF& f) {
    json values = json::object();
    for (VertexId v = 0; v < f.values.size(); ++v) values[std::to_string(v)] = f.values[v];
    return json{{"kind", "vsf"}, {"values", values}}.dump(2);
}

inline std::string save_fsf(const FSF& f) {
    json values = json::object();
    for (FaceId x = 0; x < f.values.size(); ++x) values[std::to_string(x)] = f.values[x];
    return json{{"kind", "fsf"}, {"values", values}}.dump(2);
}

/// Region file format (JSON): {"h0":..., "origin":[x,y], "cells":[[i,j],...]}.
inline VHRegion load_region(const std::string& text) {
    json j = detail::parse_json(text, "region");
    VHRegion r;
    r.h0 = j.at("h0").get<double>();
    if (r.h0 <= 0.0) throw std::runtime_error("region: h0 must be positive");
    r.origin = detail::read_vec2(j.at("origin"), "region.origin");
    for (const json& c : j.at("cells")) {
        if (!c.is_array() || c.size() != 2)
            throw std::runtime_error("region.cells: expected [i, j]");
        r.cells.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    return r;
}

inline std::string save_region(const VHRegion& r) {
    json cells = json::array();
    for (auto [i, j] : r.cells) cells.push_back({i, j});
    return json{{"h0", r.h0}, {"origin", {r.origin.x, r.origin.y}}, {"cells", cells}}.dump(2);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace combicalc
