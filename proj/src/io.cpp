#include "jewelkit/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jewelkit {

json graph_to_json(const MultiGraph& g) {
    json vs = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) vs.push_back({{"id", g.vertex_id(v)}});
    json es = json::array();
    for (const auto& e : g.edges())
        es.push_back({{"id", e.id}, {"ends", {g.vertex_id(e.u), g.vertex_id(e.v)}}});
    return {{"vertices", vs}, {"edges", es}};
}

MultiGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON needs \"vertices\" and \"edges\"");
    std::vector<int> vids;
    for (const auto& v : j.at("vertices")) vids.push_back(v.at("id").get<int>());
    std::vector<std::tuple<std::string, int, int>> es;
    for (const auto& e : j.at("edges")) {
        const auto& ends = e.at("ends");
        if (!ends.is_array() || ends.size() != 2)
            throw std::invalid_argument("edge \"ends\" must hold two vertex ids");
        es.emplace_back(e.at("id").get<std::string>(), ends[0].get<int>(), ends[1].get<int>());
    }
    return MultiGraph::from_ends(std::move(vids), es);
}

json decorated_to_json(const DecoratedGraph& d) {
    json j = graph_to_json(d.graph);
    for (int v = 0; v < d.graph.vertex_count(); ++v) j["vertices"][v]["genus"] = d.genus[v];
    return j;
}

DecoratedGraph decorated_from_json(const json& j) {
    MultiGraph g = graph_from_json(j);
    std::vector<int> genus(g.vertex_count(), 0);
    int v = 0;
    for (const auto& vj : j.at("vertices")) genus[v++] = vj.value("genus", 0);
    return {std::move(g), std::move(genus)};
}

namespace {

std::string dot_body(const MultiGraph& g, const std::vector<int>* genus) {
    std::ostringstream out;
    out << "graph g {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "  " << g.vertex_id(v);
        if (genus) out << " [genus=" << (*genus)[v] << "]";
        out << ";\n";
    }
    for (const auto& e : g.edges())
        out << "  " << g.vertex_id(e.u) << " -- " << g.vertex_id(e.v) << " [label=\"" << e.id
            << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::string graph_to_dot(const MultiGraph& g) { return dot_body(g, nullptr); }

std::string decorated_to_dot(const DecoratedGraph& d) { return dot_body(d.graph, &d.genus); }

DecoratedGraph decorated_from_dot(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> vids;
    std::vector<int> genus;
    std::vector<std::tuple<std::string, int, int>> edges;
    bool seen_header = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (!seen_header) {
            if (line.rfind("graph", 0) != 0 || line.find('{') == std::string::npos)
                throw std::invalid_argument("DOT: expected 'graph <name> {'");
            seen_header = true;
            continue;
        }
        if (line == "}") break;
        if (line.back() != ';') throw std::invalid_argument("DOT: missing ';' in line: " + line);
        line.pop_back();
        line = trim(line);
        auto dash = line.find("--");
        if (dash == std::string::npos) {
            // vertex line: <id> [genus=<g>]
            int gval = 0;
            auto br = line.find('[');
            std::string idpart = trim(br == std::string::npos ? line : line.substr(0, br));
            if (br != std::string::npos) {
                auto eq = line.find("genus=", br);
                if (eq == std::string::npos)
                    throw std::invalid_argument("DOT: unknown vertex attribute: " + line);
                gval = std::stoi(line.substr(eq + 6));
            }
            vids.push_back(std::stoi(idpart));
            genus.push_back(gval);
        } else {
            int u = std::stoi(trim(line.substr(0, dash)));
            auto br = line.find('[', dash);
            if (br == std::string::npos)
                throw std::invalid_argument("DOT: edge line needs [label=\"...\"]: " + line);
            int v = std::stoi(trim(line.substr(dash + 2, br - dash - 2)));
            auto q1 = line.find('"', br);
            auto q2 = line.find('"', q1 + 1);
            if (q1 == std::string::npos || q2 == std::string::npos)
                throw std::invalid_argument("DOT: malformed edge label: " + line);
            edges.emplace_back(line.substr(q1 + 1, q2 - q1 - 1), u, v);
        }
    }
    if (!seen_header) throw std::invalid_argument("DOT: no graph header found");
    return {MultiGraph::from_ends(std::move(vids), edges), std::move(genus)};
}

MultiGraph graph_from_dot(const std::string& text) { return decorated_from_dot(text).graph; }

DecoratedGraph decorated_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string head = trim(text.substr(0, 64));
    if (!head.empty() && (head[0] == '{' || head[0] == '[')) {
        json j = json::parse(text);  // parse errors carry the byte offset
        return decorated_from_json(j);
    }
    return decorated_from_dot(text);
}

MultiGraph graph_from_file(const std::string& path) { return decorated_from_file(path).graph; }

json polytope_to_json(const HPolytope& p) {
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back(c);
    json eq = json::array();
    for (const auto& c : p.equality_coeffs) eq.push_back(rat_to_string(c));
    eq.push_back(rat_to_string(p.equality_rhs));
    json rows = json::array();
    json tags = json::array();
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        json row = json::array();
        for (const auto& c : p.rows[i].coeffs) row.push_back(rat_to_string(c));
        row.push_back(rat_to_string(p.rows[i].rhs));
        rows.push_back(std::move(row));
        if (p.tags[i].kind == HPolytope::RowKind::nonneg)
            tags.push_back({{"kind", "nonneg"}, {"edge", p.coords[p.tags[i].edge]}});
        else {
            json core = json::array();
            for (int e : p.tags[i].core.indices()) core.push_back(p.coords[e]);
            tags.push_back({{"kind", "truncation"}, {"core", std::move(core)}});
        }
    }
    return {{"coords", std::move(coords)},
            {"equality", std::move(eq)},
            {"rows", std::move(rows)},
            {"tags", std::move(tags)}};
}

json points_to_json(const std::vector<std::vector<Rat>>& pts) {
    json out = json::array();
    for (const auto& p : pts) {
        json row = json::array();
        for (const auto& x : p) row.push_back(rat_to_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

json poset_to_json(const JewelPoset& poset) {
    const MultiGraph& g = poset.host();
    json faces = json::array();
    for (const auto& f : poset.faces()) {
        json forest = json::array();
        for (int e : f.forest.indices()) forest.push_back(g.edge(e).id);
        json chain = json::array();
        for (EdgeSet c : f.chain) {
            json member = json::array();
            for (int e : c.indices()) member.push_back(g.edge(e).id);
            chain.push_back(std::move(member));
        }
        faces.push_back({{"forest", std::move(forest)},
                         {"chain", std::move(chain)},
                         {"codim", f.codim()}});
    }
    json order = json::array();
    const int n = static_cast<int>(poset.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && poset.face_le(i, j)) order.push_back({i, j});
    return {{"faces", std::move(faces)}, {"order", std::move(order)}};
}

json homology_to_json(const HomologyResult& h) {
    json groups = json::array();
    for (const auto& g : h.groups) {
        json tors = json::array();
        for (const Int& t : g.torsion) tors.push_back(t.get_str());
        groups.push_back({{"degree", g.degree}, {"betti", g.betti}, {"torsion", std::move(tors)}});
    }
    return {{"groups", std::move(groups)}, {"euler", h.euler_characteristic}};
}

json quadform_to_json(const QuadForm& q) {
    json rows = json::array();
    for (const auto& r : q.m) {
        json row = json::array();
        for (const auto& x : r) row.push_back(rat_to_string(x));
        rows.push_back(std::move(row));
    }
    return rows;
}

json wall_to_json(const WallDescriptor& w) {
    json pieces = json::array();
    for (const auto& p : w.pieces)
        pieces.push_back({{"genus", p.genus}, {"spheres", p.boundary_spheres}});
    return {{"system", decorated_to_json(w.system)},
            {"pieces", std::move(pieces)},
            {"jewel_faces", w.jewel_face_count},
            {"n", total_n(w.system)}};
}

json classes_to_json(const std::vector<SystemClass>& classes) {
    json out = json::array();
    for (const auto& c : classes)
        out.push_back({{"code", c.code},
                       {"edges", c.edge_count},
                       {"complete", c.complete},
                       {"core", c.core},
                       {"graph", decorated_to_json(c.representative)}});
    return out;
}

json samples_to_json(const std::vector<BoundarySample>& samples) {
    json out = json::array();
    for (const auto& s : samples) {
        json point = json::array();
        for (const auto& x : s.point) point.push_back(rat_to_string(x));
        out.push_back({{"class", s.class_code},
                       {"core", s.core_edge_ids},
                       {"point", std::move(point)},
                       {"form", quadform_to_json(s.form)}});
    }
    return out;
}

std::vector<Rat> lengths_from_json(const MultiGraph& g, const json& j) {
    std::vector<Rat> out(g.edge_count(), Rat(0));
    if (j.is_array()) {
        if (static_cast<int>(j.size()) != g.edge_count())
            throw std::invalid_argument("length array does not match the edge count");
        for (int e = 0; e < g.edge_count(); ++e)
            out[e] = rat_from_string(j[e].get<std::string>());
        return out;
    }
    if (j.is_object()) {
        json entries = j.contains("lengths") ? j.at("lengths") : j;
        for (auto it = entries.begin(); it != entries.end(); ++it)
            out[g.edge_index(it.key())] = rat_from_string(it.value().get<std::string>());
        return out;
    }
    throw std::invalid_argument("lengths must be an array or an object keyed by edge id");
}

}  // namespace jewelkit
