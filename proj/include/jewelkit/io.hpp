#ifndef JEWELKIT_IO_HPP
#define JEWELKIT_IO_HPP

#include <string>

#include "json.hpp"

#include "jewelkit/homology.hpp"
#include "jewelkit/jacobian.hpp"
#include "jewelkit/jewel.hpp"
#include "jewelkit/multigraph.hpp"
#include "jewelkit/spheresys.hpp"

namespace jewelkit {

using nlohmann::json;

// Graphs: {"vertices":[{"id":0},...], "edges":[{"id":"e1","ends":[0,1]},...]};
// decorated graphs add "genus" per vertex. Serialization is deterministic and
// round-trips bit-exactly, as does the DOT form.

json graph_to_json(const MultiGraph& g);
MultiGraph graph_from_json(const json& j);

json decorated_to_json(const DecoratedGraph& d);
DecoratedGraph decorated_from_json(const json& j);

std::string graph_to_dot(const MultiGraph& g);
std::string decorated_to_dot(const DecoratedGraph& d);
DecoratedGraph decorated_from_dot(const std::string& text);
MultiGraph graph_from_dot(const std::string& text);

/// Reads a graph file, JSON or DOT (detected from the content). Absent genus
/// labels mean zero.
DecoratedGraph decorated_from_file(const std::string& path);
MultiGraph graph_from_file(const std::string& path);

json polytope_to_json(const HPolytope& p);
json points_to_json(const std::vector<std::vector<Rat>>& pts);
json poset_to_json(const JewelPoset& poset);
json homology_to_json(const HomologyResult& h);
json quadform_to_json(const QuadForm& q);
json wall_to_json(const WallDescriptor& w);
json classes_to_json(const std::vector<SystemClass>& classes);
json samples_to_json(const std::vector<BoundarySample>& samples);

/// Length vectors for metric graphs: either an array in edge order or an
/// object keyed by edge ID, entries "p/q".
std::vector<Rat> lengths_from_json(const MultiGraph& g, const json& j);

}  // namespace jewelkit

#endif
