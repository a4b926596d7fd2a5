#pragma once
// PLG text format for planar embeddings.
//
//   plg 1
//   v <id> <weight>
//   e <id> <u> <v> <cost>
//   rot <vertex-id> <edge-id> ...
//   outer <face-index>          (optional; default: largest face)
//
// `#` starts a comment. Ids are dense and 0-based. Writers emit records sorted
// by id so equal embeddings serialize byte-identically.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "planecut/embedding.hpp"

namespace planecut {

inline PlanarEmbedding read_plg(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  struct VRec {
    bool seen = false;
    i64 weight = 0;
  };
  struct ERec {
    bool seen = false;
    std::size_t u = 0, v = 0;
    i64 cost = 0;
  };
  std::vector<VRec> vrecs;
  std::vector<ERec> erecs;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> rots;
  long long outer = -1;

  auto fail = [&](const std::string& msg) -> void {
    throw FormatError("plg line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header_seen) {
      int version = -1;
      if (tag != "plg" || !(ls >> version) || version != 1) fail("expected header 'plg 1'");
      header_seen = true;
      continue;
    }
    if (tag == "v") {
      long long id, w;
      if (!(ls >> id >> w)) fail("malformed v record");
      if (id < 0) fail("negative vertex id");
      if (vrecs.size() <= static_cast<std::size_t>(id)) vrecs.resize(id + 1);
      if (vrecs[id].seen) fail("duplicate vertex id");
      vrecs[id] = {true, w};
    } else if (tag == "e") {
      long long id, u, v, c;
      if (!(ls >> id >> u >> v >> c)) fail("malformed e record");
      if (id < 0 || u < 0 || v < 0) fail("negative id in e record");
      if (erecs.size() <= static_cast<std::size_t>(id)) erecs.resize(id + 1);
      if (erecs[id].seen) fail("duplicate edge id");
      erecs[id] = {true, static_cast<std::size_t>(u), static_cast<std::size_t>(v), c};
    } else if (tag == "rot") {
      long long vid;
      if (!(ls >> vid)) fail("malformed rot record");
      if (vid < 0) fail("negative vertex id in rot record");
      std::vector<std::size_t> ids;
      long long e;
      while (ls >> e) {
        if (e < 0) fail("negative edge id in rot record");
        ids.push_back(static_cast<std::size_t>(e));
      }
      if (!ls.eof()) fail("malformed rot record");
      rots.emplace_back(static_cast<std::size_t>(vid), std::move(ids));
    } else if (tag == "outer") {
      if (!(ls >> outer) || outer < 0) fail("malformed outer record");
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string rest;
    if (tag != "rot" && (ls >> rest)) fail("trailing tokens");
  }
  lineno = 0;
  if (!header_seen) fail("missing header 'plg 1'");

  const std::size_t n = vrecs.size();
  const std::size_t m = erecs.size();
  if (n == 0) throw FormatError("plg: no vertices");
  std::vector<i64> vw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!vrecs[i].seen) throw FormatError("plg: vertex ids not dense (missing " + std::to_string(i) + ")");
    vw[i] = vrecs[i].weight;
  }
  std::vector<EdgeRec> edges(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!erecs[i].seen) throw FormatError("plg: edge ids not dense (missing " + std::to_string(i) + ")");
    edges[i] = EdgeRec{erecs[i].u, erecs[i].v, erecs[i].cost, false};
  }
  std::vector<std::vector<std::size_t>> rot(n);
  std::vector<char> rot_seen(n, 0);
  for (auto& [vid, ids] : rots) {
    if (vid >= n) throw FormatError("plg: rot vertex id out of range");
    if (rot_seen[vid]) throw FormatError("plg: duplicate rot record for vertex " + std::to_string(vid));
    rot_seen[vid] = 1;
    rot[vid] = std::move(ids);
  }
  return build_embedding(n, std::move(edges), rot, std::move(vw), {},
                         outer < 0 ? NONE : static_cast<std::size_t>(outer));
}

inline PlanarEmbedding read_plg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_plg(in);
}

inline void write_plg(const PlanarEmbedding& g, std::ostream& out) {
  out << "plg 1\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out << "v " << v << " " << g.vertex_weight(v) << "\n";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const EdgeRec& er = g.edge(e);
    out << "e " << e << " " << er.u << " " << er.v << " " << er.cost << "\n";
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << v;
    for (Dart d : g.rotation(v)) out << " " << PlanarEmbedding::edge_of(d);
    out << "\n";
  }
  out << "outer " << g.outer_face() << "\n";
}

inline std::string write_plg_string(const PlanarEmbedding& g) {
  std::ostringstream os;
  write_plg(g, os);
  return os.str();
}

inline void write_plg_file(const PlanarEmbedding& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  write_plg(g, out);
}

}  // namespace planecut
