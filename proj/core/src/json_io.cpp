#include "wireface/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wireface {

using json = nlohmann::ordered_json;

namespace {

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

json face_to_json(const FaceLoopSet& face) {
  json jf;
  jf["loops"] = face.loops;
  jf["type"] = to_string(face.type);
  return jf;
}

FaceLoopSet face_from_json(const json& jf) {
  FaceLoopSet face;
  face.loops = jf.at("loops").get<std::vector<std::vector<int>>>();
  face.type = face_type_from_string(jf.at("type").get<std::string>());
  return face;
}

void check_drawing(const WireframeDrawing& d) {
  const int n_vertices = static_cast<int>(d.vertices.size());
  int k = -1;
  for (size_t e = 0; e < d.edges.size(); ++e) {
    const Edge& edge = d.edges[e];
    if (edge.v0 < 0 || edge.v0 >= n_vertices || edge.v1 < 0 ||
        edge.v1 >= n_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (edge.samples.size() < 2) {
      throw std::invalid_argument("edge needs at least two samples");
    }
    if (k < 0) k = static_cast<int>(edge.samples.size());
    if (static_cast<int>(edge.samples.size()) != k) {
      throw std::invalid_argument("inconsistent samples-per-edge count");
    }
    const double tol = 1e-9;
    if (dist2(edge.samples.front(), d.vertices[edge.v0].pos()) > tol ||
        dist2(edge.samples.back(), d.vertices[edge.v1].pos()) > tol) {
      throw std::invalid_argument("edge samples do not reach endpoints");
    }
  }
  if (d.ground_truth) {
    const int n_coedges = static_cast<int>(d.coedges.size());
    for (const FaceLoopSet& f : *d.ground_truth) {
      for (const auto& loop : f.loops) {
        for (int c : loop) {
          if (c < 0 || c >= n_coedges) {
            throw std::invalid_argument("face loop references unknown co-edge");
          }
        }
      }
    }
  }
  if (d.depths && d.depths->size() != d.vertices.size()) {
    throw std::invalid_argument("depths size mismatch");
  }
}

}  // namespace

std::string serialize_drawing(const WireframeDrawing& drawing) {
  json root;
  json jverts = json::array();
  for (const Vertex2& v : drawing.vertices) {
    jverts.push_back({{"x", v.x}, {"y", v.y}});
  }
  root["vertices"] = std::move(jverts);

  json jedges = json::array();
  for (const Edge& e : drawing.edges) {
    json je;
    je["kind"] = to_string(e.kind);
    je["v"] = json::array({e.v0, e.v1});
    json samples = json::array();
    for (const Vec2& s : e.samples) samples.push_back(vec2_to_json(s));
    je["samples"] = std::move(samples);
    jedges.push_back(std::move(je));
  }
  root["edges"] = std::move(jedges);

  if (drawing.ground_truth) {
    json jfaces = json::array();
    for (const FaceLoopSet& f : *drawing.ground_truth) {
      jfaces.push_back(face_to_json(f));
    }
    root["faces"] = std::move(jfaces);
  }
  if (drawing.directions) {
    json jdirs = json::array();
    for (const Vec3& d : *drawing.directions) {
      jdirs.push_back(json::array({d.x, d.y, d.z}));
    }
    root["directions"] = std::move(jdirs);
  }
  if (drawing.depths) {
    root["depths"] = *drawing.depths;
  }
  return root.dump();
}

WireframeDrawing parse_drawing(const std::string& text) {
  json root = json::parse(text);
  WireframeDrawing d;
  for (const json& jv : root.at("vertices")) {
    d.vertices.push_back({jv.at("x").get<double>(), jv.at("y").get<double>()});
  }
  for (const json& je : root.at("edges")) {
    Edge e;
    e.kind = edge_kind_from_string(je.at("kind").get<std::string>());
    e.v0 = je.at("v").at(0).get<int>();
    e.v1 = je.at("v").at(1).get<int>();
    for (const json& js : je.at("samples")) {
      e.samples.push_back({js.at(0).get<double>(), js.at(1).get<double>()});
    }
    d.edges.push_back(std::move(e));
  }
  d.coedges = build_coedges(d.edges);
  if (root.contains("faces")) {
    std::vector<FaceLoopSet> faces;
    for (const json& jf : root.at("faces")) faces.push_back(face_from_json(jf));
    d.ground_truth = std::move(faces);
  }
  if (root.contains("directions")) {
    const json& jd = root.at("directions");
    if (jd.size() != 3) throw std::invalid_argument("expected 3 directions");
    std::array<Vec3, 3> dirs;
    for (int i = 0; i < 3; ++i) {
      dirs[i] = {jd[i].at(0).get<double>(), jd[i].at(1).get<double>(),
                 jd[i].at(2).get<double>()};
    }
    d.directions = dirs;
  }
  if (root.contains("depths")) {
    d.depths = root.at("depths").get<std::vector<double>>();
  }
  check_drawing(d);
  return d;
}

std::string serialize_predictions(const std::vector<PredictedFace>& faces) {
  json root;
  json jfaces = json::array();
  for (const PredictedFace& pf : faces) {
    json jf = face_to_json(pf.face);
    json votes;
    for (const auto& [type, count] : pf.votes) {
      votes[to_string(type)] = count;
    }
    jf["votes"] = std::move(votes);
    jfaces.push_back(std::move(jf));
  }
  root["faces"] = std::move(jfaces);
  return root.dump();
}

std::vector<PredictedFace> parse_predictions(const std::string& text) {
  json root = json::parse(text);
  std::vector<PredictedFace> out;
  for (const json& jf : root.at("faces")) {
    PredictedFace pf;
    pf.face = face_from_json(jf);
    if (jf.contains("votes")) {
      for (auto it = jf.at("votes").begin(); it != jf.at("votes").end(); ++it) {
        pf.votes[face_type_from_string(it.key())] = it.value().get<int>();
      }
    }
    out.push_back(std::move(pf));
  }
  return out;
}

std::string serialize_raw_predictions(const std::vector<RawPrediction>& raw) {
  json root;
  json jraw = json::array();
  for (const RawPrediction& r : raw) {
    json jr;
    jr["start"] = r.start;
    jr["sequence"] = r.sequence;
    jr["type"] = to_string(r.type);
    jr["terminated"] = r.terminated;
    jraw.push_back(std::move(jr));
  }
  root["raw"] = std::move(jraw);
  return root.dump();
}

std::vector<RawPrediction> parse_raw_predictions(const std::string& text) {
  json root = json::parse(text);
  std::vector<RawPrediction> out;
  for (const json& jr : root.at("raw")) {
    RawPrediction r;
    r.start = jr.at("start").get<int>();
    r.sequence = jr.at("sequence").get<std::vector<int>>();
    r.type = face_type_from_string(jr.at("type").get<std::string>());
    r.terminated = jr.at("terminated").get<bool>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace wireface
