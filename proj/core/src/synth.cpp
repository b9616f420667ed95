#include "wireface/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "wireface/json_io.hpp"

namespace wireface {

using json = nlohmann::ordered_json;

const char* to_string(TemplateKind k) {
  switch (k) {
    case TemplateKind::kBox: return "box";
    case TemplateKind::kBoxThroughHole: return "hole";
    case TemplateKind::kLPrism: return "lprism";
    case TemplateKind::kCylinder: return "cylinder";
    case TemplateKind::kBoxPlusBox: return "boxbox";
  }
  return "box";
}

TemplateKind template_kind_from_string(std::string_view s) {
  if (s == "box") return TemplateKind::kBox;
  if (s == "hole") return TemplateKind::kBoxThroughHole;
  if (s == "lprism") return TemplateKind::kLPrism;
  if (s == "cylinder") return TemplateKind::kCylinder;
  if (s == "boxbox") return TemplateKind::kBoxPlusBox;
  throw std::invalid_argument("unknown template family: " + std::string(s));
}

namespace {

// Incremental solid assembly from vertex paths. Edges are created on first
// use; loops reference them through the 2k/2k+1 co-edge convention.
class SolidBuilder {
 public:
  int add_vertex(const Vec3& p) {
    solid_.vertices.push_back(p);
    return static_cast<int>(solid_.vertices.size()) - 1;
  }

  void add_arc(int a, int b, const Vec3& center, const Vec3& u, const Vec3& v,
               double radius, double ang0, double ang1) {
    SolidEdge e;
    e.kind = EdgeKind::kArc;
    e.v0 = a;
    e.v1 = b;
    e.center = center;
    e.axis_u = u;
    e.axis_v = v;
    e.radius = radius;
    e.ang0 = ang0;
    e.ang1 = ang1;
    edge_ids_[key(a, b)] = static_cast<int>(solid_.edges.size());
    solid_.edges.push_back(e);
  }

  // Adds a face whose loops are given as vertex cycles. Line edges are
  // created on demand; arcs must have been registered with add_arc.
  void add_face(const std::vector<std::vector<int>>& vertex_loops,
                FaceType type) {
    SolidFace face;
    face.type = type;
    for (const auto& loop : vertex_loops) {
      std::vector<int> coedges;
      for (size_t i = 0; i < loop.size(); ++i) {
        int a = loop[i];
        int b = loop[(i + 1) % loop.size()];
        coedges.push_back(coedge_for(a, b));
      }
      face.loops.push_back(std::move(coedges));
    }
    solid_.faces.push_back(std::move(face));
  }

  Solid take() { return std::move(solid_); }

 private:
  static std::pair<int, int> key(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
  }

  int coedge_for(int a, int b) {
    auto it = edge_ids_.find(key(a, b));
    int e;
    if (it == edge_ids_.end()) {
      SolidEdge edge;
      edge.kind = EdgeKind::kLine;
      edge.v0 = a;
      edge.v1 = b;
      e = static_cast<int>(solid_.edges.size());
      solid_.edges.push_back(edge);
      edge_ids_[key(a, b)] = e;
    } else {
      e = it->second;
    }
    return solid_.edges[e].v0 == a ? 2 * e : 2 * e + 1;
  }

  Solid solid_;
  std::map<std::pair<int, int>, int> edge_ids_;
};

}  // namespace

Solid make_box(double w, double d, double h) {
  SolidBuilder b;
  // Bottom 0..3, top 4..7.
  b.add_vertex({0, 0, 0});
  b.add_vertex({w, 0, 0});
  b.add_vertex({w, d, 0});
  b.add_vertex({0, d, 0});
  b.add_vertex({0, 0, h});
  b.add_vertex({w, 0, h});
  b.add_vertex({w, d, h});
  b.add_vertex({0, d, h});
  b.add_face({{0, 3, 2, 1}}, FaceType::kPlane);  // bottom
  b.add_face({{4, 5, 6, 7}}, FaceType::kPlane);  // top
  b.add_face({{0, 1, 5, 4}}, FaceType::kPlane);  // front
  b.add_face({{1, 2, 6, 5}}, FaceType::kPlane);  // right
  b.add_face({{2, 3, 7, 6}}, FaceType::kPlane);  // back
  b.add_face({{3, 0, 4, 7}}, FaceType::kPlane);  // left
  return b.take();
}

Solid make_box_through_hole(double w, double d, double h, double hx0,
                            double hx1, double hz0, double hz1) {
  SolidBuilder b;
  b.add_vertex({0, 0, 0});
  b.add_vertex({w, 0, 0});
  b.add_vertex({w, d, 0});
  b.add_vertex({0, d, 0});
  b.add_vertex({0, 0, h});
  b.add_vertex({w, 0, h});
  b.add_vertex({w, d, h});
  b.add_vertex({0, d, h});
  // Tunnel runs along +y; hole rectangle in the xz plane.
  b.add_vertex({hx0, 0, hz0});   // 8
  b.add_vertex({hx1, 0, hz0});   // 9
  b.add_vertex({hx1, 0, hz1});   // 10
  b.add_vertex({hx0, 0, hz1});   // 11
  b.add_vertex({hx0, d, hz0});   // 12
  b.add_vertex({hx1, d, hz0});   // 13
  b.add_vertex({hx1, d, hz1});   // 14
  b.add_vertex({hx0, d, hz1});   // 15
  b.add_face({{0, 3, 2, 1}}, FaceType::kPlane);                 // bottom
  b.add_face({{4, 5, 6, 7}}, FaceType::kPlane);                 // top
  b.add_face({{0, 1, 5, 4}, {8, 11, 10, 9}}, FaceType::kPlane); // front annulus
  b.add_face({{2, 3, 7, 6}, {12, 13, 14, 15}}, FaceType::kPlane); // back annulus
  b.add_face({{1, 2, 6, 5}}, FaceType::kPlane);                 // right
  b.add_face({{3, 0, 4, 7}}, FaceType::kPlane);                 // left
  b.add_face({{8, 9, 13, 12}}, FaceType::kPlane);               // tunnel floor
  b.add_face({{11, 15, 14, 10}}, FaceType::kPlane);             // tunnel ceiling
  b.add_face({{8, 12, 15, 11}}, FaceType::kPlane);              // tunnel left
  b.add_face({{9, 10, 14, 13}}, FaceType::kPlane);              // tunnel right
  return b.take();
}

Solid make_l_prism(double w, double d, double h, double t1, double t2) {
  SolidBuilder b;
  // L cross-section, counter-clockwise in the xy plane.
  const std::array<Vec2, 6> ring = {Vec2{0, 0}, {w, 0},  {w, t1},
                                    {t2, t1},   {t2, d}, {0, d}};
  for (const Vec2& p : ring) b.add_vertex({p.x, p.y, 0});
  for (const Vec2& p : ring) b.add_vertex({p.x, p.y, h});
  b.add_face({{0, 5, 4, 3, 2, 1}}, FaceType::kPlane);   // bottom
  b.add_face({{6, 7, 8, 9, 10, 11}}, FaceType::kPlane); // top
  for (int i = 0; i < 6; ++i) {
    int j = (i + 1) % 6;
    b.add_face({{i, j, 6 + j, 6 + i}}, FaceType::kPlane);
  }
  return b.take();
}

Solid make_cylinder(double radius, double height) {
  SolidBuilder b;
  const Vec3 u{1, 0, 0}, v{0, 1, 0};
  const Vec3 c0{0, 0, 0}, c1{0, 0, height};
  const double pi = M_PI;
  // Quadrant vertices: bottom 0..3, top 4..7 at angles 0, 90, 180, 270.
  for (int i = 0; i < 4; ++i) {
    double a = i * pi / 2;
    b.add_vertex(c0 + (u * std::cos(a) + v * std::sin(a)) * radius);
  }
  for (int i = 0; i < 4; ++i) {
    double a = i * pi / 2;
    b.add_vertex(c1 + (u * std::cos(a) + v * std::sin(a)) * radius);
  }
  for (int i = 0; i < 4; ++i) {  // bottom arcs
    double a = i * pi / 2;
    b.add_arc(i, (i + 1) % 4, c0, u, v, radius, a, a + pi / 2);
  }
  for (int i = 0; i < 4; ++i) {  // top arcs
    double a = i * pi / 2;
    b.add_arc(4 + i, 4 + (i + 1) % 4, c1, u, v, radius, a, a + pi / 2);
  }
  b.add_face({{4, 5, 6, 7}}, FaceType::kPlane);  // top
  b.add_face({{0, 3, 2, 1}}, FaceType::kPlane);  // bottom
  // Two half-cylinder side faces with seams at angles 0 and 180.
  b.add_face({{0, 1, 2, 6, 5, 4}}, FaceType::kCylinder);
  b.add_face({{2, 3, 0, 4, 7, 6}}, FaceType::kCylinder);
  return b.take();
}

Solid make_box_plus_box(double w, double d, double h, double w2, double d2,
                        double h2, double ox, double oy) {
  SolidBuilder b;
  b.add_vertex({0, 0, 0});
  b.add_vertex({w, 0, 0});
  b.add_vertex({w, d, 0});
  b.add_vertex({0, d, 0});
  b.add_vertex({0, 0, h});
  b.add_vertex({w, 0, h});
  b.add_vertex({w, d, h});
  b.add_vertex({0, d, h});
  b.add_vertex({ox, oy, h});            // 8
  b.add_vertex({ox + w2, oy, h});       // 9
  b.add_vertex({ox + w2, oy + d2, h});  // 10
  b.add_vertex({ox, oy + d2, h});       // 11
  b.add_vertex({ox, oy, h + h2});       // 12
  b.add_vertex({ox + w2, oy, h + h2});  // 13
  b.add_vertex({ox + w2, oy + d2, h + h2});  // 14
  b.add_vertex({ox, oy + d2, h + h2});       // 15
  b.add_face({{0, 3, 2, 1}}, FaceType::kPlane);
  b.add_face({{4, 5, 6, 7}, {8, 11, 10, 9}}, FaceType::kPlane);  // top annulus
  b.add_face({{0, 1, 5, 4}}, FaceType::kPlane);
  b.add_face({{1, 2, 6, 5}}, FaceType::kPlane);
  b.add_face({{2, 3, 7, 6}}, FaceType::kPlane);
  b.add_face({{3, 0, 4, 7}}, FaceType::kPlane);
  b.add_face({{8, 9, 13, 12}}, FaceType::kPlane);
  b.add_face({{9, 10, 14, 13}}, FaceType::kPlane);
  b.add_face({{10, 11, 15, 14}}, FaceType::kPlane);
  b.add_face({{11, 8, 12, 15}}, FaceType::kPlane);
  b.add_face({{12, 13, 14, 15}}, FaceType::kPlane);
  return b.take();
}

std::pair<Solid, TemplateSpec> sample_template(TemplateKind kind, Rng& rng) {
  TemplateSpec spec;
  spec.kind = kind;
  auto& p = spec.params;
  switch (kind) {
    case TemplateKind::kBox: {
      p["w"] = rng.uniform(0.5, 2.0);
      p["d"] = rng.uniform(0.5, 2.0);
      p["h"] = rng.uniform(0.5, 2.0);
      return {make_box(p["w"], p["d"], p["h"]), spec};
    }
    case TemplateKind::kBoxThroughHole: {
      p["w"] = rng.uniform(1.0, 2.0);
      p["d"] = rng.uniform(0.5, 2.0);
      p["h"] = rng.uniform(1.0, 2.0);
      p["hx0"] = p["w"] * rng.uniform(0.15, 0.35);
      p["hx1"] = p["w"] * rng.uniform(0.6, 0.85);
      p["hz0"] = p["h"] * rng.uniform(0.15, 0.35);
      p["hz1"] = p["h"] * rng.uniform(0.6, 0.85);
      return {make_box_through_hole(p["w"], p["d"], p["h"], p["hx0"], p["hx1"],
                                    p["hz0"], p["hz1"]),
              spec};
    }
    case TemplateKind::kLPrism: {
      p["w"] = rng.uniform(1.0, 2.0);
      p["d"] = rng.uniform(1.0, 2.0);
      p["h"] = rng.uniform(0.5, 1.5);
      p["t1"] = p["d"] * rng.uniform(0.3, 0.7);
      p["t2"] = p["w"] * rng.uniform(0.3, 0.7);
      return {make_l_prism(p["w"], p["d"], p["h"], p["t1"], p["t2"]), spec};
    }
    case TemplateKind::kCylinder: {
      p["radius"] = rng.uniform(0.4, 1.0);
      p["height"] = rng.uniform(0.5, 2.0);
      return {make_cylinder(p["radius"], p["height"]), spec};
    }
    case TemplateKind::kBoxPlusBox: {
      p["w"] = rng.uniform(1.2, 2.0);
      p["d"] = rng.uniform(1.2, 2.0);
      p["h"] = rng.uniform(0.4, 1.0);
      p["w2"] = p["w"] * rng.uniform(0.25, 0.45);
      p["d2"] = p["d"] * rng.uniform(0.25, 0.45);
      p["h2"] = rng.uniform(0.3, 0.9);
      p["ox"] = rng.uniform(0.15 * p["w"], 0.85 * p["w"] - p["w2"]);
      p["oy"] = rng.uniform(0.15 * p["d"], 0.85 * p["d"] - p["d2"]);
      return {make_box_plus_box(p["w"], p["d"], p["h"], p["w2"], p["d2"],
                                p["h2"], p["ox"], p["oy"]),
              spec};
    }
  }
  throw std::logic_error("unreachable template kind");
}

double normalize_solid(Solid& solid) {
  if (solid.vertices.empty()) throw std::invalid_argument("empty solid");
  Vec3 lo = solid.vertices.front(), hi = solid.vertices.front();
  for (const Vec3& p : solid.vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  Vec3 extent = hi - lo;
  double half_diag = 0.5 * extent.norm();
  if (half_diag <= 1e-12 || extent.x <= 1e-12 || extent.y <= 1e-12 ||
      extent.z <= 1e-12) {
    throw std::invalid_argument("zero-extent solid");
  }
  Vec3 center = (lo + hi) * 0.5;
  double scale = 1.0 / half_diag;
  for (Vec3& p : solid.vertices) p = (p - center) * scale;
  for (SolidEdge& e : solid.edges) {
    if (e.kind == EdgeKind::kArc) {
      e.center = (e.center - center) * scale;
      e.radius *= scale;
    }
  }
  return scale;
}

bool filter_complexity(const Solid& solid) {
  if (solid.faces.size() > 42) return false;
  for (const SolidFace& f : solid.faces) {
    std::set<int> edges;
    for (const auto& loop : f.loops) {
      for (int c : loop) edges.insert(c / 2);
    }
    if (edges.size() > 37) return false;
  }
  return true;
}

Camera sample_viewpoint(Rng& rng) {
  double z = rng.uniform();  // cos of polar angle; uniform on hemisphere
  double phi = rng.uniform(0.0, 2.0 * M_PI);
  double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec3 eye{s * std::cos(phi), s * std::sin(phi), z};  // object -> camera
  Vec3 forward = eye * -1.0;                          // third row
  Vec3 up_hint{0, 0, 1};
  if (std::abs(forward.dot(up_hint)) > 1.0 - 1e-9) up_hint = {0, 1, 0};
  Vec3 right = up_hint.cross(forward).normalized();
  Vec3 up = forward.cross(right);
  Camera cam;
  cam.rotation = Mat3::from_rows(right, up, forward);
  cam.distance = rng.uniform(1.25, 1.5);
  return cam;
}

namespace {

Vec3 arc_point(const SolidEdge& e, double t) {
  double a = e.ang0 + (e.ang1 - e.ang0) * t;
  return e.center + (e.axis_u * std::cos(a) + e.axis_v * std::sin(a)) * e.radius;
}

}  // namespace

std::optional<WireframeDrawing> project(const Solid& solid,
                                        const Camera& camera,
                                        int samples_per_edge, double tol) {
  WireframeDrawing d;
  const Vec3 right = camera.rotation.row(0);
  const Vec3 up = camera.rotation.row(1);
  const Vec3 forward = camera.rotation.row(2);

  std::vector<double> depths;
  for (const Vec3& p : solid.vertices) {
    d.vertices.push_back({right.dot(p), up.dot(p)});
    depths.push_back(forward.dot(p) + camera.distance);
  }

  const int K = samples_per_edge;
  for (const SolidEdge& se : solid.edges) {
    Edge e;
    e.kind = se.kind;
    e.v0 = se.v0;
    e.v1 = se.v1;
    Vec2 p0 = d.vertices[se.v0].pos();
    Vec2 p1 = d.vertices[se.v1].pos();
    e.samples.resize(K);
    for (int i = 0; i < K; ++i) {
      double t = static_cast<double>(i) / (K - 1);
      if (se.kind == EdgeKind::kLine) {
        e.samples[i] = p0 + (p1 - p0) * t;
      } else {
        Vec3 q = arc_point(se, t);
        e.samples[i] = {right.dot(q), up.dot(q)};
      }
    }
    e.samples.front() = p0;  // snap ends to the projected vertices
    e.samples.back() = p1;
    d.edges.push_back(std::move(e));
  }

  // Degeneracy screens: vertex-vertex and vertex-to-non-incident-edge.
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    for (size_t j = i + 1; j < d.vertices.size(); ++j) {
      if (dist2(d.vertices[i].pos(), d.vertices[j].pos()) < tol) {
        return std::nullopt;
      }
    }
  }
  for (size_t vi = 0; vi < d.vertices.size(); ++vi) {
    Vec2 p = d.vertices[vi].pos();
    for (const Edge& e : d.edges) {
      if (e.v0 == static_cast<int>(vi) || e.v1 == static_cast<int>(vi)) continue;
      for (size_t s = 0; s + 1 < e.samples.size(); ++s) {
        if (point_segment_distance(p, e.samples[s], e.samples[s + 1]) < tol) {
          return std::nullopt;
        }
      }
    }
  }

  d.coedges = build_coedges(d.edges);
  std::vector<FaceLoopSet> faces;
  for (const SolidFace& sf : solid.faces) {
    faces.push_back({sf.loops, sf.type});
  }
  d.ground_truth = std::move(faces);
  d.directions = {camera.rotation.col(0), camera.rotation.col(1),
                  camera.rotation.col(2)};
  d.depths = std::move(depths);
  return d;
}

std::vector<Instance> make_instances(const WireframeDrawing& drawing) {
  if (!drawing.ground_truth) {
    throw std::invalid_argument("drawing has no ground-truth faces");
  }
  const auto& faces = *drawing.ground_truth;
  const int n = static_cast<int>(drawing.coedges.size());
  std::vector<int> owner(n, -1);
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (const auto& loop : faces[fi].loops) {
      for (int c : loop) {
        if (owner[c] != -1) {
          throw std::runtime_error("manifold violation: co-edge " +
                                   std::to_string(c) + " in two faces");
        }
        owner[c] = static_cast<int>(fi);
      }
    }
  }
  std::vector<Instance> out;
  out.reserve(n);
  for (int c = 0; c < n; ++c) {
    if (owner[c] < 0) {
      throw std::runtime_error("manifold violation: co-edge " +
                               std::to_string(c) + " in no face");
    }
    const FaceLoopSet& face = faces[owner[c]];
    std::vector<int> seq = canonical_sequence(drawing, face, c);
    Instance inst;
    inst.start = c;
    inst.target.assign(seq.begin() + 1, seq.end());
    inst.target.push_back(n + static_cast<int>(face.type));
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<GeneratedShape> generate_corpus(const CorpusOptions& options) {
  if (options.families.empty()) {
    throw std::invalid_argument("no template families selected");
  }
  std::vector<GeneratedShape> shapes(options.count);

  // Deterministic split assignment over shuffled indices.
  std::vector<int> order(options.count);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng(Rng::derive(options.seed, 0xD15C0));
  for (int i = options.count - 1; i > 0; --i) {
    std::swap(order[i], order[split_rng.uniform_int(i + 1)]);
  }
  int n_train = options.split_counts[0];
  int n_val = options.split_counts[1];
  int n_test = options.split_counts[2];
  if (n_train < 0 || n_val < 0 || n_test < 0) {
    n_val = options.count / 10;
    n_test = options.count / 10;
    n_train = options.count - n_val - n_test;
  }
  if (n_train + n_val + n_test > options.count) {
    throw std::invalid_argument("split counts exceed corpus size");
  }
  std::vector<std::string> split_of(options.count, "train");
  for (int i = 0; i < options.count; ++i) {
    if (i >= n_train && i < n_train + n_val) split_of[order[i]] = "val";
    else if (i >= n_train + n_val && i < n_train + n_val + n_test)
      split_of[order[i]] = "test";
  }

  for (int i = 0; i < options.count; ++i) {
    GeneratedShape& shape = shapes[i];
    shape.index = i;
    shape.seed = Rng::derive(options.seed, static_cast<uint64_t>(i) + 1);
    shape.split = split_of[i];
    Rng rng(shape.seed);
    TemplateKind kind =
        options.families[i % static_cast<int>(options.families.size())];

    Solid solid;
    for (int attempt = 0; attempt < 20; ++attempt) {
      auto [s, spec] = sample_template(kind, rng);
      if (filter_complexity(s)) {
        solid = std::move(s);
        shape.tmpl = spec;
        break;
      }
    }
    shape.norm_scale = normalize_solid(solid);

    bool projected = false;
    for (int attempt = 0; attempt < options.max_view_resamples; ++attempt) {
      shape.camera = sample_viewpoint(rng);
      auto drawing = project(solid, shape.camera, options.samples_per_edge);
      if (drawing) {
        shape.drawing = std::move(*drawing);
        projected = true;
        break;
      }
    }
    shape.skipped = !projected;
  }
  return shapes;
}

namespace {

std::string shape_filename(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shape_%05d.json", index);
  return buf;
}

}  // namespace

void write_corpus(const std::vector<GeneratedShape>& shapes,
                  const CorpusOptions& options, const std::string& dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["seed"] = options.seed;
  manifest["count"] = options.count;
  json families = json::array();
  for (TemplateKind k : options.families) families.push_back(to_string(k));
  manifest["families"] = std::move(families);
  json jshapes = json::array();
  for (const GeneratedShape& s : shapes) {
    json js;
    js["index"] = s.index;
    js["file"] = s.skipped ? "" : shape_filename(s.index);
    js["split"] = s.split;
    js["family"] = to_string(s.tmpl.kind);
    js["seed"] = s.seed;
    js["params"] = s.tmpl.params;
    json cam;
    cam["rotation"] = s.camera.rotation.m;
    cam["distance"] = s.camera.distance;
    js["camera"] = std::move(cam);
    js["normalization_scale"] = s.norm_scale;
    js["skipped"] = s.skipped;
    jshapes.push_back(std::move(js));
    if (!s.skipped) {
      write_file(dir + "/" + shape_filename(s.index),
                 serialize_drawing(s.drawing));
    }
  }
  manifest["shapes"] = std::move(jshapes);
  write_file(dir + "/manifest.json", manifest.dump(2));
}

std::vector<ManifestEntry> read_manifest(const std::string& dir) {
  json manifest = json::parse(read_file(dir + "/manifest.json"));
  std::vector<ManifestEntry> out;
  for (const json& js : manifest.at("shapes")) {
    ManifestEntry e;
    e.index = js.at("index").get<int>();
    e.file = js.at("file").get<std::string>();
    e.split = js.at("split").get<std::string>();
    e.family = js.at("family").get<std::string>();
    e.seed = js.at("seed").get<uint64_t>();
    e.params = js.at("params").get<std::map<std::string, double>>();
    e.norm_scale = js.at("normalization_scale").get<double>();
    e.skipped = js.at("skipped").get<bool>();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace wireface
