#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wireface/brep.hpp"
#include "wireface/rng.hpp"

namespace wireface {

enum class TemplateKind { kBox, kBoxThroughHole, kLPrism, kCylinder, kBoxPlusBox };

const char* to_string(TemplateKind k);
TemplateKind template_kind_from_string(std::string_view s);

// A 3D edge of a generator solid. Arcs are circle segments sampled
// uniformly in angle: p(t) = center + radius * (cos(t) u + sin(t) v).
struct SolidEdge {
  EdgeKind kind = EdgeKind::kLine;
  int v0 = -1;
  int v1 = -1;
  Vec3 center;
  Vec3 axis_u, axis_v;
  double radius = 0.0;
  double ang0 = 0.0, ang1 = 0.0;
};

struct SolidFace {
  std::vector<std::vector<int>> loops;  // co-edge ids, 2k/2k+1 over edges
  FaceType type = FaceType::kPlane;
};

struct Solid {
  std::vector<Vec3> vertices;
  std::vector<SolidEdge> edges;
  std::vector<SolidFace> faces;
};

struct TemplateSpec {
  TemplateKind kind = TemplateKind::kBox;
  std::map<std::string, double> params;
};

Solid make_box(double w, double d, double h);
Solid make_box_through_hole(double w, double d, double h, double hx0,
                            double hx1, double hz0, double hz1);
Solid make_l_prism(double w, double d, double h, double t1, double t2);
Solid make_cylinder(double radius, double height);
Solid make_box_plus_box(double w, double d, double h, double w2, double d2,
                        double h2, double ox, double oy);

// Draws template parameters and builds the solid.
std::pair<Solid, TemplateSpec> sample_template(TemplateKind kind, Rng& rng);

// Centers the solid and scales it so the bounding-box half diagonal is 1.
// Returns the applied scale factor. Throws on a zero-extent solid.
double normalize_solid(Solid& solid);

// True iff the solid stays inside the complexity bounds (at most 42 faces,
// at most 37 edges in any face).
bool filter_complexity(const Solid& solid);

struct Camera {
  Mat3 rotation;          // rows: right, up, view direction
  double distance = 1.25; // recorded only; orthographic math ignores it
};

// Uniform view direction on the upper hemisphere (z >= 0 in world frame),
// completed to an orthonormal frame.
Camera sample_viewpoint(Rng& rng);

// Orthographic projection carrying over ground truth, camera depths and
// dominant directions. Returns nullopt when the view is degenerate (two
// vertices, or a vertex and a non-incident edge, closer than `tol`).
std::optional<WireframeDrawing> project(const Solid& solid,
                                        const Camera& camera,
                                        int samples_per_edge = 10,
                                        double tol = kVertexTolerance);

// One training instance: decode starts at `start`; `target` holds the rest
// of the face's canonical sequence followed by a face-type token encoded as
// N + static_cast<int>(type), with N the drawing's co-edge count.
struct Instance {
  int start = -1;
  std::vector<int> target;
};

std::vector<Instance> make_instances(const WireframeDrawing& drawing);

struct GeneratedShape {
  int index = 0;
  uint64_t seed = 0;
  std::string split;
  TemplateSpec tmpl;
  Camera camera;
  double norm_scale = 1.0;
  bool skipped = false;
  WireframeDrawing drawing;
};

struct CorpusOptions {
  std::vector<TemplateKind> families{
      TemplateKind::kBox, TemplateKind::kBoxThroughHole, TemplateKind::kLPrism,
      TemplateKind::kCylinder, TemplateKind::kBoxPlusBox};
  int count = 100;
  uint64_t seed = 0;
  // train/val/test counts; negative entries fall back to an 8:1:1 split.
  std::array<int, 3> split_counts{-1, -1, -1};
  int samples_per_edge = 10;
  int max_view_resamples = 50;
};

// Deterministic in-memory corpus; shape i only depends on (seed, i).
std::vector<GeneratedShape> generate_corpus(const CorpusOptions& options);

// Writes one JSON drawing per shape plus manifest.json into `dir`.
void write_corpus(const std::vector<GeneratedShape>& shapes,
                  const CorpusOptions& options, const std::string& dir);

struct ManifestEntry {
  int index = 0;
  std::string file;
  std::string split;
  std::string family;
  uint64_t seed = 0;
  std::map<std::string, double> params;
  double norm_scale = 1.0;
  bool skipped = false;
};

std::vector<ManifestEntry> read_manifest(const std::string& dir);

}  // namespace wireface
