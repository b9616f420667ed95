#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wireface/geom.hpp"

namespace wireface {

enum class EdgeKind { kLine, kArc };

enum class FaceType { kPlane = 0, kCylinder = 1, kOthers = 2 };

const char* to_string(FaceType t);
const char* to_string(EdgeKind k);
FaceType face_type_from_string(std::string_view s);
EdgeKind edge_kind_from_string(std::string_view s);

// Vertex ids are dense array indices.
struct Vertex2 {
  double x = 0.0;
  double y = 0.0;
  Vec2 pos() const { return {x, y}; }
};

// An undirected drawing edge with a fixed-size polyline sampling running
// from endpoint v0 to endpoint v1.
struct Edge {
  EdgeKind kind = EdgeKind::kLine;
  int v0 = -1;
  int v1 = -1;
  std::vector<Vec2> samples;
};

// A directed use of an edge. Co-edge 2k runs edge k from v0 to v1,
// co-edge 2k+1 runs it from v1 to v0; the two are mates.
struct CoEdge {
  int edge = -1;
  int start = -1;
  int end = -1;
};

// A face: one or more closed co-edge loops plus a surface type.
struct FaceLoopSet {
  std::vector<std::vector<int>> loops;
  FaceType type = FaceType::kPlane;
};

struct WireframeDrawing {
  std::vector<Vertex2> vertices;
  std::vector<Edge> edges;
  std::vector<CoEdge> coedges;
  std::optional<std::vector<FaceLoopSet>> ground_truth;
  std::optional<std::array<Vec3, 3>> directions;  // camera-frame unit vectors
  std::optional<std::vector<double>> depths;      // per-vertex camera depth

  int samples_per_edge() const {
    return edges.empty() ? 0 : static_cast<int>(edges.front().samples.size());
  }
};

// Minimum projected separation below which a drawing counts as degenerate.
inline constexpr double kVertexTolerance = 1e-3;

inline int mate(int coedge) { return coedge ^ 1; }

// Builds the 2|E| co-edges in deterministic order (edge id, then direction).
// Throws on a zero-length line edge.
std::vector<CoEdge> build_coedges(const std::vector<Edge>& edges);

// Greedily partitions `sequence` into vertex-chained cycles, preferring the
// earliest remaining co-edge at each step. Returns nullopt if the multiset
// does not decompose into closed loops.
std::optional<std::vector<std::vector<int>>> segment_loops(
    const WireframeDrawing& drawing, const std::vector<int>& sequence);

bool is_closed_face(const WireframeDrawing& drawing,
                    const std::vector<int>& sequence);

// The face identity used for matching and dedup: its sorted edge-id set.
std::vector<int> canonical_face_key(const FaceLoopSet& face);

// Sort key used both for canonical sequences and for the model's input
// order: (start.x, start.y, end.x, end.y), ties broken by co-edge id.
bool coedge_key_less(const WireframeDrawing& drawing, int a, int b);

// Flattens the face into the unique target sequence: the loop containing
// `start` rotated to begin there, then every other loop rotated to its
// smallest co-edge, loops ordered by that co-edge's key. Traversal order
// is preserved inside every loop. Throws if `start` is not in the face.
std::vector<int> canonical_sequence(const WireframeDrawing& drawing,
                                    const FaceLoopSet& face, int start);

struct ManifoldReport {
  std::vector<int> incidence;   // faces per edge
  std::vector<int> offending;   // edges with incidence != 2
  bool pass = false;
};

// Checks that every edge is used by exactly two ground-truth faces.
// Throws if the drawing carries no ground truth.
ManifoldReport validate_manifold(const WireframeDrawing& drawing);

// All co-edge ids sorted by coedge_key_less; the model's canonical input
// order.
std::vector<int> canonical_input_order(const WireframeDrawing& drawing);

}  // namespace wireface
