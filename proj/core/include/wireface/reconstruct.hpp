#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wireface/brep.hpp"

namespace wireface {

// Face plane a*x + b*y + z + c = 0; depth at a drawing point is
// z = -(a*x + b*y + c).
struct PlaneParams {
  double a = 0.0, b = 0.0, c = 0.0;
  double depth_at(double x, double y) const { return -(a * x + b * y + c); }
};

struct DirectionAssignment {
  std::vector<std::set<int>> per_face;  // indices into the 3 directions
  std::array<bool, 3> usable{true, true, true};
};

// A straight edge matches a direction when its 2D direction is parallel to
// the direction's 2D projection within `angle_tol` radians; arcs never
// match. Directions with a vanishing projection are flagged unusable.
DirectionAssignment assign_face_directions(
    const WireframeDrawing& drawing, const std::vector<FaceLoopSet>& faces,
    const std::array<Vec3, 3>& directions,
    double angle_tol = 1.0 * M_PI / 180.0);

// Drops faces aligned with three or more directions (impossible for a
// plane under mutually orthogonal directions).
std::vector<FaceLoopSet> filter_impossible_faces(
    const std::vector<FaceLoopSet>& faces, const DirectionAssignment& dirs);

// Records one arc split: the original arc edge and the (start, mid, end)
// vertices used later for circle fitting.
struct ArcSplitRecord {
  int original_edge = -1;
  int v_start = -1, v_mid = -1, v_end = -1;
};

// A curved face decomposed into ruled quads. run_a/run_b hold the two arc
// runs of the original loop (original co-edge ids, loop order); bridge_ab
// and bridge_ba are the straight chains connecting them.
struct CylinderStrip {
  int original_face = -1;
  std::vector<int> run_a;
  std::vector<int> bridge_ab;
  std::vector<int> run_b;
  std::vector<int> bridge_ba;
  std::vector<int> subfaces;  // indices into the polygonized face list
};

struct PolygonizedDrawing {
  WireframeDrawing drawing;            // straight-edged version
  std::vector<FaceLoopSet> faces;      // all faces planar-ready
  std::vector<ArcSplitRecord> registry;
  std::vector<CylinderStrip> strips;
  std::vector<int> face_origin;        // polygonized face -> input face
};

// Splits every arc used by a face at its farthest-from-chord sample and
// decomposes curved faces into planar ruled quads so the drawing becomes a
// polyhedron. Collinear arcs are kept as lines without a split.
PolygonizedDrawing polygonize_curved_faces(const WireframeDrawing& drawing,
                                           const std::vector<FaceLoopSet>& faces);

struct ConstraintSystem {
  struct Row {
    enum class Tag { kVertexPair, kDirection };
    Tag tag = Tag::kVertexPair;
    std::vector<std::pair<int, double>> coeffs;  // (column in f, value)
    double constant = 0.0;                       // residual = coeffs . f + constant
  };
  struct PositivityRow {
    int face = -1, vertex = -1;
    double x = 0.0, y = 0.0;
  };
  std::vector<Row> rows;
  std::vector<PositivityRow> positivity;
  int num_faces = 0;
};

// Vertex-coincidence rows for every face pair sharing a vertex, direction
// rows for every aligned (face, direction) pair, and positivity rows for
// every (face, incident vertex).
ConstraintSystem build_constraints(const WireframeDrawing& drawing,
                                   const std::vector<FaceLoopSet>& faces,
                                   const DirectionAssignment& dirs,
                                   const std::array<Vec3, 3>& directions);

struct SolveReport {
  std::vector<PlaneParams> planes;
  double objective = 0.0;
  // Dimension of the constraint null space; 1 means determined up to the
  // global depth offset, more means under-constrained.
  int gauge_dimension = 1;
  bool under_constrained = false;
};

// L1 minimization of the stacked rows subject to depth >= epsilon via the
// LP reformulation; afterwards all c_i are translated so min depth = 1.
// Throws when the LP is infeasible or unbounded.
SolveReport solve_l1(const ConstraintSystem& system, double epsilon = 0.1);

struct Circle3 {
  Vec3 center;
  double radius = 0.0;
  Vec3 axis;
};

// The unique circle through three non-collinear 3D points. The axis sign is
// canonicalized so results are permutation-invariant.
Circle3 fit_circle_3d(const Vec3& p1, const Vec3& p2, const Vec3& p3);

struct Solid3D {
  std::vector<Vec3> vertices;        // (x, y, recovered depth)
  std::vector<bool> reconstructed;   // false = no face/neighbor support
  std::vector<PlaneParams> planes;
  std::vector<FaceLoopSet> faces;
  struct FittedArc {
    int original_edge = -1;
    Circle3 circle;
  };
  std::vector<FittedArc> arcs;
};

// Depths from the mean of incident face planes; faceless vertices take the
// mean of lifted edge-neighbors (iterated), otherwise they stay flagged.
Solid3D lift_vertices(const WireframeDrawing& drawing,
                      const std::vector<PlaneParams>& planes,
                      const std::vector<FaceLoopSet>& faces);

struct ReconstructionResult {
  PolygonizedDrawing poly;
  std::vector<FaceLoopSet> kept;   // faces that entered the solve
  std::vector<int> kept_origin;    // kept face -> input face index
  std::vector<CylinderStrip> strips;  // strips whose sub-faces all survived
  DirectionAssignment dirs;        // assignment over `kept`
  SolveReport solve;
  Solid3D solid;
  std::vector<double> face_residuals;  // per kept face, sum of |row residual|
};

// Full lift: polygonize, assign directions, drop 3-direction faces, solve
// the L1 program, lift vertices and fit arc circles. Throws when the
// drawing carries no dominant directions or the solve fails.
ReconstructionResult reconstruct_faces(const WireframeDrawing& drawing,
                                       const std::vector<FaceLoopSet>& faces,
                                       double epsilon = 0.1);

}  // namespace wireface
