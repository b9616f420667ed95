#include "wireface/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "wireface/simplex.hpp"

namespace wireface {

DirectionAssignment assign_face_directions(
    const WireframeDrawing& drawing, const std::vector<FaceLoopSet>& faces,
    const std::array<Vec3, 3>& directions, double angle_tol) {
  DirectionAssignment out;
  out.per_face.resize(faces.size());

  std::array<Vec2, 3> proj;
  for (int j = 0; j < 3; ++j) {
    proj[j] = Vec2{directions[j].x, directions[j].y};
    if (proj[j].norm() < 1e-6) {
      out.usable[j] = false;  // near view-parallel direction
    } else {
      proj[j] = proj[j].normalized();
    }
  }
  const double sin_tol = std::sin(angle_tol);

  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (const auto& loop : faces[fi].loops) {
      for (int c : loop) {
        const Edge& e = drawing.edges[c / 2];
        if (e.kind != EdgeKind::kLine) continue;
        Vec2 dir = (drawing.vertices[e.v1].pos() - drawing.vertices[e.v0].pos())
                       .normalized();
        for (int j = 0; j < 3; ++j) {
          if (!out.usable[j]) continue;
          if (std::abs(dir.cross(proj[j])) <= sin_tol) {
            out.per_face[fi].insert(j);
          }
        }
      }
    }
  }
  return out;
}

std::vector<FaceLoopSet> filter_impossible_faces(
    const std::vector<FaceLoopSet>& faces, const DirectionAssignment& dirs) {
  std::vector<FaceLoopSet> out;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    if (dirs.per_face[fi].size() < 3) out.push_back(faces[fi]);
  }
  return out;
}

namespace {

// Index of the interior sample farthest from the endpoint chord; -1 when
// the polyline is straight within tolerance.
int farthest_from_chord(const Edge& e) {
  const Vec2 a = e.samples.front();
  const Vec2 b = e.samples.back();
  Vec2 chord = b - a;
  double len = chord.norm();
  if (len < 1e-12) return -1;
  Vec2 n{-chord.y / len, chord.x / len};
  int best = -1;
  double best_dev = 1e-9;
  for (size_t i = 1; i + 1 < e.samples.size(); ++i) {
    double dev = std::abs((e.samples[i] - a).dot(n));
    if (dev > best_dev) {
      best_dev = dev;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<Vec2> line_samples(const Vec2& a, const Vec2& b, int k) {
  std::vector<Vec2> out(k);
  for (int i = 0; i < k; ++i) {
    double t = static_cast<double>(i) / (k - 1);
    out[i] = a + (b - a) * t;
  }
  return out;
}

}  // namespace

PolygonizedDrawing polygonize_curved_faces(
    const WireframeDrawing& drawing, const std::vector<FaceLoopSet>& faces) {
  PolygonizedDrawing out;
  out.drawing.vertices = drawing.vertices;
  out.drawing.edges = drawing.edges;
  out.faces = faces;
  const int k = std::max(2, drawing.samples_per_edge());

  // Arc edges used by at least one face.
  std::vector<bool> used(drawing.edges.size(), false);
  for (const FaceLoopSet& f : faces) {
    for (const auto& loop : f.loops) {
      for (int c : loop) used[c / 2] = true;
    }
  }

  // Split each used arc at its farthest-from-chord sample. edge e becomes
  // the first half; the second half is appended.
  std::map<int, int> second_half;  // original edge -> appended edge id
  for (size_t e = 0; e < drawing.edges.size(); ++e) {
    Edge& edge = out.drawing.edges[e];
    if (!used[e] || edge.kind != EdgeKind::kArc) continue;
    int split = farthest_from_chord(edge);
    if (split < 0) {
      edge.kind = EdgeKind::kLine;  // collinear arc, keep as a line
      edge.samples = line_samples(edge.samples.front(), edge.samples.back(), k);
      continue;
    }
    Vec2 mid = edge.samples[split];
    int vm = static_cast<int>(out.drawing.vertices.size());
    out.drawing.vertices.push_back({mid.x, mid.y});

    ArcSplitRecord rec;
    rec.original_edge = static_cast<int>(e);
    rec.v_start = edge.v0;
    rec.v_mid = vm;
    rec.v_end = edge.v1;
    out.registry.push_back(rec);

    Edge tail;
    tail.kind = EdgeKind::kLine;
    tail.v0 = vm;
    tail.v1 = edge.v1;
    tail.samples = line_samples(mid, edge.samples.back(), k);
    int tail_id = static_cast<int>(out.drawing.edges.size());
    out.drawing.edges.push_back(std::move(tail));
    second_half[static_cast<int>(e)] = tail_id;

    Edge& head = out.drawing.edges[e];
    head.kind = EdgeKind::kLine;
    head.v1 = vm;
    head.samples = line_samples(head.samples.front(), mid, k);
  }

  // Substitute split arcs inside every loop.
  auto substitute = [&](const std::vector<int>& loop) {
    std::vector<int> next;
    for (int c : loop) {
      auto it = second_half.find(c / 2);
      if (it == second_half.end()) {
        next.push_back(c);
      } else if (c % 2 == 0) {
        next.push_back(c);
        next.push_back(2 * it->second);
      } else {
        next.push_back(2 * it->second + 1);
        next.push_back(c);
      }
    }
    return next;
  };
  for (FaceLoopSet& f : out.faces) {
    for (auto& loop : f.loops) loop = substitute(loop);
  }

  // Decompose curved faces into ruled quads between their two arc runs.
  std::vector<FaceLoopSet> final_faces;
  std::vector<int> origin;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const FaceLoopSet& orig = faces[fi];
    bool strip_done = false;
    if (orig.type == FaceType::kCylinder && orig.loops.size() == 1) {
      strip_done = [&]() {
        const std::vector<int>& loop = orig.loops[0];
        const int n = static_cast<int>(loop.size());
        auto is_arc = [&](int c) {
          return drawing.edges[c / 2].kind == EdgeKind::kArc &&
                 second_half.count(c / 2) > 0;
        };
        // Rotate so the loop starts right after a non-arc co-edge.
        int first = -1;
        for (int i = 0; i < n; ++i) {
          if (is_arc(loop[i]) && !is_arc(loop[(i + n - 1) % n])) {
            first = i;
            break;
          }
        }
        if (first < 0) return false;
        std::vector<int> rot(n);
        for (int i = 0; i < n; ++i) rot[i] = loop[(first + i) % n];

        // Expect exactly: run_a, bridge_ab, run_b, bridge_ba.
        CylinderStrip strip;
        strip.original_face = static_cast<int>(fi);
        int i = 0;
        while (i < n && is_arc(rot[i])) strip.run_a.push_back(rot[i++]);
        while (i < n && !is_arc(rot[i])) strip.bridge_ab.push_back(rot[i++]);
        while (i < n && is_arc(rot[i])) strip.run_b.push_back(rot[i++]);
        while (i < n && !is_arc(rot[i])) strip.bridge_ba.push_back(rot[i++]);
        if (i != n || strip.run_b.empty() || strip.bridge_ab.empty() ||
            strip.bridge_ba.empty()) {
          return false;
        }
        if (strip.run_a.size() != strip.run_b.size()) return false;

        // Vertex chains after splitting: u along run_a, w along run_b.
        auto chain_of = [&](const std::vector<int>& run) {
          std::vector<int> chain;
          for (int c : run) {
            int e = c / 2;
            int tail = second_half.at(e);
            int v0 = drawing.edges[e].v0;
            int v1 = drawing.edges[e].v1;
            int vm = out.drawing.edges[tail].v0;
            if (chain.empty()) chain.push_back(c % 2 == 0 ? v0 : v1);
            if (c % 2 == 0) {
              chain.push_back(vm);
              chain.push_back(v1);
            } else {
              chain.push_back(vm);
              chain.push_back(v0);
            }
          }
          return chain;
        };
        std::vector<int> u = chain_of(strip.run_a);
        std::vector<int> w = chain_of(strip.run_b);
        const int m = static_cast<int>(u.size()) - 1;
        if (static_cast<int>(w.size()) - 1 != m) return false;

        // Ruling edges u_i -- w_{m-i} for interior i.
        std::vector<std::pair<int, int>> ruling(m + 1, {-1, -1});
        for (int idx = 1; idx < m; ++idx) {
          Edge r;
          r.kind = EdgeKind::kLine;
          r.v0 = u[idx];
          r.v1 = w[m - idx];
          r.samples = line_samples(out.drawing.vertices[r.v0].pos(),
                                   out.drawing.vertices[r.v1].pos(), k);
          int rid = static_cast<int>(out.drawing.edges.size());
          out.drawing.edges.push_back(std::move(r));
          ruling[idx] = {2 * rid, 2 * rid + 1};  // forward u->w, reverse w->u
        }

        auto split_coedges = [&](int c) {
          int e = c / 2;
          int tail = second_half.at(e);
          return c % 2 == 0 ? std::vector<int>{c, 2 * tail}
                            : std::vector<int>{2 * tail + 1, c};
        };
        auto run_a_parts = [&]() {
          std::vector<int> parts;
          for (int c : strip.run_a) {
            for (int cc : split_coedges(c)) parts.push_back(cc);
          }
          return parts;
        }();
        auto run_b_parts = [&]() {
          std::vector<int> parts;
          for (int c : strip.run_b) {
            for (int cc : split_coedges(c)) parts.push_back(cc);
          }
          return parts;
        }();

        for (int idx = 0; idx < m; ++idx) {
          FaceLoopSet quad;
          quad.type = orig.type;
          std::vector<int> ql;
          ql.push_back(run_a_parts[idx]);  // u_idx -> u_idx+1
          if (idx + 1 == m) {
            for (int c : strip.bridge_ab) ql.push_back(c);
          } else {
            ql.push_back(ruling[idx + 1].first);
          }
          ql.push_back(run_b_parts[m - idx - 1]);  // w_{m-idx-1} -> w_{m-idx}
          if (idx == 0) {
            for (int c : strip.bridge_ba) ql.push_back(c);
          } else {
            ql.push_back(ruling[idx].second);
          }
          quad.loops.push_back(std::move(ql));
          strip.subfaces.push_back(static_cast<int>(final_faces.size()));
          final_faces.push_back(std::move(quad));
          origin.push_back(static_cast<int>(fi));
        }
        out.strips.push_back(std::move(strip));
        return true;
      }();
    }
    if (!strip_done) {
      final_faces.push_back(out.faces[fi]);
      origin.push_back(static_cast<int>(fi));
    }
  }
  out.faces = std::move(final_faces);
  out.face_origin = std::move(origin);
  out.drawing.coedges = build_coedges(out.drawing.edges);
  out.drawing.directions = drawing.directions;
  out.drawing.depths = drawing.depths;  // original vertices only
  if (out.drawing.depths) {
    out.drawing.depths->resize(out.drawing.vertices.size(),
                               std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

ConstraintSystem build_constraints(const WireframeDrawing& drawing,
                                   const std::vector<FaceLoopSet>& faces,
                                   const DirectionAssignment& dirs,
                                   const std::array<Vec3, 3>& directions) {
  ConstraintSystem sys;
  sys.num_faces = static_cast<int>(faces.size());
  const int n_vertices = static_cast<int>(drawing.vertices.size());

  std::vector<std::vector<int>> faces_of_vertex(n_vertices);
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    std::set<int> verts;
    for (const auto& loop : faces[fi].loops) {
      for (int c : loop) {
        int v = drawing.coedges[c].start;
        if (v < 0 || v >= n_vertices) {
          throw std::invalid_argument("face references unknown vertex");
        }
        verts.insert(v);
      }
    }
    for (int v : verts) faces_of_vertex[v].push_back(static_cast<int>(fi));
    for (int v : verts) {
      sys.positivity.push_back({static_cast<int>(fi), v,
                                drawing.vertices[v].x, drawing.vertices[v].y});
    }
  }

  for (int v = 0; v < n_vertices; ++v) {
    const auto& fl = faces_of_vertex[v];
    for (size_t i = 0; i < fl.size(); ++i) {
      for (size_t j = i + 1; j < fl.size(); ++j) {
        ConstraintSystem::Row row;
        row.tag = ConstraintSystem::Row::Tag::kVertexPair;
        double x = drawing.vertices[v].x, y = drawing.vertices[v].y;
        row.coeffs = {{3 * fl[i], x},      {3 * fl[i] + 1, y},
                      {3 * fl[i] + 2, 1.0}, {3 * fl[j], -x},
                      {3 * fl[j] + 1, -y},  {3 * fl[j] + 2, -1.0}};
        sys.rows.push_back(std::move(row));
      }
    }
  }

  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (int j : dirs.per_face[fi]) {
      ConstraintSystem::Row row;
      row.tag = ConstraintSystem::Row::Tag::kDirection;
      row.coeffs = {{3 * static_cast<int>(fi), directions[j].x},
                    {3 * static_cast<int>(fi) + 1, directions[j].y}};
      row.constant = directions[j].z;
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

SolveReport solve_l1(const ConstraintSystem& system, double epsilon) {
  const int m_faces = system.num_faces;
  if (m_faces == 0) throw std::invalid_argument("no faces to solve");
  const int n_rows = static_cast<int>(system.rows.size());
  const int n_f = 3 * m_faces;
  const int n_vars = 2 * n_f + n_rows;  // f+, f-, t
  const int n_cons = 2 * n_rows + static_cast<int>(system.positivity.size());

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_cons, n_vars);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_cons);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_vars);
  for (int r = 0; r < n_rows; ++r) c(2 * n_f + r) = 1.0;

  for (int r = 0; r < n_rows; ++r) {
    const auto& row = system.rows[r];
    for (const auto& [col, val] : row.coeffs) {
      a(2 * r, col) = val;
      a(2 * r, n_f + col) = -val;
      a(2 * r + 1, col) = -val;
      a(2 * r + 1, n_f + col) = val;
    }
    a(2 * r, 2 * n_f + r) = -1.0;
    a(2 * r + 1, 2 * n_f + r) = -1.0;
    b(2 * r) = -row.constant;
    b(2 * r + 1) = row.constant;
  }
  for (size_t p = 0; p < system.positivity.size(); ++p) {
    const auto& pr = system.positivity[p];
    int row = 2 * n_rows + static_cast<int>(p);
    a(row, 3 * pr.face) = pr.x;
    a(row, n_f + 3 * pr.face) = -pr.x;
    a(row, 3 * pr.face + 1) = pr.y;
    a(row, n_f + 3 * pr.face + 1) = -pr.y;
    a(row, 3 * pr.face + 2) = 1.0;
    a(row, n_f + 3 * pr.face + 2) = -1.0;
    b(row) = -epsilon;
  }

  LpResult lp = solve_lp(a, b, c);
  if (lp.status == LpStatus::kInfeasible) {
    throw std::runtime_error("no positive-depth embedding");
  }
  if (lp.status == LpStatus::kUnbounded) {
    throw std::runtime_error("unbounded objective: empty constraint set");
  }

  SolveReport report;
  report.objective = lp.objective;
  report.planes.resize(m_faces);
  for (int fi = 0; fi < m_faces; ++fi) {
    report.planes[fi] = {lp.x(3 * fi) - lp.x(n_f + 3 * fi),
                         lp.x(3 * fi + 1) - lp.x(n_f + 3 * fi + 1),
                         lp.x(3 * fi + 2) - lp.x(n_f + 3 * fi + 2)};
  }

  // Gauge analysis: nullity 1 = determined up to the depth offset.
  if (n_rows > 0) {
    Eigen::MatrixXd p_mat = Eigen::MatrixXd::Zero(n_rows, n_f);
    for (int r = 0; r < n_rows; ++r) {
      for (const auto& [col, val] : system.rows[r].coeffs) p_mat(r, col) = val;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p_mat);
    const auto& sv = svd.singularValues();
    double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 1.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff) ++rank;
    }
    report.gauge_dimension = n_f - rank;
  } else {
    report.gauge_dimension = n_f;
  }
  report.under_constrained = report.gauge_dimension > 1;

  // Translate all plane offsets so the minimum constrained depth is 1.
  if (!system.positivity.empty()) {
    double zmin = std::numeric_limits<double>::infinity();
    for (const auto& pr : system.positivity) {
      zmin = std::min(zmin, report.planes[pr.face].depth_at(pr.x, pr.y));
    }
    double delta = 1.0 - zmin;
    for (PlaneParams& pp : report.planes) pp.c -= delta;
  }
  return report;
}

Circle3 fit_circle_3d(const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  Vec3 a = p2 - p1;
  Vec3 b = p3 - p1;
  Vec3 n = a.cross(b);
  double nn = n.dot(n);
  if (n.norm() <= 1e-9 * std::max(a.norm() * b.norm(), 1e-30)) {
    throw std::invalid_argument("collinear points");
  }
  double aa = a.dot(a), bb = b.dot(b), ab = a.dot(b);
  double alpha = bb * (aa - ab) / (2.0 * nn);
  double beta = aa * (bb - ab) / (2.0 * nn);
  Circle3 circle;
  circle.center = p1 + a * alpha + b * beta;
  circle.radius = (circle.center - p1).norm();
  circle.axis = n.normalized();
  // Canonical sign: largest-magnitude component positive.
  double ax = std::abs(circle.axis.x), ay = std::abs(circle.axis.y),
         az = std::abs(circle.axis.z);
  double lead = (ax >= ay && ax >= az) ? circle.axis.x
                : (ay >= az)           ? circle.axis.y
                                       : circle.axis.z;
  if (lead < 0) circle.axis = circle.axis * -1.0;
  return circle;
}

Solid3D lift_vertices(const WireframeDrawing& drawing,
                      const std::vector<PlaneParams>& planes,
                      const std::vector<FaceLoopSet>& faces) {
  const int n_vertices = static_cast<int>(drawing.vertices.size());
  Solid3D solid;
  solid.planes = planes;
  solid.faces = faces;
  solid.vertices.resize(n_vertices);
  solid.reconstructed.assign(n_vertices, false);

  std::vector<double> z(n_vertices, 0.0);
  std::vector<int> count(n_vertices, 0);
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    std::set<int> verts;
    for (const auto& loop : faces[fi].loops) {
      for (int c : loop) verts.insert(drawing.coedges[c].start);
    }
    for (int v : verts) {
      z[v] += planes[fi].depth_at(drawing.vertices[v].x, drawing.vertices[v].y);
      count[v] += 1;
    }
  }
  for (int v = 0; v < n_vertices; ++v) {
    if (count[v] > 0) {
      z[v] /= count[v];
      solid.reconstructed[v] = true;
    }
  }

  // Faceless vertices: iterate neighbor means to a fixpoint.
  std::vector<std::vector<int>> neighbors(n_vertices);
  for (const Edge& e : drawing.edges) {
    neighbors[e.v0].push_back(e.v1);
    neighbors[e.v1].push_back(e.v0);
  }
  std::vector<bool> assigned = solid.reconstructed;
  for (int iter = 0; iter < 500; ++iter) {
    double max_delta = 0.0;
    std::vector<double> next_z = z;
    std::vector<bool> next_assigned = assigned;
    for (int v = 0; v < n_vertices; ++v) {
      if (solid.reconstructed[v]) continue;
      double sum = 0.0;
      int cnt = 0;
      for (int w : neighbors[v]) {
        if (assigned[w]) {
          sum += z[w];
          ++cnt;
        }
      }
      if (cnt > 0) {
        double nv = sum / cnt;
        max_delta = std::max(max_delta,
                             next_assigned[v] ? std::abs(nv - z[v]) : 1.0);
        next_z[v] = nv;
        next_assigned[v] = true;
      }
    }
    z = std::move(next_z);
    assigned = std::move(next_assigned);
    if (max_delta < 1e-12) break;
  }
  for (int v = 0; v < n_vertices; ++v) {
    solid.vertices[v] = {drawing.vertices[v].x, drawing.vertices[v].y, z[v]};
    if (!solid.reconstructed[v] && assigned[v]) solid.reconstructed[v] = true;
  }
  return solid;
}

}  // namespace wireface
