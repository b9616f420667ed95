#include "wireface/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace wireface {

namespace {

struct FacePatch {
  std::vector<std::vector<Vec2>> rings;  // loop polylines
  double a = 0, b = 0, c = 0;            // depth(x, y) = a x + b y + c
  bool planar = false;
  const FaceLoopSet* face = nullptr;
};

// Least-squares depth plane through the face's loop vertices.
bool fit_depth_plane(const WireframeDrawing& d, const FaceLoopSet& face,
                     FacePatch& patch) {
  double sxx = 0, sxy = 0, sx = 0, syy = 0, sy = 0, s1 = 0;
  double sxz = 0, syz = 0, sz = 0;
  for (const auto& loop : face.loops) {
    for (int c : loop) {
      int v = d.coedges[c].start;
      double x = d.vertices[v].x, y = d.vertices[v].y, z = (*d.depths)[v];
      sxx += x * x; sxy += x * y; sx += x;
      syy += y * y; sy += y; s1 += 1;
      sxz += x * z; syz += y * z; sz += z;
    }
  }
  double det = sxx * (syy * s1 - sy * sy) - sxy * (sxy * s1 - sy * sx) +
               sx * (sxy * sy - syy * sx);
  if (std::abs(det) < 1e-12) return false;
  auto solve3 = [&](double b0, double b1, double b2, int col) {
    double m[3][4] = {{sxx, sxy, sx, b0}, {sxy, syy, sy, b1}, {sx, sy, s1, b2}};
    for (int i = 0; i < 3; ++i) m[i][col] = m[i][3];
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) / det;
  };
  patch.a = solve3(sxz, syz, sz, 0);
  patch.b = solve3(sxz, syz, sz, 1);
  patch.c = solve3(sxz, syz, sz, 2);
  patch.planar = true;
  return true;
}

bool point_in_rings(const std::vector<std::vector<Vec2>>& rings, Vec2 p) {
  bool inside = false;  // even-odd rule over all loops
  for (const auto& ring : rings) {
    for (size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      const Vec2& a = ring[i];
      const Vec2& b = ring[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        double t = (p.y - a.y) / (b.y - a.y);
        if (p.x < a.x + t * (b.x - a.x)) inside = !inside;
      }
    }
  }
  return inside;
}

}  // namespace

std::string render_svg(const WireframeDrawing& drawing, int size_px) {
  double lo_x = 1e30, lo_y = 1e30, hi_x = -1e30, hi_y = -1e30;
  for (const Vertex2& v : drawing.vertices) {
    lo_x = std::min(lo_x, v.x); hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y); hi_y = std::max(hi_y, v.y);
  }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (span <= 0) span = 1.0;
  double margin = 0.05 * span;
  double scale = size_px / (span + 2 * margin);
  auto sx = [&](double x) { return (x - lo_x + margin) * scale; };
  auto sy = [&](double y) { return size_px - (y - lo_y + margin) * scale; };

  std::vector<FacePatch> patches;
  if (drawing.ground_truth && drawing.depths) {
    for (const FaceLoopSet& face : *drawing.ground_truth) {
      FacePatch patch;
      patch.face = &face;
      for (const auto& loop : face.loops) {
        std::vector<Vec2> ring;
        for (int c : loop) {
          const Edge& e = drawing.edges[c / 2];
          bool forward = (c % 2 == 0);
          for (size_t s = 0; s + 1 < e.samples.size(); ++s) {
            ring.push_back(forward ? e.samples[s]
                                   : e.samples[e.samples.size() - 1 - s]);
          }
        }
        patch.rings.push_back(std::move(ring));
      }
      fit_depth_plane(drawing, face, patch);
      patches.push_back(std::move(patch));
    }
  }

  auto edge_in_face = [&](int edge, const FaceLoopSet& face) {
    for (const auto& loop : face.loops) {
      for (int c : loop) {
        if (c / 2 == edge) return true;
      }
    }
    return false;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px
      << "\" height=\"" << size_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t ei = 0; ei < drawing.edges.size(); ++ei) {
    const Edge& e = drawing.edges[ei];
    bool hidden = false;
    if (!patches.empty() && drawing.depths) {
      // Midpoint occlusion against the fitted depth planes; plumbing only.
      size_t mid = e.samples.size() / 2;
      Vec2 p = e.samples[mid];
      double z0 = (*drawing.depths)[e.v0];
      double z1 = (*drawing.depths)[e.v1];
      double pz = 0.5 * (z0 + z1);
      int occluders = 0;
      for (const FacePatch& patch : patches) {
        if (!patch.planar || edge_in_face(static_cast<int>(ei), *patch.face)) {
          continue;
        }
        if (!point_in_rings(patch.rings, p)) continue;
        double fz = patch.a * p.x + patch.b * p.y + patch.c;
        if (fz < pz - 1e-6) ++occluders;
      }
      hidden = occluders > 0;
    }
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (hidden) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (size_t s = 0; s < e.samples.size(); ++s) {
      if (s) out << ' ';
      out << sx(e.samples[s].x) << ',' << sy(e.samples[s].y);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wireface
