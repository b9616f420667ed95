#include "wireface/brep.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wireface {

const char* to_string(FaceType t) {
  switch (t) {
    case FaceType::kPlane: return "PLANE";
    case FaceType::kCylinder: return "CYLINDER";
    case FaceType::kOthers: return "OTHERS";
  }
  return "OTHERS";
}

const char* to_string(EdgeKind k) {
  return k == EdgeKind::kLine ? "line" : "arc";
}

FaceType face_type_from_string(std::string_view s) {
  if (s == "PLANE") return FaceType::kPlane;
  if (s == "CYLINDER") return FaceType::kCylinder;
  if (s == "OTHERS") return FaceType::kOthers;
  throw std::invalid_argument("unknown face type: " + std::string(s));
}

EdgeKind edge_kind_from_string(std::string_view s) {
  if (s == "line") return EdgeKind::kLine;
  if (s == "arc") return EdgeKind::kArc;
  throw std::invalid_argument("unknown edge kind: " + std::string(s));
}

std::vector<CoEdge> build_coedges(const std::vector<Edge>& edges) {
  std::vector<CoEdge> out;
  out.reserve(edges.size() * 2);
  for (size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.v0 == e.v1 && e.kind == EdgeKind::kLine) {
      throw std::invalid_argument("degenerate edge " + std::to_string(k));
    }
    out.push_back({static_cast<int>(k), e.v0, e.v1});
    out.push_back({static_cast<int>(k), e.v1, e.v0});
  }
  return out;
}

std::optional<std::vector<std::vector<int>>> segment_loops(
    const WireframeDrawing& drawing, const std::vector<int>& sequence) {
  if (sequence.empty()) return std::nullopt;
  const int n_coedges = static_cast<int>(drawing.coedges.size());
  for (int c : sequence) {
    if (c < 0 || c >= n_coedges) return std::nullopt;
  }

  std::vector<bool> used(sequence.size(), false);
  std::vector<std::vector<int>> loops;
  size_t consumed = 0;
  while (consumed < sequence.size()) {
    // Start a new chain at the earliest unused element.
    size_t first = 0;
    while (used[first]) ++first;
    used[first] = true;
    ++consumed;
    std::vector<int> loop{sequence[first]};
    int loop_start = drawing.coedges[sequence[first]].start;
    int cursor = drawing.coedges[sequence[first]].end;
    while (cursor != loop_start) {
      bool extended = false;
      for (size_t i = 0; i < sequence.size(); ++i) {
        if (used[i]) continue;
        if (drawing.coedges[sequence[i]].start == cursor) {
          used[i] = true;
          ++consumed;
          loop.push_back(sequence[i]);
          cursor = drawing.coedges[sequence[i]].end;
          extended = true;
          break;
        }
      }
      if (!extended) return std::nullopt;  // open chain
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

bool is_closed_face(const WireframeDrawing& drawing,
                    const std::vector<int>& sequence) {
  return segment_loops(drawing, sequence).has_value();
}

std::vector<int> canonical_face_key(const FaceLoopSet& face) {
  std::set<int> edges;
  for (const auto& loop : face.loops) {
    for (int c : loop) edges.insert(c / 2);
  }
  return {edges.begin(), edges.end()};
}

bool coedge_key_less(const WireframeDrawing& drawing, int a, int b) {
  const CoEdge& ca = drawing.coedges[a];
  const CoEdge& cb = drawing.coedges[b];
  auto key = [&](const CoEdge& c) {
    const Vertex2& s = drawing.vertices[c.start];
    const Vertex2& e = drawing.vertices[c.end];
    return std::array<double, 4>{s.x, s.y, e.x, e.y};
  };
  auto ka = key(ca);
  auto kb = key(cb);
  if (ka != kb) return ka < kb;
  return a < b;
}

namespace {

std::vector<int> rotate_to(const std::vector<int>& loop, size_t pos) {
  std::vector<int> out;
  out.reserve(loop.size());
  out.insert(out.end(), loop.begin() + pos, loop.end());
  out.insert(out.end(), loop.begin(), loop.begin() + pos);
  return out;
}

}  // namespace

std::vector<int> canonical_sequence(const WireframeDrawing& drawing,
                                    const FaceLoopSet& face, int start) {
  int start_loop = -1;
  size_t start_pos = 0;
  for (size_t li = 0; li < face.loops.size(); ++li) {
    auto it = std::find(face.loops[li].begin(), face.loops[li].end(), start);
    if (it != face.loops[li].end()) {
      start_loop = static_cast<int>(li);
      start_pos = static_cast<size_t>(it - face.loops[li].begin());
      break;
    }
  }
  if (start_loop < 0) {
    throw std::invalid_argument("start co-edge not in face");
  }

  std::vector<int> out = rotate_to(face.loops[start_loop], start_pos);

  std::vector<std::vector<int>> rest;
  for (size_t li = 0; li < face.loops.size(); ++li) {
    if (static_cast<int>(li) == start_loop) continue;
    const auto& loop = face.loops[li];
    size_t best = 0;
    for (size_t i = 1; i < loop.size(); ++i) {
      if (coedge_key_less(drawing, loop[i], loop[best])) best = i;
    }
    rest.push_back(rotate_to(loop, best));
  }
  std::sort(rest.begin(), rest.end(), [&](const auto& a, const auto& b) {
    return coedge_key_less(drawing, a.front(), b.front());
  });
  for (auto& loop : rest) {
    out.insert(out.end(), loop.begin(), loop.end());
  }
  return out;
}

ManifoldReport validate_manifold(const WireframeDrawing& drawing) {
  if (!drawing.ground_truth) {
    throw std::invalid_argument("drawing has no ground-truth faces");
  }
  ManifoldReport report;
  report.incidence.assign(drawing.edges.size(), 0);
  for (const FaceLoopSet& face : *drawing.ground_truth) {
    std::set<int> face_edges;
    for (const auto& loop : face.loops) {
      for (int c : loop) face_edges.insert(c / 2);
    }
    for (int e : face_edges) report.incidence[e] += 1;
  }
  for (size_t e = 0; e < report.incidence.size(); ++e) {
    if (report.incidence[e] != 2) report.offending.push_back(static_cast<int>(e));
  }
  report.pass = report.offending.empty();
  return report;
}

std::vector<int> canonical_input_order(const WireframeDrawing& drawing) {
  std::vector<int> order(drawing.coedges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return coedge_key_less(drawing, a, b);
  });
  return order;
}

}  // namespace wireface
