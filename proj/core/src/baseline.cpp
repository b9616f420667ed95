#include "wireface/baseline.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace wireface {

double coedge_length(const WireframeDrawing& drawing, int coedge) {
  const Edge& e = drawing.edges[coedge / 2];
  double len = 0.0;
  for (size_t i = 0; i + 1 < e.samples.size(); ++i) {
    len += dist2(e.samples[i], e.samples[i + 1]);
  }
  return len;
}

std::optional<FaceLoopSet> least_cost_loop(const WireframeDrawing& drawing,
                                           int start) {
  const int n_vertices = static_cast<int>(drawing.vertices.size());
  const int banned_edge = start / 2;
  const int source = drawing.coedges[start].end;
  const int goal = drawing.coedges[start].start;

  // Outgoing co-edges per vertex, ascending id for deterministic expansion.
  std::vector<std::vector<int>> outgoing(n_vertices);
  for (size_t c = 0; c < drawing.coedges.size(); ++c) {
    if (static_cast<int>(c) / 2 == banned_edge) continue;
    outgoing[drawing.coedges[c].start].push_back(static_cast<int>(c));
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n_vertices, kInf);
  std::vector<int> parent(n_vertices, -1);  // incoming co-edge
  std::vector<bool> done(n_vertices, false);

  using Item = std::tuple<double, int, int>;  // (dist, incoming co-edge, vertex)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.push({0.0, -1, source});

  while (!queue.empty()) {
    auto [cost, via, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    if (v == goal) break;
    for (int c : outgoing[v]) {
      int w = drawing.coedges[c].end;
      if (done[w]) continue;
      double nd = cost + coedge_length(drawing, c);
      if (nd < dist[w] ||
          (nd == dist[w] && parent[w] >= 0 && c < parent[w])) {
        dist[w] = nd;
        parent[w] = c;
        queue.push({nd, c, w});
      }
    }
  }
  if (dist[goal] == kInf) return std::nullopt;

  std::vector<int> path;
  for (int v = goal; v != source;) {
    int c = parent[v];
    path.push_back(c);
    v = drawing.coedges[c].start;
  }
  std::reverse(path.begin(), path.end());

  FaceLoopSet face;
  face.type = FaceType::kOthers;
  std::vector<int> loop{start};
  loop.insert(loop.end(), path.begin(), path.end());
  face.loops.push_back(std::move(loop));
  return face;
}

std::vector<FaceLoopSet> run_baseline(const WireframeDrawing& drawing) {
  std::vector<FaceLoopSet> out;
  std::map<std::vector<int>, bool> seen;
  for (size_t c = 0; c < drawing.coedges.size(); ++c) {
    auto face = least_cost_loop(drawing, static_cast<int>(c));
    if (!face) continue;
    std::vector<int> key = canonical_face_key(*face);
    if (seen.emplace(std::move(key), true).second) {
      out.push_back(std::move(*face));
    }
  }
  return out;
}

}  // namespace wireface
