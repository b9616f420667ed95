#pragma once

#include <optional>
#include <vector>

#include "wireface/brep.hpp"

namespace wireface {

// 2D polyline length of a co-edge's underlying edge.
double coedge_length(const WireframeDrawing& drawing, int coedge);

// Shortest directed cycle that begins with `start` and never uses an edge
// twice in either direction: Dijkstra from end(start) back to start(start)
// with edge(start) removed. Ties are broken toward the smallest co-edge id.
// The result carries type OTHERS; nullopt when no cycle exists.
std::optional<FaceLoopSet> least_cost_loop(const WireframeDrawing& drawing,
                                           int start);

// least_cost_loop from every co-edge, deduplicated by edge set (first
// occurrence wins).
std::vector<FaceLoopSet> run_baseline(const WireframeDrawing& drawing);

}  // namespace wireface
