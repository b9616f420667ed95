#pragma once

#include <map>
#include <string>
#include <vector>

#include "wireface/brep.hpp"

namespace wireface {

// One face prediction of the shared output schema, with the per-type vote
// counts accumulated during dedup.
struct PredictedFace {
  FaceLoopSet face;
  std::map<FaceType, int> votes;
};

// One undecoded model output: the sequence emitted after `start`, the
// predicted type, and whether a type token was reached before the step cap.
struct RawPrediction {
  int start = -1;
  std::vector<int> sequence;
  FaceType type = FaceType::kOthers;
  bool terminated = false;
};

std::string serialize_drawing(const WireframeDrawing& drawing);
WireframeDrawing parse_drawing(const std::string& text);

std::string serialize_predictions(const std::vector<PredictedFace>& faces);
std::vector<PredictedFace> parse_predictions(const std::string& text);

std::string serialize_raw_predictions(const std::vector<RawPrediction>& raw);
std::vector<RawPrediction> parse_raw_predictions(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wireface
