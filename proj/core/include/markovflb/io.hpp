#pragma once

#include <string>

#include "markovflb/conversion.hpp"
#include "markovflb/joint.hpp"
#include "markovflb/transition.hpp"

namespace markovflb {

// JSON schemas; all matrices are row-major with "indexing": "dest_source".
//
// StochasticMatrix / generic square matrix:
//   {"alphabet": N, "entries": [...], "indexing": "dest_source"}
// PairTransitionMatrix:
//   {"alphabet_x": N, "alphabet_y": M, "entries": [...], "indexing": "dest_source"}
// JointDistribution:
//   {"alphabet_x": N, "alphabet_y": M, "entries": [...]}
// MarkovSource:
//   {"transition": <pair matrix>, "initial": [...]} or {"preset": "name:params"}
// RegularChannel:
//   {"group": [q1,...], "outputs": K, "permutations": [[...],...], "base": [...]}

JointDistribution load_joint_json(const std::string& text);
MarkovSource load_source_json(const std::string& text);
RegularChannel load_channel_json(const std::string& text);

JointDistribution load_joint_file(const std::string& path);
MarkovSource load_source_file(const std::string& path);
RegularChannel load_channel_file(const std::string& path);

std::string joint_to_json(const JointDistribution& p);
std::string source_to_json(const MarkovSource& src);

}  // namespace markovflb
