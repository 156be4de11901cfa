#pragma once

#include <cstdint>

#include "tpr/config.hpp"
#include "tpr/parser.hpp"

namespace tpr {

// Synthesizes stories in the official corpus format, one category at a time.
// Every gold answer and clue list comes from an explicit world replay
// (location/owner maps, relation graphs, grid BFS), never from the reasoner.
// Deterministic for a fixed (seed, category, story index).
std::vector<Story> generate_category(const Config& cfg, int category,
                                     int n_stories);

Story generate_story(const Config& cfg, int category, int story_index);

}  // namespace tpr
