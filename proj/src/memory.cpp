#include "tpr/memory.hpp"

namespace tpr {

void append_slot(StoryState& state, Slot slot) {
  // One statement may contribute several slots (basic plus temporal), so
  // equal times are fine; going backwards is not.
  if (!state.slots.empty() && slot.time < state.slots.back().time)
    throw std::runtime_error("memory: out-of-order slot time " +
                             std::to_string(slot.time));
  if (slot.sources.empty()) slot.sources.push_back(slot.time);
  state.slots.push_back(std::move(slot));
}

std::vector<ScanHit> scan(const StoryState& state, const Vector& containee,
                          int before, unsigned kinds) {
  std::vector<ScanHit> hits;
  for (const auto& s : state.slots) {
    if (s.time >= before) break;
    if (!(s.kind & kinds)) continue;
    ProbeResult p = probe(containee, s.enc);
    hits.push_back({s.time, std::move(p.role), p.score, &s});
  }
  return hits;
}

std::vector<ScanHit> scan_containers(const StoryState& state,
                                     const Vector& container, int before,
                                     unsigned kinds) {
  std::vector<ScanHit> hits;
  for (const auto& s : state.slots) {
    if (s.time >= before) break;
    if (!(s.kind & kinds)) continue;
    ProbeResult p = probe_container(container, s.enc);
    hits.push_back({s.time, std::move(p.role), p.score, &s});
  }
  return hits;
}

std::optional<ScanHit> most_recent(const StoryState& state,
                                   const Vector& containee, int before,
                                   unsigned kinds) {
  auto hits = scan(state, containee, before, kinds);
  for (auto it = hits.rbegin(); it != hits.rend(); ++it)
    if (it->score >= state.cfg->score_threshold) return *it;
  return std::nullopt;
}

std::optional<ScanHit> earliest(const StoryState& state,
                                const Vector& containee, int before,
                                unsigned kinds) {
  auto hits = scan(state, containee, before, kinds);
  for (auto& h : hits)
    if (h.score >= state.cfg->score_threshold) return h;
  return std::nullopt;
}

}  // namespace tpr
