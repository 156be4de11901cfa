#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tpr/algebra.hpp"

namespace tpr {

struct Config {
  int d = 64;
  VecMode mode = VecMode::exact;
  std::uint64_t seed = 42;
  double score_threshold = 0.6;   // "norm approximately 1.0" acceptance
  double margin_ratio = 2.0;      // winner must lead runner-up by this factor
  double pair_cleanup_threshold = 0.35;
  double pair_margin_ratio = 1.5;
  double eps_path = 1e-6;
  double block_tol = 1e-6;
  int max_path_len = 2;
  int position_rank = 0;  // 0 -> d / 2
  int jobs = 1;
  std::string lexicon_path;
  std::string answer_lexicon_path;
  std::string data_dir;

  void validate() const {
    if (d < 8) throw std::runtime_error("config: d must be >= 8");
    if (score_threshold <= 0 || eps_path <= 0 || block_tol <= 0 ||
        pair_cleanup_threshold <= 0)
      throw std::runtime_error("config: tolerances must be positive");
    if (max_path_len < 1) throw std::runtime_error("config: max_path_len >= 1");
    if (jobs < 1) throw std::runtime_error("config: jobs >= 1");
  }

  int effective_rank() const { return position_rank > 0 ? position_rank : d / 2; }
};

// Immutable per-run matrix banks, shared read-only across stories.
struct Banks {
  DirectionBank dir;
  PositionBank pos;
  PairBinder temporal;  // the (next, prev) location binder
  PairBinder owner;     // the (next, prev) owner binder
  PairBinder conj;      // or/and conjunction binder

  static Banks make(const Config& cfg) {
    Banks b{make_direction_bank(cfg.d, cfg.seed),
            make_position_bank(cfg.d, cfg.effective_rank(), cfg.seed),
            make_pair_binder(BinderKind::temporal, cfg.d, cfg.seed),
            make_pair_binder(BinderKind::owner, cfg.d, cfg.seed),
            make_pair_binder(BinderKind::conj, cfg.d, cfg.seed)};
    return b;
  }
};

}  // namespace tpr
