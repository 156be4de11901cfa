#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tpr/rng.hpp"

namespace tpr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A statement encoding: containee (outer) container^T, d x d.
using Encoding = Eigen::MatrixXd;

enum class VecMode { exact, sampled };

// Structural role of an entity, assigned from its grammar position the first
// time the encoder touches it. Inference branches on roles, never on labels.
enum class EntityRole {
  unknown,
  actor,
  object,
  location,
  category,
  property,
  stamp,
  reserved,  // nowhere / nobody
};

struct EntityVector {
  int id = -1;
  std::string label;
  Vector values;
  EntityRole role = EntityRole::unknown;
  bool alias = false;  // shares values with another entry; skipped by cleanup
  int alias_of = -1;
  int first_time = 0;  // statement index of first mention (trace metadata)
};

// Per-story word <-> vector environment. In exact mode new vectors are
// Gram-Schmidt orthonormalized against all existing ones, so inner products
// between distinct entities are exactly 0 and scores are 0/1.
class EntityRegistry {
 public:
  EntityRegistry(int d, VecMode mode, std::uint64_t seed)
      : d_(d), mode_(mode), rng_(seed) {}

  const EntityVector& sample(const std::string& label,
                             EntityRole role = EntityRole::unknown,
                             int time = 0);
  // Registers `label` as an alias of `target` (same vector, no capacity use).
  const EntityVector& set_alias(const std::string& label,
                                const std::string& target, int time);

  const EntityVector* find(const std::string& label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? nullptr : &entries_[it->second];
  }
  const EntityVector& at(int id) const { return entries_.at(id); }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  int dim() const { return d_; }
  VecMode mode() const { return mode_; }
  Rng& rng() { return rng_; }
  const std::deque<EntityVector>& entries() const { return entries_; }

 private:
  Vector fresh_vector();

  int d_;
  VecMode mode_;
  Rng rng_;
  // deque: references returned by sample() stay valid as the registry grows
  std::deque<EntityVector> entries_;
  std::unordered_map<std::string, int> by_label_;
  int concrete_ = 0;  // non-alias entries (exact-mode capacity)
};

// ---- binding / probing ----------------------------------------------------

Encoding bind(const Vector& containee, const Vector& container);
inline Encoding bind(const EntityVector& f, const EntityVector& r) {
  return bind(f.values, r.values);
}

struct ProbeResult {
  Vector role;
  double score;  // Euclidean norm of role
};

// Left action: role = enc^T * containee. For enc = bind(x, r) this gives
// <containee, x> * r, so score == |<containee, x>|.
ProbeResult probe(const Vector& containee, const Encoding& enc);
// Right action: filler = enc * container (recovers the containee side).
ProbeResult probe_container(const Vector& container, const Encoding& enc);

Encoding chain(const Encoding& first, const Encoding& second);

struct CleanupResult {
  int id;
  double cosine;
  double margin;  // best minus second-best cosine
};

// Snaps v to the nearest registered (non-alias) entity by cosine.
CleanupResult cleanup(const Vector& v, const EntityRegistry& reg);

// ---- pair binders (temporal, owner, conjunction) ---------------------------

enum class BinderKind { temporal, owner, conj };

// d x 2d map packing (next, prev) into one d-vector. forward = (1/sqrt 2)
// [Q1 Q2] with Q1, Q2 independent random orthogonal blocks, so the rows are
// orthonormal and pinv is exactly the transpose.
struct PairBinder {
  BinderKind kind;
  Matrix forward;  // d x 2d
  Matrix pinv;     // 2d x d
};

PairBinder make_pair_binder(BinderKind kind, int d, std::uint64_t seed);

Vector pair_bind(const PairBinder& b, const Vector& next, const Vector& prev);

struct UnbindResult {
  int next_id;
  int prev_id;
  double confidence;
  bool used_enumeration;
};

struct UnbindParams {
  double cleanup_threshold = 0.35;
  double margin_ratio = 1.5;  // winner/runner-up below this triggers fallback
};

// pinv route with cleanup; exhaustive pair enumeration as fallback when the
// cleanup route is not confident.
UnbindResult pair_unbind(const PairBinder& b, const Vector& v,
                         const EntityRegistry& reg,
                         const UnbindParams& params = {});

// ---- direction / position banks --------------------------------------------

// Four non-singular direction matrices with N = S^-1 and E = W^-1. Sampled as
// random orthogonal, so they are norm-preserving and generically
// non-commuting (composed paths are order-distinguishable).
struct DirectionBank {
  Matrix N, E, S, W;
  const Matrix& of(char dir) const {
    switch (dir) {
      case 'n': return N;
      case 'e': return E;
      case 's': return S;
      default: return W;
    }
  }
};

DirectionBank make_direction_bank(int d, std::uint64_t seed);

// Four idempotent rank-r symmetric projectors (A^2 = A != I), one per
// relative direction (above, below, left, right). The 4d x 4d block lifts are
// applied implicitly: "apply M to sub-block i, identity elsewhere".
struct PositionBank {
  Matrix A, B, L, R;
  int rank;
  const Matrix& of(int block) const {
    switch (block) {
      case 0: return A;
      case 1: return B;
      case 2: return L;
      default: return R;
    }
  }
};

PositionBank make_position_bank(int d, int rank, std::uint64_t seed);

// Haar-ish random orthogonal matrix (QR of a Gaussian with sign fix).
Matrix random_orthogonal(int d, Rng& rng);
Vector random_unit_vector(int d, Rng& rng);

}  // namespace tpr
