#include "tpr/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace tpr {

Vector EntityRegistry::fresh_vector() {
  Vector v(d_);
  for (int i = 0; i < d_; ++i) v[i] = rng_.gaussian();
  v.normalize();
  if (mode_ == VecMode::exact) {
    // Gram-Schmidt against all concrete entries.
    for (const auto& e : entries_) {
      if (e.alias) continue;
      v -= e.values.dot(v) * e.values;
    }
    double n = v.norm();
    if (n < 1e-8) throw std::runtime_error("registry: degenerate sample");
    v /= n;
  }
  return v;
}

const EntityVector& EntityRegistry::sample(const std::string& label,
                                           EntityRole role, int time) {
  if (label.empty()) throw std::runtime_error("registry: empty label");
  auto it = by_label_.find(label);
  if (it != by_label_.end()) {
    EntityVector& e = entries_[it->second];
    if (e.role == EntityRole::unknown) e.role = role;
    return e;
  }
  if (mode_ == VecMode::exact && concrete_ >= d_)
    throw std::runtime_error("registry-full: exact mode holds at most " +
                             std::to_string(d_) + " entities");
  EntityVector e;
  e.id = static_cast<int>(entries_.size());
  e.label = label;
  e.values = fresh_vector();
  e.role = role;
  e.first_time = time;
  by_label_[label] = e.id;
  entries_.push_back(std::move(e));
  ++concrete_;
  return entries_.back();
}

const EntityVector& EntityRegistry::set_alias(const std::string& label,
                                              const std::string& target,
                                              int time) {
  const EntityVector* tgt = find(target);
  if (!tgt) throw std::runtime_error("registry: alias target unknown: " + target);
  int tgt_id = tgt->id;
  auto it = by_label_.find(label);
  if (it != by_label_.end()) {
    EntityVector& e = entries_[it->second];
    e.values = entries_[tgt_id].values;
    e.alias = true;
    e.alias_of = tgt_id;
    return e;
  }
  EntityVector e;
  e.id = static_cast<int>(entries_.size());
  e.label = label;
  e.values = entries_[tgt_id].values;
  e.role = EntityRole::unknown;
  e.alias = true;
  e.alias_of = tgt_id;
  e.first_time = time;
  by_label_[label] = e.id;
  entries_.push_back(std::move(e));
  return entries_.back();
}

Encoding bind(const Vector& containee, const Vector& container) {
  if (containee.size() != container.size())
    throw std::runtime_error("bind: dimension mismatch");
  return containee * container.transpose();
}

ProbeResult probe(const Vector& containee, const Encoding& enc) {
  if (enc.rows() != containee.size())
    throw std::runtime_error("probe: dimension mismatch");
  Vector role = enc.transpose() * containee;
  return {role, role.norm()};
}

ProbeResult probe_container(const Vector& container, const Encoding& enc) {
  if (enc.cols() != container.size())
    throw std::runtime_error("probe_container: dimension mismatch");
  Vector filler = enc * container;
  return {filler, filler.norm()};
}

Encoding chain(const Encoding& first, const Encoding& second) {
  return first * second;
}

CleanupResult cleanup(const Vector& v, const EntityRegistry& reg) {
  if (reg.empty()) throw std::runtime_error("cleanup: empty registry");
  double n = v.norm();
  if (n < 1e-12) throw std::runtime_error("cleanup: zero vector");
  int best = -1;
  double best_cos = -2.0, second = -2.0;
  for (const auto& e : reg.entries()) {
    if (e.alias) continue;
    double c = e.values.dot(v) / n;
    if (c > best_cos) {
      second = best_cos;
      best_cos = c;
      best = e.id;
    } else if (c > second) {
      second = c;
    }
  }
  if (best < 0) throw std::runtime_error("cleanup: no concrete entries");
  if (second < -1.5) second = 0.0;  // single-entry registry
  return {best, best_cos, best_cos - second};
}

Matrix random_orthogonal(int d, Rng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix reflection signs so the distribution is Haar and the result is a
  // pure function of the Gaussian draw.
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Vector random_unit_vector(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
  v.normalize();
  return v;
}

PairBinder make_pair_binder(BinderKind kind, int d, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x70ULL + static_cast<std::uint64_t>(kind)));
  Matrix q1 = random_orthogonal(d, rng);
  Matrix q2 = random_orthogonal(d, rng);
  Matrix fwd(d, 2 * d);
  fwd << q1, q2;
  fwd *= 1.0 / std::sqrt(2.0);
  PairBinder b;
  b.kind = kind;
  b.forward = fwd;
  b.pinv = fwd.transpose();  // rows are orthonormal
  return b;
}

Vector pair_bind(const PairBinder& b, const Vector& next, const Vector& prev) {
  int d = static_cast<int>(b.forward.rows());
  if (next.size() != d || prev.size() != d)
    throw std::runtime_error("pair_bind: dimension mismatch");
  Vector stacked(2 * d);
  stacked << next, prev;
  return b.forward * stacked;
}

UnbindResult pair_unbind(const PairBinder& b, const Vector& v,
                         const EntityRegistry& reg,
                         const UnbindParams& params) {
  if (reg.empty()) throw std::runtime_error("pair_unbind: empty registry");
  int d = static_cast<int>(b.forward.rows());
  Vector u = b.pinv * v;
  Vector half_next = u.head(d);
  Vector half_prev = u.tail(d);
  CleanupResult cn = cleanup(half_next, reg);
  CleanupResult cp = cleanup(half_prev, reg);

  auto ratio_ok = [&](const CleanupResult& c) {
    double runner = c.cosine - c.margin;
    if (runner <= 0.0) return true;
    return c.cosine / runner >= params.margin_ratio;
  };

  double confidence = std::min(cn.cosine, cp.cosine);
  if (confidence >= params.cleanup_threshold && ratio_ok(cn) && ratio_ok(cp))
    return {cn.id, cp.id, confidence, false};

  // Exhaustive fallback: the forward map itself is the oracle.
  int best_n = -1, best_p = -1;
  double best_res = std::numeric_limits<double>::max();
  for (const auto& en : reg.entries()) {
    if (en.alias) continue;
    for (const auto& ep : reg.entries()) {
      if (ep.alias) continue;
      double res = (pair_bind(b, en.values, ep.values) - v).norm();
      if (res < best_res) {
        best_res = res;
        best_n = en.id;
        best_p = ep.id;
      }
    }
  }
  return {best_n, best_p, 1.0 - best_res, true};
}

DirectionBank make_direction_bank(int d, std::uint64_t seed) {
  if (d < 8) throw std::runtime_error("direction bank: d must be >= 8");
  Rng rng(mix_seed(seed, 0xd1ULL));
  DirectionBank bank;
  bank.N = random_orthogonal(d, rng);
  bank.E = random_orthogonal(d, rng);
  bank.S = bank.N.transpose();
  bank.W = bank.E.transpose();
  return bank;
}

PositionBank make_position_bank(int d, int rank, std::uint64_t seed) {
  if (d < 8) throw std::runtime_error("position bank: d must be >= 8");
  if (rank < 1 || rank > d - 1)
    throw std::runtime_error("position bank: rank must be in [1, d-1]");
  Rng rng(mix_seed(seed, 0xb0ULL));
  PositionBank bank;
  bank.rank = rank;
  Matrix* mats[4] = {&bank.A, &bank.B, &bank.L, &bank.R};
  for (Matrix* m : mats) {
    Matrix basis = random_orthogonal(d, rng).leftCols(rank);
    *m = basis * basis.transpose();
  }
  return bank;
}

}  // namespace tpr
