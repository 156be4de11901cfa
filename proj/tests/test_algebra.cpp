#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tpr/algebra.hpp"

using namespace tpr;

namespace {
EntityRegistry make_registry(int d, VecMode mode, std::uint64_t seed,
                             int n_entities) {
  EntityRegistry reg(d, mode, seed);
  for (int i = 0; i < n_entities; ++i)
    reg.sample("e" + std::to_string(i));
  return reg;
}
}  // namespace

TEST_CASE("entity sampling is idempotent per label") {
  EntityRegistry reg(16, VecMode::exact, 1);
  const auto& a = reg.sample("mary");
  Vector first = a.values;
  const auto& b = reg.sample("mary");
  CHECK(reg.size() == 1);
  CHECK((b.values - first).norm() == 0.0);
}

TEST_CASE("entity vectors are unit norm and orthogonal in exact mode") {
  EntityRegistry reg(32, VecMode::exact, 7);
  for (int i = 0; i < 20; ++i) reg.sample("w" + std::to_string(i));
  for (const auto& e : reg.entries()) {
    CHECK(e.values.norm() == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& f : reg.entries()) {
      if (e.id == f.id) continue;
      CHECK(std::abs(e.values.dot(f.values)) < 1e-9);
    }
  }
}

TEST_CASE("exact mode registry is capacity bounded") {
  EntityRegistry reg(4, VecMode::exact, 3);
  reg.sample("a");
  reg.sample("b");
  reg.sample("c");
  reg.sample("d");
  CHECK_THROWS_WITH_AS(reg.sample("e"), doctest::Contains("registry-full"),
                       std::runtime_error);
}

TEST_CASE("sampled mode cross-talk stays small on average") {
  // Monte-Carlo oracle: with d = 256 the expected |<u, v>| is
  // sqrt(2/(pi*256)) ~ 0.05, far below the 0.15 bound.
  EntityRegistry reg(256, VecMode::sampled, 7);
  for (int i = 0; i < 2000; ++i) reg.sample("w" + std::to_string(i));
  Rng rng(99);
  double sum = 0.0;
  for (int k = 0; k < 1000; ++k) {
    int i = rng.uniform_int(0, reg.size() - 1);
    int j = rng.uniform_int(0, reg.size() - 1);
    while (j == i) j = rng.uniform_int(0, reg.size() - 1);
    sum += std::abs(reg.at(i).values.dot(reg.at(j).values));
  }
  CHECK(sum / 1000.0 < 0.15);
}

TEST_CASE("bind produces unit-Frobenius rank-one encodings") {
  EntityRegistry reg(16, VecMode::exact, 11);
  const auto& f = reg.sample("football");
  const auto& m = reg.sample("mary");
  Encoding enc = bind(f, m);
  CHECK(enc.norm() == doctest::Approx(1.0).epsilon(1e-9));

  Encoding self = bind(m, m);
  CHECK(self.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(self.trace() == doctest::Approx(1.0).epsilon(1e-9));

  Vector short_vec(8);
  short_vec.setZero();
  CHECK_THROWS_AS(bind(f.values, short_vec), std::runtime_error);
}

TEST_CASE("probe recovers the bound role") {
  EntityRegistry reg(16, VecMode::exact, 13);
  const auto& m = reg.sample("mary");
  const auto& b = reg.sample("bathroom");
  const auto& j = reg.sample("john");
  const auto& h = reg.sample("hallway");

  ProbeResult hit = probe(m.values, bind(m, b));
  CHECK(hit.score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((hit.role - b.values).norm() < 1e-9);

  ProbeResult miss = probe(m.values, bind(j, h));
  CHECK(miss.score < 1e-9);

  Encoding zero = Encoding::Zero(16, 16);
  CHECK(probe(m.values, zero).score == 0.0);
}

TEST_CASE("chain implements transitivity") {
  EntityRegistry reg(16, VecMode::exact, 17);
  const auto& f = reg.sample("f");
  const auto& m = reg.sample("m");
  const auto& g = reg.sample("g");
  CHECK((chain(bind(f, m), bind(m, g)) - bind(f, g)).norm() < 1e-9);

  const auto& a = reg.sample("a");
  const auto& b = reg.sample("b");
  const auto& c = reg.sample("c");
  const auto& d = reg.sample("d");
  // orthogonal middle terms annihilate
  CHECK(chain(bind(a, b), bind(c, d)).norm() < 1e-9);
}

TEST_CASE("round-trip property: cleanup(probe(x, bind(x, r))) == r") {
  EntityRegistry reg(32, VecMode::exact, 19);
  for (int i = 0; i < 24; ++i) reg.sample("w" + std::to_string(i));
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    int x = rng.uniform_int(0, reg.size() - 1);
    int r = rng.uniform_int(0, reg.size() - 1);
    ProbeResult p = probe(reg.at(x).values, bind(reg.at(x), reg.at(r)));
    CleanupResult c = cleanup(p.role, reg);
    CHECK(c.id == r);
    CHECK(c.cosine >= 1.0 - 1e-9);
  }
}

TEST_CASE("cleanup picks the dominant component") {
  EntityRegistry reg(16, VecMode::exact, 23);
  const auto& k = reg.sample("kitchen");
  const auto& g = reg.sample("garden");
  CleanupResult exact_hit = cleanup(k.values, reg);
  CHECK(exact_hit.id == k.id);
  CHECK(exact_hit.cosine == doctest::Approx(1.0));

  Vector mix = 0.9 * k.values + 0.1 * g.values;
  CleanupResult c = cleanup(mix, reg);
  CHECK(c.id == k.id);
  CHECK(c.cosine > 0.99);

  Vector zero = Vector::Zero(16);
  CHECK_THROWS_AS(cleanup(zero, reg), std::runtime_error);
  EntityRegistry empty(16, VecMode::exact, 1);
  CHECK_THROWS_AS(cleanup(k.values, empty), std::runtime_error);
}

TEST_CASE("pair binders have orthonormal rows and transpose pseudo-inverse") {
  for (BinderKind kind :
       {BinderKind::temporal, BinderKind::owner, BinderKind::conj}) {
    PairBinder b = make_pair_binder(kind, 64, 42);
    Matrix id = Matrix::Identity(64, 64);
    CHECK((b.forward * b.pinv - id).norm() < 1e-9);
    CHECK((b.pinv - b.forward.transpose()).norm() == 0.0);
  }
}

TEST_CASE("pair bind/unbind round trips") {
  EntityRegistry reg = make_registry(64, VecMode::exact, 31, 16);
  PairBinder u = make_pair_binder(BinderKind::temporal, 64, 42);
  Vector v = pair_bind(u, reg.at(3).values, reg.at(7).values);
  UnbindResult r = pair_unbind(u, v, reg);
  CHECK(r.next_id == 3);
  CHECK(r.prev_id == 7);

  // repeated element
  Vector w = pair_bind(u, reg.at(5).values, reg.at(5).values);
  UnbindResult rr = pair_unbind(u, w, reg);
  CHECK(rr.next_id == 5);
  CHECK(rr.prev_id == 5);
}

TEST_CASE("pair unbinding: 10k trials, 32 entities, d = 64") {
  // The exhaustive enumeration over registry pairs is the oracle here; the
  // cleanup path must agree on virtually every draw and the fallback must
  // close the rest.
  EntityRegistry reg = make_registry(64, VecMode::exact, 1234, 32);
  PairBinder u = make_pair_binder(BinderKind::temporal, 64, 42);
  Rng rng(777);
  int cleanup_ok = 0, total_ok = 0;
  const int trials = 10000;
  for (int k = 0; k < trials; ++k) {
    int n = rng.uniform_int(0, 31), p = rng.uniform_int(0, 31);
    Vector v = pair_bind(u, reg.at(n).values, reg.at(p).values);
    UnbindResult r = pair_unbind(u, v, reg);
    bool correct = r.next_id == n && r.prev_id == p;
    if (correct) {
      ++total_ok;
      if (!r.used_enumeration) ++cleanup_ok;
    }
  }
  CHECK(cleanup_ok >= 9990);
  CHECK(total_ok == trials);
}

TEST_CASE("pinv-half cosines concentrate near 1/sqrt(2) in sampled mode") {
  EntityRegistry reg = make_registry(256, VecMode::sampled, 55, 32);
  PairBinder u = make_pair_binder(BinderKind::temporal, 256, 42);
  Rng rng(12);
  double sum = 0.0;
  int n_halves = 0;
  for (int k = 0; k < 500; ++k) {
    int n = rng.uniform_int(0, 31), p = rng.uniform_int(0, 31);
    Vector v = pair_bind(u, reg.at(n).values, reg.at(p).values);
    Vector half = (u.pinv * v).head(256);
    sum += cleanup(half, reg).cosine;
    ++n_halves;
  }
  double mean = sum / n_halves;
  CHECK(mean > 0.6);
  CHECK(mean < 0.8);
}

TEST_CASE("direction bank: exact inverses, orthogonal, non-commuting") {
  DirectionBank bank = make_direction_bank(64, 42);
  Matrix id = Matrix::Identity(64, 64);
  CHECK((bank.N * bank.S - id).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((bank.E * bank.W - id).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(3);
  Vector v = random_unit_vector(64, rng);
  CHECK((bank.N * v).norm() == doctest::Approx(v.norm()).epsilon(1e-9));
  CHECK((bank.N * bank.E - bank.E * bank.N).norm() > 0.1);
}

TEST_CASE("position bank: idempotent singular projectors") {
  PositionBank bank = make_position_bank(64, 32, 42);
  Matrix id = Matrix::Identity(64, 64);
  for (int blk = 0; blk < 4; ++blk) {
    const Matrix& m = bank.of(blk);
    CHECK((m * m - m).norm() < 1e-9);
    CHECK((m - id).norm() > 0.1);
    CHECK((m - m.transpose()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(make_position_bank(64, 0, 42), std::runtime_error);
  CHECK_THROWS_AS(make_position_bank(64, 64, 42), std::runtime_error);
}

TEST_CASE("bank construction is bit-identical for a fixed seed") {
  DirectionBank d1 = make_direction_bank(32, 99), d2 = make_direction_bank(32, 99);
  CHECK((d1.N - d2.N).norm() == 0.0);
  CHECK((d1.E - d2.E).norm() == 0.0);
  PositionBank p1 = make_position_bank(32, 16, 99), p2 = make_position_bank(32, 16, 99);
  CHECK((p1.A - p2.A).norm() == 0.0);
  PairBinder b1 = make_pair_binder(BinderKind::conj, 32, 99);
  PairBinder b2 = make_pair_binder(BinderKind::conj, 32, 99);
  CHECK((b1.forward - b2.forward).norm() == 0.0);

  EntityRegistry r1(32, VecMode::exact, 5), r2(32, VecMode::exact, 5);
  for (int i = 0; i < 8; ++i) {
    r1.sample("w" + std::to_string(i));
    r2.sample("w" + std::to_string(i));
  }
  for (int i = 0; i < 8; ++i)
    CHECK((r1.at(i).values - r2.at(i).values).norm() == 0.0);
}

TEST_CASE("aliases share the target vector and are invisible to cleanup") {
  EntityRegistry reg(16, VecMode::exact, 61);
  const auto& mouse = reg.sample("mouse");
  const auto& jessica = reg.set_alias("jessica", "mouse", 7);
  CHECK((jessica.values - mouse.values).norm() == 0.0);
  CleanupResult c = cleanup(mouse.values, reg);
  CHECK(c.id == mouse.id);
  CHECK(c.margin == doctest::Approx(1.0));  // the alias does not compete
}
