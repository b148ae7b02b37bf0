#include "certilin/certify.hpp"

#include "certilin/dense.hpp"
#include "certilin/errors.hpp"
#include "certilin/generate.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace certilin {
namespace {

constexpr std::uint64_t kP = 1000003;

Poly P(std::initializer_list<std::uint64_t> c) {
  std::vector<Fp> v;
  for (auto x : c) v.push_back(Fp{x});
  return Poly(std::move(v));
}

oracle::Matrix to_oracle(const Field& F, const BlackBox& A) {
  const DenseMatrix d = DenseMatrix::materialize(F, A);
  oracle::Matrix m(d.rows(), oracle::Row(d.cols()));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) m[i][j] = d.at(i, j).v;
  }
  return m;
}

oracle::Coeffs raw(const Poly& f) {
  oracle::Coeffs c;
  for (Fp x : f.coeffs()) c.push_back(x.v);
  return c;
}

SparseMatrix diagonal(const Field& F, std::initializer_list<std::uint64_t> d) {
  std::vector<SparseEntry> e;
  std::size_t i = 0;
  for (auto x : d) e.push_back({i, i, F.from_u64(x)}), ++i;
  return SparseMatrix(F, d.size(), std::move(e));
}

SparseMatrix nonsingular(const Field& F, std::size_t n, SeededRng& rng) {
  while (true) {
    SparseMatrix m = random_sparse(F, n, 0.3, rng);
    if (!dense::det(F, DenseMatrix::from_sparse(m)).is_zero()) return m;
  }
}

const Poly& accepted_poly(const RunResult& r) { return std::get<Poly>(std::get<Accept>(r.outcome).result); }
Fp accepted_det(const RunResult& r) { return std::get<Fp>(std::get<Accept>(r.outcome).result); }

TEST(FauvTest, SwapMatrix) {
  Field F(kP);
  const BlackBox A(SparseMatrix(F, 2, {{0, 1, Fp{1}}, {1, 0, Fp{1}}}));
  const Vec e1 = unit_vector(2, 0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Prover prover(seed);
    const auto r = cert_fauv(F, A, e1, e1, prover, seed);
    if (bad_challenge(r.outcome)) continue;
    EXPECT_EQ(accepted_poly(r), P({kP - 1, 0, 1}));
    EXPECT_EQ(raw(accepted_poly(r)), oracle::minpoly(to_oracle(F, A), kP));
  }
}

TEST(FauvTest, MergedSmallCases) {
  Field F(kP);
  const Vec e1 = unit_vector(3, 0);
  Prover prover(1);
  EXPECT_EQ(accepted_poly(cert_fauv_merged(F, BlackBox(SparseMatrix::identity(3)), e1, e1, prover, 1)),
            P({kP - 1, 1}));
  EXPECT_EQ(accepted_poly(cert_fauv_merged(F, BlackBox(SparseMatrix::zero(3)), e1, e1, prover, 2)),
            P({0, 1}));
}

TEST(FauvTest, FakedProperDivisorIsRejected) {
  Field F(kP);
  const BlackBox A(SparseMatrix(F, 2, {{0, 1, Fp{1}}, {1, 0, Fp{1}}}));
  const Vec e1 = unit_vector(2, 0);
  int rejected_count = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto prover = adversarial_prover(Strategy::wrong_generator, seed);
    rejected_count += rejected(cert_fauv(F, A, e1, e1, *prover, seed).outcome);
  }
  EXPECT_EQ(rejected_count, 200);
}

TEST(FauvTest, FieldTooSmall) {
  Field F(11);
  const BlackBox A(SparseMatrix::identity(4));
  const Vec e1 = unit_vector(4, 0);
  Prover prover(1);
  try {
    cert_fauv(F, A, e1, e1, prover, 1);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.required_modulus(), 12u);
    EXPECT_NE(std::string(e.what()).find("requires p ≥ 12"), std::string::npos);
  }
  EXPECT_EQ(required_modulus(ProtocolId::minpoly, 10), 48u);
  EXPECT_EQ(required_modulus(ProtocolId::det_gamma, 12), 132u);
  EXPECT_EQ(required_modulus(ProtocolId::det_diag, 12), 66u);
  EXPECT_EQ(required_modulus(ProtocolId::det_diag, 5), 23u);
}

TEST(MinpolyTest, DiagonalAndIdentity) {
  Field F(kP);
  Prover prover(3);
  const auto r = cert_minpoly(F, BlackBox(diagonal(F, {1, 2, 3})), prover, 3, false);
  // x^3 - 6x^2 + 11x - 6
  EXPECT_EQ(accepted_poly(r), P({kP - 6, 11, kP - 6, 1}));
  const auto id = cert_minpoly(F, BlackBox(SparseMatrix::identity(5)), prover, 4, false);
  EXPECT_EQ(accepted_poly(id), P({kP - 1, 1}));
}

TEST(MinpolyTest, SecondaryProjectionRecoversFullMinpoly) {
  Field F(kP);
  const BlackBox A(diagonal(F, {1, 1, 2}));
  const Vec e1 = unit_vector(3, 0);
  Prover prover(5);
  const auto r = cert_minpoly(F, A, prover, 5, true, std::make_pair(e1, e1));
  ASSERT_TRUE(accepted(r.outcome)) << outcome_text(r.outcome);
  EXPECT_EQ(accepted_poly(r), P({2, kP - 3, 1}));
  EXPECT_EQ(raw(accepted_poly(r)), oracle::minpoly(to_oracle(F, A), kP));
  // The plain protocol certifies only the projected generator.
  const auto plain = cert_minpoly(F, A, prover, 5, false, std::make_pair(e1, e1));
  EXPECT_EQ(accepted_poly(plain), P({kP - 1, 1}));
}

TEST(MinpolyTest, MatchesOracle) {
  Field F(kP);
  SeededRng rng(8);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + rng.uniform_below(9);
    const BlackBox A(random_sparse(F, n, 0.25, rng));
    Prover prover(seed);
    const auto r = cert_minpoly(F, A, prover, seed, true);
    ASSERT_TRUE(accepted(r.outcome)) << outcome_text(r.outcome);
    EXPECT_EQ(raw(accepted_poly(r)), oracle::minpoly(to_oracle(F, A), kP));
  }
}

TEST(DetTest, IdentityAndSign) {
  Field F(kP);
  Prover prover(2);
  EXPECT_EQ(accepted_det(cert_det_diag(F, BlackBox(SparseMatrix::identity(2)), prover, 1)), Fp{1});
  EXPECT_EQ(accepted_det(cert_det_gamma(F, BlackBox(SparseMatrix::identity(2)), prover, 1)), Fp{1});
  Field F101(101);
  EXPECT_EQ(accepted_det(cert_simple_det(F101, SparseMatrix::identity(2), prover, 1)), Fp{1});
  // Both parities of n against the oracle.
  for (std::size_t n : {3u, 4u, 5u}) {
    const SparseMatrix D = diagonal(F, {2, 3, 5, 7, 11});
    std::vector<SparseEntry> e(D.entries().begin(), D.entries().begin() + n);
    const BlackBox A(SparseMatrix(F, n, e));
    const std::uint64_t expected = oracle::det(to_oracle(F, A), kP);
    EXPECT_EQ(accepted_det(cert_det_diag(F, A, prover, n)).v, expected);
    EXPECT_EQ(accepted_det(cert_det_gamma(F, A, prover, n)).v, expected);
    EXPECT_EQ(accepted_det(cert_simple_det(F, SparseMatrix(F, n, e), prover, n)).v, expected);
  }
}

TEST(DetTest, RandomNonsingularMatchesOracle) {
  Field F(kP);
  SeededRng rng(10);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SparseMatrix m = nonsingular(F, 10, rng);
    const std::uint64_t expected = oracle::det(to_oracle(F, BlackBox(m)), kP);
    Prover prover(seed);
    for (const auto& r : {cert_det_diag(F, BlackBox(m), prover, seed),
                          cert_det_gamma(F, BlackBox(m), prover, seed),
                          cert_simple_det(F, m, prover, seed)}) {
      if (bad_challenge(r.outcome)) continue;
      ASSERT_TRUE(accepted(r.outcome)) << outcome_text(r.outcome);
      EXPECT_EQ(accepted_det(r).v, expected);
    }
  }
}

TEST(DetTest, SingularMatricesYieldKernelWitness) {
  Field F(kP);
  SeededRng rng(21);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + rng.uniform_below(8);
    // Duplicate a row to force singularity.
    std::vector<SparseEntry> e;
    const SparseMatrix base = random_sparse(F, n, 0.4, rng);
    for (const auto& x : base.entries()) {
      if (x.row != n - 1) e.push_back(x);
      if (x.row == 0) e.push_back({n - 1, x.col, x.value});
    }
    const SparseMatrix m(F, n, e);
    Prover prover(seed);
    for (const auto& r : {cert_det_diag(F, BlackBox(m), prover, seed),
                          cert_det_gamma(F, BlackBox(m), prover, seed),
                          cert_simple_det(F, m, prover, seed)}) {
      ASSERT_TRUE(accepted(r.outcome)) << outcome_text(r.outcome);
      const auto& s = std::get<Singular>(std::get<Accept>(r.outcome).result);
      EXPECT_FALSE(is_zero_vector(s.witness));
      EXPECT_TRUE(is_zero_vector(BlackBox(m).apply(F, s.witness)));
    }
  }
  Prover prover(1);
  const auto zero = cert_det_gamma(F, BlackBox(SparseMatrix::zero(4)), prover, 1);
  EXPECT_TRUE(std::holds_alternative<Singular>(std::get<Accept>(zero.outcome).result));
}

TEST(DetTest, GammaRandomnessAndCommunication) {
  Field F(kP);
  SeededRng rng(4);
  const std::size_t n = 10;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SparseMatrix m = nonsingular(F, n, rng);
    Prover prover(seed);
    const auto r = cert_det_gamma(F, BlackBox(m), prover, seed);
    if (!accepted(r.outcome)) continue;
    const auto& t = r.transcript;
    // One preconditioner try is the common case; each try costs two draws.
    EXPECT_EQ(t.prover_meter.random_draws % 2, 0u);
    EXPECT_EQ(t.verifier_meter.random_draws, 1u);
    EXPECT_EQ(t.prover_meter.elements_sent, 5 * n);
    const Budget b = verifier_budget(ProtocolId::det_gamma, n, BlackBox(m).matvec_cost());
    EXPECT_LE(t.verifier_meter.field_ops(), *b.field_ops);
  }
}

TEST(CharpolyTest, Examples) {
  Field F(kP);
  Prover prover(6);
  const auto r = cert_charpoly(F, BlackBox(diagonal(F, {1, 2})), prover, 6);
  EXPECT_EQ(accepted_poly(r), P({2, kP - 3, 1}));
  const auto id = cert_charpoly(F, BlackBox(SparseMatrix::identity(4)), prover, 7);
  // (x - 1)^4
  EXPECT_EQ(accepted_poly(id), P({1, kP - 4, 6, kP - 4, 1}));
}

TEST(CharpolyTest, MatchesOracleAndRejectsWrongClaim) {
  Field F(kP);
  SeededRng rng(13);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + rng.uniform_below(8);
    const BlackBox A(random_sparse(F, n, 0.3, rng));
    Prover prover(seed);
    const auto r = cert_charpoly(F, A, prover, seed);
    if (bad_challenge(r.outcome)) continue;
    ASSERT_TRUE(accepted(r.outcome)) << outcome_text(r.outcome);
    EXPECT_EQ(raw(accepted_poly(r)), oracle::charpoly(to_oracle(F, A), kP));
    auto liar = adversarial_prover(Strategy::wrong_generator, seed);
    EXPECT_TRUE(rejected(cert_charpoly(F, A, *liar, seed).outcome));
  }
}

TEST(AdversaryTest, StrategiesAgainstFauv) {
  Field F(kP);
  SeededRng rng(99);
  const std::size_t n = 8;
  for (Strategy s : {Strategy::wrong_generator, Strategy::wrong_residue, Strategy::wrong_solution,
                     Strategy::degree_pad}) {
    int rejects = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const BlackBox A(random_sparse(F, n, 0.3, rng));
      const Vec u = F.sample_vector(rng, n), v = F.sample_vector(rng, n);
      auto prover = adversarial_prover(s, seed);
      rejects += rejected(cert_fauv(F, A, u, v, *prover, seed).outcome);
    }
    EXPECT_EQ(rejects, 100) << strategy_name(s);
  }
}

TEST(AdversaryTest, ForgedBezoutIsNonExposing) {
  Field F(kP);
  SeededRng rng(98);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BlackBox A(random_sparse(F, 6, 0.4, rng));
    const Vec e1 = unit_vector(6, 0);
    auto prover = adversarial_prover(Strategy::forged_bezout, seed);
    const auto r = cert_fauv(F, A, e1, e1, *prover, seed);
    EXPECT_FALSE(rejected(r.outcome)) << outcome_text(r.outcome);
  }
}

TEST(AdversaryTest, SingularDenialAndSimpleDet) {
  Field F(kP);
  SeededRng rng(97);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SparseMatrix base = random_sparse(F, 6, 0.5, rng);
    std::vector<SparseEntry> e;
    for (const auto& x : base.entries()) {
      if (x.col != 5) e.push_back(x);
    }
    const SparseMatrix m(F, 6, e);  // last column zero
    auto denier = adversarial_prover(Strategy::singular_denial, seed);
    EXPECT_TRUE(rejected(cert_det_gamma(F, BlackBox(m), *denier, seed).outcome));
    EXPECT_TRUE(rejected(cert_det_diag(F, BlackBox(m), *denier, seed).outcome));
    EXPECT_TRUE(rejected(cert_simple_det(F, m, *denier, seed).outcome));

    const SparseMatrix good = nonsingular(F, 6, rng);
    auto liar = adversarial_prover(Strategy::wrong_generator, seed);
    EXPECT_TRUE(rejected(cert_simple_det(F, good, *liar, seed).outcome));
    auto solver = adversarial_prover(Strategy::wrong_solution, seed);
    EXPECT_TRUE(rejected(cert_det_gamma(F, BlackBox(good), *solver, seed).outcome));
  }
}

TEST(AdversaryTest, StrategyNames) {
  for (const char* name : {"honest", "wrong_generator", "wrong_residue", "forged_bezout",
                           "wrong_solution", "degree_pad", "singular_denial"}) {
    const auto s = parse_strategy(name);
    ASSERT_TRUE(s.has_value()) << name;
    EXPECT_EQ(strategy_name(*s), name);
  }
  EXPECT_FALSE(parse_strategy("lazy").has_value());
}

TEST(BudgetTest, HonestRunsWithinBudget) {
  Field F(kP);
  SeededRng rng(64);
  for (std::size_t n : {10u, 50u}) {
    const SparseMatrix m = random_sparse(F, n, 0.1, rng);
    const BlackBox A(m);
    const std::uint64_t mu = A.matvec_cost();
    const Vec u = F.sample_vector(rng, n), v = F.sample_vector(rng, n);
    Prover prover(n);
    const std::vector<std::pair<ProtocolId, RunResult>> runs{
        {ProtocolId::fauv, cert_fauv(F, A, u, v, prover, 1)},
        {ProtocolId::fauv_merged, cert_fauv_merged(F, A, u, v, prover, 2)},
        {ProtocolId::minpoly, cert_minpoly(F, A, prover, 3, false)},
        {ProtocolId::det_diag, cert_det_diag(F, A, prover, 4)},
        {ProtocolId::det_gamma, cert_det_gamma(F, A, prover, 5)},
        {ProtocolId::charpoly, cert_charpoly(F, A, prover, 6)},
    };
    for (const auto& [id, r] : runs) {
      ASSERT_TRUE(accepted(r.outcome)) << protocol_name(id) << " " << outcome_text(r.outcome);
      const Budget b = verifier_budget(id, n, mu);
      EXPECT_LE(r.transcript.verifier_meter.field_ops(), *b.field_ops) << protocol_name(id);
      EXPECT_LE(r.transcript.prover_meter.elements_sent, *b.elements) << protocol_name(id);
    }
  }
}

}  // namespace
}  // namespace certilin
