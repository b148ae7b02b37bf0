#include "certilin/blackbox.hpp"

#include "certilin/dense.hpp"
#include "certilin/errors.hpp"
#include "certilin/generate.hpp"
#include "certilin/sms.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace certilin {
namespace {

oracle::Matrix to_oracle(const DenseMatrix& M) {
  oracle::Matrix out(M.rows(), oracle::Row(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = M.at(i, j).v;
  }
  return out;
}

SparseMatrix swap2(const Field& F) { return SparseMatrix(F, 2, {{0, 1, Fp{1}}, {1, 0, Fp{1}}}); }

TEST(SparseMatrixTest, NormalizesEntries) {
  Field F(7);
  const SparseMatrix m(F, 2, {{1, 1, Fp{3}}, {0, 0, Fp{2}}, {1, 1, Fp{4}}, {0, 1, Fp{0}}});
  ASSERT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.entries()[0], (SparseEntry{0, 0, Fp{2}}));
  EXPECT_THROW(SparseMatrix(F, 2, {{2, 0, Fp{1}}}), UsageError);
}

TEST(BlackBoxTest, Matvec) {
  Field F(7);
  const Vec x{Fp{3}, Fp{4}, Fp{5}};
  EXPECT_EQ(BlackBox(SparseMatrix::identity(3)).apply(F, x), x);

  const Vec y = BlackBox::gamma({2, Fp{3}, Fp{2}}).apply(F, Vec{Fp{1}, Fp{1}});
  EXPECT_EQ(y, (Vec{Fp{1}, Fp{5}}));

  const BlackBox A(swap2(F));
  const Vec ax = A.apply(F, Vec{Fp{2}, Fp{3}});
  const Vec sx = BlackBox::shift(Fp{0}, A).apply(F, Vec{Fp{2}, Fp{3}});
  EXPECT_EQ(sx, (Vec{F.neg(ax[0]), F.neg(ax[1])}));
  EXPECT_THROW(A.apply(F, Vec{Fp{1}}), UsageError);
}

TEST(BlackBoxTest, CompositionMatchesDenseProduct) {
  const std::uint64_t p = 1000003;
  Field F(p);
  SeededRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(7);
    const BlackBox A(random_sparse(F, n, 0.4, rng));
    Vec d(n);
    for (auto& x : d) x = F.sample_nonzero(rng);
    const GammaMatrix G{n, F.sample(rng), F.sample(rng)};
    const Fp r = F.sample(rng);
    const BlackBox M = BlackBox::shift(
        r, BlackBox::product(BlackBox::diagonal(d), BlackBox::product(A, BlackBox::gamma(G))));

    const auto a = to_oracle(DenseMatrix::materialize(F, A));
    const auto g = to_oracle(DenseMatrix::materialize(F, BlackBox::gamma(G)));
    oracle::Matrix dd(n, oracle::Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) dd[i][i] = d[i].v;
    auto expected = oracle::mat_mul(dd, oracle::mat_mul(a, g, p), p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        expected[i][j] = oracle::submod(i == j ? r.v : 0, expected[i][j], p);
      }
    }
    EXPECT_EQ(to_oracle(DenseMatrix::materialize(F, M)), expected);
  }
}

TEST(BlackBoxTest, GammaLayout) {
  Field F(101);
  const auto g = DenseMatrix::materialize(F, BlackBox::gamma({3, Fp{9}, Fp{4}}));
  const oracle::Matrix expected{{4, 100, 0}, {0, 4, 100}, {9, 0, 4}};
  EXPECT_EQ(to_oracle(g), expected);
}

TEST(BlackBoxTest, MatvecCostCharged) {
  const Field F0(1000003);
  SeededRng rng(8);
  const BlackBox A(random_sparse(F0, 12, 0.3, rng));
  const BlackBox M = BlackBox::shift(Fp{5}, BlackBox::product(A, BlackBox::gamma({12, Fp{2}, Fp{3}})));
  for (const BlackBox& B : {A, M}) {
    CostMeter m;
    const Field F = F0.metered(&m);
    B.apply(F, F0.sample_vector(rng, 12));
    EXPECT_EQ(m.field_ops(), B.matvec_cost());
    EXPECT_EQ(m.matvec, 1u);
  }
  const auto& sparse = std::get<SparseMatrix>(A.node());
  EXPECT_EQ(A.matvec_cost(), 2 * sparse.nnz());
  EXPECT_LE(BlackBox::gamma({12, Fp{2}, Fp{3}}).matvec_cost(), 3u * 12);
}

TEST(GammaDetTest, Examples) {
  Field F101(101);
  EXPECT_EQ(gamma_det(F101, {2, Fp{5}, Fp{0}}), Fp{5});
  EXPECT_EQ(gamma_det(F101, {2, Fp{100}, Fp{1}}), Fp{0});
  Field F7(7);
  EXPECT_EQ(gamma_det(F7, {3, Fp{1}, Fp{2}}), Fp{2});
  const auto g = to_oracle(DenseMatrix::materialize(F7, BlackBox::gamma({3, Fp{1}, Fp{2}})));
  EXPECT_EQ(oracle::cofactor_det(g, 7), 2u);
}

TEST(GammaDetTest, MatchesDenseDeterminant) {
  const std::uint64_t p = 1000003;
  Field F(p);
  SeededRng rng(2);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const GammaMatrix G{n, F.sample(rng), F.sample(rng)};
      const auto g = to_oracle(DenseMatrix::materialize(F, BlackBox::gamma(G)));
      EXPECT_EQ(gamma_det(F, G).v, oracle::det(g, p));
    }
  }
}

TEST(SmsTest, ParseExamples) {
  const SmsFile id = parse_sms("2 2 7\n1 1 1\n2 2 1\n0 0 0\n");
  EXPECT_EQ(id.modulus, 7u);
  EXPECT_EQ(id.matrix, SparseMatrix::identity(2));
  const SmsFile dup = parse_sms("2 2 7\n1 1 3\n1 1 4\n0 0 0\n");
  EXPECT_EQ(dup.matrix.nnz(), 0u);
  const SmsFile neg = parse_sms("1 1 7\n1 1 -1\n0 0 0\n");
  EXPECT_EQ(neg.matrix.entries()[0].value, Fp{6});
}

TEST(SmsTest, ParseErrors) {
  EXPECT_THROW(parse_sms("2 3 7\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_sms("2 2 7\n1 1 1\n"), ParseError);
  EXPECT_THROW(parse_sms("2 2 7\n3 1 1\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_sms("2 2 8\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_sms("2 2 7\n0 0 0\n1 1 1\n"), ParseError);
  try {
    parse_sms("2 2 7\n1 1 1\n1 x 1\n0 0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SmsTest, EmitParseRoundTrip) {
  const std::uint64_t p = 1000003;
  Field F(p);
  SeededRng rng(12);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.uniform_below(50);
    const SparseMatrix m = random_sparse(F, n, 0.1, rng);
    const std::string text = emit_sms(F, m);
    const SmsFile back = parse_sms(text);
    EXPECT_EQ(back.modulus, p);
    EXPECT_EQ(back.matrix, m);
    EXPECT_EQ(emit_sms(F, back.matrix), text);
  }
}

TEST(SmsTest, DigestSeparatesMatrices) {
  Field F(7);
  EXPECT_NE(matrix_digest(F, SparseMatrix::identity(2)), matrix_digest(F, swap2(F)));
  EXPECT_EQ(matrix_digest(F, SparseMatrix::identity(2)).size(), 64u);
}

TEST(GenerateTest, DeterministicAndDense) {
  Field F(1000003);
  SeededRng a(7), b(7);
  EXPECT_EQ(random_sparse(F, 20, 0.2, a), random_sparse(F, 20, 0.2, b));
  SeededRng c(1);
  EXPECT_EQ(random_sparse(F, 5, 1.0, c).nnz(), 25u);
  EXPECT_THROW(random_sparse(F, 5, 0.0, c), UsageError);
}

}  // namespace
}  // namespace certilin
