#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "certilin/sms.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace certilin {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "certilin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("certilin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenRoundTripsThroughParser) {
  const CliResult r = cli({"gen", "-n", "2", "--density", "1", "--modulus", "7", "--seed", "1", "--matrix",
                     path("a.sms")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(path("a.sms"));
  const SmsFile f = parse_sms(text);
  EXPECT_EQ(f.modulus, 7u);
  EXPECT_EQ(f.matrix.dim(), 2u);
  EXPECT_EQ(f.matrix.nnz(), 4u);  // density 1 and non-zero values
  EXPECT_EQ(emit_sms(Field(7), f.matrix), text);
}

TEST_F(CliTest, GenIsDeterministic) {
  for (const char* name : {"a.sms", "b.sms"}) {
    ASSERT_EQ(cli({"gen", "-n", "30", "--density", "0.2", "--seed", "9", "--matrix", path(name)}).code, 0);
  }
  EXPECT_EQ(slurp(path("a.sms")), slurp(path("b.sms")));
  cli({"gen", "-n", "30", "--density", "0.2", "--seed", "10", "--matrix", path("c.sms")});
  EXPECT_NE(slurp(path("a.sms")), slurp(path("c.sms")));
}

TEST_F(CliTest, GenNonZeroCountConcentrates) {
  // Binomial(10000, 0.05): mean 500, sd about 21.8.
  for (int seed = 1; seed <= 100; ++seed) {
    const CliResult r = cli({"gen", "-n", "100", "--density", "0.05", "--seed", std::to_string(seed),
                       "--matrix", "-"});
    ASSERT_EQ(r.code, 0);
    const std::size_t nnz = parse_sms(r.out).matrix.nnz();
    EXPECT_GE(nnz, 300u) << seed;
    EXPECT_LE(nnz, 700u) << seed;
  }
}

TEST_F(CliTest, GenRejectsBadDensity) {
  EXPECT_EQ(cli({"gen", "-n", "3", "--density", "0", "--matrix", path("a.sms")}).code, 64);
  EXPECT_EQ(cli({"gen", "-n", "3", "--density", "1.5", "--matrix", path("a.sms")}).code, 64);
}

TEST_F(CliTest, GenUnwritablePath) {
  const CliResult r = cli({"gen", "-n", "3", "--matrix", path("missing/dir/a.sms")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST_F(CliTest, ProveMinpolyOfIdentity) {
  spit(path("id.sms"), "3 3 1000003\n1 1 1\n2 2 1\n3 3 1\n0 0 0\n");
  const CliResult r = cli({"prove", "--protocol", "minpoly", "--matrix", path("id.sms"), "--transcript",
                     path("t.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("result: Accept poly 1000002,1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("field-ops"), std::string::npos);
  EXPECT_NE(r.out.find("matvecs"), std::string::npos);
  EXPECT_NE(r.out.find("elements-sent"), std::string::npos);
}

TEST_F(CliTest, ProveDeterminantMatchesOracle) {
  // Diagonally loaded random matrices are nonsingular for these seeds; the
  // oracle decides which ones to use.
  int checked = 0;
  for (int seed = 1; seed <= 6; ++seed) {
    ASSERT_EQ(cli({"gen", "-n", "10", "--density", "0.4", "--seed", std::to_string(seed), "--matrix",
                   path("a.sms")})
                  .code,
              0);
    const SmsFile f = parse_sms(slurp(path("a.sms")));
    oracle::Matrix M(10, oracle::Row(10, 0));
    for (const auto& e : f.matrix.entries()) M[e.row][e.col] = e.value.v;
    const std::uint64_t det = oracle::det(M, f.modulus);
    if (det == 0) continue;
    ++checked;
    for (const char* proto : {"det-gamma", "det-diag", "det-simple"}) {
      const CliResult r = cli({"prove", "--protocol", proto, "--matrix", path("a.sms"), "--transcript",
                         path("t.txt")});
      ASSERT_EQ(r.code, 0) << proto << r.err;
      EXPECT_NE(r.out.find("result: Accept det " + std::to_string(det) + "\n"), std::string::npos)
          << proto << "\n" << r.out;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST_F(CliTest, FieldTooSmall) {
  ASSERT_EQ(cli({"gen", "-n", "10", "--density", "0.3", "--modulus", "11", "--matrix", path("a.sms")}).code, 0);
  const CliResult r = cli({"prove", "--protocol", "minpoly", "--matrix", path("a.sms"), "--transcript",
                     path("t.txt")});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("requires p ≥ 48"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("t.txt")));
}

TEST_F(CliTest, UnknownProtocolAndFlags) {
  EXPECT_EQ(cli({"prove", "--protocol", "nope", "--matrix", "x", "--transcript", "y"}).code, 64);
  EXPECT_EQ(cli({"frobnicate"}).code, 64);
  EXPECT_EQ(cli({"attack", "--protocol", "fauv", "--strategy", "nope"}).code, 64);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

class ProvedTranscript : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    ASSERT_EQ(cli({"gen", "-n", "12", "--density", "0.3", "--seed", "5", "--matrix", path("a.sms")}).code, 0);
    ASSERT_EQ(cli({"gen", "-n", "12", "--density", "0.3", "--seed", "6", "--matrix", path("b.sms")}).code, 0);
  }

  CliResult prove(const std::string& proto) {
    return cli({"prove", "--protocol", proto, "--matrix", path("a.sms"), "--transcript", path("t.txt")});
  }
};

TEST_F(ProvedTranscript, VerifyRoundTrip) {
  for (const char* proto : {"fauv", "minpoly", "det-diag", "det-gamma", "det-simple", "charpoly"}) {
    const CliResult p = prove(proto);
    ASSERT_EQ(p.code, 0) << proto << p.err;
    const CliResult v = cli({"verify", "--transcript", path("t.txt"), "--matrix", path("a.sms")});
    EXPECT_EQ(v.code, 0) << proto << v.err << v.out;
    EXPECT_EQ(v.out.find("OVER BUDGET"), std::string::npos) << v.out;
    // Same result line on both sides.
    const auto line = [](const std::string& s) {
      const auto at = s.find("result: ");
      return s.substr(at, s.find('\n', at) - at);
    };
    EXPECT_EQ(line(p.out), line(v.out)) << proto;
  }
}

TEST_F(ProvedTranscript, ProveIsDeterministic) {
  ASSERT_EQ(prove("det-gamma").code, 0);
  const std::string first = slurp(path("t.txt"));
  ASSERT_EQ(prove("det-gamma").code, 0);
  EXPECT_EQ(slurp(path("t.txt")), first);
}

TEST_F(ProvedTranscript, CorruptedPayloadByteFails) {
  ASSERT_EQ(prove("det-gamma").code, 0);
  std::string text = slurp(path("t.txt"));
  // Change the first digit of the committed polynomial to a different digit;
  // the value stays a field element, so this reaches the Verifier's checks.
  const auto tag = text.find("prover commitment ");
  ASSERT_NE(tag, std::string::npos) << text;
  const auto at = tag + std::string("prover commitment ").size();
  text[at] = text[at] == '1' ? '2' : '1';
  spit(path("bad.txt"), text);
  const CliResult v = cli({"verify", "--transcript", path("bad.txt"), "--matrix", path("a.sms")});
  EXPECT_EQ(v.code, 1) << v.out << v.err;
}

TEST_F(ProvedTranscript, UnparsableTranscriptFails) {
  ASSERT_EQ(prove("charpoly").code, 0);
  spit(path("bad.txt"), slurp(path("t.txt")) + "garbage\n");
  const CliResult v = cli({"verify", "--transcript", path("bad.txt"), "--matrix", path("a.sms")});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.err.find("line"), std::string::npos) << v.err;
}

TEST_F(ProvedTranscript, DifferentMatrixIsMismatch) {
  ASSERT_EQ(prove("det-gamma").code, 0);
  const CliResult v = cli({"verify", "--transcript", path("t.txt"), "--matrix", path("b.sms")});
  EXPECT_EQ(v.code, 65) << v.err;
}

TEST_F(CliTest, AttackWrongSolutionAlwaysRejected) {
  const CliResult r = cli({"attack", "--protocol", "det-gamma", "--strategy", "wrong_solution", "--trials",
                     "1000", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("rejected=1000\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict=PASS\n"), std::string::npos);
}

TEST_F(CliTest, AttackForgedBezoutIsNonExposing) {
  const CliResult r = cli({"attack", "--protocol", "fauv", "--strategy", "forged_bezout", "--trials", "500"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("non-exposing"), std::string::npos);
  EXPECT_NE(r.out.find("accepted 500 rejected 0"), std::string::npos) << r.out;
}

TEST_F(CliTest, AttackWrongGeneratorPasses) {
  const CliResult r = cli({"attack", "--protocol", "fauv", "--strategy", "wrong_generator", "--trials",
                     "2000", "-n", "10", "--modulus", "1000003", "--format", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict=PASS"), std::string::npos) << r.out;
  EXPECT_EQ(r.out, cli({"attack", "--protocol", "fauv", "--strategy", "wrong_generator", "--trials",
                        "2000", "-n", "10", "--modulus", "1000003", "--format", "kv"})
                       .out);
}

TEST_F(CliTest, AttackSingularDenialNeedsDeterminant) {
  EXPECT_EQ(cli({"attack", "--protocol", "fauv", "--strategy", "singular_denial"}).code, 64);
}

TEST_F(CliTest, BenchGammaRandomness) {
  const CliResult r = cli({"bench", "--protocol", "det-gamma", "--sizes", "10,50,100", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.out;
  for (int i = 0; i < 3; ++i) {
    const std::string k = "row" + std::to_string(i) + ".";
    EXPECT_NE(r.out.find(k + "random_elements=3\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find(k + "status=ok\n"), std::string::npos) << r.out;
  }
}

TEST_F(CliTest, BenchFauvOnIdentity) {
  const CliResult r = cli({"bench", "--protocol", "fauv", "--sizes", "10", "--identity", "--format", "kv"});
  EXPECT_EQ(r.code, 0);
  const auto at = r.out.find("row0.elements=") + std::string("row0.elements=").size();
  EXPECT_LE(std::stoul(r.out.substr(at)), 40u) << r.out;
}

TEST_F(CliTest, BenchDiagRandomness) {
  // 3n draws for D, u, v plus the single merged challenge.
  const CliResult r = cli({"bench", "--protocol", "det-diag", "--sizes", "10", "--format", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("row0.random_elements=31\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SelftestSmallField) {
  const CliResult r = cli({"selftest", "--max-n", "12", "--seeds", "5", "--modulus", "101"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("skip det-gamma n=12: field too small (requires p >= 132)"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, SelftestDefaultField) {
  const CliResult r = cli({"selftest", "--max-n", "8", "--seeds", "10"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("failures 0"), std::string::npos);
}

}  // namespace
}  // namespace certilin
