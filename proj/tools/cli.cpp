#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "certilin/certify.hpp"
#include "certilin/errors.hpp"
#include "certilin/generate.hpp"
#include "certilin/prover.hpp"
#include "certilin/sms.hpp"
#include "harness.hpp"

namespace certilin::cli {
namespace {

struct Options {
  std::size_t n = 10;
  double density = 0.1;
  std::uint64_t modulus = 1000003;
  std::uint64_t seed = 1;
  std::string matrix;
  std::string transcript;
  std::string protocol;
  std::string strategy;
  std::size_t trials = 1000;
  std::vector<std::size_t> sizes;
  std::string format = "text";
  bool identity = false;
  std::size_t max_n = 12;
  std::size_t seeds = 50;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw Error("cannot write " + path);
}

ProtocolId protocol_arg(const std::string& name) {
  auto id = parse_protocol(name);
  if (!id) throw UsageError("unknown protocol '" + name + "'");
  return *id;
}

Strategy strategy_arg(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw UsageError("unknown strategy '" + name + "'");
  return *s;
}

std::optional<std::pair<Vec, Vec>> cli_projection(ProtocolId id, std::size_t n) {
  // The file-based generator certificates use u = v = e1.
  if (id != ProtocolId::fauv && id != ProtocolId::fauv_merged) return std::nullopt;
  return std::make_pair(unit_vector(n, 0), unit_vector(n, 0));
}

int outcome_code(const Outcome& o) {
  if (accepted(o)) return kOk;
  if (bad_challenge(o)) return kBadChallenge;
  return kFailed;
}

void print_meter(std::ostream& out, const char* who, const CostMeter& m) {
  out << who << ": field-ops " << m.field_ops() << " matvecs " << m.matvec << " elements-sent "
      << m.elements_sent << " random " << m.random_draws << "\n";
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string opt_text(const std::optional<std::uint64_t>& x) {
  return x ? std::to_string(*x) : std::string("-");
}

int cmd_gen(const Options& o, std::ostream& out) {
  const Field F(o.modulus);
  SeededRng rng(o.seed);
  const SparseMatrix m = random_sparse(F, o.n, o.density, rng);
  write_file(o.matrix, emit_sms(F, m), out);
  return kOk;
}

int cmd_prove(const Options& o, std::ostream& out) {
  const ProtocolId id = protocol_arg(o.protocol);
  const SmsFile file = parse_sms(read_file(o.matrix));
  const Field F(file.modulus);
  const std::size_t n = file.matrix.dim();
  check_field_size(id, n, F.modulus());
  auto prover = make_prover(Strategy::honest, o.seed);
  const RunResult r = fiat_shamir(make_statement(id, F, file.matrix, cli_projection(id, n)), *prover);
  write_file(o.transcript, r.transcript.to_text(), out);
  out << "protocol " << protocol_name(id) << " n " << n << " p " << F.modulus() << "\n";
  out << "result: " << outcome_text(r.outcome) << "\n";
  print_meter(out, "prover", r.transcript.prover_meter);
  print_meter(out, "verifier", r.transcript.verifier_meter);
  return outcome_code(r.outcome);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Transcript t = Transcript::parse(read_file(o.transcript));
  const SmsFile file = parse_sms(read_file(o.matrix));
  const Field F(file.modulus);
  const BlackBox A(file.matrix);
  const RunResult r = verify_noninteractive(t, F, A);
  const CostMeter& vm = r.transcript.verifier_meter;
  const Budget b = verifier_budget(t.protocol, t.n, A.matvec_cost());
  const std::uint64_t elements = r.transcript.prover_meter.elements_sent;
  out << "protocol " << protocol_name(t.protocol) << " n " << t.n << " p " << t.p << "\n";
  out << "result: " << outcome_text(r.outcome) << "\n";
  print_meter(out, "verifier", vm);
  auto line = [&out](const char* what, std::uint64_t used, const std::optional<std::uint64_t>& cap) {
    out << what << " " << used << " budget " << opt_text(cap);
    if (cap) out << (used <= *cap ? " ok" : " OVER BUDGET");
    out << "\n";
  };
  line("verifier-field-ops", vm.field_ops(), b.field_ops);
  line("prover-elements", elements, b.elements);
  return outcome_code(r.outcome);
}

int cmd_attack(const Options& o, std::ostream& out) {
  harness::AttackConfig cfg;
  cfg.protocol = protocol_arg(o.protocol);
  cfg.strategy = strategy_arg(o.strategy);
  cfg.trials = o.trials;
  cfg.n = o.n;
  cfg.modulus = o.modulus;
  cfg.seed = o.seed;
  const harness::AttackReport r = harness::run_attack(cfg);
  const bool kv = o.format == "kv";
  const char* rate_name = r.bound.non_exposing ? "acceptance-rate" : "rejection-rate";
  if (kv) {
    out << "protocol=" << protocol_name(cfg.protocol) << "\n"
        << "strategy=" << strategy_name(cfg.strategy) << "\n"
        << "kind=" << (r.bound.non_exposing ? "non-exposing" : "exposing") << "\n"
        << "n=" << cfg.n << "\np=" << cfg.modulus << "\ntrials=" << cfg.trials << "\n"
        << "accepted=" << r.accepted << "\nrejected=" << r.rejected
        << "\nbad_challenge=" << r.bad_challenge << "\n"
        << rate_name << "=" << fixed(r.rate) << "\n"
        << "bound=" << fixed(r.bound.value) << "\nsigma=" << fixed(r.sigma) << "\n"
        << "verdict=" << (r.pass ? "PASS" : "FAIL") << "\n";
  } else {
    out << "attack " << protocol_name(cfg.protocol) << " " << strategy_name(cfg.strategy)
        << " n=" << cfg.n << " p=" << cfg.modulus << " trials=" << cfg.trials << "\n";
    if (r.bound.non_exposing) {
      out << "strategy is non-exposing: the certified claim stays true, so no run may be rejected\n";
    }
    out << "accepted " << r.accepted << " rejected " << r.rejected << " bad-challenge "
        << r.bad_challenge << "\n";
    out << rate_name << " " << fixed(r.rate) << "\n";
    out << "bound " << fixed(r.bound.value) << " = " << r.bound.formula << "\n";
    out << "sigma " << fixed(r.sigma) << "\n";
    out << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return r.pass ? kOk : kFailed;
}

int cmd_bench(const Options& o, std::ostream& out) {
  harness::BenchConfig cfg;
  cfg.protocol = protocol_arg(o.protocol);
  cfg.sizes = o.sizes;
  cfg.modulus = o.modulus;
  cfg.seed = o.seed;
  cfg.density = o.density;
  cfg.identity = o.identity;
  const auto rows = harness::run_bench(cfg);
  bool ok = true;
  if (o.format == "kv") {
    out << "protocol=" << protocol_name(cfg.protocol) << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      const std::string k = "row" + std::to_string(i) + ".";
      out << k << "n=" << r.n << "\n" << k << "nnz=" << r.nnz << "\n" << k << "mu=" << r.mu << "\n";
      if (!r.skipped.empty()) {
        out << k << "skipped=" << r.skipped << "\n";
        continue;
      }
      out << k << "outcome=" << r.outcome << "\n"
          << k << "verifier_ops=" << r.verifier_ops << "\n"
          << k << "ops_budget=" << opt_text(r.ops_budget) << "\n"
          << k << "elements=" << r.elements << "\n"
          << k << "elements_budget=" << opt_text(r.elements_budget) << "\n"
          << k << "random_elements=" << r.random_elements << "\n"
          << k << "prover_matvecs=" << r.prover_matvecs << "\n"
          << k << "status=" << (r.within_budget() ? "ok" : "OVER") << "\n";
      ok = ok && r.within_budget();
    }
  } else {
    out << "protocol " << protocol_name(cfg.protocol) << " p=" << cfg.modulus << "\n";
    out << std::left << std::setw(6) << "n" << std::setw(8) << "nnz" << std::setw(12) << "v-ops"
        << std::setw(12) << "ops-budget" << std::setw(10) << "elements" << std::setw(10)
        << "el-budget" << std::setw(8) << "random" << "status\n";
    for (const auto& r : rows) {
      out << std::setw(6) << r.n << std::setw(8) << r.nnz;
      if (!r.skipped.empty()) {
        out << "skipped: " << r.skipped << "\n";
        continue;
      }
      out << std::setw(12) << r.verifier_ops << std::setw(12) << opt_text(r.ops_budget)
          << std::setw(10) << r.elements << std::setw(10) << opt_text(r.elements_budget)
          << std::setw(8) << r.random_elements << (r.within_budget() ? "ok" : "OVER") << "  "
          << r.outcome << "\n";
      ok = ok && r.within_budget();
    }
  }
  return ok ? kOk : kFailed;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  harness::SelftestConfig cfg;
  cfg.max_n = o.max_n;
  cfg.seeds = o.seeds;
  cfg.modulus = o.modulus;
  cfg.seed = o.seed;
  const harness::SelftestReport r = harness::run_selftest(cfg);
  for (const auto& note : r.notes) out << "note: " << note << "\n";
  for (const auto& p : r.problems) out << "FAIL: " << p << "\n";
  out << "sessions " << r.sessions << " accepts " << r.accepts << " bad-challenges "
      << r.bad_challenges << " failures " << r.failures << "\n";
  out << (r.pass() ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"certilin: interactive certificates for sparse linear algebra over Z_p"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a random sparse matrix file");
  gen->add_option("-n", o.n, "dimension")->required();
  gen->add_option("--density", o.density, "probability of a non-zero entry")->capture_default_str();
  gen->add_option("--modulus", o.modulus, "prime modulus")->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--matrix", o.matrix, "output path, - for stdout")->required();

  auto* prove = app.add_subcommand("prove", "run a protocol non-interactively and save the transcript");
  prove->add_option("--protocol", o.protocol)->required();
  prove->add_option("--matrix", o.matrix)->required();
  prove->add_option("--seed", o.seed, "prover randomness")->capture_default_str();
  prove->add_option("--transcript", o.transcript, "output path, - for stdout")->required();

  auto* verify = app.add_subcommand("verify", "replay the Verifier over a transcript");
  verify->add_option("--transcript", o.transcript)->required();
  verify->add_option("--matrix", o.matrix)->required();

  auto* attack = app.add_subcommand("attack", "measure rejection of an adversarial prover");
  attack->add_option("--protocol", o.protocol)->required();
  attack->add_option("--strategy", o.strategy)->required();
  attack->add_option("--trials", o.trials)->capture_default_str();
  attack->add_option("-n", o.n)->capture_default_str();
  attack->add_option("--modulus", o.modulus)->capture_default_str();
  attack->add_option("--seed", o.seed)->capture_default_str();
  attack->add_option("--format", o.format)->check(CLI::IsMember({"text", "kv"}));

  auto* bench = app.add_subcommand("bench", "verifier cost against the budgets");
  bench->add_option("--protocol", o.protocol)->required();
  bench->add_option("--sizes", o.sizes)->delimiter(',')->required();
  bench->add_option("--modulus", o.modulus)->capture_default_str();
  bench->add_option("--seed", o.seed)->capture_default_str();
  bench->add_option("--density", o.density)->capture_default_str();
  bench->add_flag("--identity", o.identity, "use the identity matrix");
  bench->add_option("--format", o.format)->check(CLI::IsMember({"text", "kv"}));

  auto* selftest = app.add_subcommand("selftest", "compare every protocol against dense oracles");
  selftest->add_option("--max-n", o.max_n)->capture_default_str();
  selftest->add_option("--seeds", o.seeds)->capture_default_str();
  selftest->add_option("--modulus", o.modulus)->capture_default_str();
  selftest->add_option("--seed", o.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*prove) return cmd_prove(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*attack) return cmd_attack(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*selftest) return cmd_selftest(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StatementMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace certilin::cli
