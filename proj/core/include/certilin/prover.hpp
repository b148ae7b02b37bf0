#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certilin/blackbox.hpp"
#include "certilin/cost_meter.hpp"
#include "certilin/dense.hpp"
#include "certilin/field.hpp"
#include "certilin/krylov.hpp"
#include "certilin/message.hpp"
#include "certilin/protocol.hpp"
#include "certilin/rng.hpp"

namespace certilin {

// What both parties know before the first message.
struct Statement {
  ProtocolId protocol;
  Field field;
  BlackBox matrix;
  std::string digest;
  // fauv: the public projections. minpoly: a forced projection replacing the
  // Verifier's draw (used to exercise the secondary projection).
  std::optional<std::pair<Vec, Vec>> projection;
};

Statement make_statement(ProtocolId protocol, const Field& F, const BlackBox& A,
                         std::optional<std::pair<Vec, Vec>> projection = std::nullopt);

// The Verifier's view of a Prover: it hands over its own messages and
// asks for the Prover's next one.
class ProverEndpoint {
 public:
  virtual ~ProverEndpoint() = default;
  virtual void receive(const Message& m) = 0;
  virtual Message reply() = 0;
  virtual CostMeter meter() const = 0;
};

enum class Strategy {
  honest,
  wrong_generator,
  wrong_residue,
  forged_bezout,
  wrong_solution,
  degree_pad,
  singular_denial,
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// Honest Prover for every protocol, driven as a state machine by the
/// Verifier's messages. Cheating strategies override the tamper hooks.
class Prover : public ProverEndpoint {
 public:
  explicit Prover(std::uint64_t seed) : rng_(seed) {}
  Prover(const Prover&) = delete;
  Prover& operator=(const Prover&) = delete;

  void start(const Statement& st);

  void receive(const Message& m) override;
  Message reply() override;
  CostMeter meter() const override { return meter_; }

  // Preconditioner tries before giving up.
  static constexpr int kPreconditionerTries = 16;
  static constexpr int kProjectionRetries = 8;
  static constexpr int kSecondaryTries = 64;

 protected:
  struct GeneratorTask {
    BlackBox B;
    Vec u, v;
    bool unit_projection = false;  // u = v = e1
    bool full_degree = false;      // deg H must be n
    WiedemannPair pair;
    Poly H, h, phi, psi;
  };

  virtual void tamper_commitment(GeneratorTask&) {}
  virtual void tamper_bezout(GeneratorTask&) {}
  virtual void tamper_solution(Vec&) {}
  virtual void tamper_claim(Poly&) {}
  virtual void tamper_simple(Poly& /*cB*/, Poly& /*cC*/) {}
  virtual bool deny_singularity() const { return false; }

  const Field& field() const { return *F_; }
  const Statement& statement() const { return *st_; }
  SeededRng& rng() { return rng_; }

 private:
  enum class Step {
    precond_diag,
    precond_gamma,
    precond_simple,
    secondary,
    claim,
    commit,
    bezout,
    solve,
    simple_commit,
    simple_solve,
  };

  Message precondition_diag();
  Message precondition_gamma();
  Message precondition_simple();
  Message secondary();
  Message solve_generator(GeneratorTask& t, Fp r);
  std::optional<Vec> solve_with(const GeneratorTask& t, Fp r, const Poly& f);
  GeneratorTask make_task(BlackBox B, Vec u, Vec v, bool unit_projection, bool full_degree);
  void push_generator_steps();
  Fp take_challenge();

  SeededRng rng_;
  CostMeter meter_;
  std::optional<Statement> st_;
  std::optional<Field> F_;
  std::deque<Step> steps_;
  std::vector<GeneratorTask> tasks_;
  std::size_t current_ = 0;
  std::optional<Fp> challenge_;
  bool awaiting_lambda_ = false;
  std::optional<BlackBox> target_;  // matrix whose determinant is certified
  DenseMatrix simple_B_;
  Poly simple_cB_, simple_cC_;
};

std::unique_ptr<Prover> make_prover(Strategy s, std::uint64_t seed);
inline std::unique_ptr<Prover> adversarial_prover(Strategy s, std::uint64_t seed) {
  return make_prover(s, seed);
}

}  // namespace certilin
