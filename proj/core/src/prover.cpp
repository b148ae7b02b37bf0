#include "certilin/prover.hpp"

#include <array>
#include <functional>

#include "certilin/errors.hpp"
#include "certilin/hash.hpp"

namespace certilin {
namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 7> kStrategies{{
    {Strategy::honest, "honest"},
    {Strategy::wrong_generator, "wrong_generator"},
    {Strategy::wrong_residue, "wrong_residue"},
    {Strategy::forged_bezout, "forged_bezout"},
    {Strategy::wrong_solution, "wrong_solution"},
    {Strategy::degree_pad, "degree_pad"},
    {Strategy::singular_denial, "singular_denial"},
}};

// f / x for f with f(0) = 0.
Poly divide_by_x(const Poly& f) {
  std::vector<Fp> c(f.coeffs().begin() + 1, f.coeffs().end());
  return Poly(std::move(c));
}

}  // namespace

std::string_view strategy_name(Strategy s) {
  for (const auto& [k, name] : kStrategies) {
    if (k == s) return name;
  }
  throw UsageError("unknown strategy");
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [k, s] : kStrategies) {
    if (s == name) return k;
  }
  return std::nullopt;
}

Statement make_statement(ProtocolId protocol, const Field& F, const BlackBox& A,
                         std::optional<std::pair<Vec, Vec>> projection) {
  if (projection && (projection->first.size() != A.dim() || projection->second.size() != A.dim())) {
    throw UsageError("projection dimension mismatch");
  }
  return Statement{protocol, F.unmetered(), A, sha256_hex(A.describe(F)), std::move(projection)};
}

void Prover::start(const Statement& st) {
  st_.emplace(st);
  F_.emplace(st.field.metered(&meter_));
  meter_ = CostMeter{};
  steps_.clear();
  tasks_.clear();
  current_ = 0;
  challenge_.reset();
  awaiting_lambda_ = false;
  target_.emplace(st.matrix);
  switch (st.protocol) {
    case ProtocolId::det_diag:
      steps_.push_back(Step::precond_diag);
      break;
    case ProtocolId::det_gamma:
      steps_.push_back(Step::precond_gamma);
      break;
    case ProtocolId::det_simple:
      steps_.push_back(Step::precond_simple);
      break;
    case ProtocolId::charpoly:
      steps_.push_back(Step::claim);
      awaiting_lambda_ = true;
      break;
    default:
      break;  // generator certificates wait for the projection
  }
}

void Prover::receive(const Message& m) {
  if (!st_) throw UsageError("prover not started");
  if (const auto* p = std::get_if<ProjectionMsg>(&m)) {
    tasks_.push_back(make_task(st_->matrix, p->u, p->v, false, false));
    if (st_->protocol == ProtocolId::minpoly_complete) {
      steps_.push_back(Step::secondary);
    } else {
      push_generator_steps();
    }
    return;
  }
  if (const auto* c = std::get_if<ChallengeMsg>(&m)) {
    if (awaiting_lambda_) {
      awaiting_lambda_ = false;
      target_.emplace(BlackBox::shift(c->r, st_->matrix));
      steps_.push_back(Step::precond_gamma);
    } else {
      challenge_ = c->r;
    }
    return;
  }
  throw UsageError("prover cannot handle a '" + std::string(kind_name(m)) + "' message");
}

Message Prover::reply() {
  if (steps_.empty()) throw InternalError("prover has no message to send");
  const Step step = steps_.front();
  steps_.pop_front();
  const Field& F = *F_;
  switch (step) {
    case Step::precond_diag:
      return precondition_diag();
    case Step::precond_gamma:
      return precondition_gamma();
    case Step::precond_simple:
      return precondition_simple();
    case Step::secondary:
      return secondary();
    case Step::claim: {
      Poly c = dense::charpoly(F, DenseMatrix::materialize(F.unmetered(), st_->matrix));
      tamper_claim(c);
      return ClaimMsg{c};
    }
    case Step::commit: {
      GeneratorTask& t = tasks_.at(current_);
      t.H = t.pair.f;
      t.h = t.pair.rho;
      tamper_commitment(t);
      return CommitmentMsg{t.H, t.h};
    }
    case Step::bezout: {
      GeneratorTask& t = tasks_.at(current_);
      const poly::Bezout b = poly::xgcd(F, t.H, t.h);
      t.phi = b.phi;
      t.psi = b.psi;
      tamper_bezout(t);
      return BezoutMsg{t.phi, t.psi};
    }
    case Step::solve: {
      const Fp r = take_challenge();
      GeneratorTask& t = tasks_.at(current_);
      ++current_;
      return solve_generator(t, r);
    }
    case Step::simple_commit:
      return CommitmentMsg{simple_cB_, simple_cC_};
    case Step::simple_solve: {
      const Fp r = take_challenge();
      const std::size_t n = simple_B_.rows();
      DenseMatrix M(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          M.at(i, j) = F.sub(i == j ? r : F.zero(), simple_B_.at(i, j));
        }
      }
      const auto res = dense::solve(F, M, unit_vector(n, n - 1));
      if (!res.solution) return BadShiftMsg{};
      Vec w = *res.solution;
      tamper_solution(w);
      return SolutionMsg{w};
    }
  }
  throw InternalError("unreachable prover step");
}

Fp Prover::take_challenge() {
  if (!challenge_) throw InternalError("prover asked to answer before the challenge");
  const Fp r = *challenge_;
  challenge_.reset();
  return r;
}

Prover::GeneratorTask Prover::make_task(BlackBox B, Vec u, Vec v, bool unit_projection,
                                        bool full_degree) {
  WiedemannPair pair = krylov::minimal_generator_pair(*F_, B, u, v);
  return GeneratorTask{std::move(B), std::move(u), std::move(v), unit_projection, full_degree,
                       std::move(pair), {}, {}, {}, {}};
}

void Prover::push_generator_steps() {
  steps_.push_back(Step::commit);
  steps_.push_back(Step::bezout);
  steps_.push_back(Step::solve);
}

Message Prover::precondition_gamma() {
  const Field& F = *F_;
  const BlackBox M = *target_;
  const std::size_t n = M.dim();
  const Vec e1 = unit_vector(n, 0);
  std::optional<std::pair<GammaMatrix, GeneratorTask>> last;
  for (int attempt = 0; attempt < kPreconditionerTries; ++attempt) {
    const Fp s = F.sample(rng_);
    const Fp t = F.sample(rng_);
    const GammaMatrix G{n, s, t};
    if (gamma_det(F, G).is_zero()) continue;
    GeneratorTask task = make_task(BlackBox::product(M, BlackBox::gamma(G)), e1, e1, true, true);
    if (task.pair.f.degree() == n) {
      if (!task.pair.f.coeff(0).is_zero() || deny_singularity()) {
        tasks_.push_back(std::move(task));
        push_generator_steps();
        return GammaPrecondMsg{s, t};
      }
      // f = x g with g(B) e1 != 0 and B g(B) e1 = 0, so Gamma g(B) e1 spans ker M.
      const Vec x = krylov::apply_poly(F, task.B, divide_by_x(task.pair.f), e1);
      const Vec w = BlackBox::gamma(G).apply(F, x);
      if (!is_zero_vector(w) && is_zero_vector(M.apply(F, w))) return SingularityWitnessMsg{w};
    }
    last.emplace(G, std::move(task));
  }
  if (deny_singularity() && last) {
    tasks_.push_back(std::move(last->second));
    push_generator_steps();
    return GammaPrecondMsg{last->first.s, last->first.t};
  }
  if (!deny_singularity()) {
    if (auto w = krylov::kernel_vector(F.unmetered(), M)) return SingularityWitnessMsg{*w};
  }
  throw InternalError("no Gamma preconditioner gave a degree-n generator in " +
                      std::to_string(kPreconditionerTries) + " tries");
}

Message Prover::precondition_diag() {
  const Field& F = *F_;
  const BlackBox M = *target_;
  const std::size_t n = M.dim();
  std::optional<std::pair<Vec, GeneratorTask>> last;
  for (int attempt = 0; attempt < kPreconditionerTries; ++attempt) {
    Vec d(n);
    for (auto& x : d) x = F.sample_nonzero(rng_);
    Vec u = F.sample_vector(rng_, n);
    Vec v = F.sample_vector(rng_, n);
    GeneratorTask task = make_task(BlackBox::product(BlackBox::diagonal(d), M), u, v, false, true);
    if (task.pair.f.degree() == n) {
      if (!task.pair.f.coeff(0).is_zero() || deny_singularity()) {
        DiagonalPrecondMsg msg{d, task.u, task.v};
        tasks_.push_back(std::move(task));
        push_generator_steps();
        return msg;
      }
      const Vec w = krylov::apply_poly(F, task.B, divide_by_x(task.pair.f), task.v);
      if (!is_zero_vector(w) && is_zero_vector(M.apply(F, w))) return SingularityWitnessMsg{w};
    }
    last.emplace(std::move(d), std::move(task));
  }
  if (deny_singularity() && last) {
    DiagonalPrecondMsg msg{last->first, last->second.u, last->second.v};
    tasks_.push_back(std::move(last->second));
    push_generator_steps();
    return msg;
  }
  if (!deny_singularity()) {
    if (auto w = krylov::kernel_vector(F.unmetered(), M)) return SingularityWitnessMsg{*w};
  }
  throw InternalError("no diagonal preconditioner gave a degree-n generator in " +
                      std::to_string(kPreconditionerTries) + " tries");
}

Message Prover::precondition_simple() {
  const Field& F = *F_;
  const BlackBox M = *target_;
  const std::size_t n = M.dim();
  dense::require_within_cap(n);
  const DenseMatrix A = DenseMatrix::materialize(F.unmetered(), M);
  if (!deny_singularity() && dense::det(F, A).is_zero()) {
    if (auto w = dense::kernel_vector(F, A)) return SingularityWitnessMsg{*w};
  }
  for (int attempt = 0; attempt < kPreconditionerTries; ++attempt) {
    const Fp s = F.sample(rng_);
    const Fp t = F.sample(rng_);
    const GammaMatrix G{n, s, t};
    if (gamma_det(F, G).is_zero()) continue;
    DenseMatrix B = multiply(F, A, DenseMatrix::materialize(F.unmetered(), BlackBox::gamma(G)));
    Poly cB = dense::charpoly(F, B);
    Poly cC = n > 1 ? dense::charpoly(F, B.leading_block(n - 1)) : Poly::constant(F.one());
    if (poly::gcd(F, cB, cC) != Poly::constant(F.one()) && !deny_singularity()) continue;
    tamper_simple(cB, cC);
    simple_B_ = std::move(B);
    simple_cB_ = std::move(cB);
    simple_cC_ = std::move(cC);
    steps_.push_back(Step::simple_commit);
    steps_.push_back(Step::simple_solve);
    return GammaPrecondMsg{s, t};
  }
  throw InternalError("no (s, t) gave coprime characteristic polynomials in " +
                      std::to_string(kPreconditionerTries) + " tries");
}

Message Prover::secondary() {
  const Field& F = *F_;
  const BlackBox& A = st_->matrix;
  const std::size_t n = A.dim();
  dense::require_within_cap(n);
  const Poly fA = dense::minpoly(F.unmetered(), DenseMatrix::materialize(F.unmetered(), A));
  SecondaryProjectionMsg msg;
  if (tasks_.front().pair.f != fA) {
    for (int attempt = 0; attempt < kSecondaryTries; ++attempt) {
      Vec u = F.sample_vector(rng_, n);
      Vec v = F.sample_vector(rng_, n);
      GeneratorTask task = make_task(A, u, v, false, false);
      if (task.pair.f == fA) {
        msg.projection.emplace(std::move(u), std::move(v));
        tasks_.push_back(std::move(task));
        break;
      }
    }
  }
  for (std::size_t i = 0; i < tasks_.size(); ++i) push_generator_steps();
  return msg;
}

std::optional<Vec> Prover::solve_with(const GeneratorTask& t, Fp r, const Poly& f) {
  const Field& F = *F_;
  try {
    return krylov::solve_shifted(F, t.B, r, t.v, f);
  } catch (const BadShift&) {
    if (!is_zero_vector(krylov::apply_poly(F, t.B, f, t.v))) {
      throw IntegrityError("candidate does not annihilate v");
    }
    // f = (x - r)^k q: the system is consistent iff q already annihilates v.
    Poly q = f;
    const Poly lin = Poly::linear_root(F, r);
    while (q.degree() > 0 && poly::eval(F, q, r).is_zero()) q = poly::divrem(F, q, lin).first;
    if (!is_zero_vector(krylov::apply_poly(F, t.B, q, t.v))) return std::nullopt;
    return krylov::solve_shifted(F, t.B, r, t.v, q);
  }
}

Message Prover::solve_generator(GeneratorTask& t, Fp r) {
  const Field& F = *F_;
  const std::size_t n = t.B.dim();
  std::optional<Vec> w;
  bool solved = false;
  try {
    w = solve_with(t, r, t.pair.f);
    solved = true;
  } catch (const IntegrityError&) {
    // f_u misses part of the Krylov space of v: widen with fresh projections.
    Poly candidate = t.pair.f;
    for (int attempt = 0; attempt < kProjectionRetries && !solved; ++attempt) {
      const Vec u2 = F.sample_vector(rng_, n);
      const Vec seq = krylov::wiedemann_sequence(F, t.B, u2, t.v, 2 * n);
      candidate = poly::lcm(F, candidate, poly::berlekamp_massey(F, seq));
      try {
        w = solve_with(t, r, candidate);
        solved = true;
      } catch (const IntegrityError&) {
      }
    }
    if (!solved) {
      dense::require_within_cap(n);
      const auto res =
          dense::solve(F, DenseMatrix::materialize(F.unmetered(), BlackBox::shift(r, t.B)), t.v);
      w = res.solution;
    }
  }
  if (!w) return BadShiftMsg{};
  tamper_solution(*w);
  return SolutionMsg{*w};
}

namespace {

class CheatingProver : public Prover {
 public:
  CheatingProver(Strategy s, std::uint64_t seed) : Prover(seed), s_(s) {}

 protected:
  void tamper_commitment(GeneratorTask& t) override {
    switch (s_) {
      case Strategy::wrong_generator:
        if (statement().protocol != ProtocolId::charpoly) wrong_generator(t);
        break;
      case Strategy::wrong_residue:
        wrong_residue(t);
        break;
      case Strategy::degree_pad:
        degree_pad(t);
        break;
      case Strategy::singular_denial:
        if (t.full_degree) fake_nonsingular(t);
        break;
      default:
        break;
    }
  }

  void tamper_bezout(GeneratorTask& t) override {
    if (s_ != Strategy::forged_bezout) return;
    const Field F = field().unmetered();
    const Fp c = F.sample_nonzero(rng());
    t.phi = poly::add(F, t.phi, poly::scale(F, t.h, c));
    t.psi = poly::sub(F, t.psi, poly::scale(F, t.H, c));
  }

  void tamper_solution(Vec& w) override {
    if (s_ == Strategy::wrong_solution) w = field().unmetered().sample_vector(rng(), w.size());
  }

  void tamper_claim(Poly& c) override {
    if (s_ != Strategy::wrong_generator) return;
    const Field F = field().unmetered();
    c = poly::add(F, c, Poly::constant(F.one()));
  }

  void tamper_simple(Poly& cB, Poly& cC) override {
    const Field F = field().unmetered();
    const std::size_t n = statement().matrix.dim();
    switch (s_) {
      case Strategy::wrong_generator:
      case Strategy::degree_pad:
        until_coprime(cB, cC, [&](Poly& b, Poly&) { b = perturb(b, n); });
        break;
      case Strategy::wrong_residue:
        if (n > 1) {
          until_coprime(cB, cC, [&](Poly&, Poly& c) { c = perturb(c, n - 1); });
        } else {
          until_coprime(cB, cC, [&](Poly& b, Poly&) { b = perturb(b, n); });
        }
        break;
      case Strategy::singular_denial:
        until_coprime(cB, cC, [&](Poly& b, Poly&) { b = with_constant(b, F.sample_nonzero(rng())); });
        break;
      default:
        break;
    }
  }

  bool deny_singularity() const override { return s_ == Strategy::singular_denial; }

 private:
  // Adds a random non-zero amount to one coefficient of index < limit.
  Poly perturb(const Poly& p, std::size_t limit) {
    const Field F = field().unmetered();
    std::vector<Fp> c(p.coeffs().begin(), p.coeffs().end());
    const std::size_t i = rng().uniform_below(limit);
    if (c.size() <= i) c.resize(i + 1);
    c[i] = F.add(c[i], F.sample_nonzero(rng()));
    return Poly(std::move(c));
  }

  static Poly with_constant(const Poly& p, Fp c0) {
    std::vector<Fp> c(p.coeffs().begin(), p.coeffs().end());
    if (c.empty()) c.resize(1);
    c[0] = c0;
    return Poly(std::move(c));
  }

  bool coprime(const Poly& a, const Poly& b) const {
    const Field F = field().unmetered();
    return poly::gcd(F, a, b) == Poly::constant(F.one());
  }

  // Applies `mutate` to fresh copies of (a, b) until the pair is coprime.
  void until_coprime(Poly& a, Poly& b, const std::function<void(Poly&, Poly&)>& mutate) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      Poly a2 = a, b2 = b;
      mutate(a2, b2);
      if (coprime(a2, b2)) {
        a = std::move(a2);
        b = std::move(b2);
        return;
      }
    }
    throw InternalError("could not forge a coprime pair");
  }

  void wrong_generator(GeneratorTask& t) {
    const Field F = field().unmetered();
    const std::size_t n = t.B.dim();
    if (t.H.degree() == 0) {
      // H = 1, h = 0: the only well-formed lie is a degree-1 generator.
      if (n == 0) return;
      until_coprime(t.H, t.h, [&](Poly& H, Poly& h) {
        H = Poly::linear_root(F, F.sample(rng()));
        h = Poly::constant(F.sample_nonzero(rng()));
      });
      return;
    }
    const std::size_t d = t.H.degree().value();
    until_coprime(t.H, t.h, [&](Poly& H, Poly&) { H = perturb(H, d); });
  }

  void wrong_residue(GeneratorTask& t) {
    if (t.H.degree() == 0) return wrong_generator(t);
    const std::size_t limit = t.unit_projection ? t.h.degree().value() : t.H.degree().value();
    if (limit == 0) return wrong_generator(t);
    until_coprime(t.H, t.h, [&](Poly&, Poly& h) { h = perturb(h, limit); });
  }

  void degree_pad(GeneratorTask& t) {
    const Field F = field().unmetered();
    if (t.full_degree || t.H.degree() >= t.B.dim()) return wrong_generator(t);
    until_coprime(t.H, t.h, [&](Poly& H, Poly& h) {
      const Poly lin = Poly::linear_root(F, F.sample(rng()));
      H = poly::mul(F, H, lin);
      h = poly::add(F, poly::mul(F, h, lin), Poly::constant(F.sample_nonzero(rng())));
    });
  }

  // Pads H to degree n and gives it a non-zero constant term.
  void fake_nonsingular(GeneratorTask& t) {
    const Field F = field().unmetered();
    const std::size_t n = t.B.dim();
    while (t.H.degree() < n) {
      const Poly lin = Poly::linear_root(F, F.sample(rng()));
      t.H = poly::mul(F, t.H, lin);
      t.h = poly::mul(F, t.h, lin);
    }
    if (t.h.is_zero()) t.h = Poly::constant(F.one());
    const Fp old = t.H.coeff(0);
    until_coprime(t.H, t.h, [&](Poly& H, Poly&) {
      Fp c0 = F.sample_nonzero(rng());
      while (c0 == old) c0 = F.sample_nonzero(rng());
      H = with_constant(H, c0);
    });
  }

  Strategy s_;
};

}  // namespace

std::unique_ptr<Prover> make_prover(Strategy s, std::uint64_t seed) {
  if (s == Strategy::honest) return std::make_unique<Prover>(seed);
  return std::make_unique<CheatingProver>(s, seed);
}

}  // namespace certilin
