#include "harness.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "certilin/certify.hpp"
#include "certilin/challenge.hpp"
#include "certilin/dense.hpp"
#include "certilin/errors.hpp"
#include "certilin/generate.hpp"
#include "certilin/polynomial.hpp"

namespace certilin::harness {
namespace {

bool uses_public_projection(ProtocolId id) {
  return id == ProtocolId::fauv || id == ProtocolId::fauv_merged;
}

std::optional<std::pair<Vec, Vec>> draw_projection(ProtocolId id, const Field& F, std::size_t n,
                                                   SeededRng& rng) {
  if (!uses_public_projection(id)) return std::nullopt;
  Vec u = F.sample_vector(rng, n);
  Vec v = F.sample_vector(rng, n);
  return std::make_pair(std::move(u), std::move(v));
}

double ratio(double a, double b) { return a / b; }

// Outcome of one seeded honest session, or the reason it did not run.
struct Session {
  std::optional<RunResult> result;
  std::string gave_up;
};

Session honest_session(const Statement& st, SeededRng& rng) {
  Session s;
  auto prover = make_prover(Strategy::honest, rng.next_u64());
  RandomChallenges ch(rng.next_u64());
  try {
    s.result = run_session(st, *prover, ch);
  } catch (const InternalError& e) {
    s.gave_up = e.what();
  }
  return s;
}

}  // namespace

SparseMatrix trial_matrix(const Field& F, std::size_t n, double density, SeededRng& rng,
                          bool singular) {
  const Field U = F.unmetered();
  const SparseMatrix base = random_sparse(F, n, density, rng);
  std::vector<SparseEntry> entries(base.entries().begin(), base.entries().end());
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, U.sample_nonzero(rng)});
  if (singular && n > 0) {
    std::erase_if(entries, [n](const SparseEntry& e) { return e.row == n - 1; });
  }
  return SparseMatrix(F, n, std::move(entries));
}

SoundnessBound soundness_bound(ProtocolId id, Strategy s, std::size_t n, std::uint64_t p) {
  const double dn = static_cast<double>(n);
  const double dp = static_cast<double>(p);
  SoundnessBound b;
  if (s == Strategy::forged_bezout) {
    b.non_exposing = true;
    b.formula = "1 (truthful pair, only the cofactors change)";
    return b;
  }
  if (s == Strategy::wrong_solution) {
    b.formula = "1 (the residual check is exact)";
    return b;
  }
  const double merged = 1.0 - ratio(5 * dn - 3, dp);
  switch (id) {
    case ProtocolId::fauv:
      b.value = (1.0 - ratio(2 * dn - 2, dp)) * (1.0 - ratio(3 * dn - 1, dp));
      b.formula = "(1-(2n-2)/p)(1-(3n-1)/p)";
      break;
    case ProtocolId::det_simple:
      b.value = 1.0 - ratio(3 * dn - 2, dp - dn);
      b.formula = "1-(3n-2)/(p-n)";
      break;
    case ProtocolId::charpoly:
      b.value = (1.0 - ratio(dn, dp)) * merged;
      b.formula = "(1-n/p)(1-(5n-3)/p)";
      break;
    default:
      b.value = merged;
      b.formula = "1-(5n-3)/p";
      break;
  }
  return b;
}

AttackReport run_attack(const AttackConfig& cfg) {
  if (cfg.trials == 0) throw UsageError("trials must be at least 1");
  const bool det = cfg.protocol == ProtocolId::det_diag || cfg.protocol == ProtocolId::det_gamma ||
                   cfg.protocol == ProtocolId::det_simple;
  if (cfg.strategy == Strategy::honest) throw UsageError("honest is not an attack strategy");
  if (cfg.strategy == Strategy::singular_denial && !det) {
    throw UsageError("singular_denial needs det-diag, det-gamma or det-simple");
  }
  if (cfg.strategy == Strategy::forged_bezout && cfg.protocol == ProtocolId::det_simple) {
    throw UsageError("det-simple sends no Bezout cofactors");
  }
  check_field_size(cfg.protocol, cfg.n, cfg.modulus);

  AttackReport rep;
  rep.config = cfg;
  const Field F(cfg.modulus);
  SeededRng root(cfg.seed);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    SeededRng rng = root.fork(i);
    const bool denial = cfg.strategy == Strategy::singular_denial;
    SparseMatrix A = trial_matrix(F, cfg.n, cfg.density, rng, denial);
    // Other strategies only cheat on nonsingular inputs: a singular matrix
    // would be answered with a true kernel witness.
    if (det && !denial && cfg.n <= dense::oracle_cap()) {
      while (dense::det(F, DenseMatrix::from_sparse(A)).is_zero()) {
        A = trial_matrix(F, cfg.n, cfg.density, rng);
      }
    }
    const Statement st =
        make_statement(cfg.protocol, F, A, draw_projection(cfg.protocol, F, cfg.n, rng));
    auto prover = make_prover(cfg.strategy, rng.next_u64());
    RandomChallenges ch(rng.next_u64());
    Outcome o = Reject{"prover-gave-up"};
    try {
      o = run_session(st, *prover, ch).outcome;
    } catch (const InternalError&) {
      // The adversary could not build its forgery; nothing was accepted.
    }
    if (accepted(o)) {
      ++rep.accepted;
    } else if (bad_challenge(o)) {
      ++rep.bad_challenge;
    } else {
      ++rep.rejected;
    }
  }
  rep.bound = soundness_bound(cfg.protocol, cfg.strategy, cfg.n, cfg.modulus);
  const double t = static_cast<double>(cfg.trials);
  const double good = rep.bound.non_exposing ? rep.accepted : rep.rejected + rep.bad_challenge;
  rep.rate = good / t;
  rep.sigma = std::sqrt(rep.bound.value * (1.0 - rep.bound.value) / t);
  // A non-exposing strategy must never be rejected; BadChallenge is the
  // ordinary completeness deficit.
  rep.pass = rep.bound.non_exposing ? rep.rejected == 0
                                    : rep.rate >= rep.bound.value - 3 * rep.sigma;
  return rep;
}

bool BenchRow::within_budget() const {
  if (!skipped.empty()) return true;
  if (ops_budget && verifier_ops > *ops_budget) return false;
  if (elements_budget && elements > *elements_budget) return false;
  return true;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.sizes.empty()) throw UsageError("sizes must not be empty");
  const Field F(cfg.modulus);
  SeededRng root(cfg.seed);
  std::vector<BenchRow> rows;
  for (const std::size_t n : cfg.sizes) {
    SeededRng rng = root.fork(n);
    BenchRow row;
    row.n = n;
    const SparseMatrix A =
        cfg.identity ? SparseMatrix::identity(n) : trial_matrix(F, n, cfg.density, rng);
    row.nnz = A.nnz();
    row.mu = BlackBox(A).matvec_cost();
    try {
      check_field_size(cfg.protocol, n, cfg.modulus);
      std::optional<std::pair<Vec, Vec>> proj;
      if (uses_public_projection(cfg.protocol)) proj.emplace(unit_vector(n, 0), unit_vector(n, 0));
      const Session s = honest_session(make_statement(cfg.protocol, F, A, std::move(proj)), rng);
      if (!s.result) {
        row.skipped = s.gave_up;
      } else {
        const Transcript& t = s.result->transcript;
        row.outcome = outcome_text(s.result->outcome);
        row.verifier_ops = t.verifier_meter.field_ops();
        row.elements = t.prover_meter.elements_sent;
        row.random_elements = t.verifier_meter.random_draws + t.prover_meter.random_draws;
        row.prover_matvecs = t.prover_meter.matvec;
        const Budget b = verifier_budget(cfg.protocol, n, row.mu);
        row.ops_budget = b.field_ops;
        row.elements_budget = b.elements;
      }
    } catch (const Error& e) {
      row.skipped = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr ProtocolId kAllProtocols[] = {
    ProtocolId::fauv,     ProtocolId::fauv_merged, ProtocolId::minpoly,
    ProtocolId::minpoly_complete, ProtocolId::det_diag, ProtocolId::det_gamma,
    ProtocolId::det_simple, ProtocolId::charpoly,
};

constexpr ProtocolId kDetProtocols[] = {ProtocolId::det_diag, ProtocolId::det_gamma,
                                        ProtocolId::det_simple};

struct Oracle {
  DenseMatrix A;
  Poly minpoly, charpoly;
  Fp det;
};

// u^T A^i v for i < 2n, from the dense matrix.
Vec dense_sequence(const Field& F, const DenseMatrix& A, const Vec& u, const Vec& v) {
  Vec seq;
  Vec x = v;
  for (std::size_t i = 0; i < 2 * A.rows(); ++i) {
    seq.push_back(F.dot(u, x));
    x = A.apply(F, x);
  }
  return seq;
}

// H annihilates the sequence: sum_k H_k a_{k+j} = 0 wherever defined.
bool generates(const Field& F, const Poly& H, const Vec& seq) {
  const std::size_t d = H.degree().value();
  for (std::size_t j = 0; j + d < seq.size(); ++j) {
    Fp acc = F.zero();
    for (std::size_t k = 0; k <= d; ++k) acc = F.add(acc, F.mul(H.coeff(k), seq[j + k]));
    if (!acc.is_zero()) return false;
  }
  return true;
}

bool valid_witness(const Field& F, const DenseMatrix& A, const Singular& s) {
  return s.witness.size() == A.rows() && !is_zero_vector(s.witness) &&
         is_zero_vector(A.apply(F, s.witness));
}

std::string label(ProtocolId id, std::size_t n, std::size_t seed) {
  std::ostringstream os;
  os << protocol_name(id) << " n=" << n << " seed=" << seed;
  return os.str();
}

// Compares an Accept against the oracles; empty string when it matches.
std::string check_accept(const Field& F, ProtocolId id, const Oracle& o, const Certified& c,
                         const std::optional<std::pair<Vec, Vec>>& proj) {
  switch (id) {
    case ProtocolId::fauv:
    case ProtocolId::fauv_merged: {
      const Poly* H = std::get_if<Poly>(&c);
      if (!H) return "expected a polynomial";
      if (!poly::rem(F, o.minpoly, *H).is_zero()) return "generator does not divide the minpoly";
      if (!generates(F, *H, dense_sequence(F, o.A, proj->first, proj->second))) {
        return "generator does not annihilate the sequence";
      }
      return "";
    }
    case ProtocolId::minpoly:
    case ProtocolId::minpoly_complete: {
      const Poly* H = std::get_if<Poly>(&c);
      if (!H) return "expected a polynomial";
      return *H == o.minpoly ? "" : "minpoly " + poly::to_text(*H);
    }
    case ProtocolId::charpoly: {
      const Poly* H = std::get_if<Poly>(&c);
      if (!H) return "expected a polynomial";
      return *H == o.charpoly ? "" : "charpoly " + poly::to_text(*H);
    }
    default: {
      if (const Fp* d = std::get_if<Fp>(&c)) {
        return *d == o.det && !d->is_zero() ? "" : "det " + Field::to_text(*d);
      }
      if (const Singular* s = std::get_if<Singular>(&c)) {
        if (!o.det.is_zero()) return "singular claimed for a nonsingular matrix";
        return valid_witness(F, o.A, *s) ? "" : "invalid kernel witness";
      }
      return "expected a determinant";
    }
  }
}

}  // namespace

SelftestReport run_selftest(const SelftestConfig& cfg) {
  dense::require_within_cap(cfg.max_n);
  const Field F(cfg.modulus);
  SelftestReport rep;
  SeededRng root(cfg.seed);

  auto fail = [&rep](const std::string& what) {
    ++rep.failures;
    rep.problems.push_back(what);
  };
  auto fits = [&](ProtocolId id, std::size_t n) {
    if (cfg.modulus >= required_modulus(id, n)) return true;
    std::ostringstream os;
    os << "skip " << protocol_name(id) << " n=" << n << ": field too small (requires p >= "
       << required_modulus(id, n) << ")";
    rep.notes.push_back(os.str());
    return false;
  };
  // Below 2n^2 - 2n the Prover may exhaust its preconditioner tries.
  auto tolerate_give_up = [&](std::size_t n) { return cfg.modulus < 2 * n * n - 2 * n + 1; };

  std::size_t projection_trials = 0, projection_misses = 0;
  std::size_t give_ups = 0;

  for (std::size_t n = 1; n <= cfg.max_n; ++n) {
    std::vector<ProtocolId> active;
    for (ProtocolId id : kAllProtocols) {
      if (fits(id, n)) active.push_back(id);
    }
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      SeededRng rng = root.fork(n * 1'000'000 + s);
      const SparseMatrix A = trial_matrix(F, n, 0.5, rng);
      Oracle o;
      o.A = DenseMatrix::from_sparse(A);
      o.minpoly = dense::minpoly(F, o.A);
      o.charpoly = dense::charpoly(F, o.A);
      o.det = dense::det(F, o.A);
      for (ProtocolId id : active) {
        const auto proj = draw_projection(id, F, n, rng);
        const Session sess = honest_session(make_statement(id, F, A, proj), rng);
        ++rep.sessions;
        if (!sess.result) {
          if (tolerate_give_up(n)) {
            ++give_ups;
          } else {
            fail(label(id, n, s) + ": prover gave up: " + sess.gave_up);
          }
          continue;
        }
        const Outcome& out = sess.result->outcome;
        if (bad_challenge(out)) {
          ++rep.bad_challenges;
          continue;
        }
        if (const auto* r = std::get_if<Reject>(&out)) {
          fail(label(id, n, s) + ": honest run rejected (" + r->reason + ")");
          continue;
        }
        ++rep.accepts;
        const std::string bad = check_accept(F, id, o, std::get<Accept>(out).result, proj);
        if (id == ProtocolId::minpoly) {
          // A projection that misses part of the minpoly is the protocol's
          // Monte Carlo error, bounded below in aggregate.
          ++projection_trials;
          if (!bad.empty()) ++projection_misses;
          continue;
        }
        if (!bad.empty()) fail(label(id, n, s) + ": " + bad);
      }
    }
  }

  if (projection_trials > 0) {
    const double m = static_cast<double>(cfg.max_n);
    const double q = 1.0 - std::pow(1.0 - m / static_cast<double>(cfg.modulus), 2.0);
    const double t = static_cast<double>(projection_trials);
    const double allowed = t * q + 3 * std::sqrt(t * q * (1 - q));
    std::ostringstream os;
    os << "minpoly projection misses " << projection_misses << "/" << projection_trials
       << " (allowed " << allowed << ")";
    if (static_cast<double>(projection_misses) > allowed) {
      fail(os.str());
    } else {
      rep.notes.push_back(os.str());
    }
  }
  if (give_ups > 0) {
    rep.notes.push_back("prover exhausted its preconditioner tries " + std::to_string(give_ups) +
                        " times (field below 2n^2-2n)");
  }

  // Singular batch: every determinant protocol must return a kernel witness.
  const std::size_t singular_seeds = std::min<std::size_t>(cfg.seeds, 10);
  for (std::size_t n = 2; n <= cfg.max_n; ++n) {
    for (std::size_t s = 0; s < singular_seeds; ++s) {
      SeededRng rng = root.fork(n * 1'000'000 + 500'000 + s);
      const SparseMatrix A = trial_matrix(F, n, 0.5, rng, true);
      const DenseMatrix D = DenseMatrix::from_sparse(A);
      for (ProtocolId id : kDetProtocols) {
        if (cfg.modulus < required_modulus(id, n)) continue;
        const Session sess = honest_session(make_statement(id, F, A), rng);
        ++rep.sessions;
        const std::string where = label(id, n, s) + " (singular)";
        if (!sess.result) {
          fail(where + ": prover gave up: " + sess.gave_up);
          continue;
        }
        const Outcome& out = sess.result->outcome;
        const Accept* a = std::get_if<Accept>(&out);
        const Singular* w = a ? std::get_if<Singular>(&a->result) : nullptr;
        if (!w) {
          fail(where + ": " + outcome_text(out));
        } else if (!valid_witness(F, D, *w)) {
          fail(where + ": invalid kernel witness");
        } else {
          ++rep.accepts;
        }
      }
    }
  }

  // Soundness: a few hundred trials per strategy.
  const std::pair<ProtocolId, Strategy> attacks[] = {
      {ProtocolId::fauv, Strategy::wrong_generator},
      {ProtocolId::fauv, Strategy::wrong_residue},
      {ProtocolId::fauv, Strategy::forged_bezout},
      {ProtocolId::fauv_merged, Strategy::degree_pad},
      {ProtocolId::minpoly, Strategy::wrong_generator},
      {ProtocolId::det_diag, Strategy::singular_denial},
      {ProtocolId::det_gamma, Strategy::wrong_generator},
      {ProtocolId::det_gamma, Strategy::wrong_solution},
      {ProtocolId::det_gamma, Strategy::singular_denial},
      {ProtocolId::det_simple, Strategy::wrong_generator},
      {ProtocolId::det_simple, Strategy::singular_denial},
      {ProtocolId::charpoly, Strategy::wrong_generator},
  };
  const std::size_t an = std::min<std::size_t>(cfg.max_n, 8);
  for (const auto& [id, strategy] : attacks) {
    if (!fits(id, an)) continue;
    AttackConfig ac;
    ac.protocol = id;
    ac.strategy = strategy;
    ac.trials = 200;
    ac.n = an;
    ac.modulus = cfg.modulus;
    ac.seed = cfg.seed;
    const AttackReport r = run_attack(ac);
    if (!r.pass) {
      std::ostringstream os;
      os << "attack " << protocol_name(id) << " " << strategy_name(strategy) << ": rate "
         << r.rate << " below bound " << r.bound.value;
      fail(os.str());
    }
  }
  return rep;
}

}  // namespace certilin::harness
