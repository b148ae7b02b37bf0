#include "certilin/certify.hpp"

#include "certilin/errors.hpp"
#include "certilin/hash.hpp"

namespace certilin {
namespace {

struct Rejected {
  std::string reason;
};
struct Unlucky {
  std::string detail;
};

// Plays back the Prover side of a recorded transcript and checks that the
// Verifier sends exactly the recorded messages.
class ReplayEndpoint : public ProverEndpoint {
 public:
  explicit ReplayEndpoint(const std::vector<TranscriptEntry>& entries) : entries_(entries) {}

  void receive(const Message& m) override {
    if (next_ >= entries_.size() || entries_[next_].role != Role::verifier) {
      throw Rejected{"unexpected-verifier-message"};
    }
    if (entries_[next_].message != m) throw Rejected{"challenge-mismatch"};
    ++next_;
  }

  Message reply() override {
    if (next_ >= entries_.size() || entries_[next_].role != Role::prover) {
      throw Rejected{"missing-prover-message"};
    }
    return entries_[next_++].message;
  }

  CostMeter meter() const override { return {}; }

  bool exhausted() const { return next_ == entries_.size(); }

 private:
  const std::vector<TranscriptEntry>& entries_;
  std::size_t next_ = 0;
};

class Verifier {
 public:
  Verifier(const Statement& st, ProverEndpoint& prover, ChallengeSource& challenges, Transcript& t)
      : st_(st), F_(st.field.metered(&meter_)), prover_(prover), challenges_(challenges), t_(t) {}
  Verifier(const Verifier&) = delete;
  Verifier& operator=(const Verifier&) = delete;

  Outcome run() {
    const BlackBox& A = st_.matrix;
    const std::size_t n = A.dim();
    switch (st_.protocol) {
      case ProtocolId::fauv:
      case ProtocolId::fauv_merged: {
        const Vec u = st_.projection ? st_.projection->first : unit_vector(n, 0);
        const Vec v = st_.projection ? st_.projection->second : unit_vector(n, 0);
        send(ProjectionMsg{u, v}, 0);  // public statement, not a challenge
        const GeneratorGate gate{false, false, true};
        return Accept{generator(A, u, v, st_.protocol == ProtocolId::fauv_merged, gate)};
      }
      case ProtocolId::minpoly:
      case ProtocolId::minpoly_complete:
        return minpoly(st_.protocol == ProtocolId::minpoly_complete);
      case ProtocolId::det_diag:
        return det_diag(A);
      case ProtocolId::det_gamma:
        return det_gamma(A);
      case ProtocolId::det_simple:
        return det_simple(A);
      case ProtocolId::charpoly:
        return charpoly();
    }
    throw InternalError("unknown protocol");
  }

  const CostMeter& meter() const { return meter_; }
  std::uint64_t prover_elements() const { return prover_elements_; }

 private:
  struct GeneratorGate {
    bool unit_projection;  // u = v = e1: h monic of degree deg H - 1, u^T w = w_1
    bool full_degree;      // deg H = n
    bool output;           // H is the certified output, not counted as communication
  };

  Message receive() {
    Message m = prover_.reply();
    t_.messages.push_back({Role::prover, m});
    return m;
  }

  void send(const Message& m, std::uint64_t elements) {
    t_.messages.push_back({Role::verifier, m});
    meter_.elements_sent += elements;
    prover_.receive(m);
  }

  Fp draw() {
    F_.charge_draws(1);
    return challenges_.draw(F_, t_);
  }

  template <class T>
  static T expect(Message m, const char* reason = "unexpected-message") {
    if (auto* x = std::get_if<T>(&m)) return std::move(*x);
    throw Rejected{reason};
  }

  void check_size(const Vec& x, const char* reason) const {
    if (x.size() != st_.matrix.dim()) throw Rejected{reason};
  }

  // Generator sub-certificate: returns H once every check has passed.
  Poly generator(const BlackBox& B, const Vec& u, const Vec& v, bool merged, GeneratorGate gate) {
    const std::size_t n = B.dim();
    const auto c = expect<CommitmentMsg>(receive());
    const Poly& H = c.H;
    const Poly& h = c.h;
    bool ok = H.is_monic() && H.degree() <= n && h.degree() < H.degree();
    if (ok && gate.full_degree) ok = H.degree() == n;
    if (ok && gate.unit_projection && H.degree() > 0) {
      ok = h.is_monic() && h.degree() == H.degree().value() - 1;
    }
    if (!ok) throw Rejected{"malformed-commitment"};
    const std::size_t dH = H.degree().value();
    prover_elements_ += (gate.output ? 0 : dH) + h.size() - (gate.unit_projection && dH > 0 ? 1 : 0);

    const auto b = expect<BezoutMsg>(receive());
    if (b.phi.degree() > (dH > 0 ? dH - 1 : 0) || b.psi.degree() > dH) {
      throw Rejected{"malformed-bezout"};
    }
    prover_elements_ += b.phi.size() + b.psi.size();

    Fp r0, r1, H_r1, h_r1;
    if (merged) {
      r0 = r1 = draw();
      H_r1 = poly::eval(F_, H, r0);
      h_r1 = poly::eval(F_, h, r0);
      const Fp lhs = F_.add(F_.mul(poly::eval(F_, b.phi, r0), H_r1),
                            F_.mul(poly::eval(F_, b.psi, r0), h_r1));
      if (lhs != F_.one()) throw Rejected{"bezout-check"};
    } else {
      r0 = draw();
      r1 = draw();
      if (!poly::is_coprime_certified(F_, H, h, b.phi, b.psi, r0)) throw Rejected{"bezout-check"};
    }
    send(ChallengeMsg{r1}, 1);

    const Message reply = receive();
    if (std::holds_alternative<BadShiftMsg>(reply)) throw Unlucky{"bad-shift"};
    const auto s = expect<SolutionMsg>(reply);
    if (s.w.size() != n) throw Rejected{"malformed-solution"};
    prover_elements_ += n;
    if (BlackBox::shift(r1, B).apply(F_, s.w) != v) throw Rejected{"solution-residual"};
    if (!merged) {
      H_r1 = poly::eval(F_, H, r1);
      h_r1 = poly::eval(F_, h, r1);
    }
    const Fp uw = gate.unit_projection ? s.w[0] : F_.dot(u, s.w);
    if (F_.mul(uw, H_r1) != h_r1) throw Rejected{"generator-check"};
    return H;
  }

  Outcome minpoly(bool complete) {
    const std::size_t n = st_.matrix.dim();
    Vec u, v;
    if (st_.projection) {
      u = st_.projection->first;
      v = st_.projection->second;
    } else {
      u.resize(n);
      v.resize(n);
      for (auto& x : u) x = draw();
      for (auto& x : v) x = draw();
    }
    send(ProjectionMsg{u, v}, 2 * n);
    std::optional<std::pair<Vec, Vec>> second;
    if (complete) {
      second = expect<SecondaryProjectionMsg>(receive()).projection;
      if (second) {
        check_size(second->first, "malformed-secondary");
        check_size(second->second, "malformed-secondary");
        prover_elements_ += 2 * n;
      }
    }
    const Poly H = generator(st_.matrix, u, v, true, {false, false, !second});
    if (!second) return Accept{H};
    const Poly H2 = generator(st_.matrix, second->first, second->second, true, {false, false, true});
    if (H2.degree() <= H.degree()) throw Rejected{"secondary-not-higher"};
    return Accept{H2};
  }

  Outcome singular(const BlackBox& M, const SingularityWitnessMsg& s) {
    check_size(s.w, "malformed-witness");
    prover_elements_ += s.w.size();
    if (is_zero_vector(s.w)) throw Rejected{"zero-witness"};
    if (!is_zero_vector(M.apply(F_, s.w))) throw Rejected{"witness-not-in-kernel"};
    return Accept{Singular{s.w}};
  }

  Fp signed_quotient(Fp c0, Fp denominator, std::size_t n) {
    const Fp q = F_.mul(c0, F_.inv(denominator));
    return n % 2 ? F_.neg(q) : q;
  }

  Outcome det_gamma(const BlackBox& M) {
    const std::size_t n = M.dim();
    const Message first = receive();
    if (const auto* s = std::get_if<SingularityWitnessMsg>(&first)) return singular(M, *s);
    const auto pre = expect<GammaPrecondMsg>(first);
    prover_elements_ += 2;
    const GammaMatrix G{n, pre.s, pre.t};
    const Fp dG = gamma_det(F_, G);
    if (dG.is_zero()) throw Rejected{"singular-preconditioner"};
    const Vec e1 = unit_vector(n, 0);
    const Poly H = generator(BlackBox::product(M, BlackBox::gamma(G)), e1, e1, true, {true, true, false});
    return Accept{signed_quotient(H.coeff(0), dG, n)};
  }

  Outcome det_diag(const BlackBox& M) {
    const std::size_t n = M.dim();
    const Message first = receive();
    if (const auto* s = std::get_if<SingularityWitnessMsg>(&first)) return singular(M, *s);
    const auto pre = expect<DiagonalPrecondMsg>(first);
    check_size(pre.d, "malformed-preconditioner");
    check_size(pre.u, "malformed-preconditioner");
    check_size(pre.v, "malformed-preconditioner");
    prover_elements_ += 3 * n;
    for (Fp d : pre.d) {
      if (d.is_zero()) throw Rejected{"singular-preconditioner"};
    }
    const Poly H = generator(BlackBox::product(BlackBox::diagonal(pre.d), M), pre.u, pre.v, true,
                             {false, true, false});
    Fp detD = pre.d.empty() ? F_.one() : pre.d[0];
    for (std::size_t i = 1; i < n; ++i) detD = F_.mul(detD, pre.d[i]);
    return Accept{signed_quotient(H.coeff(0), detD, n)};
  }

  Outcome det_simple(const BlackBox& M) {
    const std::size_t n = M.dim();
    const Message first = receive();
    if (const auto* s = std::get_if<SingularityWitnessMsg>(&first)) return singular(M, *s);
    const auto pre = expect<GammaPrecondMsg>(first);
    prover_elements_ += 2;
    const GammaMatrix G{n, pre.s, pre.t};
    const Fp dG = gamma_det(F_, G);
    if (dG.is_zero()) throw Rejected{"singular-preconditioner"};

    const auto c = expect<CommitmentMsg>(receive());
    const Poly& cB = c.H;
    const Poly& cC = c.h;
    if (!cB.is_monic() || cB.degree() != n || !cC.is_monic() || cC.degree() != n - 1) {
      throw Rejected{"malformed-commitment"};
    }
    prover_elements_ += n + (n - 1);
    if (poly::gcd(F_, cB, cC) != Poly::constant(F_.one())) throw Rejected{"gcd-not-one"};

    Fp r1, cB_r1;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw Unlucky{"no-challenge-off-the-roots"};
      r1 = draw();
      cB_r1 = poly::eval(F_, cB, r1);
      if (!cB_r1.is_zero()) break;
    }
    send(ChallengeMsg{r1}, 1);

    const Message reply = receive();
    if (std::holds_alternative<BadShiftMsg>(reply)) throw Unlucky{"bad-shift"};
    const auto s = expect<SolutionMsg>(reply);
    if (s.w.size() != n) throw Rejected{"malformed-solution"};
    prover_elements_ += n;
    const BlackBox B = BlackBox::product(M, BlackBox::gamma(G));
    if (BlackBox::shift(r1, B).apply(F_, s.w) != unit_vector(n, n - 1)) {
      throw Rejected{"solution-residual"};
    }
    if (F_.mul(s.w[n - 1], cB_r1) != poly::eval(F_, cC, r1)) throw Rejected{"cramer-check"};
    return Accept{signed_quotient(cB.coeff(0), dG, n)};
  }

  Outcome charpoly() {
    const std::size_t n = st_.matrix.dim();
    const auto claim = expect<ClaimMsg>(receive());
    if (!claim.c.is_monic() || claim.c.degree() != n) throw Rejected{"malformed-claim"};
    prover_elements_ += n;
    const Fp lambda = draw();
    send(ChallengeMsg{lambda}, 1);
    const Outcome sub = det_gamma(BlackBox::shift(lambda, st_.matrix));
    const Fp expected = poly::eval(F_, claim.c, lambda);
    const Certified& got = std::get<Accept>(sub).result;
    const bool match = std::holds_alternative<Singular>(got) ? expected.is_zero()
                                                             : std::get<Fp>(got) == expected;
    if (!match) throw Rejected{"charpoly-mismatch"};
    return Accept{claim.c};
  }

  const Statement& st_;
  CostMeter meter_;
  Field F_;
  ProverEndpoint& prover_;
  ChallengeSource& challenges_;
  Transcript& t_;
  std::uint64_t prover_elements_ = 0;
};

Transcript blank_transcript(const Statement& st) {
  Transcript t;
  t.protocol = st.protocol;
  t.n = st.matrix.dim();
  t.p = st.field.modulus();
  t.digest = st.digest;
  return t;
}

RunResult run_with(const Statement& st, Prover& prover, ChallengeSource& challenges) {
  check_field_size(st.protocol, st.matrix.dim(), st.field.modulus());
  RunResult r{blank_transcript(st), Reject{""}};
  prover.start(st);
  r.outcome = verify_session(st, prover, challenges, r.transcript);
  return r;
}

}  // namespace

Outcome verify_session(const Statement& st, ProverEndpoint& prover, ChallengeSource& challenges,
                       Transcript& transcript) {
  Verifier V(st, prover, challenges, transcript);
  Outcome o = Reject{""};
  try {
    o = V.run();
  } catch (const Rejected& r) {
    o = Reject{r.reason};
  } catch (const Unlucky& u) {
    o = BadChallenge{u.detail};
  }
  transcript.outcome = o;
  transcript.verifier_meter = V.meter();
  transcript.prover_meter = prover.meter();
  transcript.prover_meter.elements_sent = V.prover_elements();
  return o;
}

RunResult run_session(const Statement& st, Prover& prover, ChallengeSource& challenges) {
  return run_with(st, prover, challenges);
}

RunResult cert_fauv(const Field& F, const BlackBox& A, const Vec& u, const Vec& v, Prover& prover,
                    std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::fauv, F, A, std::make_pair(u, v)), prover, ch);
}

RunResult cert_fauv_merged(const Field& F, const BlackBox& A, const Vec& u, const Vec& v,
                           Prover& prover, std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::fauv_merged, F, A, std::make_pair(u, v)), prover, ch);
}

RunResult cert_minpoly(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed,
                       bool perfectly_complete, std::optional<std::pair<Vec, Vec>> forced_projection) {
  RandomChallenges ch(seed);
  const ProtocolId id = perfectly_complete ? ProtocolId::minpoly_complete : ProtocolId::minpoly;
  return run_with(make_statement(id, F, A, std::move(forced_projection)), prover, ch);
}

RunResult cert_det_diag(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::det_diag, F, A), prover, ch);
}

RunResult cert_det_gamma(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::det_gamma, F, A), prover, ch);
}

RunResult cert_simple_det(const Field& F, const SparseMatrix& A, Prover& prover, std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::det_simple, F, BlackBox(A)), prover, ch);
}

RunResult cert_charpoly(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed) {
  RandomChallenges ch(seed);
  return run_with(make_statement(ProtocolId::charpoly, F, A), prover, ch);
}

RunResult fiat_shamir(const Statement& st, Prover& prover) {
  HashChallenges ch;
  return run_with(st, prover, ch);
}

RunResult verify_noninteractive(const Transcript& t, const Field& F, const BlackBox& A) {
  if (t.n != A.dim()) throw StatementMismatch("transcript is for n = " + std::to_string(t.n));
  if (t.p != F.modulus()) throw StatementMismatch("transcript is for p = " + std::to_string(t.p));
  const std::string digest = sha256_hex(A.describe(F));
  if (t.digest != digest) throw StatementMismatch("matrix digest differs from the transcript");
  check_field_size(t.protocol, t.n, t.p);

  std::optional<std::pair<Vec, Vec>> projection;
  if (t.protocol == ProtocolId::fauv || t.protocol == ProtocolId::fauv_merged) {
    const ProjectionMsg* p = t.messages.empty() || t.messages[0].role != Role::verifier
                                 ? nullptr
                                 : std::get_if<ProjectionMsg>(&t.messages[0].message);
    if (!p || p->u.size() != t.n || p->v.size() != t.n) {
      RunResult r{t, Reject{"missing-statement"}};
      r.transcript.outcome = r.outcome;
      return r;
    }
    projection.emplace(p->u, p->v);
  }
  const Statement st{t.protocol, F.unmetered(), A, digest, std::move(projection)};
  ReplayEndpoint replay(t.messages);
  HashChallenges ch;
  RunResult r{blank_transcript(st), Reject{""}};
  r.outcome = verify_session(st, replay, ch, r.transcript);
  if (!rejected(r.outcome)) {
    if (!replay.exhausted()) {
      r.outcome = Reject{"trailing-messages"};
    } else if (!t.outcome || outcome_text(*t.outcome) != outcome_text(r.outcome)) {
      r.outcome = Reject{"outcome-mismatch"};
    }
  }
  r.transcript.outcome = r.outcome;
  return r;
}

RunResult verify_noninteractive(std::string_view text, const Field& F, const BlackBox& A) {
  return verify_noninteractive(Transcript::parse(text), F, A);
}

}  // namespace certilin
