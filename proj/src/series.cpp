#include "embedlab/series.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "embedlab/errors.hpp"
#include "embedlab/wqo.hpp"

namespace embedlab {

void Budget::charge(std::size_t k) {
  used_ += k;
  if (used_ > limit_) {
    throw BudgetExceeded("step budget of " + std::to_string(limit_) + " exhausted");
  }
}

GroupElement Frame::act(const GroupElement& g, const GroupElement& h) const {
  return side_ == Side::Right ? group_->mul(g, h) : group_->mul(h, g);
}

GroupElement Frame::unact(const GroupElement& target,
                          const GroupElement& h) const {
  return side_ == Side::Right ? group_->mul(target, group_->inv(h))
                              : group_->mul(group_->inv(h), target);
}

GroupElement Frame::fiber(const GroupElement& g,
                          const GroupElement& target) const {
  return side_ == Side::Right ? group_->mul(group_->inv(g), target)
                             : group_->mul(target, group_->inv(g));
}

// ---------------------------------------------------------------------------
// Streams

SeriesStream::SeriesStream(Frame frame, RingDescriptor field,
                           std::shared_ptr<SeriesSource> source)
    : state_(std::make_shared<State>(
          State{std::move(frame), field, std::move(source), {}, false})) {
  if (!field.is_field()) throw NotAField(field.to_string());
}

const Term* SeriesStream::at(std::size_t i) const {
  auto& st = *state_;
  while (st.buffer.size() <= i && !st.ended) {
    auto t = st.source->pull();
    if (!t) {
      st.ended = true;
      break;
    }
    if (t->c.is_zero()) throw OrderViolation("series emitted a zero coefficient");
    if (!st.buffer.empty() && !st.frame.less(st.buffer.back().g, t->g)) {
      throw OrderViolation("series support is not strictly increasing");
    }
    st.buffer.push_back(std::move(*t));
  }
  return i < st.buffer.size() ? &st.buffer[i] : nullptr;
}

std::vector<Term> SeriesStream::take(std::size_t n) const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Term* t = at(i);
    if (!t) break;
    out.push_back(*t);
  }
  return out;
}

namespace {

class FiniteSource : public SeriesSource {
 public:
  explicit FiniteSource(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::optional<Term> pull() override {
    if (pos_ >= terms_.size()) return std::nullopt;
    return terms_[pos_++];
  }
  bool finitely_backed() const override { return true; }

 private:
  std::vector<Term> terms_;
  std::size_t pos_ = 0;
};

// Pulls up to the next term of `s` whose element is >= g; returns the
// coefficient at g. Charges the budget per pulled term.
Scalar lookup(const SeriesStream& s, const GroupElement& g, Budget* budget) {
  const Frame& f = s.frame();
  // Binary search whatever is already buffered.
  std::size_t have = s.buffered();
  if (have > 0 && !f.less(s.at(have - 1)->g, g)) {
    std::size_t lo = 0;
    std::size_t hi = have;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (f.less(s.at(mid)->g, g)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    const Term* t = s.at(lo);
    return t->g == g ? t->c : Scalar::zero(s.field());
  }
  for (std::size_t i = have;; ++i) {
    if (budget) budget->charge();
    const Term* t = s.at(i);
    if (!t) return Scalar::zero(s.field());
    int c = f.compare(t->g, g);
    if (c == 0) return t->c;
    if (c > 0) return Scalar::zero(s.field());
  }
}

}  // namespace

SeriesStream SeriesStream::finite(std::shared_ptr<const Group> group,
                                  const AlgebraElement& u, Side side) {
  Frame frame(group, side);
  std::vector<Term> terms;
  for (const auto& [g, c] : u.terms()) terms.push_back({g, c});
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return frame.less(a.g, b.g);
  });
  return SeriesStream(frame, u.field(),
                      std::make_shared<FiniteSource>(std::move(terms)));
}

SeriesStream SeriesStream::finite(const Group& group, const AlgebraElement& u,
                                  Side side) {
  return finite(std::make_shared<const Group>(group), u, side);
}

// ---------------------------------------------------------------------------
// rho

namespace {

// Non-owning handle for frames that do not outlive the call.
std::shared_ptr<const Group> borrowed(const Group& group) {
  return std::shared_ptr<const Group>(&group, [](const Group*) {});
}

}  // namespace

GroupElement rho(const Frame& frame, const std::vector<GroupElement>& s,
                 const GroupElement& g) {
  if (s.empty()) throw DomainMismatch("rho over an empty support");
  GroupElement best = frame.act(g, s.front());
  for (std::size_t i = 1; i < s.size(); ++i) {
    GroupElement cand = frame.act(g, s[i]);
    if (frame.less(cand, best)) best = std::move(cand);
  }
  return best;
}

GroupElement rho(const Group& group, const std::vector<GroupElement>& s,
                 const GroupElement& g) {
  return rho(Frame(borrowed(group), Side::Right), s, g);
}

GroupElement rho_inverse(const Frame& frame, const std::vector<GroupElement>& s,
                         const GroupElement& g) {
  if (s.empty()) throw DomainMismatch("rho over an empty support");
  GroupElement best = frame.unact(g, s.front());
  for (std::size_t i = 1; i < s.size(); ++i) {
    GroupElement cand = frame.unact(g, s[i]);
    if (frame.less(best, cand)) best = std::move(cand);
  }
  return best;
}

GroupElement rho_inverse(const Group& group, const std::vector<GroupElement>& s,
                         const GroupElement& g) {
  return rho_inverse(Frame(borrowed(group), Side::Right), s,
                     g);
}

// ---------------------------------------------------------------------------
// Action and linear combinations

namespace {

// Merges shifted copies act(a_i, h) * w_h of several streams.
class MergeSource : public SeriesSource {
 public:
  struct Copy {
    SeriesStream stream;
    std::optional<GroupElement> shift;  // act by this element, or identity
    Scalar weight;
    std::size_t pos = 0;
  };

  MergeSource(Frame frame, std::vector<Copy> copies, BudgetPtr budget)
      : frame_(std::move(frame)), copies_(std::move(copies)), budget_(std::move(budget)) {}

  std::optional<Term> pull() override {
    while (true) {
      // Find the least head among the copies.
      std::optional<GroupElement> least;
      for (auto& c : copies_) {
        auto head = head_of(c);
        if (head && (!least || frame_.less(*head, *least))) least = head;
      }
      if (!least) return std::nullopt;
      if (budget_) budget_->charge();
      std::optional<Scalar> sum;
      for (auto& c : copies_) {
        auto head = head_of(c);
        if (!head || !(*head == *least)) continue;
        Scalar v = c.stream.at(c.pos)->c * c.weight;
        sum = sum ? *sum + v : v;
        ++c.pos;
      }
      if (sum && !sum->is_zero()) return Term{*least, *sum};
    }
  }

  bool finitely_backed() const override {
    return std::all_of(copies_.begin(), copies_.end(),
                       [](const Copy& c) { return c.stream.finitely_backed(); });
  }

 private:
  std::optional<GroupElement> head_of(const Copy& c) const {
    const Term* t = c.stream.at(c.pos);
    if (!t) return std::nullopt;
    return c.shift ? frame_.act(t->g, *c.shift) : t->g;
  }

  Frame frame_;
  std::vector<Copy> copies_;
  BudgetPtr budget_;
};

}  // namespace

SeriesStream act(const SeriesStream& a, const AlgebraElement& x,
                 BudgetPtr budget) {
  if (!(a.field() == x.field())) throw DomainMismatch("series and x over different fields");
  std::vector<MergeSource::Copy> copies;
  for (const auto& [h, c] : x.terms()) copies.push_back({a, h, c, 0});
  return SeriesStream(a.frame(), a.field(),
                      std::make_shared<MergeSource>(a.frame(), std::move(copies),
                                                    std::move(budget)));
}

SeriesStream act_right(const SeriesStream& a, const AlgebraElement& x,
                       BudgetPtr budget) {
  if (a.frame().side() != Side::Right) throw DomainMismatch("act_right needs a right series");
  return act(a, x, std::move(budget));
}

SeriesStream act_left(const AlgebraElement& x, const SeriesStream& b,
                      BudgetPtr budget) {
  if (b.frame().side() != Side::Left) throw DomainMismatch("act_left needs a left series");
  return act(b, x, std::move(budget));
}

SeriesStream linear_combination(const SeriesStream& a, const Scalar& ca,
                                const SeriesStream& b, const Scalar& cb,
                                BudgetPtr budget) {
  if (a.frame().side() != b.frame().side() || !(a.field() == b.field())) {
    throw DomainMismatch("linear combination of incompatible series");
  }
  std::vector<MergeSource::Copy> copies;
  copies.push_back({a, std::nullopt, ca, 0});
  copies.push_back({b, std::nullopt, cb, 0});
  return SeriesStream(a.frame(), a.field(),
                      std::make_shared<MergeSource>(a.frame(), std::move(copies),
                                                    std::move(budget)));
}

Scalar coefficient_at(const SeriesStream& a, const GroupElement& g,
                      std::size_t max_terms) {
  Budget budget(max_terms);
  return lookup(a, g, &budget);
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

class InverseSource : public SeriesSource {
 public:
  InverseSource(SeriesStream a, const AlgebraElement& x, InversionOptions opts)
      : a_(std::move(a)),
        frame_(a_.frame()),
        x_(x),
        opts_(std::move(opts)),
        budget_(opts_.budget),
        remainder_(FrameLess{&frame_}) {
    if (x_.is_zero()) throw ZeroInverse();
    s_ = x_.support();
    if (!opts_.stats) opts_.stats = std::make_shared<InversionStats>();
    audit_ = opts_.audit && a_.finitely_backed();

    wqo::PartialOpFamily<GroupElement> succ;
    succ.arity = 1;
    succ.index_count = s_.size();
    succ.eval = [this](const std::vector<GroupElement>& args,
                       std::size_t j) -> std::optional<GroupElement> {
      const GroupElement& g = args[0];
      GroupElement e = frame_.act(g, s_[j]);
      if (e == rho(frame_, s_, g)) return std::nullopt;
      return rho_inverse(frame_, s_, e);
    };
    wqo::ClosureBudget cb;
    cb.max_elements = static_cast<std::size_t>(-1);
    cb.max_steps = static_cast<std::size_t>(-1);
    closer_ = std::make_unique<wqo::OrderedCloser<GroupElement, FrameLess>>(
        std::vector<wqo::PartialOpFamily<GroupElement>>{succ},
        [this]() -> std::optional<GroupElement> {
          const Term* t = a_.at(seed_pos_);
          if (!t) return std::nullopt;
          ++seed_pos_;
          return rho_inverse(frame_, s_, t->g);
        },
        cb, FrameLess{&frame_}, /*auto_expand=*/false);

    if (audit_) {
      for (std::size_t i = 0; const Term* t = a_.at(i); ++i) {
        remainder_.emplace(t->g, t->c);
        seeds_.insert(rho_inverse(frame_, s_, t->g));
      }
    }
  }

  std::optional<Term> pull() override {
    while (true) {
      auto g = closer_->next();
      if (!g) return std::nullopt;
      budget_.charge();
      ++opts_.stats->y_elements;

      GroupElement tau = rho(frame_, s_, *g);
      Scalar gamma = lookup(a_, tau, &budget_);
      for (const auto& h : s_) {
        GroupElement other = frame_.unact(tau, h);
        if (other == *g) continue;
        auto it = beta_.find(other);
        if (it != beta_.end()) gamma -= it->second * x_.coeff(h);
      }
      Scalar beta = gamma / x_.coeff(frame_.fiber(*g, tau));

      if (!beta.is_zero()) {
        beta_.emplace(*g, beta);
        closer_->expand(*g);
      }
      if (audit_) audit_step(*g, tau, beta);
      if (beta.is_zero()) continue;

      Scalar out = opts_.mutate ? opts_.mutate(*g, beta) : beta;
      if (out.is_zero()) continue;
      return Term{*g, out};
    }
  }

 private:
  void audit_step(const GroupElement& g, const GroupElement& tau,
                  const Scalar& beta) {
    auto& st = *opts_.stats;
    if (!beta.is_zero()) {
      for (const auto& [h, c] : x_.terms()) {
        GroupElement e = frame_.act(g, h);
        Scalar v = beta * c;
        auto [it, inserted] = remainder_.try_emplace(e, -v);
        if (!inserted) {
          it->second -= v;
          if (it->second.is_zero()) {
            remainder_.erase(it);
            continue;
          }
        }
        ++st.containment_checks;
        GroupElement pre = rho_inverse(frame_, s_, e);
        if (!closer_->known(pre) && !seeds_.count(pre)) ++st.containment_failures;
      }
    }
    if (!remainder_.empty() && !frame_.less(tau, remainder_.begin()->first)) {
      ++st.resolution_failures;
    }
  }

  SeriesStream a_;
  Frame frame_;
  AlgebraElement x_;
  std::vector<GroupElement> s_;
  InversionOptions opts_;
  Budget budget_;
  bool audit_ = false;
  std::size_t seed_pos_ = 0;
  std::unique_ptr<wqo::OrderedCloser<GroupElement, FrameLess>> closer_;
  std::map<GroupElement, Scalar> beta_;
  std::map<GroupElement, Scalar, FrameLess> remainder_;
  std::set<GroupElement> seeds_;
};

}  // namespace

SeriesStream dubrovin_invert(const SeriesStream& a, const AlgebraElement& x,
                             InversionOptions options) {
  if (!(a.field() == x.field())) throw DomainMismatch("series and x over different fields");
  return SeriesStream(a.frame(), a.field(),
                      std::make_shared<InverseSource>(a, x, std::move(options)));
}

// ---------------------------------------------------------------------------
// Pairing

Scalar pair(const SeriesStream& a, const SeriesStream& b, std::size_t max_terms) {
  if (a.frame().side() != Side::Right || b.frame().side() != Side::Left) {
    throw DomainMismatch("pair expects a right series and a left series");
  }
  if (!(a.field() == b.field())) throw DomainMismatch("pairing over different fields");
  const Group& group = a.frame().group();
  Scalar zero = Scalar::zero(a.field());
  const Term* a0 = a.at(0);
  const Term* b0 = b.at(0);
  if (!a0 || !b0) return zero;

  // supp a increases, the inverses of supp b decrease (right order), so only
  // the window [min a, max b^{-1}] matters.
  const GroupElement amin = a0->g;
  const GroupElement bmax = group.inv(b0->g);
  std::size_t pulls = 2;
  auto charge = [&]() {
    if (++pulls > max_terms) {
      throw BudgetExceeded("pairing did not close within " + std::to_string(max_terms) +
                           " terms");
    }
  };
  std::map<GroupElement, Scalar> alpha;
  for (std::size_t i = 0;; ++i) {
    if (i > 0) charge();
    const Term* t = a.at(i);
    if (!t || bmax < t->g) break;
    alpha.emplace(t->g, t->c);
  }
  Scalar sum = zero;
  for (std::size_t i = 0;; ++i) {
    if (i > 0) charge();
    const Term* t = b.at(i);
    if (!t) break;
    GroupElement ginv = group.inv(t->g);
    if (ginv < amin) break;
    auto it = alpha.find(ginv);
    if (it != alpha.end()) sum += it->second * t->c;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Checks

RoundTripReport round_trip_check(const Group& group, const AlgebraElement& a,
                                 const AlgebraElement& x, std::size_t k,
                                 InversionOptions options, Side side) {
  auto gp = std::make_shared<const Group>(group);
  auto as = SeriesStream::finite(gp, a, side);
  auto b = dubrovin_invert(as, x, std::move(options));
  RoundTripReport rep;
  auto terms = b.take(k);
  rep.b_terms = terms.size();
  rep.b_ended = b.at(k) == nullptr;

  AlgebraElement bb(a.field());
  for (const auto& t : terms) bb.add_term(t.g, t.c);
  AlgebraElement prod =
      side == Side::Right ? algebra_mul(group, bb, x) : algebra_mul(group, x, bb);

  const Frame& frame = as.frame();
  std::optional<GroupElement> horizon;
  if (!rep.b_ended && !terms.empty()) {
    horizon = rho(frame, x.support(), terms.back().g);
    rep.horizon = *horizon;
  }
  std::set<GroupElement> keys;
  for (const auto& [g, c] : prod.terms()) keys.insert(g);
  for (const auto& [g, c] : a.terms()) keys.insert(g);
  for (const auto& g : keys) {
    if (horizon && frame.less(*horizon, g)) continue;
    ++rep.compared;
    if (!(prod.coeff(g) == a.coeff(g))) ++rep.mismatches;
  }
  return rep;
}

bool least_term_witness(const Group& group, const AlgebraElement& a,
                        const AlgebraElement& x) {
  if (a.is_zero() || x.is_zero()) return false;
  AlgebraElement prod = algebra_mul(group, a, x);
  if (prod.is_zero()) return false;
  const auto& [g0, c0] = *a.terms().begin();
  auto s = x.support();
  GroupElement tau = rho(group, s, g0);
  GroupElement h = group.mul(group.inv(g0), tau);
  const auto& [p0, pc] = *prod.terms().begin();
  return p0 == tau && pc == c0 * x.coeff(h);
}

AlgebraElement random_algebra_element(const Group& group, RingDescriptor field,
                                      std::size_t max_terms, long spread,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<long> exp(-spread, spread);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_terms));
  std::uniform_int_distribution<long> coeff(1, 4);
  std::bernoulli_distribution flip(0.5);
  const bool imaginary = !(group.c().im() == 0);
  AlgebraElement u(field);
  while (u.is_zero()) {
    std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
      long re = exp(rng);
      long im = imaginary ? exp(rng) : 0;
      long c = coeff(rng) * (flip(rng) ? -1 : 1);
      u.add_term(group.make(re, im, exp(rng)), Scalar(field, c));
    }
  }
  return u;
}

Q2Report probe_q2(const Group& group, RingDescriptor field,
                  const AlgebraElement& x1, const AlgebraElement& x2,
                  const AlgebraElement& y1, const AlgebraElement& y2,
                  std::size_t trials, std::uint64_t seed, std::size_t budget) {
  auto gp = std::make_shared<const Group>(group);
  std::mt19937_64 rng(seed);
  Q2Report rep;
  for (std::size_t t = 0; t < trials; ++t) {
    AlgebraElement a = random_algebra_element(group, field, 3, 2, rng);
    ++rep.trials;
    auto bud = std::make_shared<Budget>(budget);
    try {
      auto as = SeriesStream::finite(gp, a);
      auto s1 = act_right(as, y1, bud);
      InversionOptions opts;
      opts.budget = budget;
      auto v = dubrovin_invert(act_right(as, x1, bud), x2, opts);
      auto s2 = act_right(v, y2, bud);
      auto d = linear_combination(s1, Scalar::one(field), s2, -Scalar::one(field), bud);
      if (d.at(0)) {
        ++rep.nonzero;
      } else {
        ++rep.exact_zero;
      }
    } catch (const BudgetExceeded&) {
      ++rep.undetermined;
    }
  }
  if (rep.exact_zero > 0 && rep.nonzero > 0) {
    rep.evidence = "candidate non-injectivity: the map vanished on a nonzero input";
  } else if (rep.nonzero == rep.trials) {
    rep.evidence = "nonzero image found within prefix for every sample";
  } else if (rep.exact_zero == rep.trials) {
    rep.evidence = "appears zero on every sample";
  } else {
    rep.evidence = "inconclusive within budget";
  }
  return rep;
}

}  // namespace embedlab
