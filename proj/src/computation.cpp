#include "markt/computation.hpp"

#include <algorithm>
#include <stdexcept>

namespace markt {

Computation Computation::extended(const Lts& lts, EdgeId id) const {
  const Edge& e = lts.edge(id);
  if (e.source != end_) throw std::invalid_argument("edge does not continue the computation");
  Computation c = *this;
  const Rational& total = lts.total_rate(e.source);
  c.edges_.push_back(id);
  c.trace_.push_back(e.action);
  c.probability_ *= e.rate / total;
  c.times_.push_back(1 / total);
  c.end_ = e.target;
  return c;
}

EpsilonSpec::EpsilonSpec(Rational scalar) : values_{std::move(scalar)} {
  if (values_.front() < 0) throw std::invalid_argument("negative tolerance");
}

EpsilonSpec::EpsilonSpec(std::vector<Rational> per_step) : values_(std::move(per_step)) {
  if (values_.empty()) throw std::invalid_argument("empty tolerance vector");
  for (const auto& v : values_)
    if (v < 0) throw std::invalid_argument("negative tolerance");
}

const Rational& EpsilonSpec::at(std::size_t step) const { return values_[std::min(step, values_.size() - 1)]; }

bool EpsilonSpec::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

ComputationSet enumerate(const Lts& lts, StateId from, std::size_t max_len) {
  ComputationSet out{Computation(from)};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // copy: push_back below may reallocate
      Computation base = out[i];
      for (EdgeId e : lts.outgoing(base.end())) out.push_back(base.extended(lts, e));
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

bool pairwise_independent(const ComputationSet& set) {
  std::vector<const Computation*> sorted;
  sorted.reserve(set.size());
  for (const auto& c : set) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const Computation* a, const Computation* b) {
    if (a->start() != b->start()) return a->start() < b->start();
    return a->edges() < b->edges();
  });
  // In lexicographic order a proper prefix sorts directly before one of its extensions.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& a = *sorted[i - 1];
    const auto& b = *sorted[i];
    if (a.start() != b.start() || a.length() >= b.length()) continue;
    if (std::equal(a.edges().begin(), a.edges().end(), b.edges().begin())) return false;
  }
  return true;
}

Rational prob_set(const ComputationSet& set) {
  if (!pairwise_independent(set)) throw std::invalid_argument("prob_set: computations are not independent");
  Rational sum = 0;
  for (const auto& c : set) sum += c.probability();
  return sum;
}

bool fits(const Computation& c, const Theta& theta) {
  if (c.length() > theta.size()) return false;
  for (std::size_t i = 0; i < c.length(); ++i)
    if (c.times()[i] > theta[i]) return false;
  return true;
}

bool fits(const Computation& c, const Theta& theta, const EpsilonSpec& eps) {
  if (c.length() > theta.size()) return false;
  for (std::size_t i = 0; i < c.length(); ++i)
    if (c.times()[i] > theta[i] + eps.at(i)) return false;
  return true;
}

bool tracks(const std::vector<Rational>& times, const std::vector<Rational>& ref_times, const EpsilonSpec& eps,
            Band band) {
  if (times.size() > ref_times.size()) return false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Rational& t = times[i];
    const Rational& r = ref_times[i];
    if (t > r + eps.at(i)) return false;
    if (band == Band::one_sided ? t < r : t < r - eps.at(i)) return false;
  }
  return true;
}

ComputationSet filter_le_theta(const ComputationSet& c, const Theta& theta) {
  ComputationSet out;
  for (const auto& x : c)
    if (fits(x, theta)) out.push_back(x);
  return out;
}

ComputationSet filter_len(const ComputationSet& c, std::size_t length) {
  ComputationSet out;
  for (const auto& x : c)
    if (x.length() == length) out.push_back(x);
  return out;
}

ComputationSet filter_slow_simple(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps) {
  ComputationSet out;
  for (const auto& x : c)
    if (fits(x, theta, eps)) out.push_back(x);
  return out;
}

namespace {

ComputationSet filter_ref(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps,
                          const ComputationSet& ref, Band band) {
  ComputationSet ref_fit = filter_le_theta(ref, theta);
  ComputationSet out;
  for (const auto& x : c) {
    bool keep = fits(x, theta) || std::any_of(ref_fit.begin(), ref_fit.end(), [&](const Computation& r) {
                  return tracks(x.times(), r.times(), eps, band);
                });
    if (keep) out.push_back(x);
  }
  return out;
}

}  // namespace

ComputationSet filter_slow_ref(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps,
                               const ComputationSet& ref) {
  return filter_ref(c, theta, eps, ref, Band::one_sided);
}

ComputationSet filter_pm_ref(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps,
                             const ComputationSet& ref) {
  return filter_ref(c, theta, eps, ref, Band::two_sided);
}

}  // namespace markt
