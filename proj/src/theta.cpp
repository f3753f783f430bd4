#include "markt/similarity.hpp"

#include <algorithm>
#include <map>

namespace markt {

bool ThetaSet::contains(const Theta& theta) const {
  return std::any_of(entries.begin(), entries.end(), [&](const ThetaEntry& e) { return e.theta == theta; });
}

ThetaSet theta_canonical(const ComputationSet& successful) {
  std::map<std::size_t, std::vector<std::size_t>> by_length;
  for (std::size_t i = 0; i < successful.size(); ++i)
    if (successful[i].length() > 0) by_length[successful[i].length()].push_back(i);

  ThetaSet out;
  for (const auto& [length, all] : by_length) {
    struct Node {
      std::vector<std::size_t> members;
      Theta bound;
    };
    std::vector<Node> level{{all, {}}};
    for (std::size_t step = 0; step < length; ++step) {
      std::vector<Node> next;
      for (const auto& node : level) {
        std::vector<Rational> values;
        for (auto m : node.members) values.push_back(successful[m].times()[step]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (const auto& k : values) {
          Node child{{}, node.bound};
          child.bound.push_back(k);
          for (auto m : node.members)
            if (successful[m].times()[step] <= k) child.members.push_back(m);
          next.push_back(std::move(child));
        }
      }
      level = std::move(next);
    }
    for (auto& leaf : level) {
      // The leaf holds every computation within its bound; its canonical
      // sequence is the stepwise maximum over exactly those computations.
      Theta theta(length, Rational(0));
      for (auto m : leaf.members)
        for (std::size_t i = 0; i < length; ++i) theta[i] = std::max(theta[i], successful[m].times()[i]);
      if (!out.contains(theta)) out.entries.push_back({std::move(theta), std::move(leaf.members)});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const ThetaEntry& a, const ThetaEntry& b) {
    if (a.theta.size() != b.theta.size()) return a.theta.size() < b.theta.size();
    return a.theta < b.theta;
  });
  return out;
}

ThetaSet theta_canonical(const Lts& process, const CanonicalTest& t, std::size_t max_len, std::size_t cap) {
  return theta_canonical(successful_computations(process, t, max_len, cap).computations);
}

Rational prob_within(const ComputationSet& successful, const Theta& theta) {
  Rational sum = 0;
  for (const auto& c : successful)
    if (c.length() == theta.size() && fits(c, theta)) sum += c.probability();
  return sum;
}

}  // namespace markt
