#include "wpa/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "wpa/error.hpp"

namespace wpa {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree == 0) throw PreconditionError("permutation degree must be positive");
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw PreconditionError("permutation degree must be positive");
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) throw PreconditionError("image sequence is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point x = cycle[i];
      if (x >= degree) throw PreconditionError("cycle point " + std::to_string(x) + " out of range");
      if (used[x]) throw PreconditionError("cycles are not disjoint at point " + std::to_string(x));
      used[x] = true;
      p.images_[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation r;
  r.images_ = std::move(inv);
  return r;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<Point> cycle;
    for (Point x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  for (const auto& c : cycles()) result = std::lcm(result, c.size());
  return result;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw PreconditionError("compose: degree mismatch (" + std::to_string(p.degree()) + " vs " +
                            std::to_string(q.degree()) + ")");
  std::vector<Point> out(p.degree());
  auto pi = p.images();
  auto qi = q.images();
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = pi[qi[x]];
  return Permutation(std::move(out));
}

std::string to_cycle_string(const Permutation& p) {
  auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << to_cycle_string(p); }

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image words
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0) throw PreconditionError("group degree must be positive");
  if (generators_.empty()) throw PreconditionError("generator list must be non-empty");
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw PreconditionError("generator degree differs from group degree");
}

const std::vector<Permutation>& PermGroup::elements() const {
  if (!elements_) throw PreconditionError("group '" + label_ + "' is not materialized");
  return *elements_;
}

void PermGroup::materialize(std::size_t cap) {
  if (elements_) return;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue;
  Permutation id(degree_);
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& s : generators_) {
      Permutation y = compose(s, queue[head]);
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw CapExceeded("cap exceeded: closure of '" + label_ + "' has more than " +
                            std::to_string(cap) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  order_ = mpz_class(static_cast<unsigned long>(queue.size()));
  elements_ = std::make_shared<const std::vector<Permutation>>(std::move(queue));
}

std::size_t PermGroup::index_of(const Permutation& p) const {
  const auto& els = elements();
  auto it = std::lower_bound(els.begin(), els.end(), p);
  if (it == els.end() || *it != p) throw PreconditionError("permutation is not an element of the group");
  return static_cast<std::size_t>(it - els.begin());
}

bool PermGroup::contains(const Permutation& p) const {
  const auto& els = elements();
  return std::binary_search(els.begin(), els.end(), p);
}

GenerateResult generate(const std::vector<Permutation>& gens, std::size_t cap) {
  if (gens.empty()) throw PreconditionError("generate: empty generator list");
  PermGroup g(gens.front().degree(), gens);
  try {
    g.materialize(cap);
    return {std::move(g), false};
  } catch (const CapExceeded&) {
    return {PermGroup(gens.front().degree(), gens), true};
  }
}

PermGroup generate_or_throw(const std::vector<Permutation>& gens, std::size_t cap) {
  if (gens.empty()) throw PreconditionError("generate: empty generator list");
  PermGroup g(gens.front().degree(), gens);
  g.materialize(cap);
  return g;
}

std::vector<std::vector<Point>> orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<int> block(n, -1);
  std::vector<std::vector<Point>> out;
  for (Point start = 0; start < n; ++start) {
    if (block[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<Point> orbit{start};
    block[start] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& s : g.generators()) {
        Point y = s(orbit[i]);
        if (block[y] < 0) {
          block[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

}  // namespace wpa
