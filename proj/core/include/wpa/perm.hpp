#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wpa {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}, stored as its image sequence.
class Permutation {
 public:
  explicit Permutation(std::size_t degree = 1);
  explicit Permutation(std::vector<Point> images);

  /// Builds a permutation from disjoint 0-based cycles.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  std::size_t order() const;
  std::vector<std::vector<Point>> cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// (p * q)(x) = p(q(x)): q is applied first.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

std::ostream& operator<<(std::ostream& os, const Permutation& p);
std::string to_cycle_string(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

inline constexpr std::size_t kDefaultElementCap = 20000;

/// A permutation group given by generators. The element list is materialized
/// on demand by generate() and is then sorted lexicographically by images.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  bool materialized() const { return elements_ != nullptr; }
  const std::vector<Permutation>& elements() const;
  /// Exact order if materialized or known from a formula.
  const std::optional<mpz_class>& order() const { return order_; }
  void set_known_order(mpz_class order) { order_ = std::move(order); }

  /// Closure of the generators; throws CapExceeded past `cap` elements.
  void materialize(std::size_t cap = kDefaultElementCap);

  std::size_t index_of(const Permutation& p) const;  // binary search
  bool contains(const Permutation& p) const;

  /// Short description, e.g. the spec text it was parsed from.
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const std::vector<Permutation>> elements_;
  std::optional<mpz_class> order_;
  std::string label_;
};

/// Result of generate(): the group (materialized on success) and whether the
/// element cap stopped the closure.
struct GenerateResult {
  PermGroup group;
  bool cap_exceeded = false;
};

/// Breadth-first closure of `gens`. On cap overflow the group is returned
/// unmaterialized with its order unknown and `cap_exceeded` set.
GenerateResult generate(const std::vector<Permutation>& gens,
                        std::size_t cap = kDefaultElementCap);

/// Like generate() but throws CapExceeded instead of flagging.
PermGroup generate_or_throw(const std::vector<Permutation>& gens,
                            std::size_t cap = kDefaultElementCap);

/// Orbit partition of the domain under the generators; blocks are sorted and
/// listed by smallest point.
std::vector<std::vector<Point>> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

}  // namespace wpa
