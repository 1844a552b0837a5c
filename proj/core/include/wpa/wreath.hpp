#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wpa/perm.hpp"
#include "wpa/tower.hpp"

namespace wpa {

inline constexpr std::size_t kDefaultDegreeCap = 1'000'000;

enum class ActionKind { Product, Imprimitive };
const char* to_string(ActionKind k);

/// Bijection between abstract points and dense integers.
///   Product:     a function w : Delta -> Omega is the integer sum_d w(d) * |Omega|^d
///                (coordinate 0 least significant).
///   Imprimitive: the pair (w, d) is the integer w + |Omega| * d.
struct PointCodec {
  ActionKind kind = ActionKind::Product;
  std::size_t omega = 1;
  std::size_t delta = 1;

  std::size_t degree() const;
  Point encode(const std::vector<Point>& coords) const;
  std::vector<Point> decode(Point x) const;
};

/// A wreath product A wr B. Generators of `result` are, in this order: each
/// generator of A placed in coordinate d (for d = 0, 1, ...), then one
/// permutation per generator b of B. In product action b sends the function
/// w to w o b^{-1}, so the value at d moves to b(d); in imprimitive action it
/// sends (w, d) to (w, b(d)).
struct WreathProduct {
  PermGroup bottom;
  PermGroup top;
  ActionKind kind;
  PermGroup result;
  PointCodec codec;
  std::size_t base_generator_count = 0;

  /// The generators of the base subgroup A^Delta.
  std::vector<Permutation> base_generators() const;
};

/// Throws CapExceeded when |Omega|^|Delta| exceeds `degree_cap`. The result
/// carries the formula order |A|^|Delta| * |B| when both orders are known;
/// it is not materialized.
WreathProduct product_action(const PermGroup& A, const PermGroup& B,
                             std::size_t degree_cap = kDefaultDegreeCap);
WreathProduct imprimitive_action(const PermGroup& A, const PermGroup& B,
                                 std::size_t degree_cap = kDefaultDegreeCap);

/// One truncation W_k. `group` is present when the degree fits the cap;
/// it is materialized when its order also fits the element cap.
struct WreathLevel {
  std::size_t k = 0;
  TowerInt degree;  // mhat_k
  TowerInt order;   // |S_k|^mhat_{k-1} * |W_{k-1}|
  std::optional<PermGroup> group;
  std::size_t base_generator_count = 0;
};

struct IteratedWreath {
  std::vector<PermGroup> sequence;  // S_1, ..., S_n
  std::vector<WreathLevel> levels;  // levels[k-1] is W_k
  std::vector<TowerInt> degrees;    // degrees[k] = mhat_k, degrees[0] = 1

  const WreathLevel& level(std::size_t k) const;
};

struct WreathOptions {
  std::size_t degree_cap = kDefaultDegreeCap;
  std::size_t element_cap = kDefaultElementCap;
  bool materialize = true;
};

/// W_1 = S_1 and W_k = S_k wr_pa W_{k-1}, for k = 1..n.
IteratedWreath iterated_wpa(const std::vector<PermGroup>& seq, std::size_t n,
                            const WreathOptions& opts = {});

/// Coordinate permutation of an element of W_k = S_k wr_pa W_{k-1}, where the
/// domain of W_k is Omega_k^D with |Omega_k| = omega and D = |domain of W_{k-1}|.
Permutation top_component(const Permutation& g, std::size_t omega, std::size_t D);

struct ProjectionCheck {
  std::size_t k = 0;
  bool homomorphism = false;
  bool surjective = false;
  bool kernel_is_base = false;
  std::size_t source_order = 0;
  std::size_t image_order = 0;
  std::size_t kernel_order = 0;
  bool ok() const { return homomorphism && surjective && kernel_is_base; }
};

/// Checks that g -> top_component(g) is a surjective homomorphism
/// W_k -> W_{k-1} with kernel the base subgroup. Needs k >= 2 and both levels
/// materialized.
ProjectionCheck project(const IteratedWreath& W, std::size_t k);

}  // namespace wpa
