#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "wpa/perm.hpp"

namespace wpa {

inline constexpr std::size_t kDefaultLatticeCap = 2000;

/// Multiplication table of a materialized group. Element i is
/// G.elements()[i]; mul(i, j) is the index of elements[i] o elements[j].
class GroupTable {
 public:
  explicit GroupTable(const PermGroup& G);

  std::size_t size() const { return n_; }
  std::uint16_t mul(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  std::uint16_t inv(std::size_t i) const { return inv_[i]; }
  std::uint16_t identity() const { return id_; }
  std::size_t order_of(std::size_t i) const { return ord_[i]; }

 private:
  std::size_t n_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::size_t> ord_;
  std::uint16_t id_ = 0;
};

/// A subgroup as a bit mask over the parent's element indices.
struct Subgroup {
  std::vector<std::uint64_t> bits;
  std::size_t order = 0;
  std::vector<std::uint16_t> generators;  // a generating set of minimal size
  std::size_t rank = 0;                     // d(H), the minimal number of generators

  bool contains(std::size_t i) const { return (bits[i / 64] >> (i % 64)) & 1U; }
  std::vector<std::size_t> elements() const;
};

struct LatticeOptions {
  std::size_t order_cap = kDefaultLatticeCap;
  std::size_t subgroup_cap = 1'000'000;
};

/// All subgroups of a materialized group, sorted by order and then by the
/// lowest element index on which two masks differ (the mask holding it first).
/// Subgroups are found layer by layer: layer 1 is the cyclic subgroups and
/// layer k holds the new joins <H, y> of layer k-1 subgroups with single
/// elements, so the layer of discovery equals d(H).
class SubgroupLattice {
 public:
  SubgroupLattice(const PermGroup& G, const LatticeOptions& opts = {});

  const PermGroup& parent() const { return parent_; }
  const GroupTable& table() const { return table_; }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  std::size_t size() const { return subgroups_.size(); }
  std::size_t group_order() const { return table_.size(); }
  std::size_t index(std::size_t i) const { return group_order() / subgroups_[i].order; }
  /// Position of an element of the parent in the table.
  std::size_t element_index(const Permutation& p) const { return parent_.index_of(p); }

 private:
  PermGroup parent_;
  GroupTable table_;
  std::vector<Subgroup> subgroups_;
};

SubgroupLattice subgroup_lattice(const PermGroup& G, const LatticeOptions& opts = {});

/// Number of subgroups of index at most n.
mpz_class s_n(const SubgroupLattice& L, const mpz_class& n);
/// Minimal index of a proper subgroup; throws for the trivial group.
std::size_t minimal_index(const SubgroupLattice& L);
/// Maximum of d(H) over all subgroups H.
std::size_t rank(const SubgroupLattice& L);
/// Index of a subgroup witnessing the rank.
std::size_t rank_witness(const SubgroupLattice& L);

struct ElemAbelianInfo {
  unsigned long p = 0;
  std::size_t e = 0;
  std::size_t witness = 0;  // index into the lattice; order p^e
};
/// For each prime p dividing |G| (ascending), the largest e with C_p^e <= G.
std::vector<ElemAbelianInfo> elem_abelian_max(const SubgroupLattice& L);

/// Number of k-dimensional subspaces of F_p^e.
mpz_class gaussian_binomial(unsigned long e, unsigned long k, unsigned long p);
/// Total number of subspaces of F_p^e.
mpz_class galois_number(unsigned long e, unsigned long p);

/// (n, s_n) for n = 1..|G|.
std::vector<std::pair<std::size_t, mpz_class>> s_table(const SubgroupLattice& L);
std::string s_table_csv(const SubgroupLattice& L);
/// Orders, indices and counts per index.
nlohmann::ordered_json lattice_summary(const SubgroupLattice& L);

}  // namespace wpa
