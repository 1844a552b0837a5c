#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/lattice.hpp"
#include "wpa/wreath.hpp"

using namespace wpa;

namespace {

PermGroup materialized(const std::string& spec) {
  auto g = parse_group_spec(spec);
  g.materialize();
  return g;
}

mpz_class upow(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

}  // namespace

TEST(Lattice, AgreesWithBruteForce) {
  std::vector<PermGroup> groups;
  for (const char* s : {"cyc:1", "cyc:2", "cyc:6", "perm:4:(0 1);(2 3)", "sym:3", "cyc:8", "perm:6:(0 1);(2 3);(4 5)",
                        "alt:4", "perm:5:(0 1 2);(3 4)", "perm:6:(0 1 2);(3 4 5)"})
    groups.push_back(materialized(s));
  auto w = product_action(parse_group_spec("cyc:2"), parse_group_spec("cyc:2"));
  w.result.materialize();
  groups.push_back(w.result);
  auto w2 = product_action(parse_group_spec("cyc:3"), parse_group_spec("cyc:2"));
  w2.result.materialize();
  groups.push_back(w2.result);  // order 18

  for (const auto& G : groups) {
    const auto L = subgroup_lattice(G);
    const auto ref = oracle::brute_lattice(G.generators());
    ASSERT_EQ(L.group_order(), ref.order);
    EXPECT_EQ(L.size(), ref.subgroups.size()) << G.label();
    std::set<std::vector<std::size_t>> got;
    for (const auto& H : L.subgroups()) {
      std::vector<std::size_t> els;
      for (auto i : H.elements()) {
        // translate to the oracle's element order (both sort image vectors)
        els.push_back(i);
      }
      got.insert(els);
      EXPECT_EQ(H.elements().size(), H.order);
    }
    std::set<std::vector<std::size_t>> want(ref.subgroups.begin(), ref.subgroups.end());
    EXPECT_EQ(got, want) << G.label();
    for (std::size_t n = 1; n <= L.group_order() + 1; ++n)
      EXPECT_EQ(s_n(L, mpz_class(static_cast<unsigned long>(n))), ref.s_n(n)) << G.label() << " n=" << n;
  }
}

TEST(Lattice, NamedCounts) {
  EXPECT_EQ(subgroup_lattice(materialized("perm:4:(0 1);(2 3)")).size(), 5u);
  EXPECT_EQ(subgroup_lattice(materialized("sym:3")).size(), 6u);
  auto w = product_action(parse_group_spec("cyc:2"), parse_group_spec("cyc:2"));
  w.result.materialize();
  EXPECT_EQ(subgroup_lattice(w.result).size(), 10u);
  EXPECT_EQ(subgroup_lattice(materialized("sym:4")).size(), 30u);
  EXPECT_EQ(subgroup_lattice(materialized("psl2:5")).size(), 59u);
  EXPECT_EQ(subgroup_lattice(materialized("psl2:7")).size(), 179u);
}

TEST(Lattice, CanonicalOrderingIsDeterministic) {
  const auto a = subgroup_lattice(materialized("alt:4"));
  const auto g = parse_group_spec("perm:4:(1 2 3);(0 1 2)");  // same group, other generators
  auto gm = g;
  gm.materialize();
  const auto b = subgroup_lattice(gm);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.subgroups()[i].bits, b.subgroups()[i].bits);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a.subgroups()[i - 1].order, a.subgroups()[i].order);
}

TEST(Lattice, SnExamplesAndMonotone) {
  const auto v4 = subgroup_lattice(materialized("perm:4:(0 1);(2 3)"));
  EXPECT_EQ(s_n(v4, 1), 1);
  EXPECT_EQ(s_n(v4, 4), 5);
  const auto s3 = subgroup_lattice(materialized("sym:3"));
  EXPECT_EQ(s_n(s3, 2), 2);
  for (const char* s : {"sym:4", "psl2:5", "alt:4", "cyc:12"}) {
    const auto L = subgroup_lattice(materialized(s));
    mpz_class prev = 0;
    for (std::size_t n = 1; n <= L.group_order() + 3; ++n) {
      const mpz_class v = s_n(L, mpz_class(static_cast<unsigned long>(n)));
      EXPECT_GE(v, prev);
      EXPECT_LE(v, static_cast<unsigned long>(L.size()));
      prev = v;
    }
    EXPECT_EQ(prev, static_cast<unsigned long>(L.size()));
  }
}

TEST(Lattice, MinimalIndex) {
  EXPECT_EQ(minimal_index(subgroup_lattice(materialized("alt:5"))), 5u);
  EXPECT_EQ(minimal_index(subgroup_lattice(materialized("sym:3"))), 2u);
  for (unsigned p : {2u, 3u, 5u, 7u, 11u})
    EXPECT_EQ(minimal_index(subgroup_lattice(materialized("cyc:" + std::to_string(p)))), p);
  EXPECT_THROW(minimal_index(subgroup_lattice(materialized("cyc:1"))), PreconditionError);
  for (const char* s : {"sym:4", "psl2:7", "alt:4", "cyc:12", "sym:3"}) {
    const auto L = subgroup_lattice(materialized(s));
    std::size_t largest = 0;
    for (const auto& H : L.subgroups())
      if (H.order < L.group_order()) largest = std::max(largest, H.order);
    EXPECT_EQ(minimal_index(L) * largest, L.group_order()) << s;
  }
}

TEST(Lattice, Rank) {
  EXPECT_EQ(rank(subgroup_lattice(materialized("cyc:12"))), 1u);
  EXPECT_EQ(rank(subgroup_lattice(materialized("cyc:7"))), 1u);
  EXPECT_EQ(rank(subgroup_lattice(materialized("perm:4:(0 1);(2 3)"))), 2u);
  EXPECT_EQ(rank(subgroup_lattice(materialized("sym:3"))), 2u);
  EXPECT_EQ(rank(subgroup_lattice(materialized(oracle::elem_abelian_spec(2, 4)))), 4u);
  EXPECT_EQ(rank(subgroup_lattice(materialized("sym:4"))), 2u);
}

TEST(Lattice, RankOfSubgroupsIsMonotone) {
  // d(H) <= rk(G) for all H, and d(H) agrees with a rank recomputed from H's own lattice.
  const auto L = subgroup_lattice(materialized("sym:4"));
  const std::size_t r = rank(L);
  for (const auto& H : L.subgroups()) {
    EXPECT_LE(H.rank, r);
    std::vector<Permutation> gens;
    for (auto i : H.generators) gens.push_back(L.parent().elements()[i]);
    if (gens.empty()) gens.push_back(Permutation(4));
    const auto sub = generate_or_throw(gens);
    EXPECT_EQ(*sub.order(), static_cast<unsigned long>(H.order));
    EXPECT_EQ(H.generators.size(), H.rank);
    if (H.order > 1) {
      // no generating set of size rank-1 exists among pairs/singles (rank <= 2 here)
      if (H.rank == 2) {
        for (auto x : H.elements()) {
          const auto c = generate_or_throw({L.parent().elements()[x]});
          EXPECT_LT(*c.order(), static_cast<unsigned long>(H.order));
        }
      }
    }
  }
}

TEST(Lattice, ElementaryAbelian) {
  {
    const auto info = elem_abelian_max(subgroup_lattice(materialized("perm:4:(0 1);(2 3)")));
    ASSERT_EQ(info.size(), 1u);
    EXPECT_EQ(info[0].p, 2u);
    EXPECT_EQ(info[0].e, 2u);
  }
  {
    const auto info = elem_abelian_max(subgroup_lattice(materialized("sym:3")));
    ASSERT_EQ(info.size(), 2u);
    EXPECT_EQ(info[0].p, 2u);
    EXPECT_EQ(info[0].e, 1u);
    EXPECT_EQ(info[1].p, 3u);
    EXPECT_EQ(info[1].e, 1u);
  }
  {
    const auto L = subgroup_lattice(materialized("psl2:5"));
    const auto info = elem_abelian_max(L);
    ASSERT_EQ(info.size(), 3u);
    EXPECT_EQ(info[0].p, 2u);
    EXPECT_EQ(info[0].e, 2u);
    EXPECT_EQ(info[1].p, 3u);
    EXPECT_EQ(info[1].e, 1u);
    EXPECT_EQ(info[2].p, 5u);
    EXPECT_EQ(info[2].e, 1u);
    for (const auto& i : info) EXPECT_EQ(L.subgroups()[i.witness].order, upow(i.p, i.e).get_ui());
  }
}

TEST(Galois, GaussianBinomial) {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
    for (unsigned long e = 0; e <= 9; ++e) {
      EXPECT_EQ(gaussian_binomial(e, 0, p), 1);
      EXPECT_EQ(gaussian_binomial(e, e, p), 1);
      for (unsigned long k = 0; k <= e; ++k) EXPECT_EQ(gaussian_binomial(e, k, p), gaussian_binomial(e, e - k, p));
      if (e >= 1) {
        // q-Pascal: [e,k] = [e-1,k-1] + q^k [e-1,k]
        for (unsigned long k = 1; k < e; ++k)
          EXPECT_EQ(gaussian_binomial(e, k, p),
                    gaussian_binomial(e - 1, k - 1, p) + upow(p, k) * gaussian_binomial(e - 1, k, p));
      }
    }
  EXPECT_EQ(galois_number(2, 2), 5);
  EXPECT_EQ(galois_number(4, 2), 67);
}

TEST(Galois, MatchesSubspaceEnumeration) {
  for (unsigned e = 0; e <= 8; ++e) EXPECT_EQ(galois_number(e, 2), oracle::subspace_count(e, 2)) << "e=" << e;
  for (unsigned e = 0; e <= 4; ++e) EXPECT_EQ(galois_number(e, 3), oracle::subspace_count(e, 3)) << "e=" << e;
  for (unsigned e = 0; e <= 3; ++e) EXPECT_EQ(galois_number(e, 5), oracle::subspace_count(e, 5)) << "e=" << e;
}

TEST(Galois, MatchesElementaryAbelianLattice) {
  // every C_p^e with p^e <= 256
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    unsigned long q = p;
    for (unsigned e = 1; q <= 256; ++e, q *= p) {
      auto G = materialized(oracle::elem_abelian_spec(p, e));
      EXPECT_EQ(galois_number(e, p), static_cast<unsigned long>(subgroup_lattice(G).size())) << p << "^" << e;
    }
  }
  for (unsigned p = 17; p <= 251; ++p)
    if (oracle::trial_prime(p)) {
      auto G = materialized("cyc:" + std::to_string(p));
      EXPECT_EQ(galois_number(1, p), static_cast<unsigned long>(subgroup_lattice(G).size()));
    }
}

TEST(Galois, MiddleDimensionLowerBound) {
  for (unsigned long p : {2ul, 3ul, 5ul})
    for (unsigned long e = 1; e <= 12; ++e) EXPECT_GE(galois_number(e, p), upow(p, e * e / 4)) << p << "^" << e;
}

TEST(Lattice, Caps) {
  EXPECT_THROW(subgroup_lattice(materialized("sym:7")), CapExceeded);
  LatticeOptions small;
  small.subgroup_cap = 10;
  EXPECT_THROW(subgroup_lattice(materialized("sym:4"), small), CapExceeded);
  // an unmaterialized group is closed on the fly, under the lattice cap
  EXPECT_EQ(subgroup_lattice(parse_group_spec("sym:3")).size(), 6u);
  EXPECT_THROW(subgroup_lattice(parse_group_spec("sym:7")), CapExceeded);
}

TEST(Lattice, Emitters) {
  const auto L = subgroup_lattice(materialized("sym:3"));
  EXPECT_EQ(s_table_csv(L), "n,s_n\n1,1\n2,2\n3,5\n4,5\n5,5\n6,6\n");
  const auto j = lattice_summary(L);
  EXPECT_EQ(j["subgroups"], 6);
  EXPECT_EQ(j["rank"], 2);
}
