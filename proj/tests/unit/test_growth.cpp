#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/growth.hpp"

using namespace wpa;

TEST(Growth, LOfN) {
  const std::vector<unsigned long> mu{2, 3, 5};
  EXPECT_EQ(l_of_n(mu, 1), 0u);
  EXPECT_EQ(l_of_n(mu, 2), 1u);
  EXPECT_EQ(l_of_n(mu, 3), 2u);
  EXPECT_EQ(l_of_n(mu, 4), 2u);
  EXPECT_THROW(l_of_n(mu, 5), PreconditionError);
  // non-decreasing, with jumps exactly at mu values
  const std::vector<unsigned long> mu2{5, 5, 14, 18, 20};
  std::size_t prev = 0;
  for (unsigned long n = 1; n < 20; ++n) {
    const std::size_t l = l_of_n(mu2, n);
    EXPECT_GE(l, prev);
    if (l > prev) EXPECT_TRUE(n == 5 || n == 14 || n == 18);
    prev = l;
  }
}

TEST(Growth, PrefixConstants) {
  const auto seq = growth_sequence({"cyc:2", "cyc:3"}, NiceMode::Exact);
  const auto c = prefix_constants(seq.facts);
  EXPECT_EQ(c.r, 1u);
  EXPECT_EQ(c.t, 1u);
  const auto s3 = growth_sequence({"sym:3"}, NiceMode::Exact);
  const auto c3 = prefix_constants(s3.facts);
  EXPECT_EQ(c3.r, 2u);
  EXPECT_EQ(c3.t, 3u);  // 6 <= 3^2 but 6 > mu^2 = 4; 6 <= 2^3
}

TEST(Growth, Degrees) {
  const auto seq = growth_sequence({"cyc:2", "cyc:3", "cyc:2"}, NiceMode::Exact);
  ASSERT_EQ(seq.mhat.size(), 4u);
  EXPECT_EQ(seq.mhat[0].exact(), 1);
  EXPECT_EQ(seq.mhat[1].exact(), 2);
  EXPECT_EQ(seq.mhat[2].exact(), 9);
  EXPECT_EQ(seq.mhat[3].exact(), 512);
}

TEST(Growth, LowerPointAllTwos) {
  const auto seq = growth_sequence({"cyc:2", "cyc:2"}, NiceMode::Exact);
  const auto lp = lower_bound_point(seq, 1, 1);
  EXPECT_EQ(lp.n_star.exact(), 64);
  ASSERT_TRUE(lp.exponent.has_value());
  EXPECT_EQ(*lp.exponent, mpq_class(1, 6));
}

TEST(Growth, BaseContainment) {
  const auto seq = parse_sequence_spec("cyc:2,cyc:3");
  for (unsigned long n = 1; n < 3; ++n) {
    const auto bc = verify_base_containment(seq, 2, n);
    EXPECT_TRUE(bc.ok()) << n;
    EXPECT_EQ(bc.s_n_Wi, bc.s_n_Wprev);
  }
  EXPECT_THROW(verify_base_containment(seq, 2, 3), PreconditionError);
  const auto big = parse_sequence_spec("cyc:3,cyc:2,cyc:5");
  try {
    verify_base_containment(big, 3, 1);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("cap exceeded"), std::string::npos);
  }
}

TEST(Growth, ExactBoundsOnMaterializableSequences) {
  for (const char* s : {"cyc:2,cyc:2", "cyc:2,cyc:3", "cyc:3,cyc:2", "sym:3,cyc:2", "cyc:2,sym:3",
                        "cyc:2,cyc:2,cyc:2"}) {
    const auto specs = split_sequence_spec(s);
    const auto v = verify_bounds_exact(specs, 30);
    EXPECT_TRUE(v.all_ok()) << s;
    for (const auto& c : v.upper) EXPECT_TRUE(c.upper_ok) << s << " n=" << c.n;
    for (const auto& c : v.lower) EXPECT_TRUE(c.lower_ok) << s << " l=" << c.l;
    for (const auto& c : v.stabilization) EXPECT_TRUE(c.ok()) << s;
  }
  // W_3 of order 9216 is beyond the lattice caps
  EXPECT_THROW(verify_bounds_exact(split_sequence_spec("cyc:2,cyc:3,cyc:2"), 30), CapExceeded);
}

TEST(Growth, UpperBoundAgainstBruteForce) {
  // s_n(W_2) from the brute-force oracle for C3 wr_pa C2 (order 18)
  const auto W = iterated_wpa(parse_sequence_spec("cyc:2,cyc:3"), 2);
  const auto ref = oracle::brute_lattice(W.level(2).group->generators());
  const auto v = verify_bounds_exact({"cyc:2", "cyc:3"}, 18);
  ASSERT_EQ(v.upper.size(), 18u);
  for (const auto& c : v.upper) EXPECT_EQ(c.s_n, ref.s_n(c.n)) << c.n;
}

TEST(Growth, Emitters) {
  const auto v = verify_bounds_exact({"cyc:2", "cyc:3"}, 4);
  EXPECT_EQ(v.to_json()["all_ok"], true);
  EXPECT_EQ(v.to_csv().substr(0, 4), "n,s_");
  EXPECT_NE(v.to_text().find("all bounds hold"), std::string::npos);
}
