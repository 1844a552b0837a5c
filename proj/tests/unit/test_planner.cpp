#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wpa/error.hpp"
#include "wpa/planner.hpp"

using namespace wpa;

namespace {

PlanOptions toy(std::size_t kmax) {
  PlanOptions o;
  o.constants = PlannerConstants::toy();
  o.k_max = kmax;
  return o;
}

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

const Condition* find(const PrimeCertificate& c, const std::string& text) {
  for (const auto& x : c.conditions)
    if (x.text == text) return &x;
  return nullptr;
}

}  // namespace

TEST(PlannerConstants, ParseAndLabels) {
  EXPECT_TRUE(PlannerConstants::parse("standard").is_standard());
  EXPECT_TRUE(PlannerConstants::parse("toy").is_toy());
  const auto c = PlannerConstants::parse("20,10,20");
  EXPECT_EQ(c.kappa1, 10u);
  EXPECT_EQ(c.label(), "custom constants");
  EXPECT_EQ(PlannerConstants::standard().label(), "standard constants");
  EXPECT_EQ(PlannerConstants::toy().label(), "demonstrative (toy constants)");
  EXPECT_THROW(PlannerConstants::parse("1,2"), ParseError);
  EXPECT_THROW(PlannerConstants::parse("0,2,2"), ParseError);
  PlanOptions bad;
  bad.constants = PlannerConstants::parse("18,10,18");  // breaks kappa2 = 2 kappa1
  EXPECT_THROW(plan_theoremA(GentlyGrowingFn::parse("log2"), bad), PreconditionError);
}

TEST(Planner, ToyLogLog) {
  const PrimePlan plan = plan_theoremA(GentlyGrowingFn::parse("loglog2"), toy(2));
  ASSERT_EQ(plan.certificates.size(), 3u);
  const auto& c0 = plan.certificates[0];
  EXPECT_TRUE(c0.exact);
  EXPECT_EQ(c0.p, 17);
  EXPECT_EQ(c0.mhat.exact(), 18);
  const auto& c1 = plan.certificates[1];
  EXPECT_FALSE(c1.exact);
  EXPECT_EQ(c1.rule, "thmA:k=1");
  // p_1 >= 2^(2^36): check the certified lower bound at depth 2
  const Magnitude lb = c1.p_lower.magnitude();
  EXPECT_EQ(lb.depth(), 2);
  EXPECT_EQ(lb.lo(), Real(36));
  EXPECT_EQ(c1.bits_lower.magnitude().at_depth(1).lo(), Real(36));
  EXPECT_NE(find(c1, "p_1 > 2*mhat_0"), nullptr);
  EXPECT_NE(find(c1, "f(p_1) >= 2*mhat_0"), nullptr);
  EXPECT_TRUE(plan.ok());
  EXPECT_EQ(plan.to_json()["constants"]["label"], "demonstrative (toy constants)");
}

TEST(Planner, StandardConditionsText) {
  PlanOptions o;
  o.k_max = 1;
  const PrimePlan plan = plan_theoremA(GentlyGrowingFn::parse("loglog2"), o);
  const auto& c1 = plan.certificates.at(1);
  EXPECT_NE(find(c1, "p_1 > 9*mhat_0"), nullptr);
  EXPECT_NE(find(c1, "f(p_1) >= 18*mhat_0"), nullptr);
  EXPECT_NE(find(c1, "18*mhat_0 >= B*f(p_1^(9*mhat_0))"), nullptr);
  // p_0 needs f(p_0) >= 18, i.e. p_0 >= 2^(2^18): beyond the default bit cap
  EXPECT_FALSE(plan.certificates[0].exact);
  EXPECT_EQ(plan.certificates[0].p_lower.magnitude().lo(), Real(18));
}

TEST(Planner, ExactCertificatesReverify) {
  // Variation 1 accepts f = log2, where f(p) >= T iff p >= 2^T: every exact
  // certificate is rechecked with integers alone.
  for (const auto& consts : {PlannerConstants::toy(), PlannerConstants::parse("4,3,6")}) {
    PlanOptions o;
    o.constants = consts;
    o.k_max = 3;
    const PrimePlan plan = plan_variation1(GentlyGrowingFn::parse("log2"), o);
    mpz_class prev_p = 0, mhat = 1;
    for (const auto& c : plan.certificates) {
      if (!c.exact) break;
      EXPECT_GT(mpz_probab_prime_p(c.p.get_mpz_t(), 30), 0);
      const mpz_class T = c.k == 0 ? mpz_class(consts.kappa0) : mpz_class(consts.kappa2 * mhat);
      const mpz_class floor_p = c.k == 0 ? mpz_class(consts.kappa0) : zpow(prev_p, consts.kappa1 * mhat.get_ui());
      const mpz_class least = std::max(mpz_class(mpz_class(1) << T.get_ui()), floor_p);
      mpz_class q;
      mpz_nextprime(q.get_mpz_t(), mpz_class(least - 1).get_mpz_t());
      EXPECT_EQ(c.p, q) << "not the least admissible prime at k=" << c.k;
      for (const auto& cond : c.conditions) EXPECT_EQ(cond.status, "holds") << cond.text;
      mhat = c.k == 0 ? mpz_class(c.p + 1) : zpow(c.p + 1, mhat.get_ui());
      ASSERT_TRUE(c.mhat.is_exact());
      EXPECT_EQ(c.mhat.exact(), mhat);
      prev_p = c.p;
    }
    EXPECT_TRUE(plan.certificates[0].exact);
    EXPECT_TRUE(plan.certificates[1].exact);
  }
}

TEST(Planner, TheoremAExactPrefix) {
  // f = 16 lg lg is gently growing and small enough for two exact primes
  // under toy constants; conditions are rechecked in long double away from
  // the thresholds.
  const auto f = GentlyGrowingFn::parse("term(16,2,1)");
  PlanOptions o = toy(2);
  o.B = mpq_class(1, 100);
  const PrimePlan plan = plan_theoremA(f, o);
  ASSERT_GE(plan.certificates.size(), 2u);
  auto F = [](const mpz_class& p) { return 16.0L * std::log2(std::log2(static_cast<long double>(p.get_d()))); };
  long double mhat = 1;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& c = plan.certificates[k];
    ASSERT_TRUE(c.exact) << k;
    EXPECT_GT(mpz_probab_prime_p(c.p.get_mpz_t(), 30), 0);
    const long double T = k == 0 ? 2 : 2 * mhat;
    EXPECT_GE(F(c.p), T);
    if (k > 0) EXPECT_GT(c.p.get_d(), 2 * mhat);
    for (const auto& cond : c.conditions) EXPECT_EQ(cond.status, "holds") << cond.text;
    mhat = k == 0 ? c.p.get_d() + 1 : std::pow(c.p.get_d() + 1, mhat);
  }
  EXPECT_TRUE(plan.ok());
}

TEST(Planner, RefusesNonGentlyGrowing) {
  EXPECT_THROW(plan_theoremA(GentlyGrowingFn::parse("term(1,1,2)"), toy(1)), PreconditionError);
  EXPECT_THROW(plan_theoremA(GentlyGrowingFn::parse("const:4"), toy(1)), PreconditionError);
}

TEST(Planner, Variation1) {
  const PrimePlan plan = plan_variation1(GentlyGrowingFn::parse("log2"), toy(2));
  const auto& c0 = plan.certificates[0];
  ASSERT_TRUE(c0.exact);
  EXPECT_EQ(c0.p, 5);
  const auto& c1 = plan.certificates[1];
  // p_1 >= p_0^(2 mhat_0) = 5^12 and f(p_1) >= 12
  if (c1.exact) {
    EXPECT_GE(c1.p, zpow(5, 12));
    EXPECT_GE(c1.p, mpz_class(1) << 12);
  }
  EXPECT_EQ(c1.rule, "var1:k=1");
  EXPECT_TRUE(plan.ok());
}

TEST(Planner, Variation2Window) {
  PlanOptions o;
  o.k_max = 1;
  o.constants = PlannerConstants::toy();
  const PrimePlan plan = plan_variation2(2, o);
  ASSERT_EQ(plan.certificates.size(), 2u);
  const auto& c1 = plan.certificates[1];
  EXPECT_EQ(c1.rule, "var2:h=2:k=1");
  ASSERT_TRUE(c1.log_window.has_value());
  const mpz_class m0 = plan.certificates[0].mhat.exact();
  EXPECT_EQ(c1.log_window->first.exact(), zpow(2 * m0, 2));
  EXPECT_EQ(c1.log_window->second.exact(), 2 * zpow(2 * m0, 2));
  if (c1.exact) {
    const std::size_t bits = mpz_sizeinbase(c1.p.get_mpz_t(), 2);
    EXPECT_GE(bits - 1, c1.log_window->first.exact().get_ui());
    EXPECT_LE(bits, c1.log_window->second.exact().get_ui());
  }
  EXPECT_TRUE(plan.ok());
}

TEST(Planner, LemmaPrime) {
  const auto lp = find_lemma_prime(GentlyGrowingFn::parse("loglog2"), 18, 1);
  EXPECT_FALSE(lp.search.found);
  EXPECT_EQ(lp.search.lower.magnitude().depth(), 2);
  EXPECT_EQ(lp.search.lower.magnitude().lo(), Real(36));
  const auto small = find_lemma_prime(GentlyGrowingFn::parse("log2"), 3, mpq_class(1, 4));
  ASSERT_TRUE(small.search.found);
  EXPECT_EQ(small.search.p, 67);  // least prime >= 2^6
  // 6 >= (1/4) * log2(67^3) ~ 4.55
  EXPECT_TRUE(small.upper_holds());
}

TEST(Chains, ConstantsAndExamples) {
  const auto c = verify_theoremA_chains(GentlyGrowingFn::parse("log2"), TowerInt(262147L), TowerInt(1L), mpq_class(1, 10));
  EXPECT_TRUE(c.constant_identity);
  EXPECT_EQ(c.c, mpq_class(1, 19440));
  EXPECT_TRUE(c.all_hold());
  const auto d = verify_theoremA_chains(GentlyGrowingFn::parse("log2"), TowerInt(13L), TowerInt(1L), 1);
  EXPECT_EQ(d.c, mpq_class(1, 1944));
  // the lower chain's first step only needs tau >= p
  EXPECT_TRUE(d.lower.at(0).holds());
  EXPECT_FALSE(d.upper.at(0).holds());  // 18 > log2 13
  EXPECT_FALSE(d.all_hold());
}

TEST(Variation2, BoundaryAndIdentities) {
  const auto v = verify_variation2_equivalence(324, 1, 2);
  EXPECT_TRUE(v.consistent());
  for (const auto& s : v.steps) EXPECT_TRUE(s.holds()) << s.text;
  EXPECT_EQ(v.window_lower.left_vs_right, Ordering::Equal);
  for (unsigned h = 1; h <= 4; ++h) EXPECT_TRUE(variation2_middle_identity(h)) << h;
  EXPECT_TRUE(variation2_printed_identity(1));
  for (unsigned h = 2; h <= 4; ++h) EXPECT_FALSE(variation2_printed_identity(h)) << h;
}

TEST(Variation2, RandomInstancesAreConsistent) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const unsigned h = 1 + rng() % 4;
    const mpz_class m = 1 + rng() % 1000;
    const mpz_class A = 18 * m;
    const mpz_class Ah = zpow(A, h);
    // log p around the window [A^h, 2 A^h], including both ends
    mpq_class L;
    switch (rng() % 4) {
      case 0: L = Ah; break;
      case 1: L = 2 * Ah; break;
      default: L = mpq_class(Ah * static_cast<unsigned long>(rng() % 3000), 1000); break;
    }
    L.canonicalize();
    const auto v = verify_variation2_equivalence(L, m, h);
    EXPECT_TRUE(v.consistent()) << "h=" << h << " m=" << m << " L=" << L;
    EXPECT_TRUE(v.implication_ok);
  }
}
