#include <gtest/gtest.h>

#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/nice.hpp"

using namespace wpa;

TEST(Psl2, GroupsMatchOrderFormula) {
  for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
    auto G = psl2_group(p);
    EXPECT_EQ(G.degree(), p + 1);
    G.materialize();
    EXPECT_EQ(*G.order(), psl2_order(p));
    EXPECT_TRUE(is_transitive(G));
  }
  EXPECT_EQ(psl2_order(5), 60);
  EXPECT_EQ(psl2_order(7), 168);
  EXPECT_EQ(psl2_order(13), 1092);
  EXPECT_THROW(psl2_group(9), PreconditionError);
}

TEST(Psl2, Facts) {
  const auto f13 = psl2_facts(13);
  EXPECT_EQ(f13.tau, 1092);
  EXPECT_EQ(f13.mu, 14u);
  EXPECT_TRUE(f13.mu_formula_valid);
  EXPECT_TRUE(f13.chain_holds);
  const auto f5 = psl2_facts(5);
  EXPECT_EQ(f5.mu_formula, 6u);
  EXPECT_EQ(f5.mu, 5u);
  EXPECT_FALSE(f5.mu_formula_valid);
  const auto f7 = psl2_facts(7);
  EXPECT_EQ(f7.tau, 168);
  EXPECT_TRUE(f7.chain_holds);
  for (unsigned long p : {17ul, 19ul, 23ul, 101ul, 1009ul}) {
    const auto f = psl2_facts(p);
    EXPECT_TRUE(f.mu_formula_valid);
    EXPECT_EQ(f.mu, p + 1);
    EXPECT_TRUE(f.chain_holds);
  }
  EXPECT_THROW(psl2_facts(3), PreconditionError);
  EXPECT_THROW(psl2_facts(15), PreconditionError);
}

TEST(Psl2, ExactLatticeAgreesWithFacts) {
  // p = 5, 7, 11 exercise the small-prime exceptions, p = 13 the formula
  for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
    const std::string spec = "psl2:" + std::to_string(p);
    const GroupFacts ex = group_facts(spec, NiceMode::Exact);
    const Psl2Facts pf = psl2_facts(p);
    EXPECT_EQ(ex.mu, pf.mu) << spec;
    EXPECT_EQ(ex.rank, 2u) << spec;
    EXPECT_EQ(ex.order, pf.tau);
    if (p >= 7) {
      EXPECT_EQ(ex.E_prime, p);
      EXPECT_EQ(ex.E_exponent, 1u);
    }
  }
  const GroupFacts f13 = group_facts("psl2:13", NiceMode::Facts);
  const GroupFacts e13 = group_facts("psl2:13", NiceMode::Exact);
  EXPECT_EQ(f13.mu, e13.mu);
  EXPECT_EQ(f13.rank, e13.rank);
  EXPECT_EQ(f13.E_order, e13.E_order);
  EXPECT_THROW(group_facts("cyc:5", NiceMode::Facts), PreconditionError);
}

TEST(LePower, Exact) {
  EXPECT_TRUE(le_power(1092, 13, 3));
  EXPECT_FALSE(le_power(2198, 13, 3));
  EXPECT_TRUE(le_power(2197, 13, 3));
  EXPECT_TRUE(le_power(8, 4, mpq_class(3, 2)));
  EXPECT_FALSE(le_power(9, 4, mpq_class(3, 2)));
}

TEST(CheckNice, PslFactsMode) {
  NiceSequenceSpec spec;
  spec.entries = {"psl2:13", "psl2:17", "psl2:19"};
  const auto rep = check_nice(spec, 3, NiceMode::Facts);
  for (const char* c : {"N.1", "N.2", "N.3", "N.4"}) EXPECT_TRUE(rep.passes(c)) << c;
  EXPECT_EQ(rep.n5, Trend::NotRefuted);
  EXPECT_TRUE(rep.overall());
}

TEST(CheckNice, FactsAndExactAgree) {
  NiceSequenceSpec spec;
  spec.entries = {"psl2:13", "psl2:13"};
  const auto a = check_nice(spec, 2, NiceMode::Facts);
  const auto b = check_nice(spec, 2, NiceMode::Exact);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].pass, b.records[i].pass);
  EXPECT_EQ(a.n5, b.n5);
}

TEST(CheckNice, ConstantSequenceRefutesN5) {
  NiceSequenceSpec spec;
  spec.entries = {"cyc:2", "cyc:2", "cyc:2"};
  const auto rep = check_nice(spec, 3, NiceMode::Exact);
  EXPECT_EQ(rep.n5, Trend::Refuted);
  EXPECT_FALSE(rep.overall());
  NiceSequenceSpec per;
  per.entries = {"psl2:13", "psl2:17"};
  per.periodic = true;
  EXPECT_EQ(check_nice(per, 2, NiceMode::Facts).n5, Trend::Refuted);
  per.periodic = false;
  EXPECT_EQ(check_nice(per, 1, NiceMode::Facts).n5, Trend::Vacuous);
}

TEST(CheckNice, RankWitness) {
  NiceSequenceSpec spec;
  spec.entries = {"sym:3"};
  spec.r = 1;
  const auto rep = check_nice(spec, 1, NiceMode::Exact);
  EXPECT_FALSE(rep.passes("N.2"));
  bool found = false;
  for (const auto& r : rep.records)
    if (r.condition == "N.2") {
      found = true;
      EXPECT_NE(r.detail.find("witness subgroup needs 2 generators"), std::string::npos);
    }
  EXPECT_TRUE(found);
}

TEST(CheckNice, Errors) {
  NiceSequenceSpec spec;
  spec.entries = {"psl2:13"};
  EXPECT_THROW(check_nice(spec, 2, NiceMode::Facts), PreconditionError);
  spec.t = 0;
  EXPECT_THROW(check_nice(spec, 1, NiceMode::Facts), PreconditionError);
}
