#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/wreath.hpp"

using namespace wpa;

namespace {

mpz_class formula(const PermGroup& A, const PermGroup& B) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), A.order()->get_mpz_t(), B.degree());
  return r * *B.order();
}

}  // namespace

TEST(PointCodec, RoundTrip) {
  for (auto kind : {ActionKind::Product, ActionKind::Imprimitive}) {
    PointCodec c{kind, 3, 4};
    std::set<Point> seen;
    for (Point x = 0; x < c.degree(); ++x) {
      const auto v = c.decode(x);
      EXPECT_EQ(c.encode(v), x);
      seen.insert(x);
    }
    EXPECT_EQ(c.degree(), kind == ActionKind::Product ? 81u : 12u);
  }
}

TEST(ProductAction, Examples) {
  struct Case {
    const char *a, *b;
    std::size_t degree;
    long order;
  };
  for (const Case& c : std::vector<Case>{{"cyc:2", "cyc:2", 4, 8}, {"cyc:2", "cyc:3", 8, 24}, {"sym:3", "cyc:2", 9, 72}}) {
    auto w = product_action(parse_group_spec(c.a), parse_group_spec(c.b));
    EXPECT_EQ(w.result.degree(), c.degree);
    EXPECT_EQ(*w.result.order(), c.order);
    PermGroup fresh(w.result.degree(), w.result.generators());
    fresh.materialize();
    EXPECT_EQ(*fresh.order(), c.order) << c.a << " " << c.b;
  }
}

TEST(ImprimitiveAction, Examples) {
  auto w = imprimitive_action(parse_group_spec("cyc:2"), parse_group_spec("cyc:2"));
  EXPECT_EQ(w.result.degree(), 4u);
  w.result.materialize();
  EXPECT_EQ(*w.result.order(), 8);
  auto v = imprimitive_action(parse_group_spec("cyc:3"), parse_group_spec("cyc:2"));
  EXPECT_EQ(v.result.degree(), 6u);
  v.result.materialize();
  EXPECT_EQ(*v.result.order(), 18);
}

TEST(ProductAction, PropertiesOnRandomPairs) {
  const std::vector<std::string> pool = {"cyc:2", "cyc:3", "sym:3", "cyc:4", "perm:3:(0 1)", "perm:4:(0 1);(2 3)",
                                         "alt:4"};
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    const auto A = parse_group_spec(pool[rng() % pool.size()]);
    const auto B = parse_group_spec(pool[rng() % pool.size()]);
    PermGroup Am(A.degree(), A.generators()), Bm(B.degree(), B.generators());
    Am.materialize();
    Bm.materialize();
    const mpz_class f = formula(Am, Bm);
    if (f > 5000) continue;
    auto pa = product_action(Am, Bm);
    auto im = imprimitive_action(Am, Bm);
    std::size_t deg = 1;
    for (std::size_t i = 0; i < B.degree(); ++i) deg *= A.degree();
    EXPECT_EQ(pa.result.degree(), deg);
    EXPECT_EQ(im.result.degree(), A.degree() * B.degree());
    pa.result.materialize();
    im.result.materialize();
    EXPECT_EQ(*pa.result.order(), f);
    EXPECT_EQ(*im.result.order(), *pa.result.order());
    if (is_transitive(Am)) EXPECT_TRUE(is_transitive(pa.result)) << A.label() << " wr " << B.label();
    // The base generators generate A^Delta.
    mpz_class base_order;
    mpz_pow_ui(base_order.get_mpz_t(), Am.order()->get_mpz_t(), B.degree());
    EXPECT_EQ(*generate_or_throw(pa.base_generators()).order(), base_order);
    ++checked;
  }
  EXPECT_GE(checked, 25);
}

TEST(ProductAction, DegreeCap) {
  EXPECT_THROW(product_action(parse_group_spec("cyc:5"), parse_group_spec("cyc:9")), CapExceeded);
}

TEST(IteratedWreath, Examples) {
  {
    const auto W = iterated_wpa(parse_sequence_spec("cyc:2,cyc:2"), 2);
    EXPECT_EQ(W.level(2).degree.exact(), 4);
    EXPECT_EQ(W.level(2).order.exact(), 8);
    EXPECT_EQ(*W.level(2).group->order(), 8);
  }
  {
    const auto W = iterated_wpa(parse_sequence_spec("cyc:2,cyc:3,cyc:2"), 3);
    EXPECT_EQ(W.level(3).degree.exact(), 512);
    EXPECT_EQ(W.level(3).order.exact(), 9216);
    ASSERT_TRUE(W.level(3).group && W.level(3).group->materialized());
    EXPECT_EQ(*W.level(3).group->order(), 9216);
    EXPECT_EQ(W.level(3).group->degree(), 512u);
  }
  {
    const auto W = iterated_wpa(parse_sequence_spec("psl2:5,psl2:7"), 2);
    EXPECT_EQ(W.degrees[1].exact(), 6);
    EXPECT_EQ(W.degrees[2].exact(), 262144);
    mpz_class o;
    mpz_ui_pow_ui(o.get_mpz_t(), 168, 6);
    EXPECT_EQ(W.level(2).order.exact(), o * 60);
    EXPECT_FALSE(W.level(2).group && W.level(2).group->materialized());
  }
}

TEST(IteratedWreath, DegreesMatchMaterialized) {
  for (const char* s : {"cyc:2,cyc:2,cyc:2", "cyc:3,cyc:2", "sym:3,cyc:2", "cyc:2,sym:3", "cyc:2,cyc:3,cyc:2"}) {
    const auto W = iterated_wpa(parse_sequence_spec(s), split_sequence_spec(s).size());
    for (const auto& L : W.levels) {
      if (!L.group) continue;
      EXPECT_EQ(L.degree.exact(), static_cast<unsigned long>(L.group->degree())) << s;
      if (L.group->materialized()) {
        EXPECT_EQ(L.order.exact(), *L.group->order()) << s;
      }
    }
  }
}

TEST(IteratedWreath, ProjectionIsSurjectiveWithBaseKernel) {
  for (const char* s : {"cyc:2,cyc:2,cyc:2", "cyc:3,cyc:2", "cyc:2,cyc:3", "sym:3,cyc:2", "cyc:2,cyc:3,cyc:2"}) {
    const std::size_t n = split_sequence_spec(s).size();
    const auto W = iterated_wpa(parse_sequence_spec(s), n);
    for (std::size_t k = 2; k <= n; ++k) {
      const ProjectionCheck pc = project(W, k);
      EXPECT_TRUE(pc.ok()) << s << " k=" << k;
      EXPECT_EQ(pc.source_order, pc.image_order * pc.kernel_order);
    }
  }
}
