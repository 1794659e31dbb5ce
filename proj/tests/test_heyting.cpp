#include <gtest/gtest.h>

#include "falc/error.hpp"
#include "falc/heyting.hpp"

using namespace falc;

namespace {

Elem el(const Algebra& h, const char* name) { return *h.parse(name); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

// Greatest c with a & c <= b, by search over the carrier.
Elem implies_by_search(const Algebra& h, Elem a, Elem b) {
  Elem best = h.bot();
  for (Elem c : h.elements()) {
    if (h.leq(h.meet(a, c), b) && h.leq(best, c)) best = c;
  }
  return best;
}

}  // namespace

TEST(Heyting, ChainImplicationIsConsequentWhenNotBelow) {
  const Algebra h = Algebra::make_chain(3);
  EXPECT_EQ(h.implies(el(h, "1/2"), el(h, "0")), el(h, "0"));
  EXPECT_EQ(h.implies(el(h, "1"), el(h, "1/2")), el(h, "1/2"));
  EXPECT_EQ(h.implies(el(h, "1/2"), el(h, "1")), h.top());
}

TEST(Heyting, TwoChainImplicationFromBottom) {
  const Algebra h = Algebra::make_chain(2);
  EXPECT_EQ(h.implies(h.bot(), h.top()), h.top());
}

TEST(Heyting, ChainMeetIsMinimum) {
  const Algebra h = Algebra::make_chain(4);
  EXPECT_EQ(h.meet(el(h, "2/3"), el(h, "1/3")), el(h, "1/3"));
  EXPECT_EQ(h.join(el(h, "2/3"), el(h, "1/3")), el(h, "2/3"));
}

TEST(Heyting, ChainNamesAndParsing) {
  const Algebra h = Algebra::make_chain(5);
  ASSERT_EQ(h.size(), 5u);
  EXPECT_EQ(h.name(Elem{0}), "0");
  EXPECT_EQ(h.name(Elem{2}), "1/2");
  EXPECT_EQ(h.name(Elem{3}), "3/4");
  EXPECT_EQ(h.name(Elem{4}), "1");
  EXPECT_EQ(h.parse("2/4"), Elem{2});
  EXPECT_EQ(h.parse("0.75"), Elem{3});
  EXPECT_FALSE(h.parse("1/3").has_value());
  EXPECT_TRUE(h.is_chain());
}

TEST(Heyting, ProductImplicationMatchesSearch) {
  const Algebra h = Algebra::make_product(Algebra::make_chain(2), Algebra::make_chain(2));
  ASSERT_EQ(h.size(), 4u);
  EXPECT_FALSE(h.is_chain());
  const Elem p = el(h, "p1_0");
  const Elem q = el(h, "p0_1");
  EXPECT_EQ(h.implies(p, q), q);
  for (Elem a : h.elements()) {
    for (Elem b : h.elements()) EXPECT_EQ(h.implies(a, b), implies_by_search(h, a, b));
  }
}

TEST(Heyting, LatticeFromEdges) {
  const Algebra two = Algebra::make_lattice({"0", "1"}, {{"0", "1"}});
  const Algebra chain = Algebra::make_chain(2);
  for (Elem a : chain.elements()) {
    for (Elem b : chain.elements()) {
      const Elem a2 = *two.parse(chain.name(a));
      const Elem b2 = *two.parse(chain.name(b));
      EXPECT_EQ(two.name(two.implies(a2, b2)), chain.name(chain.implies(a, b)));
      EXPECT_EQ(two.name(two.meet(a2, b2)), chain.name(chain.meet(a, b)));
      EXPECT_EQ(two.name(two.join(a2, b2)), chain.name(chain.join(a, b)));
    }
  }
}

TEST(Heyting, DiamondIsRejected) {
  EXPECT_EQ(kind_of([] {
              Algebra::make_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"},
                                                                 {"0", "b"},
                                                                 {"0", "c"},
                                                                 {"a", "1"},
                                                                 {"b", "1"},
                                                                 {"c", "1"}});
            }),
            ErrorKind::NotDistributive);
}

TEST(Heyting, PentagonIsRejected) {
  EXPECT_EQ(kind_of([] {
              Algebra::make_lattice({"0", "a", "b", "c", "1"},
                                    {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
            }),
            ErrorKind::NotDistributive);
}

TEST(Heyting, NonLatticeAndCycleAreRejected) {
  // Two maximal elements.
  EXPECT_EQ(kind_of([] { Algebra::make_lattice({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}); }),
            ErrorKind::NotALattice);
  EXPECT_EQ(kind_of([] { Algebra::make_lattice({"0", "1"}, {{"0", "1"}, {"1", "0"}}); }),
            ErrorKind::CyclicEdges);
  EXPECT_EQ(kind_of([] { Algebra::make_chain(1); }), ErrorKind::InvalidAlgebra);
}

TEST(Heyting, ForeignElementIsRejected) {
  const Algebra h = Algebra::make_chain(3);
  EXPECT_EQ(kind_of([&] { h.check(Elem{7}); }), ErrorKind::ForeignElement);
}

TEST(Heyting, BigOperations) {
  const Algebra h = Algebra::make_chain(3);
  const std::vector<Elem> a = {h.top(), el(h, "1/2")};
  EXPECT_EQ(h.meet_all(a), el(h, "1/2"));
  EXPECT_EQ(h.meet_all({}), h.top());
  const std::vector<Elem> b = {h.bot(), el(h, "1/2"), el(h, "1/2")};
  EXPECT_EQ(h.join_all(b), el(h, "1/2"));
  EXPECT_EQ(h.join_all({}), h.bot());
}

TEST(Heyting, BiimplicationOnChain) {
  const Algebra h = Algebra::make_chain(3);
  EXPECT_EQ(h.biimplies(el(h, "1/2"), el(h, "1")), el(h, "1/2"));
  EXPECT_EQ(h.biimplies(el(h, "1/2"), el(h, "1/2")), h.top());
}

TEST(Heyting, HasseOfProduct) {
  const Algebra h = Algebra::make_product(Algebra::make_chain(2), Algebra::make_chain(3));
  EXPECT_EQ(h.size(), 6u);
  // A 2x3 grid has 7 cover pairs.
  EXPECT_EQ(h.hasse().size(), 7u);
}
