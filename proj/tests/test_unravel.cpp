#include <gtest/gtest.h>

#include "falc/error.hpp"
#include "falc/syntax.hpp"
#include "falc/unravel.hpp"
#include "support.hpp"

using namespace falc;
using falc::testing::data_path;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    check_acyclic(parse_kb(text).tbox);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return ErrorKind::Io;
}

}  // namespace

TEST(Unravel, DependencyOrderOfK) {
  const DependencyReport r = check_acyclic(load_kb(data_path("k.falc")).tbox);
  EXPECT_EQ(r.order, (std::vector<std::string>{"C4", "C2", "C6"}));
  EXPECT_EQ(r.uses.at("C2"), (std::vector<std::string>{"C4"}));
  EXPECT_TRUE(r.uses.at("C4").empty());
}

TEST(Unravel, ExpansionOfKIsUnsimplified) {
  const KnowledgeBase kb = load_kb(data_path("k.falc"));
  ExpansionStats stats;
  const KnowledgeBase out = expand(kb, &stats);
  EXPECT_TRUE(out.tbox.empty());
  ASSERT_EQ(out.abox.size(), kb.abox.size());
  EXPECT_EQ(out.abox[0].term.body->str(), "(C1 | C3) & C7");
  EXPECT_EQ(out.abox[1].term.body->str(), "(C1 & ((C1 | C3) & C7)) | (((C1 | C3) & C7) & C3)");
  // Assertions without defined names are untouched.
  for (std::size_t i = 2; i < kb.abox.size(); ++i) EXPECT_EQ(out.abox[i], kb.abox[i]);
  EXPECT_GT(stats.nodes_after, stats.nodes_before);
  // One per defined name occurring in the ABox; definitions are pre-expanded.
  EXPECT_EQ(stats.substitutions, 2u);
}

TEST(Unravel, ExpansionOfKPrime) {
  const KnowledgeBase out = expand(load_kb(data_path("k_prime.falc")));
  EXPECT_EQ(out.abox[3].term.body->str(), "C1 & C3");
  EXPECT_EQ(out.abox[0], load_kb(data_path("k_prime.falc")).abox[0]);
}

TEST(Unravel, EmptyTBoxIsIdentity) {
  const KnowledgeBase kb = parse_kb("algebra chain 2\nobj a\nconcept D\nabox 1 <= a : D\n");
  EXPECT_TRUE(check_acyclic(kb.tbox).order.empty());
  EXPECT_TRUE(structurally_equal(expand(kb), kb));
}

TEST(Unravel, CycleIsReported) {
  const std::string text = "algebra chain 2\nconcept A B C\ntbox A == B & C\ntbox B == A | C\n";
  EXPECT_EQ(kind_of(text), ErrorKind::Cycle);
  try {
    check_acyclic(parse_kb(text).tbox);
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('A'), std::string::npos) << msg;
    EXPECT_NE(msg.find('B'), std::string::npos) << msg;
  }
}

TEST(Unravel, SelfReferenceIsACycle) {
  EXPECT_EQ(kind_of("algebra chain 2\nconcept A C\ntbox A == A & C\n"), ErrorKind::Cycle);
}

TEST(Unravel, MalformedTBoxes) {
  EXPECT_EQ(kind_of("algebra chain 2\nconcept A B C\ntbox A == B\ntbox A == C\n"),
            ErrorKind::DuplicateDefinition);
  EXPECT_EQ(kind_of("algebra chain 2\nconcept A B C\ntbox A & B == C\n"), ErrorKind::NotDefinitional);
}

TEST(Unravel, SubstituteIntoSingleConcept) {
  Signature sig;
  sig.concepts = {"A", "B", "C"};
  sig.box_roles = {"R"};
  const std::map<std::string, Concept> defs = {{"A", parse_concept("B | C", sig)}};
  std::size_t n = 0;
  EXPECT_EQ(substitute(parse_concept("[R]A & A", sig), defs, &n).str(), "[R](B | C) & (B | C)");
  EXPECT_EQ(n, 2u);
}
