#pragma once

// Knowledge-base and context generators shared by the unit and acceptance
// tests.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "falc/fca.hpp"
#include "falc/heyting.hpp"
#include "falc/syntax.hpp"

namespace falc::testing {

struct RandomKbSpec {
  std::shared_ptr<const Algebra> algebra;
  int objects = 2;
  int features = 2;
  int primitives = 3;
  int box_roles = 1;
  int dia_roles = 1;
  int assertions = 6;
  int max_depth = 2;
  // Probability that an assertion is negative.
  double negative_rate = 0.3;
};

Concept random_concept(std::mt19937_64& rng, const RandomKbSpec& spec, int depth);
KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbSpec& spec);

// Every ABox of 1..max_assertions distinct assertions over the 2-chain with
// two objects, two features, two primitives, one box role and bound 1,
// built from the concept pool D1, D2, D1 & D2, D1 | D2, [R]D1, [R]D2.
std::vector<KnowledgeBase> tiny_family(int max_assertions);

// Random H-valued context with an I-compatible box relation "R" and
// diamond relation "S". `compatible_tries` bounds rejection sampling before
// falling back to I (resp. its transpose), which is always compatible.
struct RandomContext {
  Context context;
  bool sampled_box = false;
  bool sampled_dia = false;
};
RandomContext random_context(std::mt19937_64& rng, std::shared_ptr<const Algebra> alg,
                             std::size_t objects, std::size_t features,
                             int compatible_tries = 200);

// Directory holding the bundled .falc fixtures.
std::string data_path(const std::string& name);

}  // namespace falc::testing
