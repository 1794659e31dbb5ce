#pragma once

// Finite complete distributive Heyting algebras.
//
// Elements are opaque indices into precomputed operation tables. Chains keep
// the index order equal to the chain order, so index k of an n-chain is the
// value k/(n-1).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace falc {

struct Elem {
  std::uint16_t id = 0;

  friend bool operator==(Elem, Elem) = default;
};

class Algebra {
 public:
  // The n-element chain 0 < 1/(n-1) < ... < 1. Throws InvalidAlgebra for n < 2.
  static Algebra make_chain(int n);

  // A finite distributive lattice given by its cover relation. `edges` holds
  // pairs (lower, upper) of element names. Rejects cycles, non-lattices and
  // non-distributive lattices.
  static Algebra make_lattice(std::vector<std::string> elements,
                              std::vector<std::pair<std::string, std::string>> edges);

  // Componentwise product; element names are "p<i>_<j>".
  static Algebra make_product(const Algebra& lhs, const Algebra& rhs);

  std::size_t size() const { return names_.size(); }
  Elem top() const { return top_; }
  Elem bot() const { return bot_; }
  bool is_chain() const { return chain_; }

  std::vector<Elem> elements() const;

  bool contains(Elem e) const { return e.id < size(); }
  // Throws ForeignElement if `e` is not in the carrier.
  void check(Elem e) const;

  bool leq(Elem a, Elem b) const { return order_[idx(a, b)] != 0; }
  Elem meet(Elem a, Elem b) const { return Elem{meet_[idx(a, b)]}; }
  Elem join(Elem a, Elem b) const { return Elem{join_[idx(a, b)]}; }
  Elem implies(Elem a, Elem b) const { return Elem{implies_[idx(a, b)]}; }
  // (a -> b) & (b -> a)
  Elem biimplies(Elem a, Elem b) const { return meet(implies(a, b), implies(b, a)); }

  // Empty meet is top, empty join is bottom.
  Elem meet_all(std::span<const Elem> values) const;
  Elem join_all(std::span<const Elem> values) const;

  const std::string& name(Elem e) const { return names_.at(e.id); }
  // Accepts the canonical name; chains also accept any rational equal to
  // k/(n-1), e.g. "2/4" on the 5-chain.
  std::optional<Elem> parse(std::string_view text) const;

  // Header line(s) for the KB file format.
  std::string describe() const;

  // Cover pairs (lower, upper).
  const std::vector<std::pair<Elem, Elem>>& hasse() const { return hasse_; }

  friend bool operator==(const Algebra& lhs, const Algebra& rhs);

 private:
  Algebra() = default;
  std::size_t idx(Elem a, Elem b) const { return std::size_t{a.id} * names_.size() + b.id; }
  void finish(bool verify_distributive);

  std::vector<std::string> names_;
  std::vector<std::uint8_t> order_;
  std::vector<std::uint16_t> meet_;
  std::vector<std::uint16_t> join_;
  std::vector<std::uint16_t> implies_;
  std::vector<std::pair<Elem, Elem>> hasse_;
  Elem top_;
  Elem bot_;
  bool chain_ = false;
};

}  // namespace falc

template <>
struct std::hash<falc::Elem> {
  std::size_t operator()(falc::Elem e) const noexcept { return e.id; }
};
