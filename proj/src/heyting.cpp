#include "falc/heyting.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "falc/error.hpp"

namespace falc {

namespace {

std::string rational_name(int k, int denom) {
  if (k == 0) return "0";
  if (k == denom) return "1";
  const int g = std::gcd(k, denom);
  return std::to_string(k / g) + "/" + std::to_string(denom / g);
}

std::optional<long long> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

// Parses "k", "k/m" or a decimal "0.25" into a nonnegative fraction.
std::optional<std::pair<long long, long long>> parse_fraction(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return std::pair{*num, *den};
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) return std::nullopt;
    auto w = whole.empty() ? std::optional<long long>{0} : parse_int(whole);
    auto f = parse_int(frac);
    if (!w || !f) return std::nullopt;
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return std::pair{*w * den + *f, den};
  }
  auto v = parse_int(s);
  if (!v) return std::nullopt;
  return std::pair{*v, 1LL};
}

}  // namespace

Algebra Algebra::make_chain(int n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidAlgebra,
                "a chain needs at least 2 elements, got " + std::to_string(n));
  }
  if (n > 1024) throw Error(ErrorKind::InvalidAlgebra, "chain too large");
  Algebra alg;
  const auto size = static_cast<std::size_t>(n);
  for (int k = 0; k < n; ++k) alg.names_.push_back(rational_name(k, n - 1));
  alg.order_.assign(size * size, 0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a; b < size; ++b) alg.order_[a * size + b] = 1;
  }
  alg.finish(false);
  return alg;
}

Algebra Algebra::make_lattice(std::vector<std::string> elements,
                              std::vector<std::pair<std::string, std::string>> edges) {
  if (elements.size() < 2) {
    throw Error(ErrorKind::InvalidAlgebra, "a lattice needs at least 2 elements");
  }
  if (elements.size() > 1024) throw Error(ErrorKind::InvalidAlgebra, "lattice too large");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw Error(ErrorKind::InvalidAlgebra, "duplicate element '" + elements[i] + "'");
    }
  }
  const std::size_t n = elements.size();
  Algebra alg;
  alg.names_ = std::move(elements);
  alg.order_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) alg.order_[i * n + i] = 1;
  for (const auto& [lo, hi] : edges) {
    auto l = index.find(lo);
    auto h = index.find(hi);
    if (l == index.end() || h == index.end()) {
      throw Error(ErrorKind::InvalidAlgebra,
                  "edge " + lo + " < " + hi + " names an unknown element");
    }
    if (l->second == h->second) throw Error(ErrorKind::CyclicEdges, "self edge on " + lo);
    alg.order_[l->second * n + h->second] = 1;
  }
  // Reflexive-transitive closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!alg.order_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (alg.order_[k * n + j]) alg.order_[i * n + j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (alg.order_[i * n + j] && alg.order_[j * n + i]) {
        throw Error(ErrorKind::CyclicEdges, "cycle through " + alg.names_[i] + " and " +
                                                alg.names_[j]);
      }
    }
  }
  alg.finish(true);
  return alg;
}

Algebra Algebra::make_product(const Algebra& lhs, const Algebra& rhs) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  auto name = [](std::size_t i, std::size_t j) {
    return "p" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < rhs.size(); ++j) names.push_back(name(i, j));
  }
  for (auto [lo, hi] : lhs.hasse()) {
    for (std::size_t j = 0; j < rhs.size(); ++j) edges.emplace_back(name(lo.id, j), name(hi.id, j));
  }
  for (auto [lo, hi] : rhs.hasse()) {
    for (std::size_t i = 0; i < lhs.size(); ++i) edges.emplace_back(name(i, lo.id), name(i, hi.id));
  }
  return make_lattice(std::move(names), std::move(edges));
}

void Algebra::finish(bool verify_distributive) {
  const std::size_t n = names_.size();
  meet_.assign(n * n, 0);
  join_.assign(n * n, 0);
  implies_.assign(n * n, 0);

  auto bound = [&](std::size_t a, std::size_t b, bool lower) -> std::uint16_t {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < n; ++c) {
      const bool is_bound = lower ? (order_[c * n + a] && order_[c * n + b])
                                  : (order_[a * n + c] && order_[b * n + c]);
      if (!is_bound) continue;
      if (!best || (lower ? order_[*best * n + c] : order_[c * n + *best])) best = c;
    }
    // `best` is a maximal (minimal) bound; it must dominate every bound.
    for (std::size_t c = 0; best && c < n; ++c) {
      const bool is_bound = lower ? (order_[c * n + a] && order_[c * n + b])
                                  : (order_[a * n + c] && order_[b * n + c]);
      if (is_bound && !(lower ? order_[c * n + *best] : order_[*best * n + c])) best.reset();
    }
    if (!best) {
      throw Error(ErrorKind::NotALattice, "elements " + names_[a] + " and " + names_[b] +
                                              " have no " + (lower ? "meet" : "join"));
    }
    return static_cast<std::uint16_t>(*best);
  };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      meet_[a * n + b] = bound(a, b, true);
      join_[a * n + b] = bound(a, b, false);
    }
  }

  top_ = Elem{0};
  bot_ = Elem{0};
  for (std::size_t a = 1; a < n; ++a) {
    top_ = join(top_, Elem{static_cast<std::uint16_t>(a)});
    bot_ = meet(bot_, Elem{static_cast<std::uint16_t>(a)});
  }

  if (verify_distributive) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          const auto lhs = meet_[a * n + join_[b * n + c]];
          const auto rhs = join_[meet_[a * n + b] * n + meet_[a * n + c]];
          if (lhs != rhs) {
            throw Error(ErrorKind::NotDistributive,
                        "distributivity fails at " + names_[a] + ", " + names_[b] + ", " +
                            names_[c]);
          }
        }
      }
    }
  }

  // a -> b is the largest c with a & c <= b; finite distributivity makes the
  // join of all such c one of them.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::uint16_t acc = bot_.id;
      for (std::size_t c = 0; c < n; ++c) {
        if (order_[meet_[a * n + c] * n + b]) acc = join_[acc * n + c];
      }
      implies_[a * n + b] = acc;
    }
  }

  chain_ = true;
  for (std::size_t a = 0; a < n && chain_; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!order_[a * n + b] && !order_[b * n + a]) {
        chain_ = false;
        break;
      }
    }
  }

  hasse_.clear();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !order_[a * n + b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c) {
        if (c != a && c != b && order_[a * n + c] && order_[c * n + b]) cover = false;
      }
      if (cover) {
        hasse_.emplace_back(Elem{static_cast<std::uint16_t>(a)},
                            Elem{static_cast<std::uint16_t>(b)});
      }
    }
  }
}

std::vector<Elem> Algebra::elements() const {
  std::vector<Elem> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Elem{static_cast<std::uint16_t>(i)});
  return out;
}

void Algebra::check(Elem e) const {
  if (!contains(e)) {
    throw Error(ErrorKind::ForeignElement,
                "element #" + std::to_string(e.id) + " is not in an algebra of size " +
                    std::to_string(size()));
  }
}

Elem Algebra::meet_all(std::span<const Elem> values) const {
  Elem acc = top_;
  for (Elem v : values) {
    check(v);
    acc = meet(acc, v);
  }
  return acc;
}

Elem Algebra::join_all(std::span<const Elem> values) const {
  Elem acc = bot_;
  for (Elem v : values) {
    check(v);
    acc = join(acc, v);
  }
  return acc;
}

std::optional<Elem> Algebra::parse(std::string_view text) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == text) return Elem{static_cast<std::uint16_t>(i)};
  }
  // Rational spellings on chains built by make_chain.
  if (!chain_ || names_.front() != "0" || names_.back() != "1") return std::nullopt;
  auto frac = parse_fraction(text);
  if (!frac) return std::nullopt;
  const long long denom = static_cast<long long>(size()) - 1;
  const auto [num, den] = *frac;
  if ((num * denom) % den != 0) return std::nullopt;
  const long long k = num * denom / den;
  if (k < 0 || k > denom) return std::nullopt;
  const auto e = Elem{static_cast<std::uint16_t>(k)};
  if (names_[e.id] != rational_name(static_cast<int>(k), static_cast<int>(denom))) {
    return std::nullopt;
  }
  return e;
}

std::string Algebra::describe() const {
  bool rational_chain = chain_;
  for (std::size_t k = 0; rational_chain && k < size(); ++k) {
    rational_chain = names_[k] == rational_name(static_cast<int>(k), static_cast<int>(size() - 1)) &&
                     (k == 0 || leq(Elem{static_cast<std::uint16_t>(k - 1)},
                                    Elem{static_cast<std::uint16_t>(k)}));
  }
  if (rational_chain) return "algebra chain " + std::to_string(size());
  std::ostringstream out;
  out << "algebra lattice { elem";
  for (const auto& n : names_) out << ' ' << n;
  out << ';';
  for (auto [lo, hi] : hasse_) out << " edge " << names_[lo.id] << " < " << names_[hi.id] << ';';
  out << " }";
  return out.str();
}

bool operator==(const Algebra& lhs, const Algebra& rhs) {
  return lhs.names_ == rhs.names_ && lhs.order_ == rhs.order_ && lhs.meet_ == rhs.meet_ &&
         lhs.join_ == rhs.join_ && lhs.implies_ == rhs.implies_;
}

}  // namespace falc
