#pragma once

// Combinatorics of the category FI^m: objects are m-tuples of natural numbers,
// morphisms are m-tuples of injections [n_i] -> [t_i].

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fimkit/errors.hpp"

namespace fimkit {

class Shape {
public:
  Shape() = default;
  explicit Shape(std::vector<int> parts);
  Shape(std::initializer_list<int> parts) : Shape(std::vector<int>(parts)) {}

  static Shape zero(int m) { return Shape(std::vector<int>(static_cast<std::size_t>(m), 0)); }
  static Shape unit(int m, int i);  // o_i, i is 0-based

  int m() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& parts() const { return parts_; }
  int degree() const;

  /// Componentwise order; throws DimensionError on arity mismatch.
  bool leq(const Shape& other) const;
  bool lt(const Shape& other) const { return leq(other) && *this != other; }

  Shape plus(int i, int k = 1) const;
  Shape operator+(const Shape& o) const;
  /// Componentwise difference floored at zero.
  Shape minus_floor(const Shape& o) const;
  Shape scaled(int k) const;

  std::string to_string() const;
  static Shape parse(std::string_view text);

  friend bool operator==(const Shape&, const Shape&) = default;
  friend auto operator<=>(const Shape&, const Shape&) = default;

private:
  std::vector<int> parts_;
};

/// Morphism n -> t of FI^m, stored as image lists with 1-based entries.
class Injection {
public:
  Injection() = default;
  Injection(Shape codomain, std::vector<std::vector<int>> maps);

  static Injection identity(const Shape& n);
  /// pi_{n,i}: shifts the i-th component by one (t -> t + 1).
  static Injection pi(const Shape& n, int i);
  /// The standard chain n -> t, componentwise x -> x + (t_i - n_i).
  static Injection standard(const Shape& from, const Shape& to);

  const Shape& domain() const { return domain_; }
  const Shape& codomain() const { return codomain_; }
  const std::vector<std::vector<int>>& maps() const { return maps_; }
  const std::vector<int>& component(int i) const { return maps_[static_cast<std::size_t>(i)]; }
  int m() const { return domain_.m(); }
  int degree() const { return codomain_.degree() - domain_.degree(); }
  bool is_bijection() const { return domain_ == codomain_; }

  std::string to_string() const;
  static Injection parse(std::string_view text, const Shape& codomain);

  friend bool operator==(const Injection&, const Injection&) = default;
  friend auto operator<=>(const Injection&, const Injection&) = default;

private:
  Shape domain_;
  Shape codomain_;
  std::vector<std::vector<int>> maps_;
};

/// g o f; requires codomain(f) == domain(g).
Injection compose(const Injection& g, const Injection& f);

/// iota_i(f): n + o_i -> t + o_i, fixing 1 and sending x to f_i(x - 1) + 1.
Injection self_embed(int i, const Injection& f);

/// All injections from -> to, lexicographic on the concatenated image lists.
std::vector<Injection> enumerate_injections(const Shape& from, const Shape& to);
std::int64_t injection_count(const Shape& from, const Shape& to);
/// Position of f inside enumerate_injections(f.domain(), f.codomain()).
std::int64_t injection_index(const Injection& f);

/// An element of S_n = S_{n_1} x ... x S_{n_m}.
class MultiPermutation {
public:
  MultiPermutation() = default;
  explicit MultiPermutation(std::vector<std::vector<int>> perms);
  static MultiPermutation identity(const Shape& n);
  /// Adjacent transposition s_{i,j} swapping j and j+1 (1-based j) in factor i.
  static MultiPermutation adjacent(const Shape& n, int i, int j);

  const Shape& shape() const { return shape_; }
  const std::vector<int>& component(int i) const { return perms_[static_cast<std::size_t>(i)]; }
  Injection as_injection() const { return Injection(shape_, perms_); }
  bool is_identity() const;

  friend bool operator==(const MultiPermutation&, const MultiPermutation&) = default;

private:
  Shape shape_;
  std::vector<std::vector<int>> perms_;
};

struct Factorization {
  MultiPermutation sigma;  // acts on the codomain
  Shape steps;             // t - n, the number of pi-steps per direction
};

/// f = sigma o standard(domain, codomain). sigma agrees with f on the shifted points
/// and sends {1..t_i-n_i} increasingly onto the complement of im(f_i).
Factorization canonical_factorization(const Injection& f);

/// Adjacent transposition indices w with p = s_{w_1} o s_{w_2} o ... o s_{w_k}.
std::vector<int> permutation_word(const std::vector<int>& p);
std::vector<int> compose_permutations(const std::vector<int>& a, const std::vector<int>& b);  // a o b
std::vector<int> inverse_permutation(const std::vector<int>& p);

// ---------------------------------------------------------------------------
// Partitions

class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  int size() const;  // |lambda|
  int length() const { return static_cast<int>(parts_.size()); }
  int first() const { return parts_.empty() ? 0 : parts_.front(); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
  /// lambda with its first row removed.
  Partition tail() const;

  std::string to_string() const;
  static Partition parse(std::string_view text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

private:
  std::vector<int> parts_;
};

using MultiPartition = std::vector<Partition>;
std::string to_string(const MultiPartition& lambda);  // "(3,2,1)|(2)"

/// All partitions of k, largest first row first (reverse lexicographic).
std::vector<Partition> partitions_of(int k);
std::vector<MultiPartition> multipartitions_of(const Shape& n);

/// lambda(t): prepend t - |lambda|. Requires t >= |lambda| + lambda_1.
Partition padded_partition(const Partition& lambda, int t);
MultiPartition padded_multipartition(const MultiPartition& lambda, const Shape& t);

struct ConjugacyClass {
  Partition cycle_type;
  std::int64_t size = 0;
};
std::vector<ConjugacyClass> conjugacy_data(int k);
/// Cycles on consecutive integers, longest first.
std::vector<int> class_representative(const Partition& cycle_type);

std::int64_t factorial(int n);
std::int64_t falling_factorial(int n, int k);
std::int64_t binomial(int n, int k);

/// All objects n <= bound, last coordinate fastest.
std::vector<Shape> shapes_below(const Shape& bound);

}  // namespace fimkit
