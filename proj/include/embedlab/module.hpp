#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/scalars.hpp"

namespace embedlab {

/// Index of an element of a finite module (mixed-radix code over its cyclic
/// factors).
using ModElem = std::uint32_t;

/// A module presented as Z/d1 x ... x Z/dk with coordinatewise ring action,
/// or the symbolic "Q as a Q-module" backend.
///
/// The acting ring is Z, Z/m or F_p; ring elements are passed around as
/// integer representatives. Over Z/m every d_i must divide m so the action is
/// well defined.
class ModulePresentation {
 public:
  /// The rational backend: Q regarded as a module over Z or Q.
  static ModulePresentation rational_backend(RingDescriptor ring);
  static ModulePresentation cyclic_product(RingDescriptor ring,
                                           std::vector<std::int64_t> factors);

  /// Parses `Zmod(4)`, `Fp(2)`, `Zmod(2)xZmod(2)`, `Zmod(4)^2`, or `Q`.
  static ModulePresentation parse(RingDescriptor ring, std::string_view text);

  const RingDescriptor& ring() const { return ring_; }
  bool is_finite() const { return !rational_; }
  bool is_rational_backend() const { return rational_; }
  const std::vector<std::int64_t>& factors() const { return factors_; }

  /// Number of elements; throws InfiniteCarrier for the rational backend.
  std::uint64_t size() const;

  ModElem zero() const { return 0; }
  ModElem add(ModElem a, ModElem b) const;
  ModElem neg(ModElem a) const;
  /// Right action a * r for an integer representative r of a ring element.
  ModElem act(ModElem a, std::int64_t r) const;

  std::vector<std::int64_t> coords(ModElem a) const;
  ModElem from_coords(const std::vector<std::int64_t>& c) const;

  std::string element_to_string(ModElem a) const;
  std::string to_string() const;

 private:
  RingDescriptor ring_;
  bool rational_ = false;
  std::vector<std::int64_t> factors_;
  std::vector<ModElem> add_table_;  // size^2 when small, else empty
};

/// Odometer over the tuples {0..radix-1}^length, last position fastest, so
/// tuples come out in lexicographic order.
class MixedRadixCounter {
 public:
  MixedRadixCounter(std::uint64_t radix, std::size_t length);
  const std::vector<std::uint64_t>& digits() const { return digits_; }
  bool done() const { return done_; }
  void advance();

 private:
  std::uint64_t radix_;
  std::vector<std::uint64_t> digits_;
  bool done_;
};

/// All elements of M^n in lexicographic order, each exactly once.
/// Throws InfiniteCarrier for the rational backend.
std::vector<std::vector<ModElem>> enumerate_module(const ModulePresentation& m,
                                                   std::size_t n);

/// Streams M^n without materializing it; the callback returns false to stop.
void for_each_tuple(const ModulePresentation& m, std::size_t n,
                    const std::function<bool(const std::vector<ModElem>&)>& f);

/// |M|^n, throwing SearchSpaceTooLarge above `ceiling`.
std::uint64_t tuple_count(const ModulePresentation& m, std::size_t n,
                          std::uint64_t ceiling);

}  // namespace embedlab
