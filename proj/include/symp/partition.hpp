#ifndef SYMP_PARTITION_HPP_
#define SYMP_PARTITION_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symp/common.hpp"

namespace symp {

inline constexpr int kDefaultEnumerationCap = 40;

/// A partition stored as a sparse map part-size -> multiplicity.
///
/// Zero multiplicities are dropped on construction, so two partitions compare
/// equal exactly when their maps are identical. Ordering is lexicographic over
/// (part-size, multiplicity) pairs, which is also the enumeration order used
/// throughout the library.
class Partition {
 public:
  using Map = std::map<int, int>;

  Partition() = default;
  explicit Partition(Map parts);
  Partition(std::initializer_list<std::pair<const int, int>> parts);

  static Partition single(int part, int multiplicity = 1);

  const Map& parts() const noexcept { return parts_; }
  int multiplicity(int part) const noexcept;
  bool empty() const noexcept { return parts_.empty(); }
  int max_part() const noexcept;

  /// Adds `count` copies of `part` (count may be negative as long as the
  /// multiplicity stays nonnegative).
  void add(int part, int count = 1);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  Map parts_;
};

std::int64_t length(const Partition& a) noexcept;
std::int64_t size(const Partition& a) noexcept;

/// Componentwise b <= a.
bool leq(const Partition& b, const Partition& a) noexcept;

/// a - b; throws NotDominated unless leq(b, a).
Partition subtract(const Partition& a, const Partition& b);

/// prod_j C(a_j, b_j); zero when b is not dominated by a.
BigInt binomial(const Partition& a, const Partition& b);

/// All b <= a, prod_j (a_j + 1) of them, sorted by Partition ordering.
std::vector<Partition> sub_partitions(const Partition& a);

/// Every partition of size <= max_size, ordered by size and then by Partition
/// ordering within a size. Throws CapExceeded when max_size > cap.
std::vector<Partition> partitions_of_size_at_most(int max_size,
                                                  int cap = kDefaultEnumerationCap);

/// Text form "j^m j^m ..." with strictly increasing part-sizes; "" is empty.
Partition parse_partition(std::string_view text);
std::string format_partition(const Partition& a);

}  // namespace symp

#endif  // SYMP_PARTITION_HPP_
