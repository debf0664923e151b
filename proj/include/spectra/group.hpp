#pragma once

// Ambient groups (Z_N and the Boolean cube Z_2^n), subsets of them and
// real-valued functions on them.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spectra/errors.hpp"

namespace spectra {

// A group element: a residue in [0, N) or an n-bit mask.
using Element = std::uint64_t;

enum class GroupKind { cyclic, cube };

class GroupDescriptor {
 public:
  static GroupDescriptor cyclic(std::uint64_t modulus);
  static GroupDescriptor cube(unsigned dimension);

  GroupKind kind() const noexcept { return kind_; }
  bool is_cyclic() const noexcept { return kind_ == GroupKind::cyclic; }
  bool is_cube() const noexcept { return kind_ == GroupKind::cube; }

  // N for Z_N. Throws GroupMismatch for the cube.
  std::uint64_t modulus() const;
  // n for Z_2^n. Throws GroupMismatch for Z_N.
  unsigned dimension() const;
  // N or n, whichever parameter describes the group.
  std::uint64_t parameter() const noexcept { return param_; }
  // |G|.
  std::uint64_t order() const noexcept { return order_; }

  bool contains(Element x) const noexcept { return x < order_; }

  Element add(Element a, Element b) const noexcept {
    if (kind_ == GroupKind::cube) return a ^ b;
    const Element s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  Element neg(Element a) const noexcept {
    if (kind_ == GroupKind::cube || a == 0) return a;
    return order_ - a;
  }
  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }
  // c * a for an integer coefficient c.
  Element scale(std::int64_t c, Element a) const noexcept;

  // Symmetric representative in (-N/2, N/2]; for the cube returns the mask.
  std::int64_t symmetric(Element a) const noexcept;

  // "ZN 13" / "F2 8"
  std::string header() const;
  // "cyclic" / "cube"
  std::string kind_name() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  GroupDescriptor(GroupKind kind, std::uint64_t param, std::uint64_t order)
      : kind_(kind), param_(param), order_(order) {}

  GroupKind kind_;
  std::uint64_t param_;
  std::uint64_t order_;
};

// A finite subset stored as a sorted, duplicate-free element list.
class GroupSubset {
 public:
  // Sorts and removes duplicates; throws PreconditionError when an element
  // lies outside the group.
  GroupSubset(GroupDescriptor group, std::vector<Element> elements);
  explicit GroupSubset(GroupDescriptor group) : group_(group) {}

  static GroupSubset whole(GroupDescriptor group);

  const GroupDescriptor& group() const noexcept { return group_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  const std::vector<Element>& element_vector() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  double density() const noexcept {
    return static_cast<double>(elements_.size()) / static_cast<double>(group_.order());
  }
  bool contains(Element x) const noexcept;

  // Dense 0/1 table indexed by group element.
  std::vector<double> indicator() const;

  GroupSubset negated() const;
  bool is_symmetric() const;

  friend bool operator==(const GroupSubset&, const GroupSubset&) = default;

 private:
  GroupDescriptor group_;
  std::vector<Element> elements_;
};

// A real-valued function on the group, stored densely.
class DensityFunction {
 public:
  // Throws PreconditionError on size mismatch or non-finite values.
  DensityFunction(GroupDescriptor group, std::vector<double> values);

  const GroupDescriptor& group() const noexcept { return group_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](Element x) const noexcept { return values_[x]; }

  double sum() const;
  double min() const;
  double max() const;
  bool within_unit_interval(double slack = 0.0) const;

  DensityFunction scaled(double factor) const;

 private:
  GroupDescriptor group_;
  std::vector<double> values_;
};

// Set-file format: a header line `ZN <N>` or `F2 <n>`, then one element per
// line (decimal residue, or an n-character 0/1 string whose i-th character
// is coordinate i+1, i.e. bit i of the mask). Blank lines and lines starting
// with '#' are ignored.
GroupSubset parse_set(std::istream& in);
GroupSubset read_set_file(const std::string& path);
void write_set(std::ostream& out, const GroupSubset& set);
void write_set_file(const std::string& path, const GroupSubset& set);

// Formats an element the way the set file does.
std::string format_element(const GroupDescriptor& group, Element x);

}  // namespace spectra
