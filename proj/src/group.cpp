#include "spectra/group.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace spectra {

GroupDescriptor GroupDescriptor::cyclic(std::uint64_t modulus) {
  if (modulus < 2) throw PreconditionError("Z_N requires N >= 2");
  if (modulus > (std::uint64_t{1} << 62)) throw PreconditionError("Z_N requires N <= 2^62");
  return GroupDescriptor(GroupKind::cyclic, modulus, modulus);
}

GroupDescriptor GroupDescriptor::cube(unsigned dimension) {
  if (dimension < 1) throw PreconditionError("Z_2^n requires n >= 1");
  if (dimension > 62) throw PreconditionError("Z_2^n requires n <= 62");
  return GroupDescriptor(GroupKind::cube, dimension, std::uint64_t{1} << dimension);
}

std::uint64_t GroupDescriptor::modulus() const {
  if (kind_ != GroupKind::cyclic) throw GroupMismatch("modulus() called on Z_2^n");
  return param_;
}

unsigned GroupDescriptor::dimension() const {
  if (kind_ != GroupKind::cube) throw GroupMismatch("dimension() called on Z_N");
  return static_cast<unsigned>(param_);
}

Element GroupDescriptor::scale(std::int64_t c, Element a) const noexcept {
  if (kind_ == GroupKind::cube) return (c & 1) ? a : 0;
  const auto n = static_cast<unsigned __int128>(order_);
  const std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
  const auto prod = static_cast<Element>((static_cast<unsigned __int128>(mag % order_) * a) % n);
  return c < 0 ? neg(prod) : prod;
}

std::int64_t GroupDescriptor::symmetric(Element a) const noexcept {
  if (kind_ == GroupKind::cube) return static_cast<std::int64_t>(a);
  // (-N/2, N/2]
  if (2 * a <= order_) return static_cast<std::int64_t>(a);
  return -static_cast<std::int64_t>(order_ - a);
}

std::string GroupDescriptor::header() const {
  return (kind_ == GroupKind::cyclic ? "ZN " : "F2 ") + std::to_string(param_);
}

std::string GroupDescriptor::kind_name() const {
  return kind_ == GroupKind::cyclic ? "cyclic" : "cube";
}

GroupSubset::GroupSubset(GroupDescriptor group, std::vector<Element> elements)
    : group_(group), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty() && !group_.contains(elements_.back())) {
    throw PreconditionError("element " + std::to_string(elements_.back()) + " outside " +
                            group_.header());
  }
}

GroupSubset GroupSubset::whole(GroupDescriptor group) {
  std::vector<Element> all(group.order());
  for (Element x = 0; x < group.order(); ++x) all[x] = x;
  return GroupSubset(group, std::move(all));
}

bool GroupSubset::contains(Element x) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::vector<double> GroupSubset::indicator() const {
  std::vector<double> table(group_.order(), 0.0);
  for (Element x : elements_) table[x] = 1.0;
  return table;
}

GroupSubset GroupSubset::negated() const {
  std::vector<Element> out;
  out.reserve(elements_.size());
  for (Element x : elements_) out.push_back(group_.neg(x));
  return GroupSubset(group_, std::move(out));
}

bool GroupSubset::is_symmetric() const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](Element x) { return contains(group_.neg(x)); });
}

DensityFunction::DensityFunction(GroupDescriptor group, std::vector<double> values)
    : group_(group), values_(std::move(values)) {
  if (values_.size() != group_.order()) {
    throw PreconditionError("density table has " + std::to_string(values_.size()) +
                            " entries, group order is " + std::to_string(group_.order()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("density table contains a non-finite value");
  }
}

double DensityFunction::sum() const {
  long double acc = 0;
  for (double v : values_) acc += v;
  return static_cast<double>(acc);
}

double DensityFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double DensityFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool DensityFunction::within_unit_interval(double slack) const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v >= -slack && v <= 1.0 + slack; });
}

DensityFunction DensityFunction::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return DensityFunction(group_, std::move(out));
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Element parse_element(const GroupDescriptor& group, const std::string& token, std::size_t line_no) {
  const auto where = " (line " + std::to_string(line_no) + ")";
  if (group.is_cube()) {
    const unsigned n = group.dimension();
    if (token.size() != n) {
      throw PreconditionError("expected a " + std::to_string(n) + "-character bit string" + where);
    }
    Element mask = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (token[i] == '1') {
        mask |= Element{1} << i;
      } else if (token[i] != '0') {
        throw PreconditionError("bit strings may only contain 0 and 1" + where);
      }
    }
    return mask;
  }
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw PreconditionError("expected a decimal residue, got '" + token + "'" + where);
  }
  std::uint64_t value = 0;
  try {
    value = std::stoull(token);
  } catch (const std::exception&) {
    throw PreconditionError("residue out of range" + where);
  }
  if (!group.contains(value)) throw PreconditionError("residue not reduced mod N" + where);
  return value;
}

}  // namespace

GroupSubset parse_set(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<GroupDescriptor> group;
  std::vector<Element> elements;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!group) {
      std::istringstream header(line);
      std::string tag;
      std::uint64_t param = 0;
      if (!(header >> tag >> param)) throw PreconditionError("malformed set-file header: " + line);
      if (tag == "ZN") {
        group = GroupDescriptor::cyclic(param);
      } else if (tag == "F2") {
        if (param > 62) throw PreconditionError("F2 dimension too large");
        group = GroupDescriptor::cube(static_cast<unsigned>(param));
      } else {
        throw PreconditionError("set-file header must start with ZN or F2");
      }
      continue;
    }
    elements.push_back(parse_element(*group, line, line_no));
  }
  if (!group) throw PreconditionError("set file has no header line");
  return GroupSubset(*group, std::move(elements));
}

GroupSubset read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open set file " + path);
  return parse_set(in);
}

std::string format_element(const GroupDescriptor& group, Element x) {
  if (group.is_cyclic()) return std::to_string(x);
  std::string bits(group.dimension(), '0');
  for (unsigned i = 0; i < group.dimension(); ++i) {
    if ((x >> i) & 1) bits[i] = '1';
  }
  return bits;
}

void write_set(std::ostream& out, const GroupSubset& set) {
  out << set.group().header() << '\n';
  for (Element x : set.elements()) out << format_element(set.group(), x) << '\n';
}

void write_set_file(const std::string& path, const GroupSubset& set) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write set file " + path);
  write_set(out, set);
}

}  // namespace spectra
