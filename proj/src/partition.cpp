#include "symp/partition.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace symp {

namespace {

BigInt small_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void check_part(int part) {
  if (part < 1) throw InvalidArgument("partition part-size must be >= 1, got " + std::to_string(part));
}

}  // namespace

Partition::Partition(Map parts) {
  for (auto [part, mult] : parts) {
    check_part(part);
    if (mult < 0) throw InvalidArgument("negative multiplicity for part " + std::to_string(part));
    if (mult > 0) parts_.emplace(part, mult);
  }
}

Partition::Partition(std::initializer_list<std::pair<const int, int>> parts)
    : Partition(Map(parts)) {}

Partition Partition::single(int part, int multiplicity) {
  return Partition(Map{{part, multiplicity}});
}

int Partition::multiplicity(int part) const noexcept {
  auto it = parts_.find(part);
  return it == parts_.end() ? 0 : it->second;
}

int Partition::max_part() const noexcept {
  return parts_.empty() ? 0 : parts_.rbegin()->first;
}

void Partition::add(int part, int count) {
  check_part(part);
  int m = multiplicity(part) + count;
  if (m < 0) throw InvalidArgument("multiplicity would become negative");
  if (m == 0)
    parts_.erase(part);
  else
    parts_[part] = m;
}

std::int64_t length(const Partition& a) noexcept {
  std::int64_t l = 0;
  for (auto [part, mult] : a.parts()) l += mult;
  return l;
}

std::int64_t size(const Partition& a) noexcept {
  std::int64_t s = 0;
  for (auto [part, mult] : a.parts()) s += static_cast<std::int64_t>(part) * mult;
  return s;
}

bool leq(const Partition& b, const Partition& a) noexcept {
  for (auto [part, mult] : b.parts())
    if (mult > a.multiplicity(part)) return false;
  return true;
}

Partition subtract(const Partition& a, const Partition& b) {
  if (!leq(b, a))
    throw NotDominated("cannot subtract " + format_partition(b) + " from " + format_partition(a));
  Partition::Map out;
  for (auto [part, mult] : a.parts()) out[part] = mult - b.multiplicity(part);
  return Partition(std::move(out));
}

BigInt binomial(const Partition& a, const Partition& b) {
  if (!leq(b, a)) return 0;
  BigInt r = 1;
  for (auto [part, mult] : b.parts()) r *= small_binomial(a.multiplicity(part), mult);
  return r;
}

std::vector<Partition> sub_partitions(const Partition& a) {
  std::vector<std::pair<int, int>> support(a.parts().begin(), a.parts().end());
  std::vector<int> counter(support.size(), 0);
  std::vector<Partition> out;
  while (true) {
    Partition::Map m;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (counter[i] > 0) m.emplace(support[i].first, counter[i]);
    out.emplace_back(std::move(m));
    // odometer, last part-size fastest
    bool done = true;
    for (std::size_t i = support.size(); i-- > 0;) {
      if (++counter[i] <= support[i].second) {
        done = false;
        break;
      }
      counter[i] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Partitions of `remaining` using parts <= max_part, emitted via `current`.
void partitions_rec(int remaining, int max_part, Partition::Map& current,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    for (int mult = remaining / part; mult >= 1; --mult) {
      current[part] = mult;
      partitions_rec(remaining - part * mult, part - 1, current, out);
      current.erase(part);
    }
  }
}

}  // namespace

std::vector<Partition> partitions_of_size_at_most(int max_size, int cap) {
  if (max_size < 0) throw InvalidArgument("max_size must be nonnegative");
  if (max_size > cap)
    throw CapExceeded("partition enumeration size " + std::to_string(max_size) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<Partition> out;
  for (int s = 0; s <= max_size; ++s) {
    std::vector<Partition> level;
    Partition::Map current;
    partitions_rec(s, s, current, level);
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

int parse_positive(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed integer '" + std::string(s) + "' in partition '" +
                     std::string(whole) + "'");
  return value;
}

}  // namespace

Partition parse_partition(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string term;
  Partition::Map parts;
  int last = 0;
  while (in >> term) {
    auto caret = term.find('^');
    if (caret == std::string::npos)
      throw ParseError("term '" + term + "' is not of the form j^m");
    int part = parse_positive(std::string_view(term).substr(0, caret), text);
    int mult = parse_positive(std::string_view(term).substr(caret + 1), text);
    if (part < 1) throw ParseError("part-size must be >= 1 in '" + term + "'");
    if (mult < 1) throw ParseError("zero multiplicity in '" + term + "'");
    if (part <= last)
      throw ParseError("part-sizes must be strictly increasing in '" + std::string(text) + "'");
    last = part;
    parts.emplace(part, mult);
  }
  return Partition(std::move(parts));
}

std::string format_partition(const Partition& a) {
  std::string out;
  for (auto [part, mult] : a.parts()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(part) + '^' + std::to_string(mult);
  }
  return out;
}

}  // namespace symp
