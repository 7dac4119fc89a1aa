#pragma once

// Unary input structures ([n], f) with f : [n] -> [n], their global
// enumeration order, the reversible tag pairing and disjoint-union membership.

#include <compare>
#include <cstdint>
#include <functional>
#include <iterator>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace udiag {

using Natural = std::uint64_t;

class NotInImage : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A unary structure: a universe {0,...,n-1} with a single unary function f.
/// Invariants: n >= 1 and every value is < n. The constructor enforces both.
class Structure {
 public:
  explicit Structure(std::vector<Natural> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw std::invalid_argument("structure size must be at least 1");
    }
    for (Natural v : values_) {
      if (v >= values_.size()) {
        throw std::invalid_argument("structure value " + std::to_string(v) +
                                    " out of range for size " +
                                    std::to_string(values_.size()));
      }
    }
  }

  /// The all-zero structure of size n.
  static Structure zeros(Natural n) {
    return Structure(std::vector<Natural>(n == 0 ? 0 : n, 0));
  }

  Natural size() const { return values_.size(); }
  Natural operator[](Natural i) const { return values_[i]; }
  const std::vector<Natural>& values() const { return values_; }

  bool operator==(const Structure&) const = default;

  /// Global enumeration order: by size first, then lexicographically.
  std::strong_ordering operator<=>(const Structure& other) const {
    if (auto c = size() <=> other.size(); c != 0) return c;
    return values_ <=> other.values_;
  }

 private:
  std::vector<Natural> values_;
};

struct TaggedStructure {
  Structure inner;
  int tag;  // 0 selects the first summand, 1 the second

  bool operator==(const TaggedStructure&) const = default;
};

// -- pairing -----------------------------------------------------------------

/// <w, tag>: prepend the tag as f'(0) and shift the old values by one
/// position. The result has size n+1; tag < n+1 holds because n >= 1.
inline Structure encode_pair(const Structure& w, int tag) {
  if (tag != 0 && tag != 1) throw std::invalid_argument("tag must be 0 or 1");
  std::vector<Natural> out;
  out.reserve(w.size() + 1);
#ifdef UDIAG_MUTATE_PAIRING
  // Broken pairing for harness sanity checks: the tag is dropped.
  (void)tag;
  out.push_back(0);
#else
  out.push_back(static_cast<Natural>(tag));
#endif
  out.insert(out.end(), w.values().begin(), w.values().end());
  return Structure(std::move(out));
}

inline TaggedStructure decode_pair(const Structure& w2) {
  if (w2.size() < 2) throw NotInImage("encoded pair needs size >= 2");
  Natural tag = w2[0];
  if (tag > 1) throw NotInImage("first value " + std::to_string(tag) + " is not a tag");
  std::vector<Natural> inner(w2.values().begin() + 1, w2.values().end());
  for (Natural v : inner) {
    if (v >= inner.size()) {
      throw NotInImage("shifted value " + std::to_string(v) + " exceeds inner size");
    }
  }
  return {Structure(std::move(inner)), static_cast<int>(tag)};
}

/// Non-throwing variant used where "not an encoded pair" is an ordinary answer.
inline std::optional<TaggedStructure> try_decode_pair(const Structure& w2) {
  if (w2.size() < 2 || w2[0] > 1) return std::nullopt;
  const Natural inner = w2.size() - 1;
  for (Natural i = 1; i < w2.size(); ++i) {
    if (w2[i] >= inner) return std::nullopt;
  }
  return decode_pair(w2);
}

/// Membership in the disjoint union A1 (+) A2 given total predicates for both
/// summands. Structures outside the image of the pairing are non-members.
template <typename Pred1, typename Pred2>
bool oplus_member(const Structure& w2, Pred1&& in_a1, Pred2&& in_a2) {
  auto pair = try_decode_pair(w2);
  if (!pair) return false;
  return pair->tag == 0 ? static_cast<bool>(std::invoke(in_a1, pair->inner))
                        : static_cast<bool>(std::invoke(in_a2, pair->inner));
}

// -- enumeration ---------------------------------------------------------------

inline Structure first_structure() { return Structure({0}); }

/// Successor in the global order: odometer increment of the value tuple,
/// rolling over to the all-zero structure of the next size.
inline Structure next_structure(const Structure& z) {
  std::vector<Natural> v = z.values();
  const Natural n = v.size();
  for (Natural i = n; i-- > 0;) {
    if (v[i] + 1 < n) {
      ++v[i];
      return Structure(std::move(v));
    }
    v[i] = 0;
  }
  return Structure::zeros(n + 1);
}

/// Number of structures of size exactly n, i.e. n^n. Saturates on overflow.
inline Natural structures_of_size(Natural n) {
  Natural r = 1;
  for (Natural i = 0; i < n; ++i) {
    if (r > UINT64_MAX / n) return UINT64_MAX;
    r *= n;
  }
  return r;
}

/// Input range over all structures of size 1..size_limit in global order.
class StructureRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Structure;
    using difference_type = std::ptrdiff_t;
    using pointer = const Structure*;
    using reference = const Structure&;

    iterator() = default;
    iterator(Structure start, Natural limit) : current_(std::move(start)), limit_(limit) {
      if (current_->size() > limit_) current_.reset();
    }

    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = next_structure(*current_);
      if (current_->size() > limit_) current_.reset();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return current_ == o.current_; }

   private:
    std::optional<Structure> current_;
    Natural limit_ = 0;
  };

  explicit StructureRange(Natural size_limit, Natural min_size = 1)
      : limit_(size_limit), min_(min_size == 0 ? 1 : min_size) {}

  iterator begin() const { return iterator(Structure::zeros(min_), limit_); }
  iterator end() const { return iterator(); }

 private:
  Natural limit_;
  Natural min_;
};

inline StructureRange structures_up_to(Natural size_limit) { return StructureRange(size_limit); }
inline StructureRange structures_of_exact_size(Natural n) { return StructureRange(n, n); }

inline std::vector<Structure> enumerate_structures(Natural size_limit) {
  if (size_limit == 0) throw std::invalid_argument("size limit must be at least 1");
  std::vector<Structure> out;
  for (const Structure& s : structures_up_to(size_limit)) out.push_back(s);
  return out;
}

// -- text format ---------------------------------------------------------------
// line 1: n
// line 2: n space-separated values
// newline-terminated, no trailing spaces.

inline std::string format_structure(const Structure& w) {
  std::string out = std::to_string(w.size());
  out += '\n';
  for (Natural i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  out += '\n';
  return out;
}

inline Structure parse_structure(std::istream& in) {
  Natural n = 0;
  if (!(in >> n)) throw std::invalid_argument("structure: missing size line");
  if (n == 0) throw std::invalid_argument("structure: size must be at least 1");
  std::vector<Natural> values;
  values.reserve(n);
  for (Natural i = 0; i < n; ++i) {
    Natural v = 0;
    if (!(in >> v)) throw std::invalid_argument("structure: expected " + std::to_string(n) + " values");
    values.push_back(v);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("structure: trailing data '" + rest + "'");
  return Structure(std::move(values));
}

inline Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

/// Compact single-line form used in logs and reports, e.g. "[3|2,0,1]".
inline std::string to_string(const Structure& w) {
  std::string out = "[" + std::to_string(w.size()) + "|";
  for (Natural i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Structure& w) { return os << to_string(w); }

}  // namespace udiag
