#pragma once

// Gödel numbering of programs and the Cantor pairing used throughout for
// splitting presentation indices.
//
// instruction code = <opcode, operands>  where operands is 0, a or <a, b>
// program code     = <length, body>      where body = c0 if length == 1,
//                                        else <c0, body(rest)>
//
// Decoding is total: anything that does not describe a valid program
// (length 0, unknown opcode, operand beyond 64 bits, bad jump target,
// mixed decider/transducer) decodes to the one-instruction program REJECT.
// In particular index 0 decodes to REJECT. Programs longer than
// kMaxProgramLength instructions are treated as invalid.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "udiag/ram.hpp"

namespace udiag {

using BigNat = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxProgramLength = 1u << 16;

/// Index into an effective enumeration. Any natural is a valid index.
class GodelIndex {
 public:
  GodelIndex() = default;
  GodelIndex(Natural v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit GodelIndex(BigNat v) : value_(std::move(v)) {
    if (value_ < 0) throw std::invalid_argument("Gödel index must be non-negative");
  }

  const BigNat& value() const { return value_; }
  std::string str() const { return value_.str(); }

  static GodelIndex parse(const std::string& digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad index '" + digits + "'");
    }
    return GodelIndex(BigNat(digits));
  }

  bool operator==(const GodelIndex&) const = default;

 private:
  BigNat value_;
};

// -- Cantor pairing ----------------------------------------------------------------

inline BigNat cantor_pair(const BigNat& x, const BigNat& y) {
  BigNat s = x + y;
  return s * (s + 1) / 2 + y;
}

/// floor(sqrt(n)). Recurses on the top half of the bits for a starting point
/// above the root, then Newton steps downward.
inline BigNat isqrt(const BigNat& n) {
  if (n < 2) return n;
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 104) return boost::multiprecision::sqrt(n);
  const std::size_t s = bits / 4;
  BigNat x = (isqrt(n >> (2 * s)) + 1) << s;
  for (;;) {
    BigNat y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

inline std::pair<BigNat, BigNat> cantor_unpair(const BigNat& z) {
  BigNat w = (isqrt(BigNat(8 * z + 1)) - 1) / 2;
  BigNat t = w * (w + 1) / 2;
  BigNat y = z - t;
  return {w - y, y};
}

inline GodelIndex pair_index(const GodelIndex& x, const GodelIndex& y) {
  return GodelIndex(cantor_pair(x.value(), y.value()));
}

inline std::pair<GodelIndex, GodelIndex> unpair_index(const GodelIndex& z) {
  auto [x, y] = cantor_unpair(z.value());
  return {GodelIndex(std::move(x)), GodelIndex(std::move(y))};
}

/// <x, <y, z>>
inline GodelIndex triple_index(const GodelIndex& x, const GodelIndex& y, const GodelIndex& z) {
  return pair_index(x, pair_index(y, z));
}

inline std::tuple<GodelIndex, GodelIndex, GodelIndex> untriple_index(const GodelIndex& i) {
  auto [x, rest] = unpair_index(i);
  auto [y, z] = unpair_index(rest);
  return {std::move(x), std::move(y), std::move(z)};
}

/// Narrowing that saturates; used where an index component is a clock.
inline Natural to_natural_saturating(const BigNat& v) {
  if (v > BigNat(std::numeric_limits<Natural>::max())) return std::numeric_limits<Natural>::max();
  return v.convert_to<Natural>();
}

// -- program codec -----------------------------------------------------------------

namespace detail {

inline BigNat encode_instruction(const Instruction& in) {
  const auto arity = info(in.op).arity;
  BigNat operands = 0;
  if (arity == 1) operands = in.a;
  if (arity == 2) operands = cantor_pair(BigNat(in.a), BigNat(in.b));
  return cantor_pair(BigNat(static_cast<unsigned>(in.op)), operands);
}

inline std::optional<Natural> narrow(const BigNat& v) {
  if (v > BigNat(std::numeric_limits<Natural>::max())) return std::nullopt;
  return v.convert_to<Natural>();
}

inline std::optional<Instruction> decode_instruction(const BigNat& code) {
  auto [op, operands] = cantor_unpair(code);
  if (op >= kOpcodeCount) return std::nullopt;
  Instruction in{static_cast<Opcode>(op.convert_to<unsigned>()), 0, 0};
  switch (info(in.op).arity) {
    case 0:
      break;
    case 1: {
      auto a = narrow(operands);
      if (!a) return std::nullopt;
      in.a = *a;
      break;
    }
    default: {
      auto [x, y] = cantor_unpair(operands);
      auto a = narrow(x), b = narrow(y);
      if (!a || !b) return std::nullopt;
      in.a = *a;
      in.b = *b;
    }
  }
  return in;
}

}  // namespace detail

inline GodelIndex godel_encode(const Program& p) {
  const auto& code = p.code();
  BigNat body = detail::encode_instruction(code.back());
  for (std::size_t i = code.size() - 1; i-- > 0;) {
    body = cantor_pair(detail::encode_instruction(code[i]), body);
  }
  return GodelIndex(cantor_pair(BigNat(code.size()), body));
}

/// Decodes, or returns nullopt if the index does not describe a valid program.
inline std::optional<Program> try_godel_decode(const GodelIndex& index) {
  auto [length, body] = cantor_unpair(index.value());
  if (length == 0 || length > kMaxProgramLength) return std::nullopt;
  const auto count = length.convert_to<std::size_t>();
  std::vector<Instruction> code;
  code.reserve(count);
  for (std::size_t i = 1; i < count; ++i) {
    auto [head, rest] = cantor_unpair(body);
    auto in = detail::decode_instruction(head);
    if (!in) return std::nullopt;
    code.push_back(*in);
    body = std::move(rest);
  }
  auto last = detail::decode_instruction(body);
  if (!last) return std::nullopt;
  code.push_back(*last);
  for (const Instruction& in : code) {
    if (in.is_jump() && in.target() > code.size()) return std::nullopt;
  }
  try {
    return Program(std::move(code));
  } catch (const MalformedProgram&) {
    return std::nullopt;
  }
}

inline Program godel_decode(const GodelIndex& index) {
  if (auto p = try_godel_decode(index)) return std::move(*p);
  return Program({ins::reject()});
}

}  // namespace udiag
