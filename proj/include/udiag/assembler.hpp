#pragma once

// Text form of RAM programs (.ram files).
//
//   ; comment
//   loop:  JZ 3,done     ; labels end in ':' and may share a line
//          JMP loop
//   done:
//
// Operands are separated by commas and/or blanks. Registers may be written
// as `7` or `r7`. Jump operands are a label or an absolute instruction index.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "udiag/ram.hpp"

namespace udiag {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline std::optional<Natural> parse_natural(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Natural v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct PendingInstruction {
  std::size_t line;
  Opcode op;
  std::vector<std::string> operands;
};

}  // namespace detail

inline Program assemble(std::string_view src) {
  using detail::trim;
  std::vector<detail::PendingInstruction> pending;
  std::map<std::string, Natural, std::less<>> labels;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t eol = src.find('\n', pos);
    if (eol == std::string_view::npos) eol = src.size();
    std::string_view line = src.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto c = line.find(';'); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);

    while (true) {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) break;
      std::string_view name = trim(line.substr(0, colon));
      if (!detail::is_identifier(name)) throw ParseError(line_no, "bad label '" + std::string(name) + "'");
      if (!labels.emplace(std::string(name), pending.size()).second) {
        throw ParseError(line_no, "duplicate label '" + std::string(name) + "'");
      }
      line = trim(line.substr(colon + 1));
    }
    if (line.empty()) continue;

    std::size_t sp = 0;
    while (sp < line.size() && !std::isspace(static_cast<unsigned char>(line[sp]))) ++sp;
    std::string mnemonic(line.substr(0, sp));
    for (char& ch : mnemonic) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    auto op = opcode_from_mnemonic(mnemonic);
    if (!op) throw ParseError(line_no, "unknown opcode '" + mnemonic + "'");

    std::vector<std::string> operands;
    std::string current;
    for (char ch : line.substr(sp)) {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        if (!current.empty()) operands.push_back(std::move(current));
        current.clear();
      } else {
        current += ch;
      }
    }
    if (!current.empty()) operands.push_back(std::move(current));
    if (operands.size() != info(*op).arity) {
      throw ParseError(line_no, mnemonic + " expects " + std::to_string(info(*op).arity) + " operand(s), got " +
                                    std::to_string(operands.size()));
    }
    pending.push_back({line_no, *op, std::move(operands)});
  }

  std::vector<Instruction> code;
  code.reserve(pending.size());
  for (const auto& p : pending) {
    Natural vals[2] = {0, 0};
    const OpcodeInfo& oi = info(p.op);
    for (std::size_t k = 0; k < oi.arity; ++k) {
      std::string_view text = p.operands[k];
      switch (oi.kinds[k]) {
        case OperandKind::kRegister: {
          if (text.size() > 1 && (text[0] == 'r' || text[0] == 'R')) text.remove_prefix(1);
          auto v = detail::parse_natural(text);
          if (!v) throw ParseError(p.line, "bad register '" + p.operands[k] + "'");
          vals[k] = *v;
          break;
        }
        case OperandKind::kConstant: {
          auto v = detail::parse_natural(text);
          if (!v) throw ParseError(p.line, "bad constant '" + p.operands[k] + "'");
          vals[k] = *v;
          break;
        }
        case OperandKind::kTarget: {
          if (auto v = detail::parse_natural(text)) {
            vals[k] = *v;
          } else if (auto it = labels.find(text); it != labels.end()) {
            vals[k] = it->second;
          } else if (detail::is_identifier(text)) {
            throw ParseError(p.line, "missing label '" + std::string(text) + "'");
          } else {
            throw ParseError(p.line, "bad jump target '" + std::string(text) + "'");
          }
          if (vals[k] > pending.size()) {
            throw ParseError(p.line, "jump target " + std::to_string(vals[k]) + " out of range");
          }
          break;
        }
      }
    }
    code.push_back({p.op, vals[0], vals[1]});
  }
  if (code.empty()) throw ParseError(line_no, "empty program");
  try {
    return Program(std::move(code));
  } catch (const MalformedProgram& e) {
    throw ParseError(pending.back().line, e.what());
  }
}

/// Canonical text: jump targets become labels L0, L1, ... numbered in target
/// order, each on its own line before the instruction it names; instructions
/// are indented four spaces; operands are separated by a bare comma.
inline std::string disassemble(const Program& p) {
  std::set<Natural> targets;
  for (const Instruction& in : p.code()) {
    if (in.is_jump()) targets.insert(in.target());
  }
  std::map<Natural, std::size_t> label_of;
  for (Natural t : targets) label_of.emplace(t, label_of.size());

  std::string out;
  for (std::size_t i = 0; i <= p.size(); ++i) {
    if (auto it = label_of.find(i); it != label_of.end()) out += "L" + std::to_string(it->second) + ":\n";
    if (i == p.size()) break;
    const Instruction& in = p[i];
    const OpcodeInfo& oi = info(in.op);
    out += "    ";
    out += oi.mnemonic;
    const Natural vals[2] = {in.a, in.b};
    for (std::size_t k = 0; k < oi.arity; ++k) {
      out += k == 0 ? " " : ",";
      if (oi.kinds[k] == OperandKind::kTarget) {
        out += "L" + std::to_string(label_of.at(vals[k]));
      } else {
        out += std::to_string(vals[k]);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace udiag
