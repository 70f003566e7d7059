// Copyright 2026 The larchkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "larch/circuit/circuit.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace larch::circuit {

size_t BooleanCircuit::num_inputs() const {
  return std::accumulate(input_sizes.begin(), input_sizes.end(), size_t{0});
}

size_t BooleanCircuit::num_outputs() const {
  return std::accumulate(output_sizes.begin(), output_sizes.end(), size_t{0});
}

size_t BooleanCircuit::and_count() const {
  size_t n = 0;
  for (const Gate& g : gates) n += g.op == GateOp::kAnd;
  return n;
}

size_t BooleanCircuit::xor_count() const {
  size_t n = 0;
  for (const Gate& g : gates) n += g.op == GateOp::kXor;
  return n;
}

size_t BooleanCircuit::inv_count() const {
  size_t n = 0;
  for (const Gate& g : gates) n += g.op == GateOp::kInv;
  return n;
}

size_t BooleanCircuit::input_offset(size_t block) const {
  return std::accumulate(input_sizes.begin(),
                         input_sizes.begin() + static_cast<ptrdiff_t>(block), size_t{0});
}

size_t BooleanCircuit::output_offset(size_t block) const {
  return wire_count - num_outputs() +
         std::accumulate(output_sizes.begin(),
                         output_sizes.begin() + static_cast<ptrdiff_t>(block), size_t{0});
}

void BooleanCircuit::Validate() const {
  const size_t nin = num_inputs();
  const size_t nout = num_outputs();
  if (nin + gates.size() != wire_count) {
    throw std::invalid_argument("wire count must equal inputs plus gates");
  }
  if (nout > wire_count) throw std::invalid_argument("more outputs than wires");
  std::vector<uint8_t> defined(wire_count, 0);
  std::fill(defined.begin(), defined.begin() + static_cast<ptrdiff_t>(nin), 1);
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const bool binary = g.op != GateOp::kInv;
    if (g.in0 >= wire_count || (binary && g.in1 >= wire_count) || g.out >= wire_count) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": wire id out of range");
    }
    if (!defined[g.in0] || (binary && !defined[g.in1])) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": input used before definition");
    }
    if (defined[g.out]) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": wire written twice");
    }
    defined[g.out] = 1;
  }
}

namespace {

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

uint32_t ParseU32(std::string_view tok, size_t line) {
  uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw BristolParseError(line, "expected unsigned integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

BooleanCircuit ParseBristol(std::string_view text) {
  // Collect non-empty lines with their 1-based numbers.
  std::vector<std::pair<size_t, std::vector<std::string_view>>> lines;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto toks = Tokens(text.substr(start, end - start));
    if (!toks.empty()) lines.emplace_back(line_no, std::move(toks));
    start = end + 1;
  }
  if (lines.size() < 3) throw BristolParseError(line_no, "missing header lines");

  BooleanCircuit c;
  const auto& [l1, header] = lines[0];
  if (header.size() != 2) throw BristolParseError(l1, "header must be 'ngates nwires'");
  const uint32_t ngates = ParseU32(header[0], l1);
  c.wire_count = ParseU32(header[1], l1);

  auto parse_sizes = [](const auto& entry, std::vector<uint32_t>& sizes) {
    const auto& [ln, toks] = entry;
    const uint32_t count = ParseU32(toks[0], ln);
    if (toks.size() != count + 1u) {
      throw BristolParseError(ln, "block count does not match listed sizes");
    }
    for (uint32_t i = 0; i < count; ++i) sizes.push_back(ParseU32(toks[i + 1], ln));
  };
  parse_sizes(lines[1], c.input_sizes);
  parse_sizes(lines[2], c.output_sizes);

  const size_t nin = c.num_inputs();
  if (lines.size() - 3 != ngates) {
    throw BristolParseError(lines.back().first, "header declares " + std::to_string(ngates) +
                                                    " gates but file has " +
                                                    std::to_string(lines.size() - 3));
  }
  if (nin + ngates != c.wire_count) {
    throw BristolParseError(l1, "wire count must equal inputs plus gates");
  }
  if (c.num_outputs() > c.wire_count) throw BristolParseError(lines[2].first, "too many outputs");

  std::vector<uint8_t> defined(c.wire_count, 0);
  std::fill(defined.begin(), defined.begin() + static_cast<ptrdiff_t>(nin), 1);
  c.gates.reserve(ngates);
  for (size_t gi = 3; gi < lines.size(); ++gi) {
    const auto& [ln, toks] = lines[gi];
    if (toks.size() < 3) throw BristolParseError(ln, "truncated gate line");
    const uint32_t n_in = ParseU32(toks[0], ln);
    const uint32_t n_out = ParseU32(toks[1], ln);
    if (toks.size() != 2u + n_in + n_out + 1u) {
      throw BristolParseError(ln, "gate arity does not match wire list");
    }
    const std::string_view op = toks.back();
    Gate g{};
    if (op == "XOR" || op == "AND") {
      if (n_in != 2 || n_out != 1) throw BristolParseError(ln, std::string(op) + " takes 2 inputs and 1 output");
      g.op = op == "XOR" ? GateOp::kXor : GateOp::kAnd;
      g.in0 = ParseU32(toks[2], ln);
      g.in1 = ParseU32(toks[3], ln);
      g.out = ParseU32(toks[4], ln);
    } else if (op == "INV") {
      if (n_in != 1 || n_out != 1) throw BristolParseError(ln, "INV takes 1 input and 1 output");
      g.op = GateOp::kInv;
      g.in0 = ParseU32(toks[2], ln);
      g.in1 = 0;
      g.out = ParseU32(toks[3], ln);
    } else {
      throw BristolParseError(ln, "unknown gate op '" + std::string(op) + "'");
    }
    const bool binary = g.op != GateOp::kInv;
    if (g.in0 >= c.wire_count || (binary && g.in1 >= c.wire_count) || g.out >= c.wire_count) {
      throw BristolParseError(ln, "wire id out of range");
    }
    if (!defined[g.in0] || (binary && !defined[g.in1])) {
      throw BristolParseError(ln, "gate input used before it is defined");
    }
    if (defined[g.out]) throw BristolParseError(ln, "wire written twice");
    defined[g.out] = 1;
    c.gates.push_back(g);
  }
  return c;
}

std::string SerializeBristol(const BooleanCircuit& c) {
  std::ostringstream os;
  os << c.gates.size() << ' ' << c.wire_count << '\n';
  os << c.input_sizes.size();
  for (uint32_t s : c.input_sizes) os << ' ' << s;
  os << '\n' << c.output_sizes.size();
  for (uint32_t s : c.output_sizes) os << ' ' << s;
  os << "\n\n";
  for (const Gate& g : c.gates) {
    switch (g.op) {
      case GateOp::kXor:
        os << "2 1 " << g.in0 << ' ' << g.in1 << ' ' << g.out << " XOR\n";
        break;
      case GateOp::kAnd:
        os << "2 1 " << g.in0 << ' ' << g.in1 << ' ' << g.out << " AND\n";
        break;
      case GateOp::kInv:
        os << "1 1 " << g.in0 << ' ' << g.out << " INV\n";
        break;
    }
  }
  return os.str();
}

BooleanCircuit LoadBristolFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open circuit file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseBristol(buf.str());
}

std::vector<uint8_t> EvalPlaintext(const BooleanCircuit& c,
                                   const std::vector<uint8_t>& inputs) {
  const size_t nin = c.num_inputs();
  if (inputs.size() != nin) {
    throw std::invalid_argument("EvalPlaintext: expected " + std::to_string(nin) +
                                " input bits, got " + std::to_string(inputs.size()));
  }
  std::vector<uint8_t> w(c.wire_count, 0);
  for (size_t i = 0; i < nin; ++i) w[i] = inputs[i] & 1;
  for (const Gate& g : c.gates) {
    switch (g.op) {
      case GateOp::kXor: w[g.out] = w[g.in0] ^ w[g.in1]; break;
      case GateOp::kAnd: w[g.out] = w[g.in0] & w[g.in1]; break;
      case GateOp::kInv: w[g.out] = w[g.in0] ^ 1; break;
    }
  }
  const size_t nout = c.num_outputs();
  return std::vector<uint8_t>(w.end() - static_cast<ptrdiff_t>(nout), w.end());
}

std::vector<uint8_t> BytesToBits(ByteSpan bytes) {
  std::vector<uint8_t> bits(bytes.size() * 8);
  for (size_t i = 0; i < bytes.size(); ++i) {
    for (int j = 0; j < 8; ++j) bits[8 * i + j] = (bytes[i] >> (7 - j)) & 1;
  }
  return bits;
}

Bytes BitsToBytes(std::span<const uint8_t> bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1) out[i / 8] |= static_cast<uint8_t>(1u << (7 - i % 8));
  }
  return out;
}

std::vector<uint8_t> UintToBits(uint64_t value, size_t width) {
  std::vector<uint8_t> bits(width);
  for (size_t i = 0; i < width; ++i) bits[i] = (value >> (width - 1 - i)) & 1;
  return bits;
}

uint64_t BitsToUint(std::span<const uint8_t> bits) {
  uint64_t v = 0;
  for (uint8_t b : bits) v = (v << 1) | (b & 1);
  return v;
}

}  // namespace larch::circuit
