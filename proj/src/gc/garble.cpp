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

#include "larch/gc/garble.hpp"

#include "larch/crypto/hash.hpp"
#include "larch/crypto/prg.hpp"

namespace larch::gc {

namespace {

using circuit::Gate;
using circuit::GateOp;

constexpr uint64_t kGarbleDomain = 0x67617262ull;

Label RowKey(const Label& a, const Label& b, uint32_t gate) {
  crypto::Sha256Hasher h;
  h.Update(a).Update(b).UpdateU64(gate);
  const Bytes32 d = h.Final();
  Label out;
  std::copy_n(d.begin(), out.size(), out.begin());
  return out;
}

Bytes16 DecodeHash(const Label& l, uint32_t output_index) {
  crypto::Sha256Hasher h;
  h.Update(std::string_view("larch-gc-decode")).UpdateU64(output_index).Update(l);
  const Bytes32 d = h.Final();
  Bytes16 out;
  std::copy_n(d.begin(), out.size(), out.begin());
  return out;
}

}  // namespace

Bytes DecodeMap::Serialize() const {
  ByteWriter w;
  w.U32(first_output);
  w.U32(static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    w.Raw(e[0]);
    w.Raw(e[1]);
  }
  return w.Take();
}

DecodeMap DecodeMap::Deserialize(ByteSpan data) {
  ByteReader r(data);
  DecodeMap m;
  m.first_output = r.U32();
  const uint32_t n = r.U32();
  if (n > r.remaining() / 32) throw GcError("decode map truncated");
  m.entries.resize(n);
  for (auto& e : m.entries) {
    e[0] = r.Fixed<16>();
    e[1] = r.Fixed<16>();
  }
  r.ExpectDone();
  return m;
}

Garbling Garble(const circuit::BooleanCircuit& c, const Bytes32& seed) {
  crypto::StreamPrg prg(seed, kGarbleDomain);
  Garbling g;
  g.delta = prg.NextArray<16>();
  g.delta[15] |= 1;
  const size_t nin = c.num_inputs();
  std::vector<Label> zero(c.wire_count);
  for (size_t i = 0; i < nin; ++i) zero[i] = prg.NextArray<16>();
  g.input_zero.assign(zero.begin(), zero.begin() + static_cast<ptrdiff_t>(nin));
  g.tables.reserve(c.and_count() * 48);

  uint32_t gate_id = 0;
  for (const Gate& gate : c.gates) {
    switch (gate.op) {
      case GateOp::kXor:
        zero[gate.out] = XorLabel(zero[gate.in0], zero[gate.in1]);
        break;
      case GateOp::kInv:
        zero[gate.out] = XorLabel(zero[gate.in0], g.delta);
        break;
      case GateOp::kAnd: {
        const Label& a0 = zero[gate.in0];
        const Label& b0 = zero[gate.in1];
        const uint8_t pa = PermuteBit(a0), pb = PermuteBit(b0);
        auto a_label = [&](uint8_t v) { return v ? XorLabel(a0, g.delta) : a0; };
        auto b_label = [&](uint8_t v) { return v ? XorLabel(b0, g.delta) : b0; };
        // Row (0,0) is implicit: its key is the output label itself.
        const Label k00 = RowKey(a_label(pa), b_label(pb), gate_id);
        const uint8_t v00 = pa & pb;
        const Label c0 = v00 ? XorLabel(k00, g.delta) : k00;
        zero[gate.out] = c0;
        for (uint8_t row = 1; row < 4; ++row) {
          const uint8_t i = row >> 1, j = row & 1;
          const uint8_t va = pa ^ i, vb = pb ^ j;
          const Label key = RowKey(a_label(va), b_label(vb), gate_id);
          const Label out = (va & vb) ? XorLabel(c0, g.delta) : c0;
          const Label ct = XorLabel(key, out);
          g.tables.insert(g.tables.end(), ct.begin(), ct.end());
        }
        break;
      }
    }
    ++gate_id;
  }

  const size_t first = c.wire_count - c.num_outputs();
  uint32_t index = 0;
  for (uint32_t size : c.output_sizes) {
    DecodeMap m;
    m.first_output = index;
    for (uint32_t k = 0; k < size; ++k, ++index) {
      const Label& l0 = zero[first + index];
      m.entries.push_back({DecodeHash(l0, index), DecodeHash(XorLabel(l0, g.delta), index)});
    }
    g.decode_maps.push_back(std::move(m));
  }
  return g;
}

std::vector<Label> Evaluate(const circuit::BooleanCircuit& c, ByteSpan tables,
                            const std::vector<Label>& input_labels) {
  if (input_labels.size() != c.num_inputs()) throw GcError("wrong number of input labels");
  if (tables.size() != c.and_count() * 48) throw GcError("garbled table size mismatch");
  std::vector<Label> w(c.wire_count);
  std::copy(input_labels.begin(), input_labels.end(), w.begin());
  size_t and_idx = 0;
  uint32_t gate_id = 0;
  for (const Gate& gate : c.gates) {
    switch (gate.op) {
      case GateOp::kXor:
        w[gate.out] = XorLabel(w[gate.in0], w[gate.in1]);
        break;
      case GateOp::kInv:
        w[gate.out] = w[gate.in0];
        break;
      case GateOp::kAnd: {
        const Label& a = w[gate.in0];
        const Label& b = w[gate.in1];
        const uint8_t row = static_cast<uint8_t>(PermuteBit(a) << 1 | PermuteBit(b));
        Label out = RowKey(a, b, gate_id);
        if (row != 0) {
          Label ct;
          std::copy_n(tables.data() + and_idx * 48 + (row - 1) * 16, 16, ct.begin());
          out = XorLabel(out, ct);
        }
        w[gate.out] = out;
        ++and_idx;
        break;
      }
    }
    ++gate_id;
  }
  const size_t nout = c.num_outputs();
  return std::vector<Label>(w.end() - static_cast<ptrdiff_t>(nout), w.end());
}

std::vector<uint8_t> Decode(const DecodeMap& map, const std::vector<Label>& labels) {
  if (labels.size() != map.entries.size()) throw GcError("decode: label count mismatch");
  std::vector<uint8_t> bits(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const Bytes16 h = DecodeHash(labels[i], map.first_output + static_cast<uint32_t>(i));
    if (h == map.entries[i][0]) {
      bits[i] = 0;
    } else if (h == map.entries[i][1]) {
      bits[i] = 1;
    } else {
      throw GcError("decode: output label " + std::to_string(i) + " matches neither value");
    }
  }
  return bits;
}

}  // namespace larch::gc
