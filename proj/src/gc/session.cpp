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

#include "larch/gc/session.hpp"

#include "larch/crypto/hash.hpp"

namespace larch::gc {

namespace {

constexpr uint32_t kMaxPayload = 64u << 20;

Bytes32 SubSeed(const Bytes32& seed, std::string_view label) {
  crypto::Sha256Hasher h;
  return h.Update(label).Update(seed).Final();
}

void CheckShape(const circuit::BooleanCircuit& c) {
  if (c.input_sizes.size() != 2 || c.output_sizes.size() != 2) {
    throw std::invalid_argument("2PC circuit needs two input and two output blocks");
  }
}

SessionMessage Make(MsgType type, const Bytes16& sid, uint32_t seq, Bytes payload) {
  return SessionMessage{type, sid, seq, std::move(payload)};
}

}  // namespace

Bytes SessionMessage::Encode() const {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(type));
  w.Raw(session_id);
  w.U32(seq);
  w.Sized(payload);
  return w.Take();
}

SessionMessage SessionMessage::Decode(ByteSpan data) {
  try {
    ByteReader r(data);
    SessionMessage m;
    const uint8_t t = r.U8();
    if (t < 1 || t > 6) throw GcError("unknown session message type");
    m.type = static_cast<MsgType>(t);
    m.session_id = r.Fixed<16>();
    m.seq = r.U32();
    const ByteSpan p = r.Sized(kMaxPayload);
    m.payload.assign(p.begin(), p.end());
    r.ExpectDone();
    return m;
  } catch (const std::out_of_range& e) {
    throw GcError(std::string("malformed session message: ") + e.what());
  }
}

GarblerSession::GarblerSession(const circuit::BooleanCircuit& c, std::vector<uint8_t> garbler_bits,
                               const Bytes16& session_id, const Bytes32& seed)
    : c_(c),
      bits_(std::move(garbler_bits)),
      sid_(session_id),
      garbling_((CheckShape(c), Garble(c, SubSeed(seed, "garble")))),
      ot_(c.input_sizes[0], SubSeed(seed, "ot-sender")) {
  if (bits_.size() != c.input_sizes[1]) throw std::invalid_argument("garbler input length mismatch");
}

void GarblerSession::Expect(const SessionMessage& m, MsgType type, uint32_t seq) const {
  if (m.session_id != sid_) throw GcError("message for a different session");
  if (m.type != type || m.seq != seq) throw GcError("unexpected session message");
}

SessionMessage GarblerSession::Start() {
  if (stage_ != 0) throw GcError("session already started");
  stage_ = 1;
  return Make(MsgType::kOtRound1, sid_, 0, ot_.Round1());
}

std::vector<SessionMessage> GarblerSession::OnOtRound2(const SessionMessage& m) {
  if (stage_ != 1) throw GcError("unexpected OT round 2");
  Expect(m, MsgType::kOtRound2, 1);
  const size_t neval = c_.input_sizes[0];
  std::vector<std::array<Label, 2>> pairs(neval);
  for (size_t i = 0; i < neval; ++i) {
    pairs[i] = {garbling_.InputLabel(i, false), garbling_.InputLabel(i, true)};
  }
  Bytes r3 = ot_.Round3(m.payload, pairs);

  ByteWriter blob;
  blob.Sized(garbling_.tables);
  for (size_t i = 0; i < bits_.size(); ++i) blob.Raw(garbling_.InputLabel(neval + i, bits_[i] & 1));
  stage_ = 2;
  return {Make(MsgType::kOtRound3, sid_, 2, std::move(r3)),
          Make(MsgType::kGarbleBlob, sid_, 3, blob.Take())};
}

std::vector<uint8_t> GarblerSession::OnLabelsBack(const SessionMessage& m) {
  if (stage_ != 2) throw GcError("unexpected output labels");
  Expect(m, MsgType::kEvalLabelsBack, 4);
  const DecodeMap& map = garbling_.decode_maps[1];
  if (m.payload.size() != map.entries.size() * 16) throw GcError("output label count mismatch");
  std::vector<Label> labels(map.entries.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    std::copy_n(m.payload.data() + 16 * i, 16, labels[i].begin());
  }
  auto bits = Decode(map, labels);
  stage_ = 3;
  return bits;
}

SessionMessage GarblerSession::Finish() {
  if (stage_ != 3) throw GcError("garbler output not yet decoded");
  stage_ = 4;
  return Make(MsgType::kLogOutputBits, sid_, 5, garbling_.decode_maps[0].Serialize());
}

EvaluatorSession::EvaluatorSession(const circuit::BooleanCircuit& c,
                                   std::vector<uint8_t> evaluator_bits, const Bytes16& session_id,
                                   const Bytes32& seed)
    : c_(c),
      sid_(session_id),
      ot_((CheckShape(c), std::move(evaluator_bits)), SubSeed(seed, "ot-receiver")) {}

void EvaluatorSession::Expect(const SessionMessage& m, MsgType type, uint32_t seq) const {
  if (m.session_id != sid_) throw GcError("message for a different session");
  if (m.type != type || m.seq != seq) throw GcError("unexpected session message");
}

SessionMessage EvaluatorSession::OnOtRound1(const SessionMessage& m) {
  if (stage_ != 0) throw GcError("unexpected OT round 1");
  Expect(m, MsgType::kOtRound1, 0);
  Bytes r2 = ot_.Round2(m.payload);
  stage_ = 1;
  return Make(MsgType::kOtRound2, sid_, 1, std::move(r2));
}

void EvaluatorSession::OnOtRound3(const SessionMessage& m) {
  if (stage_ != 1) throw GcError("unexpected OT round 3");
  Expect(m, MsgType::kOtRound3, 2);
  my_input_labels_ = ot_.Finish(m.payload);
  if (my_input_labels_.size() != c_.input_sizes[0]) throw GcError("OT label count mismatch");
  stage_ = 2;
}

SessionMessage EvaluatorSession::OnGarbleBlob(const SessionMessage& m) {
  if (stage_ != 2) throw GcError("unexpected garbled circuit");
  Expect(m, MsgType::kGarbleBlob, 3);
  std::vector<Label> inputs = my_input_labels_;
  try {
    ByteReader r(m.payload);
    const ByteSpan tables = r.Sized(kMaxPayload);
    for (size_t i = 0; i < c_.input_sizes[1]; ++i) inputs.push_back(r.Fixed<16>());
    r.ExpectDone();
    const auto out = Evaluate(c_, tables, inputs);
    const size_t n0 = c_.output_sizes[0];
    own_labels_.assign(out.begin(), out.begin() + static_cast<ptrdiff_t>(n0));
    ByteWriter w;
    for (size_t i = n0; i < out.size(); ++i) w.Raw(out[i]);
    stage_ = 3;
    return Make(MsgType::kEvalLabelsBack, sid_, 4, w.Take());
  } catch (const std::out_of_range&) {
    throw GcError("malformed garbled circuit blob");
  }
}

std::vector<uint8_t> EvaluatorSession::OnOutputMap(const SessionMessage& m) {
  if (stage_ != 3) throw GcError("unexpected decode map");
  Expect(m, MsgType::kLogOutputBits, 5);
  DecodeMap map;
  try {
    map = DecodeMap::Deserialize(m.payload);
  } catch (const std::out_of_range&) {
    throw GcError("malformed decode map");
  }
  if (map.first_output != 0) throw GcError("decode map is for the wrong output block");
  stage_ = 4;
  return Decode(map, own_labels_);
}

}  // namespace larch::gc
