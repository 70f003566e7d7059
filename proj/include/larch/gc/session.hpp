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

#ifndef LARCH_GC_SESSION_HPP_
#define LARCH_GC_SESSION_HPP_

#include <memory>
#include <vector>

#include "larch/circuit/circuit.hpp"
#include "larch/gc/garble.hpp"
#include "larch/gc/ot.hpp"

namespace larch::gc {

enum class MsgType : uint8_t {
  kOtRound1 = 1,
  kOtRound2 = 2,
  kOtRound3 = 3,
  kGarbleBlob = 4,
  kEvalLabelsBack = 5,
  kLogOutputBits = 6,
};

// type u8 | session id (16) | seq u32 | payload length u32 | payload
struct SessionMessage {
  MsgType type{};
  Bytes16 session_id{};
  uint32_t seq = 0;
  Bytes payload;

  Bytes Encode() const;
  // Throws GcError on malformed framing.
  static SessionMessage Decode(ByteSpan data);
  bool operator==(const SessionMessage&) const = default;
};

// Two-party execution of a circuit with input blocks (evaluator, garbler)
// and output blocks (evaluator, garbler). Message order and sequence
// numbers:
//   0 OT_ROUND_1       garbler -> evaluator
//   1 OT_ROUND_2       evaluator -> garbler
//   2 OT_ROUND_3       garbler -> evaluator
//   3 GARBLE_BLOB      garbler -> evaluator   (tables, garbler input labels)
//   4 EVAL_LABELS_BACK evaluator -> garbler   (garbler-block output labels)
//   5 LOG_OUTPUT_BITS  garbler -> evaluator   (evaluator-block decode map)
// The garbler learns its output before releasing the evaluator's decode map.
// Out-of-order, foreign-session, or malformed messages throw GcError.
class GarblerSession {
 public:
  GarblerSession(const circuit::BooleanCircuit& c, std::vector<uint8_t> garbler_bits,
                 const Bytes16& session_id, const Bytes32& seed);

  SessionMessage Start();
  // Returns OT_ROUND_3 and GARBLE_BLOB.
  std::vector<SessionMessage> OnOtRound2(const SessionMessage& m);
  // Decoded garbler-block output bits.
  std::vector<uint8_t> OnLabelsBack(const SessionMessage& m);
  SessionMessage Finish();

 private:
  void Expect(const SessionMessage& m, MsgType type, uint32_t seq) const;

  const circuit::BooleanCircuit& c_;
  std::vector<uint8_t> bits_;
  Bytes16 sid_;
  Garbling garbling_;
  OtSender ot_;
  int stage_ = 0;
};

class EvaluatorSession {
 public:
  EvaluatorSession(const circuit::BooleanCircuit& c, std::vector<uint8_t> evaluator_bits,
                   const Bytes16& session_id, const Bytes32& seed);

  SessionMessage OnOtRound1(const SessionMessage& m);
  void OnOtRound3(const SessionMessage& m);
  // Evaluates and returns EVAL_LABELS_BACK.
  SessionMessage OnGarbleBlob(const SessionMessage& m);
  // Decoded evaluator-block output bits.
  std::vector<uint8_t> OnOutputMap(const SessionMessage& m);

  // Evaluator-block output labels, available after OnGarbleBlob.
  const std::vector<Label>& own_output_labels() const { return own_labels_; }

 private:
  void Expect(const SessionMessage& m, MsgType type, uint32_t seq) const;

  const circuit::BooleanCircuit& c_;
  Bytes16 sid_;
  OtReceiver ot_;
  std::vector<Label> my_input_labels_;
  std::vector<Label> own_labels_;
  int stage_ = 0;
};

}  // namespace larch::gc

#endif  // LARCH_GC_SESSION_HPP_
