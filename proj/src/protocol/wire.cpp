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

#include "larch/protocol/wire.hpp"

namespace larch::wire {

Json ParseBody(const std::string& body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw WireError("body is not a JSON object");
  return j;
}

std::string GetString(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw WireError(std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

uint64_t GetU64(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) {
    throw WireError(std::string("missing unsigned field '") + key + "'");
  }
  return it->get<uint64_t>();
}

Bytes GetBytes(const Json& j, const char* key, size_t expected) {
  Bytes out;
  try {
    out = Base64Decode(GetString(j, key));
  } catch (const std::invalid_argument&) {
    throw WireError(std::string("field '") + key + "' is not base64");
  }
  if (expected != 0 && out.size() != expected) {
    throw WireError(std::string("field '") + key + "' has wrong length");
  }
  return out;
}

crypto::Scalar GetScalar(const Json& j, const char* key) {
  auto s = crypto::Scalar::FromCanonical(GetBytes(j, key, 32));
  if (!s) throw WireError(std::string("field '") + key + "' is not a canonical scalar");
  return *s;
}

crypto::GroupElement GetPoint(const Json& j, const char* key) {
  auto p = crypto::GroupElement::Decode(GetBytes(j, key, crypto::GroupElement::kSize));
  if (!p) throw WireError(std::string("field '") + key + "' is not a curve point");
  return *p;
}

std::string B64(ByteSpan data) { return Base64Encode(data); }

Json ErrorBody(std::string_view code, const std::string& reason) {
  return Json{{"error", std::string(code)}, {"reason", reason}};
}

Json ToJson(const fido2::AuthRequest& req) {
  return Json{{"dgst", B64(req.dgst)},
              {"ct", B64(req.ct)},
              {"proof", B64(req.proof)},
              {"ct_sig", B64(req.ct_sig)},
              {"index", req.index},
              {"d", B64(req.round1.d.bytes())},
              {"e", B64(req.round1.e.bytes())}};
}

fido2::AuthRequest Fido2AuthRequestFromJson(const Json& j) {
  fido2::AuthRequest req;
  req.dgst = GetArray<32>(j, "dgst");
  req.ct = GetArray<44>(j, "ct");
  req.proof = GetBytes(j, "proof");
  req.ct_sig = GetBytes(j, "ct_sig", 64);
  req.index = GetU64(j, "index");
  req.round1.d = GetScalar(j, "d");
  req.round1.e = GetScalar(j, "e");
  return req;
}

Json ToJson(const protocol::AuthRecord& rec) {
  return Json{{"seq", rec.seq},
              {"ts_ms", rec.ts_ms},
              {"ip", rec.ip},
              {"mech", std::string(protocol::MechanismName(rec.mech))},
              {"ct", B64(rec.ct)},
              {"sig", B64(rec.sig)}};
}

protocol::AuthRecord RecordFromJson(const Json& j) {
  protocol::AuthRecord rec;
  rec.seq = GetU64(j, "seq");
  rec.ts_ms = GetU64(j, "ts_ms");
  rec.ip = GetString(j, "ip");
  auto mech = protocol::ParseMechanism(GetString(j, "mech"));
  if (!mech) throw WireError("unknown mechanism tag");
  rec.mech = *mech;
  rec.ct = GetBytes(j, "ct");
  rec.sig = GetBytes(j, "sig");
  return rec;
}

Bytes PackMessages(const std::vector<gc::SessionMessage>& msgs) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(msgs.size()));
  for (const auto& m : msgs) w.Sized(m.Encode());
  return w.Take();
}

std::vector<gc::SessionMessage> UnpackMessages(ByteSpan data) {
  try {
    ByteReader r(data);
    const uint32_t n = r.U32();
    if (n > 16) throw WireError("too many session messages");
    std::vector<gc::SessionMessage> out;
    for (uint32_t i = 0; i < n; ++i) out.push_back(gc::SessionMessage::Decode(r.Sized()));
    r.ExpectDone();
    return out;
  } catch (const std::out_of_range& e) {
    throw WireError(std::string("truncated session messages: ") + e.what());
  } catch (const gc::GcError& e) {
    throw WireError(std::string("bad session message: ") + e.what());
  }
}

}  // namespace larch::wire
