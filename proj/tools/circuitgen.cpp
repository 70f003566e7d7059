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

// Emits builder circuits as Bristol Fashion text.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "larch/circuit/builder.hpp"
#include "larch/circuit/fido2_circuit.hpp"
#include "larch/circuit/totp_circuit.hpp"

int main(int argc, char** argv) {
  CLI::App app{"larch-circuitgen: write a Bristol Fashion circuit"};
  std::string which = "sha256";
  std::string out_path;
  size_t slots = 16;
  app.add_option("circuit", which, "sha256 | fido2 | totp")
      ->check(CLI::IsMember({"sha256", "fido2", "totp"}));
  app.add_option("-o,--out", out_path, "output file (default stdout)");
  app.add_option("--slots", slots, "TOTP relying-party slots (power of two)");
  CLI11_PARSE(app, argc, argv);

  try {
    larch::circuit::BooleanCircuit c;
    if (which == "sha256") {
      c = larch::circuit::BuildSha256CompressCircuit();
    } else if (which == "fido2") {
      c = larch::circuit::BuildFido2Circuit();
    } else {
      larch::circuit::CircuitParams p;
      p.totp_slots = slots;
      c = larch::circuit::BuildTotpCircuit(p);
    }
    const std::string text = larch::circuit::SerializeBristol(c);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw std::runtime_error("write failed: " + out_path);
    }
    std::cerr << which << ": " << c.gates.size() << " gates (" << c.and_count()
              << " AND), " << c.wire_count << " wires\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
