// Builds both decoders for the five-qubit code, verifies them by exact
// simulation, and prints the circuits with their reports.

#include <iostream>

#include "stabdec/stabdec.hpp"

int main() {
  using namespace stabdec;

  StabilizerCode code = five_qubit_code();

  DecoderCircuit conventional = synthesize_conventional(code);
  std::vector<int> ascending{1, 2, 3, 4, 5};
  DecoderCircuit proposed = synthesize_proposed(code, ChainSpec(ascending));

  for (const DecoderCircuit& dec : {conventional, proposed}) {
    DecodeReport rep = verify_decoder(code, dec);
    std::cout << method_name(dec.method) << " decoder, output qubit "
              << dec.output_qubit << ":\n"
              << serialize(dec.circuit) << report_to_json(rep).dump(2) << "\n\n";
  }
  return 0;
}
