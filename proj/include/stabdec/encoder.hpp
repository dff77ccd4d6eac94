#pragma once

#include <cstdint>

#include "stabdec/circuit.hpp"
#include "stabdec/code.hpp"
#include "stabdec/errors.hpp"
#include "stabdec/pauli.hpp"

namespace stabdec {

/// An encoding circuit plus the qubit whose |0>/|1> amplitudes select
/// the logical branch. The circuit maps alpha0 |0...0> + alpha1 |0..1..0>
/// (the 1 on input_qubit) to alpha0 |Psi_0> + alpha1 |Psi_1>.
struct EncoderLayout {
  int input_qubit = 0;
  Circuit circuit;
};

/// Standard-form synthesis for k = 1 codes. In standard-form coordinates
/// the first r positions seed one generator each: Hadamard plus the
/// generator's controlled restriction pumps (I + G_i)/sqrt(2) into the
/// state. Before the pumps, the reduced logical X is injected from the
/// input position (CNOT/CZ fan-out) so the two branches track
/// |Psi_0>/|Psi_1>, and any negative pure-Z generator sign is absorbed
/// by presetting its pivot bit.
inline EncoderLayout synthesize_encoder(const StabilizerCode& code) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("encoder synthesis requires k = 1");

  StandardForm sf = standard_form(code);
  const int n = code.n;
  const int f = code.f();
  const int r = sf.x_rank;
  const auto& gens = sf.code.generators;

  auto bit = [&](int pos) { return std::uint64_t{1} << (n - pos); };
  auto orig = [&](int pos) { return sf.qubit_map[pos - 1]; };

  // Canonical pure-Z logical: Z on the input position plus each seed
  // whose generator has an X at the input position. It commutes with
  // everything, has square-one sign, and fixes |Psi_0>.
  std::uint64_t zt = bit(n);
  for (int i = 1; i <= r; ++i) {
    if (gens[i - 1].x_bit(n)) zt |= bit(i);
  }
  PauliString ztilde(n, 0, zt, +1);

  // Reduce the logical X so its X support sits in the free positions
  // (including the input position) and its Z support on the seeds.
  PauliString xl = sf.code.logical_x[0];
  for (int i = 1; i <= r; ++i) {
    if (xl.x_bit(i)) xl = multiply(xl, gens[i - 1]);
  }
  for (int j = r + 1; j <= f; ++j) {
    if (xl.z_bit(j)) xl = multiply(xl, gens[j - 1]);
  }
  if (xl.z_bit(n)) xl = multiply(xl, ztilde);
  if (!xl.x_bit(n)) {
    throw PreconditionError("encoder synthesis failed: logical X misses the input position");
  }

  Circuit circ(n, 0);
  // Branch injection from the input position.
  if (xl.sign() < 0) circ.append(Gate::z(orig(n)));
  for (int q = r + 1; q < n; ++q) {
    if (xl.x_bit(q)) circ.append(Gate::cnot(orig(n), orig(q)));
  }
  for (int q = 1; q <= r; ++q) {
    if (xl.z_bit(q)) circ.append(Gate::cz(orig(n), orig(q)));
  }
  // Negative pure-Z generators are satisfied by presetting their pivots.
  for (int j = r + 1; j <= f; ++j) {
    if (gens[j - 1].sign() < 0) circ.append(Gate::x(orig(j)));
  }
  // Seed pumps.
  for (int i = 1; i <= r; ++i) {
    const PauliString& g = gens[i - 1];
    circ.append(Gate::h(orig(i)));
    if (g.sign() < 0) circ.append(Gate::z(orig(i)));
    for (int q = 1; q <= n; ++q) {
      if (q == i) continue;
      if (g.z_bit(q)) circ.append(Gate::cz(orig(i), orig(q)));
      if (g.x_bit(q)) circ.append(Gate::cnot(orig(i), orig(q)));
    }
  }
  return EncoderLayout{orig(n), circ};
}

}  // namespace stabdec
