#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabdec/circuit.hpp"
#include "stabdec/code.hpp"
#include "stabdec/encoder.hpp"
#include "stabdec/errors.hpp"
#include "stabdec/statevector.hpp"

namespace stabdec {

enum class DecodeMethod { conventional, proposed, custom };

inline const char* method_name(DecodeMethod m) {
  switch (m) {
    case DecodeMethod::conventional: return "conventional";
    case DecodeMethod::proposed: return "proposed";
    case DecodeMethod::custom: return "custom";
  }
  throw PreconditionError("unknown decode method");
}

/// A decoding circuit plus the qubit that carries the recovered logical
/// amplitudes afterwards.
struct DecoderCircuit {
  Circuit circuit;
  int output_qubit = 0;
  DecodeMethod method = DecodeMethod::custom;
  bool uses_ancilla = false;
};

/// Two-step decoder: copy the logical Z parity onto a fresh ancilla,
/// then apply the logical X to the code block controlled on it. Needs a
/// pure-Z logical Z and pure-X logical X, both with positive sign.
inline DecoderCircuit synthesize_conventional(const StabilizerCode& code) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("conventional decoder requires k = 1");
  const PauliString& lz = code.logical_z[0];
  const PauliString& lx = code.logical_x[0];
  if (lz.x() != 0 || lz.sign() != +1) {
    throw PreconditionError("conventional decoder needs a pure-Z logical Z with sign +1");
  }
  if (lx.z() != 0 || lx.sign() != +1) {
    throw PreconditionError("conventional decoder needs a pure-X logical X with sign +1");
  }
  const int anc = code.n + 1;
  DecoderCircuit dec;
  dec.circuit = Circuit(code.n + 1, 1);
  for (int q = 1; q <= code.n; ++q) {
    if (lz.z_bit(q)) dec.circuit.append(Gate::cnot(q, anc));
  }
  for (int q = 1; q <= code.n; ++q) {
    if (lx.x_bit(q)) dec.circuit.append(Gate::cnot(anc, q));
  }
  dec.output_qubit = anc;
  dec.method = DecodeMethod::conventional;
  dec.uses_ancilla = true;
  return dec;
}

/// How a linked chain rearranges a complement pair of basis labels:
/// chain position p holds the parity of the first p labels, so odd
/// positions flip between the pair and even positions agree. The full
/// parity (the logical eigenvalue) sits at the final position.
struct ChainClassification {
  ChainSpec chain;
  std::vector<bool> complemented;
  int logical_position = 0;
};

inline ChainClassification classify_chain_effect(const ChainSpec& chain) {
  std::vector<bool> tags(chain.size());
  for (int p = 1; p <= chain.size(); ++p) tags[p - 1] = (p % 2 == 1);
  return ChainClassification{chain, std::move(tags), chain.size()};
}

/// Eigenvalue-output decoder: run CNOTs along the chain, then dissolve
/// the other complemented positions with CNOTs from the chain end. The
/// chain end becomes the output qubit; no ancilla is used.
inline DecoderCircuit synthesize_proposed(const StabilizerCode& code,
                                          const ChainSpec& chain) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("proposed decoder requires k = 1");
  if (!is_reversal_symmetric(code)) {
    throw PreconditionError("proposed decoder requires a reversal-symmetric code");
  }
  if (code.logical_x[0].sign() != +1) {
    // A -X...X logical would negate the Psi_1 branch relative to the
    // symmetric pairing and silently flip the decoded qubit's phase.
    throw PreconditionError("proposed decoder requires logical X with sign +1");
  }
  {
    std::vector<int> sorted = chain.order;
    std::sort(sorted.begin(), sorted.end());
    bool covers = static_cast<int>(sorted.size()) == code.n;
    for (int q = 1; covers && q <= code.n; ++q) covers = sorted[q - 1] == q;
    if (!covers) {
      throw PreconditionError("chain must visit every code qubit exactly once");
    }
  }
  if (code.n % 2 == 0) {
    throw PreconditionError(
        "proposed decoder requires odd n so the chain end is a complemented position");
  }
  for (const auto& [bits, coef] : codeword(code, 0).coefficients) {
    (void)coef;
    if (std::popcount(bits) % 2 != 0) {
      throw PreconditionError("proposed decoder needs even-parity codeword terms");
    }
  }

  DecoderCircuit dec;
  dec.circuit = code.n >= 2 ? make_linked_chain(chain, code.n) : Circuit(code.n, 0);
  const int last = chain.order.back();
  std::vector<int> dissolve;
  for (int p = 1; p < chain.size(); p += 2) dissolve.push_back(chain.order[p - 1]);
  std::sort(dissolve.begin(), dissolve.end());
  for (int q : dissolve) dec.circuit.append(Gate::cnot(last, q));
  dec.output_qubit = last;
  dec.method = DecodeMethod::proposed;
  dec.uses_ancilla = false;
  return dec;
}

/// Verification summary for one decoder against one code.
struct DecodeReport {
  DecodeMethod method = DecodeMethod::custom;
  int gate_count = 0;
  std::vector<double> fiducial_fidelities;
  double min_fidelity = 0.0;
  double residual_purity = 0.0;
  bool residual_consistent = false;
  bool residual_is_psi0 = false;
  bool passed = false;
};

inline nlohmann::json report_to_json(const DecodeReport& r) {
  return nlohmann::json{{"method", method_name(r.method)},
                        {"gate_count", r.gate_count},
                        {"min_fidelity", r.min_fidelity},
                        {"residual_purity", r.residual_purity},
                        {"residual_consistent", r.residual_consistent},
                        {"residual_is_psi0", r.residual_is_psi0}};
}

/// Exact simulation check of a decoder. Encodes the four fiducial
/// amplitude pairs (1,0), (0,1), (1,1)/sqrt2, (1,i)/sqrt2 plus seeded
/// random pairs, runs the decoder, and reads the output qubit's reduced
/// density matrix against the injected state. The residual block must
/// be pure and identical across inputs; when the decoder keeps the full
/// code block, it is also compared against |Psi_0>.
inline DecodeReport verify_decoder(const StabilizerCode& code, const DecoderCircuit& dec,
                                   double tol = 1e-10, std::uint64_t seed = 12345,
                                   int random_trials = 20) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("decoder verification requires k = 1");
  if (tol <= 0) throw PreconditionError("tolerance must be positive");
  const int width = dec.circuit.width;
  if (width < code.n) throw PreconditionError("decoder circuit narrower than the code block");
  if (dec.circuit.ancilla_count != width - code.n) {
    throw PreconditionError("decoder ancilla count does not match its extra width");
  }
  if (dec.output_qubit < 1 || dec.output_qubit > width) {
    throw PreconditionError("decoder output qubit outside the circuit");
  }

  EncoderLayout enc = synthesize_encoder(code);
  StateVector psi0 = StateVector::from_expansion(codeword(code, 0));

  std::vector<int> residual_qubits;
  for (int q = 1; q <= width; ++q) {
    if (q != dec.output_qubit) residual_qubits.push_back(q);
  }

  struct RunResult {
    double fid;
    ReducedDensity residual;
  };
  auto run = [&](std::complex<double> a0, std::complex<double> a1,
                 bool want_residual) -> RunResult {
    StateVector s(width);
    s.set_amp(0, a0);
    s.set_amp(std::uint64_t{1} << (width - enc.input_qubit), a1);
    s.apply_circuit_in_place(enc.circuit);
    s.apply_circuit_in_place(dec.circuit);
    ReducedDensity out = reduced_density(s, {dec.output_qubit});
    StateVector target(1);
    target.set_amp(0, a0);
    target.set_amp(1, a1);
    double fid = out.overlap(target);
    if (!want_residual) return RunResult{fid, ReducedDensity(1, {})};
    return RunResult{fid, reduced_density(s, residual_qubits)};
  };

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<std::complex<double>, std::complex<double>>> fiducials = {
      {{1, 0}, {0, 0}},
      {{0, 0}, {1, 0}},
      {{inv_sqrt2, 0}, {inv_sqrt2, 0}},
      {{inv_sqrt2, 0}, {0, inv_sqrt2}},
  };

  DecodeReport rep;
  rep.method = dec.method;
  rep.gate_count = gate_count(dec.circuit);

  std::vector<ReducedDensity> residuals;
  for (const auto& [a0, a1] : fiducials) {
    RunResult rr = run(a0, a1, true);
    rep.fiducial_fidelities.push_back(rr.fid);
    residuals.push_back(std::move(rr.residual));
  }

  rep.residual_purity = residuals.front().purity();
  for (const auto& rho : residuals) {
    rep.residual_purity = std::min(rep.residual_purity, rho.purity());
  }
  rep.residual_consistent = true;
  for (std::size_t i = 0; i < residuals.size() && rep.residual_consistent; ++i) {
    for (std::size_t j = i + 1; j < residuals.size(); ++j) {
      if (ReducedDensity::cross_trace(residuals[i], residuals[j]) < 1.0 - tol) {
        rep.residual_consistent = false;
        break;
      }
    }
  }
  rep.residual_is_psi0 = residuals.front().dim() == psi0.dim();
  if (rep.residual_is_psi0) {
    for (const auto& rho : residuals) {
      if (rho.overlap(psi0) < 1.0 - tol) {
        rep.residual_is_psi0 = false;
        break;
      }
    }
  }

  rep.min_fidelity = *std::min_element(rep.fiducial_fidelities.begin(),
                                       rep.fiducial_fidelities.end());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < random_trials; ++trial) {
    std::complex<double> a0, a1;
    double nrm = 0;
    do {
      a0 = {gauss(rng), gauss(rng)};
      a1 = {gauss(rng), gauss(rng)};
      nrm = std::sqrt(std::norm(a0) + std::norm(a1));
    } while (nrm < 1e-6);
    rep.min_fidelity = std::min(rep.min_fidelity, run(a0 / nrm, a1 / nrm, false).fid);
  }

  rep.passed = rep.min_fidelity >= 1.0 - tol && rep.residual_consistent;
  return rep;
}

}  // namespace stabdec
