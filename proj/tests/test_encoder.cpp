#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <stabdec/code.hpp>
#include <stabdec/encoder.hpp>
#include <stabdec/errors.hpp>
#include <stabdec/statevector.hpp>

using namespace stabdec;
using cd = std::complex<double>;

namespace {

StateVector encode_pair(const StabilizerCode& code, const EncoderLayout& enc,
                        cd alpha0, cd alpha1) {
    StateVector s(code.n);
    s.set_amp(0, alpha0);
    s.set_amp(std::uint64_t{1} << (code.n - enc.input_qubit), alpha1);
    s.apply_circuit_in_place(enc.circuit);
    return s;
}

StateVector expected_pair(const StabilizerCode& code, cd alpha0, cd alpha1) {
    const StateVector psi0 = StateVector::from_expansion(codeword(code, 0));
    const StateVector psi1 = StateVector::from_expansion(codeword(code, 1));
    StateVector s(code.n);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        s.set_amp(i, alpha0 * psi0.amp(i) + alpha1 * psi1.amp(i));
    }
    return s;
}

std::vector<StabilizerCode> toy_codes() {
    std::vector<StabilizerCode> out;
    {
        // [[1,1]]: no stabilizer, bare qubit.
        StabilizerCode c;
        c.n = 1;
        c.k = 1;
        c.logical_x = {parse_pauli("X")};
        c.logical_z = {parse_pauli("Z")};
        out.push_back(c);
    }
    {
        // [[2,1]] with a single X-type generator.
        StabilizerCode c;
        c.n = 2;
        c.k = 1;
        c.generators = {parse_pauli("XX")};
        c.logical_x = {parse_pauli("XI")};
        c.logical_z = {parse_pauli("ZZ")};
        out.push_back(c);
    }
    {
        // [[3,1]] repetition code: pure-Z stabilizer.
        StabilizerCode c;
        c.n = 3;
        c.k = 1;
        c.generators = {parse_pauli("ZZI"), parse_pauli("IZZ")};
        c.logical_x = {parse_pauli("XXX")};
        c.logical_z = {parse_pauli("ZZZ")};
        out.push_back(c);
    }
    return out;
}

} // namespace

TEST_CASE("encoder reproduces the codewords of the built-in codes") {
    for (const StabilizerCode& code : {five_qubit_code(), steane_code()}) {
        const EncoderLayout enc = synthesize_encoder(code);
        CHECK(enc.input_qubit >= 1);
        CHECK(enc.input_qubit <= code.n);
        CHECK(enc.circuit.width == code.n);
        CHECK(enc.circuit.ancilla_count == 0);

        const StateVector got0 = encode_pair(code, enc, 1.0, 0.0);
        const StateVector psi0 = StateVector::from_expansion(codeword(code, 0));
        CHECK(fidelity(got0, psi0) == Catch::Approx(1.0).margin(1e-12));

        const StateVector got1 = encode_pair(code, enc, 0.0, 1.0);
        const StateVector psi1 = StateVector::from_expansion(codeword(code, 1));
        CHECK(fidelity(got1, psi1) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("encoder is linear over the logical amplitudes") {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const StabilizerCode& code : {five_qubit_code(), steane_code()}) {
        const EncoderLayout enc = synthesize_encoder(code);
        for (int trial = 0; trial < 8; ++trial) {
            cd a0(gauss(rng), gauss(rng)), a1(gauss(rng), gauss(rng));
            const double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
            a0 /= nrm;
            a1 /= nrm;
            const StateVector got = encode_pair(code, enc, a0, a1);
            const StateVector want = expected_pair(code, a0, a1);
            // The encoder must match branch-by-branch with no relative
            // phase, so compare the full superposition directly.
            CHECK(fidelity(got, want) == Catch::Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("encoded states satisfy every stabilizer and the logical Z phase") {
    for (const StabilizerCode& code : {five_qubit_code(), steane_code()}) {
        const EncoderLayout enc = synthesize_encoder(code);
        const StateVector got0 = encode_pair(code, enc, 1.0, 0.0);
        const StateVector got1 = encode_pair(code, enc, 0.0, 1.0);
        for (const PauliString& g : code.generators) {
            CHECK(stabilizer_expectation(got0, g) == Catch::Approx(1.0).margin(1e-12));
            CHECK(stabilizer_expectation(got1, g) == Catch::Approx(1.0).margin(1e-12));
        }
        const PauliString& zbar = code.logical_z[0];
        CHECK(stabilizer_expectation(got0, zbar) == Catch::Approx(1.0).margin(1e-12));
        CHECK(stabilizer_expectation(got1, zbar) == Catch::Approx(-1.0).margin(1e-12));
    }
}

TEST_CASE("encoder handles toy codes across stabilizer shapes") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const StabilizerCode& code : toy_codes()) {
        REQUIRE(validate(code).ok());
        const EncoderLayout enc = synthesize_encoder(code);
        cd a0(gauss(rng), gauss(rng)), a1(gauss(rng), gauss(rng));
        const double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
        a0 /= nrm;
        a1 /= nrm;
        const StateVector got = encode_pair(code, enc, a0, a1);
        const StateVector want = expected_pair(code, a0, a1);
        CHECK(fidelity(got, want) == Catch::Approx(1.0).margin(1e-10));
        for (const PauliString& g : code.generators) {
            CHECK(stabilizer_expectation(got, g) == Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("encoder rejects out-of-scope codes") {
    StabilizerCode k0;
    k0.n = 2;
    k0.k = 0;
    k0.generators = {parse_pauli("ZZ"), parse_pauli("XX")};
    REQUIRE(validate(k0).ok());
    CHECK_THROWS_AS(synthesize_encoder(k0), PreconditionError);

    StabilizerCode invalid = five_qubit_code();
    invalid.generators[0] = invalid.generators[1];
    CHECK_THROWS_AS(synthesize_encoder(invalid), ValidationError);
}
