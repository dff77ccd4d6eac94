#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include <stabdec/circuit.hpp>
#include <stabdec/errors.hpp>

using namespace stabdec;

namespace {

Circuit random_circuit(int width, int gates, std::mt19937_64& rng) {
    Circuit c(width, 0);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<int> qubit(1, width);
    for (int i = 0; i < gates; ++i) {
        const GateKind k = static_cast<GateKind>(kind(rng));
        const int q0 = qubit(rng);
        if (gate_arity(k) == 1) {
            c.append(Gate::make(k, q0, 0));
        } else {
            int q1 = qubit(rng);
            while (q1 == q0) q1 = qubit(rng);
            c.append(Gate::make(k, q0, q1));
        }
    }
    return c;
}

} // namespace

TEST_CASE("Gate constructors validate operands") {
    const Gate cn = Gate::cnot(2, 5);
    CHECK(cn.kind == GateKind::CNOT);
    CHECK(cn.q0 == 2);
    CHECK(cn.q1 == 5);
    CHECK(gate_arity(GateKind::CNOT) == 2);
    CHECK(gate_arity(GateKind::H) == 1);

    CHECK_THROWS_AS(Gate::cnot(3, 3), PreconditionError);
    CHECK_THROWS_AS(Gate::cnot(0, 1), PreconditionError);
    CHECK_THROWS_AS(Gate::h(0), PreconditionError);
    CHECK_THROWS_AS(Gate::make(GateKind::H, 1, 2), PreconditionError);
}

TEST_CASE("Circuit shape and append bounds") {
    Circuit c(3, 1);
    c.append(Gate::h(1)).append(Gate::cnot(1, 3));
    CHECK(gate_count(c) == 2);
    CHECK_THROWS_AS(c.append(Gate::h(4)), PreconditionError);
    CHECK_THROWS_AS(Circuit(0, 0), PreconditionError);
    CHECK_THROWS_AS(Circuit(3, 3), PreconditionError);
    CHECK_THROWS_AS(Circuit(3, -1), PreconditionError);
}

TEST_CASE("inverse reverses gates and expands S to three") {
    Circuit c(2, 0);
    c.append(Gate::h(1)).append(Gate::s(2)).append(Gate::cnot(1, 2));
    const Circuit inv = inverse(c);
    REQUIRE(inv.gates.size() == 5);
    CHECK(inv.gates[0] == Gate::cnot(1, 2));
    CHECK(inv.gates[1] == Gate::s(2));
    CHECK(inv.gates[2] == Gate::s(2));
    CHECK(inv.gates[3] == Gate::s(2));
    CHECK(inv.gates[4] == Gate::h(1));
    CHECK(inv.width == 2);
}

TEST_CASE("ChainSpec validates its order") {
    const ChainSpec chain({1, 2, 3});
    CHECK(chain.size() == 3);
    CHECK_THROWS_AS(ChainSpec(std::vector<int>{}), PreconditionError);
    CHECK_THROWS_AS(ChainSpec({1, 2, 1}), PreconditionError);
    CHECK_THROWS_AS(ChainSpec({0, 1}), PreconditionError);
}

TEST_CASE("make_linked_chain emits the link CNOTs in order") {
    const Circuit c = make_linked_chain(ChainSpec({1, 2, 3, 4, 5}), 5);
    REQUIRE(c.gates.size() == 4);
    CHECK(c.gates[0] == Gate::cnot(1, 2));
    CHECK(c.gates[1] == Gate::cnot(2, 3));
    CHECK(c.gates[2] == Gate::cnot(3, 4));
    CHECK(c.gates[3] == Gate::cnot(4, 5));
    CHECK(is_linked_chain(c.gates));

    const Circuit shuffled = make_linked_chain(ChainSpec({3, 1, 2}), 3);
    CHECK(shuffled.gates[0] == Gate::cnot(3, 1));
    CHECK(shuffled.gates[1] == Gate::cnot(1, 2));

    CHECK_THROWS_AS(make_linked_chain(ChainSpec({2}), 3), PreconditionError);
    CHECK_THROWS_AS(make_linked_chain(ChainSpec({1, 4}), 3), PreconditionError);
}

TEST_CASE("is_linked_chain recognizes chains only") {
    CHECK(is_linked_chain({Gate::cnot(2, 4), Gate::cnot(4, 1)}));
    CHECK_FALSE(is_linked_chain({}));
    CHECK_FALSE(is_linked_chain({Gate::h(1)}));
    // Control must repeat the previous target.
    CHECK_FALSE(is_linked_chain({Gate::cnot(1, 2), Gate::cnot(1, 3)}));
    // Revisiting the first control closes a cycle.
    CHECK_FALSE(is_linked_chain({Gate::cnot(1, 2), Gate::cnot(2, 1)}));
    // Revisiting any earlier target is not a chain.
    CHECK_FALSE(is_linked_chain({Gate::cnot(1, 2), Gate::cnot(2, 3), Gate::cnot(3, 2)}));
}

TEST_CASE("cnot_linear_map accumulates row xors") {
    // Chain 1->2->3->4->5: position p ends up with the prefix parity.
    const Circuit chain = make_linked_chain(ChainSpec({1, 2, 3, 4, 5}), 5);
    const Gf2Matrix m = cnot_linear_map(chain);
    for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 5; ++col) {
            CHECK(m.at(row, col) == (col <= row ? 1 : 0));
        }
    }

    // bits' = L * bits, with bit i of the vector = qubit i+1.
    const std::vector<std::uint8_t> in = {1, 0, 0, 1, 0}; // qubits 1 and 4 set
    const std::vector<std::uint8_t> expect = {1, 1, 1, 0, 0};
    CHECK(gf2_mat_vec(m, in) == expect);

    Circuit bad(2, 0);
    bad.append(Gate::h(1));
    CHECK_THROWS_AS(cnot_linear_map(bad), PreconditionError);
}

TEST_CASE("serialize emits the documented text form") {
    Circuit c(6, 1);
    c.append(Gate::cnot(5, 6)).append(Gate::h(2)).append(Gate::cz(1, 3));
    CHECK(serialize(c) ==
          "# width 6 ancilla 1\n"
          "CNOT 5 6\n"
          "H 2\n"
          "CZ 1 3\n");
}

TEST_CASE("parse_circuit round-trips serialize") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const Circuit c = random_circuit(6, 12, rng);
        const Circuit back = parse_circuit(serialize(c));
        CHECK(back == c);
    }

    const Circuit empty = parse_circuit("# width 3 ancilla 0\n");
    CHECK(empty.width == 3);
    CHECK(empty.gates.empty());

    // Comments, blank lines and CRLF are tolerated after the header.
    const Circuit relaxed = parse_circuit(
        "# width 2 ancilla 0\r\n"
        "\n"
        "# a comment\n"
        "CNOT 1 2\r\n");
    REQUIRE(relaxed.gates.size() == 1);
    CHECK(relaxed.gates[0] == Gate::cnot(1, 2));
}

TEST_CASE("parse_circuit reports named line errors") {
    CHECK_THROWS_WITH(parse_circuit(""), Catch::Matchers::ContainsSubstring("no header"));
    CHECK_THROWS_WITH(parse_circuit("CNOT 1 2\n"),
                      Catch::Matchers::ContainsSubstring("expected header"));
    CHECK_THROWS_WITH(parse_circuit("# width 2 ancilla 0\nCNOT 1 1\n"),
                      Catch::Matchers::ContainsSubstring("circuit line 2"));
    CHECK_THROWS_WITH(parse_circuit("# width 2 ancilla 0\nROT 1\n"),
                      Catch::Matchers::ContainsSubstring("unknown gate 'ROT'"));
    CHECK_THROWS_WITH(parse_circuit("# width 2 ancilla 0\nCNOT 1\n"),
                      Catch::Matchers::ContainsSubstring("wrong operand count"));
    CHECK_THROWS_WITH(parse_circuit("# width 2 ancilla 0\nH one\n"),
                      Catch::Matchers::ContainsSubstring("bad operand"));
    CHECK_THROWS_WITH(parse_circuit("# width 0 ancilla 0\n"),
                      Catch::Matchers::ContainsSubstring("circuit line 1"));
    CHECK_THROWS_WITH(parse_circuit("# width 2 ancilla 0\nH 5\n"),
                      Catch::Matchers::ContainsSubstring("circuit line 2"));
}
