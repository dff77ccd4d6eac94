#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabdec/circuit.hpp"
#include "stabdec/code.hpp"
#include "stabdec/decoder.hpp"
#include "stabdec/encoder.hpp"
#include "stabdec/errors.hpp"
#include "stabdec/search.hpp"

namespace stabdec {

namespace detail {

struct NamedCode {
  std::string name;
  StabilizerCode code;
};

inline NamedCode load_code(const std::string& spec) {
  NamedCode nc;
  if (spec == "five_qubit") {
    nc = {"five_qubit", five_qubit_code()};
  } else if (spec == "steane") {
    nc = {"steane", steane_code()};
  } else if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open code file '" + path + "'");
    nc = {path, parse_code_file(in)};
  } else {
    throw ParseError("unknown code '" + spec + "' (use five_qubit, steane, or file:PATH)");
  }
  require_valid(nc.code);
  return nc;
}

inline ChainSpec parse_chain_arg(const std::string& text) {
  std::vector<int> order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int q = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      order.push_back(q);
    } catch (const std::exception&) {
      throw ParseError("bad chain entry '" + item + "' in '" + text + "'");
    }
  }
  if (order.empty()) throw ParseError("empty chain '" + text + "'");
  try {
    return ChainSpec(order);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("bad chain: ") + e.what());
  }
}

inline void emit_circuit(const Circuit& c, const std::string& path, std::ostream& out) {
  std::string text = serialize(c);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + path + "'");
  f << text;
}

inline DecodeMethod method_from_name(const std::string& name) {
  if (name == "conventional") return DecodeMethod::conventional;
  if (name == "proposed") return DecodeMethod::proposed;
  if (name == "custom") return DecodeMethod::custom;
  throw ParseError("unknown method label '" + name + "'");
}

}  // namespace detail

/// Runs the command-line front end on already-split arguments (program
/// name excluded). Artifacts (circuit text, JSON) go to `out`,
/// diagnostics to `err`. Exit codes: 0 success/pass, 1 negative
/// verification/search result, 2 input error, 3 precondition or limit
/// error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"stabilizer-code decoder synthesis toolkit", "stabdec"};
  app.require_subcommand(1);

  auto* cmd_codes = app.add_subcommand("codes", "List built-in codes");

  std::string code_spec, method, chain_text, out_path;
  bool do_verify = false;
  double tol = 1e-10;
  std::uint64_t seed = 12345;

  auto* cmd_synth = app.add_subcommand("synth", "Synthesize an encoder or decoder circuit");
  cmd_synth->add_option("--code", code_spec, "five_qubit, steane, or file:PATH")->required();
  cmd_synth->add_option("--method", method, "encode, decode-conventional, decode-proposed")
      ->required()
      ->check(CLI::IsMember({"encode", "decode-conventional", "decode-proposed"}));
  cmd_synth->add_option("--chain", chain_text, "comma-separated chain order (decode-proposed)");
  cmd_synth->add_flag("--verify", do_verify, "verify the decoder and append a JSON report");
  cmd_synth->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
  cmd_synth->add_option("--seed", seed, "seed for random verification states");
  cmd_synth->add_option("-o,--output", out_path, "write the circuit to a file instead of stdout");

  std::string circuit_path, method_label = "custom";
  int output_qubit = 0;
  auto* cmd_verify = app.add_subcommand("verify", "Verify a decoder circuit file");
  cmd_verify->add_option("--code", code_spec, "five_qubit, steane, or file:PATH")->required();
  cmd_verify->add_option("--circuit", circuit_path, "circuit text file")->required();
  cmd_verify->add_option("--output-qubit", output_qubit, "qubit carrying the decoded state")
      ->required();
  cmd_verify->add_option("--method", method_label, "report label: conventional, proposed, custom")
      ->check(CLI::IsMember({"conventional", "proposed", "custom"}));
  cmd_verify->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", seed, "seed for random verification states");

  int max_gates = 0, jobs = 1;
  auto* cmd_search = app.add_subcommand("search", "Exhaustive CNOT-only decoder search");
  cmd_search->add_option("--code", code_spec, "five_qubit, steane, or file:PATH")->required();
  cmd_search->add_option("--max-gates", max_gates, "largest circuit length to try")->required();
  cmd_search->add_option("--jobs", jobs, "first-gate shards to run in parallel")
      ->check(CLI::PositiveNumber);
  cmd_search->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);

  bool as_json = false;
  auto* cmd_report = app.add_subcommand("report", "Compare decoders for a code");
  cmd_report->add_option("--code", code_spec, "five_qubit, steane, or file:PATH")->required();
  cmd_report->add_option("--chain", chain_text, "comma-separated chain order (proposed row)");
  cmd_report->add_flag("--json", as_json, "emit the comparison as JSON");
  cmd_report->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
  cmd_report->add_option("--seed", seed, "seed for random verification states");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_codes->parsed()) {
      const std::vector<std::pair<std::string, StabilizerCode>> builtins = {
          {"five_qubit", five_qubit_code()}, {"steane", steane_code()}};
      for (const auto& [name, code] : builtins) {
        out << name << ' ' << code.n << ' ' << code.k << ' '
            << code.distance.value_or(0) << "\n";
      }
      return 0;
    }

    if (cmd_synth->parsed()) {
      detail::NamedCode nc = detail::load_code(code_spec);
      if (method == "encode") {
        EncoderLayout layout = synthesize_encoder(nc.code);
        detail::emit_circuit(layout.circuit, out_path, out);
        err << "input qubit: " << layout.input_qubit << "\n";
        return 0;
      }
      DecoderCircuit dec;
      if (method == "decode-conventional") {
        dec = synthesize_conventional(nc.code);
      } else {
        std::vector<int> order;
        for (int q = 1; q <= nc.code.n; ++q) order.push_back(q);
        ChainSpec chain = chain_text.empty() ? ChainSpec(order)
                                             : detail::parse_chain_arg(chain_text);
        dec = synthesize_proposed(nc.code, chain);
      }
      detail::emit_circuit(dec.circuit, out_path, out);
      err << "output qubit: " << dec.output_qubit << "\n";
      if (do_verify) {
        DecodeReport rep = verify_decoder(nc.code, dec, tol, seed);
        out << report_to_json(rep).dump() << "\n";
        if (!rep.passed) return 1;
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      detail::NamedCode nc = detail::load_code(code_spec);
      std::ifstream in(circuit_path);
      if (!in) throw ParseError("cannot open circuit file '" + circuit_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      Circuit circ = parse_circuit(buf.str());
      DecoderCircuit dec{circ, output_qubit, detail::method_from_name(method_label),
                         circ.ancilla_count > 0};
      DecodeReport rep = verify_decoder(nc.code, dec, tol, seed);
      out << report_to_json(rep).dump() << "\n";
      return rep.passed ? 0 : 1;
    }

    if (cmd_search->parsed()) {
      detail::NamedCode nc = detail::load_code(code_spec);
      err << "search scope: CNOT-only circuits on the code block, no ancilla\n";
      auto t0 = std::chrono::steady_clock::now();
      SearchOptions opts;
      opts.jobs = jobs;
      opts.tol = tol;
      SearchResult res = exhaustive_search(nc.code, max_gates, opts);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      err << "candidates: " << res.gates_tried << " in " << std::fixed
          << std::setprecision(2) << secs << " s ("
          << static_cast<std::uint64_t>(res.gates_tried / std::max(secs, 1e-9))
          << "/s)\n";
      if (res.found) out << serialize(*res.circuit);
      nlohmann::json summary{{"found", res.found},
                             {"gate_set", "CNOT"},
                             {"max_gates", max_gates},
                             {"gates_tried", res.gates_tried},
                             {"min_gates", nullptr},
                             {"output_qubit", nullptr}};
      if (res.found) {
        summary["min_gates"] = *res.min_gates;
        summary["output_qubit"] = *res.output_qubit;
      }
      out << summary.dump() << "\n";
      return res.found ? 0 : 1;
    }

    if (cmd_report->parsed()) {
      detail::NamedCode nc = detail::load_code(code_spec);
      struct Row {
        std::string method;
        bool applicable = false;
        std::string reason;
        DecodeReport rep;
        bool uses_ancilla = false;
      };
      std::vector<Row> rows;
      {
        Row row{"conventional", false, "", {}, true};
        try {
          DecoderCircuit dec = synthesize_conventional(nc.code);
          row.rep = verify_decoder(nc.code, dec, tol, seed);
          row.uses_ancilla = dec.uses_ancilla;
          row.applicable = true;
        } catch (const PreconditionError& e) {
          row.reason = e.what();
        }
        rows.push_back(row);
      }
      {
        Row row{"proposed", false, "", {}, false};
        try {
          std::vector<int> order;
          for (int q = 1; q <= nc.code.n; ++q) order.push_back(q);
          ChainSpec chain = chain_text.empty() ? ChainSpec(order)
                                               : detail::parse_chain_arg(chain_text);
          DecoderCircuit dec = synthesize_proposed(nc.code, chain);
          row.rep = verify_decoder(nc.code, dec, tol, seed);
          row.uses_ancilla = dec.uses_ancilla;
          row.applicable = true;
        } catch (const PreconditionError& e) {
          row.reason = e.what();
        }
        rows.push_back(row);
      }

      bool all_passed = true;
      for (const Row& row : rows) {
        if (row.applicable && !row.rep.passed) all_passed = false;
      }

      if (as_json) {
        nlohmann::json doc{{"code", nc.name}, {"rows", nlohmann::json::array()}};
        for (const Row& row : rows) {
          nlohmann::json jr{{"method", row.method},
                            {"applicable", row.applicable},
                            {"reason", row.reason},
                            {"gate_count", nullptr},
                            {"uses_ancilla", nullptr},
                            {"min_fidelity", nullptr},
                            {"residual_purity", nullptr},
                            {"residual_consistent", nullptr},
                            {"residual_is_psi0", nullptr},
                            {"passed", nullptr}};
          if (row.applicable) {
            jr["gate_count"] = row.rep.gate_count;
            jr["uses_ancilla"] = row.uses_ancilla;
            jr["min_fidelity"] = row.rep.min_fidelity;
            jr["residual_purity"] = row.rep.residual_purity;
            jr["residual_consistent"] = row.rep.residual_consistent;
            jr["residual_is_psi0"] = row.rep.residual_is_psi0;
            jr["passed"] = row.rep.passed;
          }
          doc["rows"].push_back(jr);
        }
        out << doc.dump() << "\n";
      } else {
        out << std::left << std::setw(14) << "method" << std::right << std::setw(6)
            << "gates" << std::setw(9) << "ancilla" << "  " << std::left << std::setw(16)
            << "min_fidelity" << "passed" << "\n";
        for (const Row& row : rows) {
          out << std::left << std::setw(14) << row.method;
          if (!row.applicable) {
            out << "not applicable: " << row.reason << "\n";
            continue;
          }
          std::ostringstream fid;
          fid << std::fixed << std::setprecision(12) << row.rep.min_fidelity;
          out << std::right << std::setw(6) << row.rep.gate_count << std::setw(9)
              << (row.uses_ancilla ? "yes" : "no") << "  " << std::left << std::setw(16)
              << fid.str() << (row.rep.passed ? "yes" : "no") << "\n";
        }
      }
      return all_passed ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const LimitError& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace stabdec
