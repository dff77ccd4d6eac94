#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "stabdec/circuit.hpp"
#include "stabdec/code.hpp"
#include "stabdec/decoder.hpp"
#include "stabdec/errors.hpp"

namespace stabdec {

struct SearchOptions {
  bool chain_prefix_only = false;
  int jobs = 1;
  double tol = 1e-10;
};

struct SearchResult {
  bool found = false;
  std::optional<Circuit> circuit;
  std::optional<int> output_qubit;
  std::optional<int> min_gates;
  std::uint64_t gates_tried = 0;
};

namespace detail {

/// Per-candidate decode test for CNOT-only circuits. A CNOT circuit
/// acts linearly on basis labels, so it decodes onto qubit q iff (a)
/// every mapped |Psi_0> label has bit q clear and every mapped |Psi_1>
/// label has bit q set, and (b) with bit q dropped, the mapped
/// expansions agree term by term, coefficients included. (a) is the
/// cheap filter, (b) the exact check; accepted candidates are then
/// confirmed by full simulation, so the filter can never drop a valid
/// decoder silently.
struct CnotSearcher {
  int n;
  std::vector<std::pair<int, int>> gate_pairs;  // (control, target), lex order
  std::vector<std::pair<std::uint32_t, long long>> cw0, cw1;

  explicit CnotSearcher(const StabilizerCode& code) : n(code.n) {
    for (int c = 1; c <= n; ++c) {
      for (int t = 1; t <= n; ++t) {
        if (t != c) gate_pairs.emplace_back(c, t);
      }
    }
    for (const auto& [bits, coef] : codeword(code, 0).coefficients) {
      cw0.emplace_back(static_cast<std::uint32_t>(bits), coef);
    }
    for (const auto& [bits, coef] : codeword(code, 1).coefficients) {
      cw1.emplace_back(static_cast<std::uint32_t>(bits), coef);
    }
  }

  std::uint32_t map_bits(const std::uint32_t* rows, std::uint32_t m) const {
    std::uint32_t out = 0;
    for (int q = 1; q <= n; ++q) {
      if (std::popcount(rows[q - 1] & m) & 1) out |= std::uint32_t{1} << (n - q);
    }
    return out;
  }

  /// Returns the output qubit if the linear map decodes, -1 otherwise.
  int test_rows(const std::uint32_t* rows) const {
    for (int q = 1; q <= n; ++q) {
      std::uint32_t rowm = rows[q - 1];
      bool ok = true;
      for (const auto& [m, coef] : cw0) {
        (void)coef;
        if (std::popcount(rowm & m) & 1) { ok = false; break; }
      }
      if (!ok) continue;
      for (const auto& [m, coef] : cw1) {
        (void)coef;
        if (!(std::popcount(rowm & m) & 1)) { ok = false; break; }
      }
      if (!ok) continue;
      if (residuals_match(rows, q)) return q;
    }
    return -1;
  }

  bool residuals_match(const std::uint32_t* rows, int q) const {
    auto mapped = [&](const std::vector<std::pair<std::uint32_t, long long>>& terms) {
      std::vector<std::pair<std::uint32_t, long long>> out;
      out.reserve(terms.size());
      int pos = n - q;
      std::uint32_t low = (std::uint32_t{1} << pos) - 1;
      for (const auto& [m, coef] : terms) {
        std::uint32_t full = map_bits(rows, m);
        out.emplace_back(((full >> (pos + 1)) << pos) | (full & low), coef);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    return mapped(cw0) == mapped(cw1);
  }
};

}  // namespace detail

/// Iterative-deepening exhaustive search over CNOT-only, ancilla-free
/// decoders, lengths 1..max_gates. Gates are ordered lexicographically
/// by (control, target) and immediate repeats are pruned (a gate is its
/// own inverse). The first candidate in canonical order that decodes
/// wins; gates_tried is its 1-based ordinal among enumerated
/// candidates, independent of the job count.
inline SearchResult exhaustive_search(const StabilizerCode& code, int max_gates,
                                      const SearchOptions& options = {}) {
  require_valid(code);
  if (code.k != 1) throw PreconditionError("search requires k = 1");
  if (code.n > 7) throw LimitError("search supports n <= 7");
  if (max_gates < 0 || max_gates > 7) throw LimitError("search supports max_gates in [0, 7]");
  if (options.jobs < 1) throw PreconditionError("jobs must be positive");
  int jobs = options.chain_prefix_only ? 1 : options.jobs;

  detail::CnotSearcher searcher(code);
  const int P = static_cast<int>(searcher.gate_pairs.size());
  jobs = std::max(1, std::min(jobs, P));

  auto build_circuit = [&](const std::vector<int>& seq) {
    Circuit c(code.n, 0);
    for (int id : seq) {
      c.append(Gate::cnot(searcher.gate_pairs[id].first, searcher.gate_pairs[id].second));
    }
    return c;
  };
  auto confirm = [&](const std::vector<int>& seq, int out_q) {
    DecoderCircuit dc{build_circuit(seq), out_q, DecodeMethod::custom, false};
    return verify_decoder(code, dc, options.tol).passed;
  };

  struct ShardHit {
    bool found = false;
    std::vector<int> seq;
    int out_q = -1;
    std::uint64_t leaves = 0;  // candidates enumerated, winner included
  };

  // Enumerates length-len sequences in lexicographic order, keeping
  // only those whose first gate id falls in this shard's residue class,
  // and returns the shard's first winner.
  auto run_shard = [&](int len, int residue) -> ShardHit {
    ShardHit hit;
    std::uint32_t rows[8];
    for (int q = 0; q < code.n; ++q) rows[q] = std::uint32_t{1} << (code.n - 1 - q);
    std::vector<int> seq;
    std::vector<int> chain_prev(len + 2, 0);
    std::vector<std::uint32_t> chain_used(len + 2, 0);
    bool done = false;

    auto dfs = [&](auto&& self, int depth) -> void {
      if (depth == len) {
        ++hit.leaves;
        int out_q = searcher.test_rows(rows);
        if (out_q > 0 && confirm(seq, out_q)) {
          hit.found = true;
          hit.seq = seq;
          hit.out_q = out_q;
          done = true;
        }
        return;
      }
      const bool restrict_chain = options.chain_prefix_only && depth < code.n - 1;
      for (int id = 0; id < P; ++id) {
        if (depth == 0) {
          if (id % jobs != residue) continue;
        } else if (id == seq.back()) {
          continue;
        }
        auto [c, t] = searcher.gate_pairs[id];
        if (restrict_chain) {
          if (depth == 0) {
            chain_prev[1] = t;
            chain_used[1] = (std::uint32_t{1} << c) | (std::uint32_t{1} << t);
          } else {
            if (c != chain_prev[depth]) continue;
            if (chain_used[depth] & (std::uint32_t{1} << t)) continue;
            chain_prev[depth + 1] = t;
            chain_used[depth + 1] = chain_used[depth] | (std::uint32_t{1} << t);
          }
        }
        std::uint32_t saved = rows[t - 1];
        rows[t - 1] ^= rows[c - 1];
        seq.push_back(id);
        self(self, depth + 1);
        seq.pop_back();
        rows[t - 1] = saved;
        if (done) return;
      }
    };
    dfs(dfs, 0);
    return hit;
  };

  auto full_count = [&](int len) -> std::uint64_t {
    std::uint64_t c = static_cast<std::uint64_t>(P);
    for (int i = 1; i < len; ++i) c *= static_cast<std::uint64_t>(P - 1);
    return c;
  };
  // 0-based position of seq in the pruned lexicographic enumeration.
  auto rank_of = [&](const std::vector<int>& seq) -> std::uint64_t {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      std::uint64_t digit = static_cast<std::uint64_t>(seq[i]);
      if (i > 0 && seq[i - 1] < seq[i]) --digit;
      rank = rank * static_cast<std::uint64_t>(i == 0 ? 1 : P - 1) + digit;
    }
    return rank;
  };

  SearchResult result;
  std::uint64_t tried_before = 0;
  for (int len = 1; len <= max_gates && P > 0; ++len) {
    std::vector<ShardHit> hits;
    if (jobs == 1) {
      hits.push_back(run_shard(len, 0));
    } else {
      hits.resize(jobs);
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j]() { hits[j] = run_shard(len, j); });
      }
      for (auto& th : pool) th.join();
    }
    const ShardHit* best = nullptr;
    std::uint64_t shard_leaves = 0;
    for (const auto& h : hits) {
      shard_leaves += h.leaves;
      if (h.found && (!best || h.seq < best->seq)) best = &h;
    }
    if (best) {
      result.found = true;
      result.circuit = build_circuit(best->seq);
      result.output_qubit = best->out_q;
      result.min_gates = len;
      result.gates_tried = options.chain_prefix_only
                               ? tried_before + shard_leaves
                               : tried_before + rank_of(best->seq) + 1;
      return result;
    }
    tried_before += options.chain_prefix_only ? shard_leaves : full_count(len);
  }
  result.gates_tried = tried_before;
  return result;
}

}  // namespace stabdec
