#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnk/chern.hpp"
#include "qnk/numeric.hpp"
#include "qnk/partitions.hpp"

namespace qnk {

enum class NodeLevel { M0, M1 };

/* One branch of the recursive decomposition. `accumulated` lists the k
 * values chosen so far (one per expansion), `depth` equals its length, and
 * the class keeps the exact Chern bookkeeping of the branch. */
struct SODNode {
    NodeLevel level = NodeLevel::M1;
    BlowupClass cls;
    unsigned depth = 0;
    std::vector<unsigned> accumulated;
};

struct TraceChild {
    std::uint64_t id = 0;
    unsigned k = 0;
    Int multiplicity;
    std::optional<Int> dim;  // expected dimension, when a surface is known
};

struct TraceStep {
    std::uint64_t parent_id = 0;
    std::string rule;  // "prop5.1", "twist", "terminal" or "prune"
    std::vector<TraceChild> children;
};

struct SODOptions {
    std::uint64_t max_nodes = 4'000'000;
    bool record_trace = false;
    bool record_branches = false;
    std::optional<SurfaceInvariants> surface;
};

class ResourceLimitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finished branch: its k sequence, recovered weight j and multiplicity.
struct TerminalBranch {
    std::vector<unsigned> ks;
    unsigned long long j = 0;
    Int multiplicity;
};

struct SODResult {
    BaseClass seed_w;
    long long seed_d = 0;
    std::map<unsigned long long, Int> terminal;
    std::vector<TraceStep> steps;
    std::vector<TerminalBranch> branches;
    std::uint64_t nodes_created = 0;
};

struct PendingEntry {
    SODNode node;
    Int multiplicity;
    std::uint64_t id = 0;
};

/* Engine state. Only expandable nodes sit in `pending`: every produced
 * depth-0 (M0) node is classified immediately as terminal, pruned, or
 * re-twisted back into an expandable M1 node. */
struct SODState {
    BaseClass w;
    long long d = 0;
    unsigned long long quota = 0;        // w0*(d+1), the k budget
    unsigned long long weight_base = 0;  // w0*(d+1)*(d+2)/2
    std::deque<PendingEntry> pending;
    std::map<unsigned long long, Int> terminal;
    std::vector<TraceStep> steps;
    std::vector<TerminalBranch> branches;
    std::uint64_t next_id = 0;
    SODOptions options;
};

namespace detail {

inline std::uint64_t fresh_id(SODState& state) {
    if (state.next_id >= state.options.max_nodes) {
        throw ResourceLimitError("node budget exhausted (" +
                                 std::to_string(state.options.max_nodes) + " nodes)");
    }
    return state.next_id++;
}

inline std::optional<Int> node_dim(const SODState& state, const BlowupClass& cls) {
    if (!state.options.surface) return std::nullopt;
    return moduli_dimension(cls.base, deficit(cls), *state.options.surface);
}

inline unsigned long long branch_weight(const std::vector<unsigned>& ks) {
    unsigned long long w = 0;
    for (std::size_t i = 0; i < ks.size(); ++i)
        w += (i + 1) * static_cast<unsigned long long>(ks[i]);
    return w;
}

}  // namespace detail

/* Start the recursion for the pair (w, d): the single pending node is the
 * expandable class f^*w' - w0*d*ch(O_C(-1)) with w' = (w0, w1,
 * w2 - w0*d(d+1)/2), multiplicity one. When a surface is supplied the full
 * admissibility check runs; otherwise only the numerical clauses apply. */
inline SODState seed(const BaseClass& w, long long d, const SODOptions& options = {}) {
    if (d < 0) throw std::invalid_argument("d must be non-negative");
    const AssumptionCheck check = options.surface
        ? validate_assumption(w, *options.surface)
        : validate_assumption(w, SurfaceInvariants::del_pezzo(9));
    if (!check.ok) {
        throw std::invalid_argument("inadmissible class: " + check.clause);
    }

    SODState state;
    state.w = w;
    state.d = d;
    state.options = options;
    const unsigned long long w0 = static_cast<unsigned long long>(w.rank);
    state.quota = w0 * (d + 1);
    state.weight_base = w0 * (d + 1) * (d + 2) / 2;

    BaseClass shifted = w;
    shifted.ch2 = w.ch2 - Rat(Int(w.rank) * d * (d + 1), 2);
    SODNode node;
    node.level = NodeLevel::M1;
    node.cls = class_with_deficit(shifted, w.rank * d);
    state.pending.push_back({std::move(node), Int(1), detail::fresh_id(state)});
    return state;
}

/* Expand the oldest pending node: replace it by its w0+1 children with
 * binomial multiplicities, then classify each child in order. A child with
 * remaining budget R = quota - sum(k) lands in the terminal table when
 * R = 0, is pruned when R < 0 (a quotient of negative length, formally
 * empty) or when even the cheapest completion overshoots j_max, and is
 * otherwise twisted by e^{C} back into an expandable node. */
inline void expand_step(SODState& state, unsigned long long j_max) {
    if (state.pending.empty()) {
        throw std::logic_error("expand_step on a state with no pending nodes");
    }
    PendingEntry parent = std::move(state.pending.front());
    state.pending.pop_front();
    const long long w0 = state.w.rank;
    const long long delta = deficit(parent.node.cls);

    TraceStep expansion{parent.id, "prop5.1", {}};
    struct Produced {
        SODNode node;
        Int multiplicity;
        std::uint64_t id;
    };
    std::vector<Produced> produced;
    for (long long i = 0; i <= w0; ++i) {
        SODNode child;
        child.level = NodeLevel::M0;
        child.cls = class_with_deficit(parent.node.cls.base, delta + w0 - i);
        child.depth = parent.node.depth + 1;
        child.accumulated = parent.node.accumulated;
        child.accumulated.push_back(static_cast<unsigned>(i));
        Int mult = parent.multiplicity * binomial(w0, i);
        const std::uint64_t id = detail::fresh_id(state);
        if (state.options.record_trace) {
            expansion.children.push_back(
                {id, static_cast<unsigned>(i), mult, detail::node_dim(state, child.cls)});
        }
        produced.push_back({std::move(child), std::move(mult), id});
    }
    if (state.options.record_trace) state.steps.push_back(std::move(expansion));

    for (Produced& entry : produced) {
        const SODNode& node = entry.node;
        unsigned long long used = 0;
        for (unsigned k : node.accumulated) used += k;
        const long long remaining = static_cast<long long>(state.quota) -
                                    static_cast<long long>(used);
        if (remaining != deficit(node.cls)) {
            throw std::logic_error("budget and class deficit disagree");
        }

        if (remaining == 0) {
            const unsigned long long weight = detail::branch_weight(node.accumulated);
            if (weight < state.weight_base) {
                throw std::logic_error("terminal weight below the minimal branch");
            }
            const unsigned long long j = weight - state.weight_base;
            if (node.cls.c_coeff != 0 || node.cls.ch2 != state.w.ch2 + Rat(Int(j))) {
                throw std::logic_error("terminal class drifted from f^*w + (0,0,j)");
            }
            if (state.options.record_trace) {
                state.steps.push_back({entry.id, "terminal", {}});
            }
            if (j <= j_max) {
                state.terminal[j] += entry.multiplicity;
                if (state.options.record_branches) {
                    state.branches.push_back(
                        {node.accumulated, j, entry.multiplicity});
                }
            }
            continue;
        }

        if (remaining < 0) {
            if (state.options.record_trace) {
                state.steps.push_back({entry.id, "prune", {}});
            }
            continue;
        }

        const unsigned long long cheapest =
            detail::branch_weight(node.accumulated) +
            detail::min_fill_weight(static_cast<unsigned long long>(remaining),
                                    node.depth + 1, static_cast<unsigned>(w0));
        if (cheapest > state.weight_base + j_max) {
            if (state.options.record_trace) {
                state.steps.push_back({entry.id, "prune", {}});
            }
            continue;
        }

        SODNode twisted;
        twisted.level = NodeLevel::M1;
        twisted.cls = twist(entry.node.cls, -1);
        twisted.depth = entry.node.depth;
        twisted.accumulated = std::move(entry.node.accumulated);
        const std::uint64_t id = detail::fresh_id(state);
        if (state.options.record_trace) {
            state.steps.push_back(
                {entry.id, "twist", {{id, 0, entry.multiplicity,
                                      detail::node_dim(state, twisted.cls)}}});
        }
        state.pending.push_back({std::move(twisted), std::move(entry.multiplicity), id});
    }
}

// Run the recursion to exhaustion and collect the terminal table.
inline SODResult run(const BaseClass& w, long long d, unsigned long long j_max,
                     const SODOptions& options = {}) {
    SODState state = seed(w, d, options);
    while (!state.pending.empty()) expand_step(state, j_max);

    SODResult result;
    result.seed_w = w;
    result.seed_d = d;
    result.terminal = std::move(state.terminal);
    result.steps = std::move(state.steps);
    result.branches = std::move(state.branches);
    result.nodes_created = state.next_id;
    return result;
}

/* Terminal table keyed by the recursion level: level L >= 1 runs the
 * engine with d = L - 1; level 0 is the degenerate case where the class is
 * already a moduli space on the base, a single summand at j = 0. */
inline std::map<unsigned long long, Int> sod_terminal_at_level(
    const BaseClass& w, unsigned level, unsigned long long j_max,
    const SODOptions& options = {}) {
    if (level == 0) {
        std::map<unsigned long long, Int> trivial;
        trivial[0] = 1;
        return trivial;
    }
    return run(w, static_cast<long long>(level) - 1, j_max, options).terminal;
}

}  // namespace qnk
