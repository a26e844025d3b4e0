#pragma once

#include "multiadic/errors.hpp"
#include "multiadic/measure.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace multiadic {

struct ScanOptions {
    unsigned workers = 1;
    std::uint64_t depth_budget = 65536;
    std::uint64_t node_budget = 20000000;
};

struct ScanStats {
    std::uint64_t evaluated = 0;  // intervals with a breakpoint strictly inside
    std::uint64_t max_frontier = 0;
};

struct NodeBreaks {
    std::size_t first = 0, count = 0;  // breakpoints strictly inside
    Integer scale = 1;                 // base^depth
    Integer offset;                    // count == 1: x - left = offset / (scale den(x))
};

// Breadth-first walk over base-adic intervals of depth 0..depth. Intervals with no
// piece boundary strictly inside carry constant density, so they and their
// descendants are skipped. `eval` runs in parallel within a depth level; `sink`
// receives results sequentially in (depth, index) order, so output does not
// depend on the worker count. `eval` may take (J) or (J, NodeBreaks).
template <class R, class Eval, class Sink>
ScanStats scan_tree(const DoublingMeasure& mu, std::uint64_t base, std::uint64_t depth, const ScanOptions& opts,
                    Eval&& eval, Sink&& sink) {
    if (base < 2) throw DomainError("scan base must be >= 2");
    if (depth > opts.depth_budget)
        throw ResourceError("scan depth " + std::to_string(depth) + " exceeds the budget " + std::to_string(opts.depth_budget));
    struct Node {
        AdicInterval J;
        NodeBreaks nb;
    };
    const auto& breaks = mu.breakpoints();
    ScanStats stats;
    std::vector<Node> frontier;
    {
        auto [f, l] = mu.breakpoints_inside(Integer(0), Integer(1), 0, breaks.size());
        if (l > f) {
            NodeBreaks nb{f, l - f, Integer(1), Integer(0)};
            if (nb.count == 1) nb.offset = breaks[f].get_num();
            frontier.push_back({AdicInterval::unit(base), std::move(nb)});
        }
    }
    const unsigned workers = std::max(1u, opts.workers);
    const unsigned long ub = static_cast<unsigned long>(base);

    for (std::uint64_t d = 0; d <= depth && !frontier.empty(); ++d) {
        stats.evaluated += frontier.size();
        stats.max_frontier = std::max<std::uint64_t>(stats.max_frontier, frontier.size());
        if (stats.evaluated > opts.node_budget)
            throw ResourceError("scan visited more than " + std::to_string(opts.node_budget) + " intervals");
        const std::size_t n = frontier.size();
        std::vector<R> results(n);
        std::vector<std::vector<Node>> next(n);
        const bool expand = d < depth;
        auto run = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Node& nd = frontier[i];
                if constexpr (std::is_invocable_v<Eval&, const AdicInterval&, const NodeBreaks&>)
                    results[i] = eval(nd.J, nd.nb);
                else
                    results[i] = eval(nd.J);
                if (!expand) continue;
                const Integer S2 = nd.nb.scale * ub;
                if (nd.nb.count == 1) {
                    // only one child can hold the breakpoint
                    const Integer& E = breaks[nd.nb.first].get_den();
                    Integer bu = nd.nb.offset * ub;
                    Integer c = bu / E;
                    Integer u2 = bu - c * E;
                    if (u2 != 0)
                        next[i].push_back({nd.J.child(c.get_ui() + 1), NodeBreaks{nd.nb.first, 1, S2, std::move(u2)}});
                    continue;
                }
                for (std::uint64_t c = 1; c <= base; ++c) {
                    AdicInterval ch = nd.J.child(c);
                    Integer L = ch.index() - 1;
                    auto [f, l] = mu.breakpoints_inside(L, S2, nd.nb.first, nd.nb.first + nd.nb.count);
                    if (l == f) continue;
                    NodeBreaks nb{f, l - f, S2, Integer(0)};
                    if (nb.count == 1) nb.offset = breaks[f].get_num() * S2 - L * breaks[f].get_den();
                    next[i].push_back({std::move(ch), std::move(nb)});
                }
            }
        };
        if (workers == 1 || n < 2 * workers) {
            run(0, n);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errs(workers);
            std::size_t chunk = (n + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                std::size_t lo = std::min(n, w * chunk), hi = std::min(n, lo + chunk);
                pool.emplace_back([&, w, lo, hi] {
                    try {
                        run(lo, hi);
                    } catch (...) {
                        errs[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);
        }
        std::vector<Node> nf;
        for (std::size_t i = 0; i < n; ++i) {
            sink(frontier[i].J, std::move(results[i]));
            for (auto& ch : next[i]) nf.push_back(std::move(ch));
        }
        frontier = std::move(nf);
    }
    return stats;
}

// Deepest grid needed to resolve every block piece, plus `extra` levels.
std::uint64_t default_scan_depth(const DoublingMeasure& mu, std::uint64_t base, unsigned extra = 3);

}  // namespace multiadic
