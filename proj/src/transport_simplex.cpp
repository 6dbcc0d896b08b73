#include "itx/transport_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "itx/errors.hpp"

namespace itx {

namespace {

constexpr long kMaxPivots = 5000000;

}  // namespace

TransportResult solve_transport(const std::vector<double>& supply,
                                const std::vector<double>& demand, const double* cost,
                                double tol) {
  const int ns = static_cast<int>(supply.size());
  const int nt = static_cast<int>(demand.size());
  if (ns == 0 || nt == 0) throw EmptyInput("solve_transport");
  double total_s = 0.0, total_d = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0)) throw DataError("solve_transport: negative supply");
    total_s += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0)) throw DataError("solve_transport: negative demand");
    total_d += d;
  }
  if (std::fabs(total_s - total_d) > 1e-6 * std::max(1.0, std::fabs(total_s)))
    throw InfeasibleInstance("solve_transport: supply/demand totals differ by " +
                             std::to_string(total_s - total_d));

  const std::int64_t num_arcs = static_cast<std::int64_t>(ns) * nt;
  const int n = ns + nt;

  TransportResult res;
  res.flow.assign(num_arcs, 0.0);
  double* flow = res.flow.data();

  std::vector<std::vector<int>> adj(n);  // node -> incident basic arc ids
  std::vector<char> basic(num_arcs, 0);
  const auto arc_src = [nt](std::int64_t a) { return static_cast<int>(a / nt); };
  const auto arc_tgt = [nt, ns](std::int64_t a) { return ns + static_cast<int>(a % nt); };
  const auto add_basic = [&](std::int64_t a) {
    basic[a] = 1;
    adj[arc_src(a)].push_back(static_cast<int>(a));
    adj[arc_tgt(a)].push_back(static_cast<int>(a));
  };
  const auto remove_basic = [&](std::int64_t a) {
    basic[a] = 0;
    auto& sa = adj[arc_src(a)];
    sa.erase(std::find(sa.begin(), sa.end(), static_cast<int>(a)));
    auto& ta = adj[arc_tgt(a)];
    ta.erase(std::find(ta.begin(), ta.end(), static_cast<int>(a)));
  };

  // Initial basis by row-greedy crossing-out: each row fills its cheapest
  // still-open columns. Every allocation closes exactly one row or column
  // (the final one closes both), which yields the usual ns + nt - 1 arc
  // spanning-tree basis. The last row force-closes columns so that float
  // drift in the balance ends up in row sums, not column sums.
  {
    std::vector<char> col_open(nt, 1);
    int cols_open = nt;
    std::vector<double> rem = demand;
    for (int i = 0; i < ns; ++i) {
      double si = supply[i];
      const bool last_row = (i == ns - 1);
      while (true) {
        int jb = -1;
        double cb = std::numeric_limits<double>::infinity();
        const double* ci = cost + static_cast<std::int64_t>(i) * nt;
        for (int j = 0; j < nt; ++j)
          if (col_open[j] && ci[j] < cb) {
            cb = ci[j];
            jb = j;
          }
        const std::int64_t a = static_cast<std::int64_t>(i) * nt + jb;
        if (last_row) {
          flow[a] = std::max(0.0, rem[jb]);
          add_basic(a);
          if (cols_open == 1) break;
          col_open[jb] = 0;
          --cols_open;
          continue;
        }
        const double f = std::min(si, rem[jb]);
        flow[a] = f;
        add_basic(a);
        si -= f;
        rem[jb] -= f;
        if (rem[jb] <= si && cols_open > 1) {
          col_open[jb] = 0;
          --cols_open;
        } else {
          break;  // row exhausted
        }
      }
    }
  }

  // Node potentials from the tree: pot[u] + pot[v] = cost on basic arcs.
  std::vector<double> pot(n, 0.0);
  std::vector<int> parent(n), parent_arc(n), depth(n), order;
  order.reserve(n);
  const auto recompute = [&]() {
    order.clear();
    std::fill(parent.begin(), parent.end(), -2);
    parent[0] = -1;
    parent_arc[0] = -1;
    depth[0] = 0;
    pot[0] = 0.0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int u = order[head];
      for (int a : adj[u]) {
        const int v = (arc_src(a) == u) ? arc_tgt(a) : arc_src(a);
        if (parent[v] != -2) continue;
        parent[v] = u;
        parent_arc[v] = a;
        depth[v] = depth[u] + 1;
        pot[v] = cost[a] - pot[u];
        order.push_back(v);
      }
    }
    if (static_cast<int>(order.size()) != n)
      throw SolverNonConvergence("basis lost spanning-tree structure");
  };
  recompute();

  const std::int64_t block = std::max<std::int64_t>(
      64, static_cast<std::int64_t>(std::sqrt(static_cast<double>(num_arcs))));
  std::int64_t cursor = 0;
  bool bland = false;
  long degenerate_run = 0;
  const long stall_limit = std::max(1000, 4 * n);

  std::vector<int> cycle_arcs;
  std::vector<int> cycle_sign;

  while (true) {
    std::int64_t entering = -1;
    if (bland) {
      for (std::int64_t a = 0; a < num_arcs; ++a) {
        if (basic[a]) continue;
        const double r = cost[a] - pot[arc_src(a)] - pot[arc_tgt(a)];
        if (r < -tol) {
          entering = a;
          break;
        }
      }
    } else {
      const double* pot_t = pot.data() + ns;
      std::int64_t scanned = 0;
      while (scanned < num_arcs) {
        const std::int64_t stop = std::min<std::int64_t>(block, num_arcs - cursor);
        double best_r = -tol;
        std::int64_t best_a = -1;
        std::int64_t a = cursor;
        int i = static_cast<int>(a / nt);
        int j = static_cast<int>(a % nt);
        for (std::int64_t t = 0; t < stop; ++t, ++a) {
          const double r = cost[a] - pot[i] - pot_t[j];
          if (r < best_r && !basic[a]) {
            best_r = r;
            best_a = a;
          }
          if (++j == nt) {
            j = 0;
            ++i;
          }
        }
        scanned += stop;
        cursor = (a >= num_arcs) ? 0 : a;
        if (best_a >= 0) {
          entering = best_a;
          break;
        }
      }
    }
    if (entering < 0) break;  // no arc prices out: optimal

    if (++res.pivots > kMaxPivots)
      throw SolverNonConvergence("network simplex pivot limit reached");

    // The entering arc closes a unique tree cycle. The graph is bipartite,
    // so flow corrections alternate sign along the cycle.
    cycle_arcs.clear();
    cycle_sign.clear();
    cycle_arcs.push_back(static_cast<int>(entering));
    cycle_sign.push_back(+1);
    {
      int u = arc_src(entering);
      int v = arc_tgt(entering);
      int su = -1, sv = -1;
      while (depth[u] > depth[v]) {
        cycle_arcs.push_back(parent_arc[u]);
        cycle_sign.push_back(su);
        su = -su;
        u = parent[u];
      }
      while (depth[v] > depth[u]) {
        cycle_arcs.push_back(parent_arc[v]);
        cycle_sign.push_back(sv);
        sv = -sv;
        v = parent[v];
      }
      while (u != v) {
        cycle_arcs.push_back(parent_arc[u]);
        cycle_sign.push_back(su);
        su = -su;
        u = parent[u];
        cycle_arcs.push_back(parent_arc[v]);
        cycle_sign.push_back(sv);
        sv = -sv;
        v = parent[v];
      }
    }

    double theta = std::numeric_limits<double>::infinity();
    std::int64_t leaving = -1;
    for (std::size_t t = 0; t < cycle_arcs.size(); ++t) {
      if (cycle_sign[t] > 0) continue;
      const std::int64_t a = cycle_arcs[t];
      if (flow[a] < theta || (flow[a] == theta && a < leaving)) {
        theta = flow[a];
        leaving = a;
      }
    }
    if (leaving < 0) throw SolverNonConvergence("unbounded pivot in transportation problem");

    if (theta > 0.0) {
      for (std::size_t t = 0; t < cycle_arcs.size(); ++t)
        flow[cycle_arcs[t]] += cycle_sign[t] * theta;
      degenerate_run = 0;
      bland = false;
    } else if (++degenerate_run > stall_limit) {
      bland = true;
    }
    flow[leaving] = 0.0;

    remove_basic(leaving);
    add_basic(entering);
    recompute();
  }

  res.alpha.assign(pot.begin(), pot.begin() + ns);
  res.beta.assign(pot.begin() + ns, pot.end());
  double total = 0.0;
  for (std::int64_t a = 0; a < num_arcs; ++a)
    if (flow[a] != 0.0) total += flow[a] * cost[a];
  res.cost = total;
  return res;
}

}  // namespace itx
