#include "toriflow/netflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace toriflow {

namespace {

// Max-flow (Edmonds-Karp) on a small residual network. Deterministic: edges
// are scanned in insertion order and BFS takes the first shortest path.
struct MaxFlow {
    struct Edge {
        int to;
        Coord cap;
    };
    std::vector<Edge> edges;               // paired: e^ = e xor 1
    std::vector<std::vector<int>> adj;

    explicit MaxFlow(int n) : adj(static_cast<size_t>(n)) {}

    int add_edge(int from, int to, Coord cap) {
        int id = static_cast<int>(edges.size());
        edges.push_back({to, cap});
        edges.push_back({from, 0});
        adj[static_cast<size_t>(from)].push_back(id);
        adj[static_cast<size_t>(to)].push_back(id + 1);
        return id;
    }

    Coord run(int s, int t) {
        Coord total = 0;
        std::vector<int> pred(adj.size());
        for (;;) {
            std::fill(pred.begin(), pred.end(), -1);
            pred[static_cast<size_t>(s)] = -2;
            std::deque<int> q{s};
            while (!q.empty() && pred[static_cast<size_t>(t)] == -1) {
                int v = q.front();
                q.pop_front();
                for (int e : adj[static_cast<size_t>(v)]) {
                    int w = edges[static_cast<size_t>(e)].to;
                    if (pred[static_cast<size_t>(w)] == -1 && edges[static_cast<size_t>(e)].cap > 0) {
                        pred[static_cast<size_t>(w)] = e;
                        q.push_back(w);
                    }
                }
            }
            if (pred[static_cast<size_t>(t)] == -1) return total;
            Coord push = std::numeric_limits<Coord>::max();
            for (int v = t; v != s;) {
                int e = pred[static_cast<size_t>(v)];
                push = std::min(push, edges[static_cast<size_t>(e)].cap);
                v = edges[static_cast<size_t>(e ^ 1)].to;
            }
            for (int v = t; v != s;) {
                int e = pred[static_cast<size_t>(v)];
                edges[static_cast<size_t>(e)].cap -= push;
                edges[static_cast<size_t>(e ^ 1)].cap += push;
                v = edges[static_cast<size_t>(e ^ 1)].to;
            }
            total += push;
        }
    }

    std::vector<bool> reachable(int s) const {
        std::vector<bool> seen(adj.size(), false);
        seen[static_cast<size_t>(s)] = true;
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int e : adj[static_cast<size_t>(v)]) {
                int w = edges[static_cast<size_t>(e)].to;
                if (!seen[static_cast<size_t>(w)] && edges[static_cast<size_t>(e)].cap > 0) {
                    seen[static_cast<size_t>(w)] = true;
                    q.push_back(w);
                }
            }
        }
        return seen;
    }
};

CutCertificate make_cut(const FlowPolytopeSpec& spec, const std::vector<bool>& s_side) {
    // X = vertices on the sink side. Feasibility requires
    //   sum_{v in X} d_v  <=  sum_{arcs into X} u_a - sum_{arcs out of X} l_a
    // and this X violates it.
    CutCertificate cut;
    for (int v = 0; v < spec.num_vertices(); ++v)
        if (!s_side[static_cast<size_t>(v)]) cut.vertex_set.push_back(v);
    std::vector<bool> in_x(static_cast<size_t>(spec.num_vertices()), false);
    for (int v : cut.vertex_set) in_x[static_cast<size_t>(v)] = true;
    for (int v : cut.vertex_set) cut.demand_into += spec.demand[static_cast<size_t>(v)];
    for (const Arc& a : spec.graph.arcs) {
        if (a.tail == a.head) continue;
        bool t_in = in_x[static_cast<size_t>(a.tail)];
        bool h_in = in_x[static_cast<size_t>(a.head)];
        if (!t_in && h_in) cut.capacity_in += a.upper;
        if (t_in && !h_in) cut.capacity_in -= a.lower;
    }
    check(cut.demand_into > cut.capacity_in, "cut certificate does not certify");
    return cut;
}

}  // namespace

std::string CutCertificate::describe(const FlowPolytopeSpec& spec) const {
    std::ostringstream os;
    os << "infeasible cut {";
    for (size_t i = 0; i < vertex_set.size(); ++i) {
        if (i) os << ", ";
        os << spec.graph.vertices[static_cast<size_t>(vertex_set[i])];
    }
    os << "}: needs net inflow " << demand_into << " but bounds admit at most "
       << capacity_in;
    return os.str();
}

FeasibilityResult find_integer_flow(const FlowPolytopeSpec& spec) {
    spec.validate();
    int nv = spec.num_vertices();
    int na = spec.num_arcs();
    int S = nv, T = nv + 1;
    MaxFlow mf(nv + 2);

    // Shift by lower bounds: g = f - l with 0 <= g <= u - l and residual
    // demands d'_v = d_v - (inflow - outflow of the lower bounds).
    Vec dprime(spec.demand);
    for (const Arc& a : spec.graph.arcs) {
        if (a.tail == a.head) continue;
        dprime[static_cast<size_t>(a.head)] -= a.lower;
        dprime[static_cast<size_t>(a.tail)] += a.lower;
    }
    std::vector<int> arc_edge(static_cast<size_t>(na), -1);
    for (int i = 0; i < na; ++i) {
        const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
        if (a.tail == a.head) continue;
        arc_edge[static_cast<size_t>(i)] = mf.add_edge(a.tail, a.head, a.upper - a.lower);
    }
    Coord supply = 0;
    for (int v = 0; v < nv; ++v) {
        if (dprime[static_cast<size_t>(v)] < 0)
            mf.add_edge(S, v, -dprime[static_cast<size_t>(v)]);
        else if (dprime[static_cast<size_t>(v)] > 0) {
            mf.add_edge(v, T, dprime[static_cast<size_t>(v)]);
            supply += dprime[static_cast<size_t>(v)];
        }
    }

    FeasibilityResult res;
    if (mf.run(S, T) == supply) {
        IntegerFlow f;
        f.values.resize(static_cast<size_t>(na));
        for (int i = 0; i < na; ++i) {
            const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
            Coord g = 0;
            if (arc_edge[static_cast<size_t>(i)] >= 0) {
                // flow pushed = capacity now on the reverse edge
                g = mf.edges[static_cast<size_t>(arc_edge[static_cast<size_t>(i)]) + 1].cap;
            }
            f.values[static_cast<size_t>(i)] = a.lower + g;
        }
        check(!validate_flow(spec, f), "max-flow solution fails validation");
        res.flow = std::move(f);
    } else {
        res.cut = make_cut(spec, mf.reachable(S));
    }
    return res;
}

DecomposeResult decompose_flow(const FlowPolytopeSpec& spec, const IntegerFlow& total,
                               int k) {
    spec.validate();
    if (k <= 0) throw InputError("decomposition needs k >= 1");
    if (total.values.size() != static_cast<size_t>(spec.num_arcs()))
        throw InputError("total flow has wrong number of coordinates");
    std::vector<Coord> net(static_cast<size_t>(spec.num_vertices()), 0);
    for (int i = 0; i < spec.num_arcs(); ++i) {
        const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
        if (a.tail == a.head) continue;
        net[static_cast<size_t>(a.head)] += total.values[static_cast<size_t>(i)];
        net[static_cast<size_t>(a.tail)] -= total.values[static_cast<size_t>(i)];
    }
    for (int v = 0; v < spec.num_vertices(); ++v)
        if (net[static_cast<size_t>(v)] != static_cast<Coord>(k) * spec.demand[static_cast<size_t>(v)])
            throw InputError("total flow does not satisfy k times the demands");

    DecomposeResult res;
    for (int i = 0; i < spec.num_arcs(); ++i) {
        const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
        Coord v = total.values[static_cast<size_t>(i)];
        if (v < static_cast<Coord>(k) * a.lower || v > static_cast<Coord>(k) * a.upper) {
            std::ostringstream os;
            os << "arc " << a.id << ": total value " << v << " outside ["
               << k * a.lower << ", " << k * a.upper << "]";
            res.error = os.str();
            return res;
        }
    }

    Decomposition out;
    Vec rest = total.values;
    for (int j = k; j >= 1; --j) {
        FlowPolytopeSpec stage = spec;
        for (int i = 0; i < spec.num_arcs(); ++i) {
            const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
            Coord lo = std::max(a.lower, rest[static_cast<size_t>(i)] - static_cast<Coord>(j - 1) * a.upper);
            Coord hi = std::min(a.upper, rest[static_cast<size_t>(i)] - static_cast<Coord>(j - 1) * a.lower);
            check(lo <= hi, "window emptied during decomposition");
            stage.graph.arcs[static_cast<size_t>(i)].lower = lo;
            stage.graph.arcs[static_cast<size_t>(i)].upper = hi;
        }
        auto feas = find_integer_flow(stage);
        check(feas.feasible(), "stage infeasible during decomposition");
        for (int i = 0; i < spec.num_arcs(); ++i)
            rest[static_cast<size_t>(i)] -= feas.flow->values[static_cast<size_t>(i)];
        out.parts.push_back(std::move(*feas.flow));
    }
    for (Coord r : rest) check(r == 0, "decomposition leaves a remainder");
    res.decomposition = std::move(out);
    return res;
}

DecomposeResult decompose_table(const TransportationSpec& t, const std::vector<Coord>& table,
                                int k) {
    return decompose_flow(transportation_as_flow(t), IntegerFlow{table}, k);
}

}  // namespace toriflow
