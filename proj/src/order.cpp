#include "toriflow/order.hpp"

#include <numeric>

namespace toriflow {

int TermOrder::compare(const Vec& a, const Vec& b) const {
    check(a.size() == order_pos.size() && b.size() == order_pos.size(),
          "exponent vector size mismatch");
    __int128 wa = 0, wb = 0;
    for (size_t v = 0; v < a.size(); ++v) {
        wa += static_cast<__int128>(weights[v]) * a[v];
        wb += static_cast<__int128>(weights[v]) * b[v];
    }
    if (wa != wb) return wa > wb ? 1 : -1;
    Coord da = std::accumulate(a.begin(), a.end(), Coord(0));
    Coord db = std::accumulate(b.begin(), b.end(), Coord(0));
    if (da != db) return da > db ? 1 : -1;
    // reverse lex: the cheapest variable with differing exponent decides;
    // more of the cheap variable makes the monomial smaller
    int best = -1;
    for (size_t v = 0; v < a.size(); ++v)
        if (a[v] != b[v] && (best < 0 || order_pos[v] > order_pos[static_cast<size_t>(best)]))
            best = static_cast<int>(v);
    if (best < 0) return 0;
    return a[static_cast<size_t>(best)] > b[static_cast<size_t>(best)] ? -1 : 1;
}

TermOrder grevlex_order(int n) {
    TermOrder o;
    o.weights.assign(static_cast<size_t>(n), 0);
    o.order_pos.resize(static_cast<size_t>(n));
    std::iota(o.order_pos.begin(), o.order_pos.end(), 0);
    return o;
}

TermOrder grevlex_with_last(int n, int last_var) {
    check(last_var >= 0 && last_var < n, "variable index out of range");
    TermOrder o = grevlex_order(n);
    for (int v = last_var + 1; v < n; ++v) o.order_pos[static_cast<size_t>(v)] -= 1;
    o.order_pos[static_cast<size_t>(last_var)] = n - 1;
    return o;
}

TermOrder order_from_ranking(const std::vector<int>& ranking, Vec weights) {
    int n = static_cast<int>(ranking.size());
    TermOrder o;
    o.order_pos.assign(static_cast<size_t>(n), -1);
    for (int pos = 0; pos < n; ++pos) {
        int v = ranking[static_cast<size_t>(pos)];
        if (v < 0 || v >= n) throw InputError("ranking index out of range");
        if (o.order_pos[static_cast<size_t>(v)] != -1)
            throw InputError("ranking repeats a variable");
        o.order_pos[static_cast<size_t>(v)] = pos;
    }
    if (weights.empty()) weights.assign(static_cast<size_t>(n), 0);
    if (static_cast<int>(weights.size()) != n)
        throw InputError("weight vector length does not match ranking");
    for (Coord w : weights)
        if (w < 0) throw InputError("weights must be nonnegative");
    o.weights = std::move(weights);
    return o;
}

Vec squared_height_weights(const std::vector<Vec>& pts) {
    Vec w;
    w.reserve(pts.size());
    for (const Vec& p : pts) {
        Coord s = 0;
        for (Coord x : p) s += x * x;
        w.push_back(s);
    }
    return w;
}

TermOrder subdivide_pull_order(const std::vector<Vec>& pts,
                               const std::vector<int>& ranking) {
    std::vector<int> r = ranking;
    if (r.empty()) {
        r.resize(pts.size());
        std::iota(r.begin(), r.end(), 0);
    }
    if (r.size() != pts.size())
        throw InputError("ranking length does not match point count");
    return order_from_ranking(r, squared_height_weights(pts));
}

}  // namespace toriflow
