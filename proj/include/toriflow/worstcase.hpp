// Families of transportation polytopes whose toric ideals need Groebner
// basis elements of high degree, together with the certificates that make
// the construction checkable at any size.
//
// Birkhoff family: inside B_{2n}, the 2n permutation matrices A_i, B_i
// (built from n x n blocks M^i, N^i and their twisted companions) sum to
// the same matrix as the identity plus 2n-1 further permutation matrices,
// giving a degree-2n relation. Ranking the identity cheapest and the family
// just above it makes the family side the initial term.
//
// Transportation family: for even m, n the m(n-2)/2 matrices A_ij, B_ij sum
// to (n/2-2) C + ((m(n-2)-n)/2+1) D + E, a degree-m(n-2)/2 relation in the
// polytope with margins r = (n/2,...), c = (m/2,...). Adding mn to every
// last-column entry moves the relation into a smooth polytope with margins
// r = (n/2+mn,...), c = (m/2,...,m/2, m^2 n + m/2).
//
// Whether the family side is a *minimal* generator of the initial ideal is
// certified combinatorially: every member exclusively covers some one-entry
// of the minimal element (necessity), and every member has a one-entry no
// other member covers (privacy). Full Buchberger runs stay feasible only
// for the smallest instances.
#pragma once

#include <string>
#include <vector>

#include "toriflow/common.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"
#include "toriflow/order.hpp"

namespace toriflow {

enum class WorstCaseFamily { birkhoff, transportation, transportation_smooth };

struct NamedMatrix {
    std::string name;
    int rows = 0, cols = 0;
    Vec entries;  // row-major
};

struct WorstCaseInstance {
    WorstCaseFamily family = WorstCaseFamily::birkhoff;
    int pm = 0, pn = 0;        // constructor parameters (pm 0 for Birkhoff)
    TransportationSpec margins;
    FlowPolytopeSpec spec;     // margins as a flow polytope

    // the relation: sum of lead tables = sum of trail tables, entrywise.
    // Tables are flattened row-major; repetition encodes multiplicity.
    std::vector<Vec> lead_tables;   // the family members
    std::vector<Vec> trail_tables;  // minimal element first
    std::vector<std::string> lead_names, trail_names;

    std::vector<NamedMatrix> named;  // building blocks for display

    // suffix of a point ranking realizing the intended revlex order:
    // family members, then the minimal element (cheapest last)
    std::vector<Vec> ranking_tail;

    int degree() const { return static_cast<int>(lead_tables.size()); }
    int table_rows() const { return margins.m(); }
    int table_cols() const { return margins.n(); }
};

// The degree-2n relation in B_{2n}. Requires n >= 2.
WorstCaseInstance birkhoff_family(int n);

// The degree-m(n-2)/2 relation in the (m x n)-transportation polytope with
// margins (n/2,...) x (m/2,...). Requires m, n even, m >= 2, n >= 4.
WorstCaseInstance transport_family(int m, int n);

// Shift every table's last column by mn, landing the same relation in a
// smooth transportation polytope. Input must come from transport_family.
WorstCaseInstance smooth_shift(const WorstCaseInstance& inst);

struct CoverReport {
    bool necessity = true;  // each member exclusively covers a one of the
                            // minimal element (and the family covers them all)
    bool privacy = true;    // each member has a one no other member covers
    std::vector<std::string> failures;
    bool ok() const { return necessity && privacy; }
};

// Checks the two facts that certify the family side as a minimal generator
// of the initial ideal under the emitted ranking.
CoverReport covering_certificate(const WorstCaseInstance& inst);

struct PointedRelation {
    Vec lead, trail;           // exponent vectors over the point list
    std::vector<int> ranking;  // every point id, most expensive first
};

// Locate the relation inside an enumerated point list and extend
// ranking_tail to a full ranking (unlisted points first, in id order).
// Throws InputError when some table is missing from pts.
PointedRelation relation_in_points(const WorstCaseInstance& inst, const PointList& pts);

}  // namespace toriflow
