// Toric ideals of point configurations, represented exactly by binomials
// x^u - x^v with disjoint supports (coefficients are always +1/-1).
//
// The toric ideal of points p_1..p_n is recovered from a basis of the
// integer kernel of the point matrix by saturating the lattice-basis ideal
// at every variable.  Saturation at x_i uses a graded reverse-lex order with
// x_i cheapest; because binomials are kept with cancelled common factors at
// all times, each such Groebner run already yields generators of the
// saturated ideal (dividing by x_i^inf is a no-op on support-disjoint
// binomials, and cancelling only ever moves the ideal closer to the target
// saturation, never past it).  Requires a homogeneous configuration.
#pragma once

#include <optional>
#include <vector>

#include "toriflow/common.hpp"
#include "toriflow/order.hpp"

namespace toriflow {

struct Binomial {
    Vec lead, trail;  // disjoint supports; lead > trail in the active order

    bool operator==(const Binomial& o) const {
        return lead == o.lead && trail == o.trail;
    }
    bool operator<(const Binomial& o) const {
        return lead != o.lead ? lead < o.lead : trail < o.trail;
    }
    Coord degree() const;  // total degree of the lead
};

// Cancel the common factor of u and v and orient by the order.
// nullopt when the terms cancel entirely.
std::optional<Binomial> make_binomial(Vec u, Vec v, const TermOrder& order);

enum class GBStatus { complete, degree_truncated, time_truncated };

struct GBResult {
    std::vector<Binomial> basis;
    GBStatus status = GBStatus::complete;
    long long spairs_processed = 0;
};

// Buchberger on binomials. caps.degree_cap skips S-pairs whose lcm degree
// exceeds the cap (sound truncation for homogeneous input); caps.max_seconds
// aborts with a partial, flagged basis.
GBResult buchberger(std::vector<Binomial> gens, const TermOrder& order,
                    const Caps& caps = Caps{});

// Minimalize + tail-reduce + sort. Input must be a Groebner basis; the
// result is the unique reduced basis, sorted by lead ascending.
std::vector<Binomial> reduced_basis(std::vector<Binomial> gb, const TermOrder& order);

// Binomials x^{z+} - x^{z-} for a basis z of the integer kernel of the
// point matrix (columns = points).
std::vector<Binomial> lattice_ideal_generators(const std::vector<Vec>& points,
                                               const TermOrder& order);

// Reduced Groebner basis of the toric ideal of the given points.
// Throws InputError unless the configuration is homogeneous.
// degree caps apply to the final basis only; the time cap covers everything.
GBResult toric_groebner_basis(const std::vector<Vec>& points, const TermOrder& order,
                              const Caps& caps = Caps{});

// Normal form of the monomial x^m under the basis (basis leads rewrite to
// trails until none divides).
Vec normal_form(Vec m, const std::vector<Binomial>& basis, const TermOrder& order);

// Membership test for x^u - x^v via reduction to a common normal form.
// Valid when `basis` is a Groebner basis for `order`.
bool reduces_to_zero(const Vec& u, const Vec& v, const std::vector<Binomial>& basis,
                     const TermOrder& order);

// Lead exponents of the basis (generators of the initial ideal).
std::vector<Vec> initial_monomials(const std::vector<Binomial>& basis);

}  // namespace toriflow
