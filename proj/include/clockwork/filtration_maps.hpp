#pragma once

#include <optional>

#include "clockwork/behavior.hpp"
#include "clockwork/prob.hpp"

namespace clockwork {

/// A finite probability space carrying a filtration.
struct FilteredSpace {
    FilteredSpace(FinProbSpace space, Filtration filt);

    FinProbSpace space;
    Filtration filt;

    friend bool operator==(const FilteredSpace& a, const FilteredSpace& b) {
        return a.space == b.space && a.filt == b.filt;
    }
};

/// A measure-preserving, filtration-preserving function between filtered
/// spaces. Both invariants are validated exactly at construction: the
/// pushforward of the source measure is the target measure, and the
/// preimage of every level-i block is a union of level-i blocks.
class FilteredMap {
public:
    FilteredMap(FilteredSpace src, FilteredSpace dst, Fn map);

    const FilteredSpace& src() const { return src_; }
    const FilteredSpace& dst() const { return dst_; }
    const Fn& map() const { return map_; }
    const Label& at(const Label& w) const { return map_.at(w); }

    friend bool operator==(const FilteredMap& a, const FilteredMap& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.map_ == b.map_;
    }

private:
    FilteredSpace src_;
    FilteredSpace dst_;
    Fn map_;
};

FilteredMap identity_filtered_map(const FilteredSpace& fs);
FilteredMap compose_filtered_maps(const FilteredMap& g, const FilteredMap& f);

/// A stochastic map between the block spaces of two partitions.
struct StochKernelMap {
    Partition domain;
    Partition codomain;
    std::map<Label, Dist> table; // block label -> Dist over codomain block labels

    friend bool operator==(const StochKernelMap& a, const StochKernelMap& b) {
        return a.domain == b.domain && a.codomain == b.codomain && a.table == b.table;
    }
};

/// The conditional-distribution kernel from level i to level i+1: a positive
/// block spreads over its sub-blocks with mass ratios P(b')/P(b); a null
/// block maps to the point mass at its first sub-block.
StochKernelMap conditional_kernel(const FilteredSpace& fs, std::size_t i);

/// Kernel-square criterion for an immersion: pushing the source conditional
/// kernel forward along the induced block maps lands on the target
/// conditional kernel, at every positive-mass source block and level.
bool is_immersion_kernel(const FilteredMap& phi);

/// Martingale criterion: the pullback of every indicator martingale
/// E[1_V | F'_n] is again a martingale. Indicator martingales suffice,
/// which is what makes this decidable at finite scale.
bool is_immersion_martingale(const FilteredMap& phi);

/// The subset V whose indicator martingale breaks under pullback, if any.
std::optional<Subset> martingale_counterexample(const FilteredMap& phi);

/// Fiber-wise renormalized prior: for positive b the conditional of P on
/// f^-1(b); for null b the point mass at the first fiber element. A null b
/// with an empty fiber has nothing to canonicalize at and throws.
Kernel bayesian_inverse(const FinProbSpace& a, const FinProbSpace& b, const Fn& f);

/// A commuting square of measure-preserving functions between finite
/// probability spaces, with A in the corner.
struct ProbSquare {
    FinProbSpace a;
    FinProbSpace b;
    FinProbSpace c;
    FinProbSpace d;
    Fn ab; // A -> B
    Fn ac; // A -> C
    Fn bd; // B -> D
    Fn cd; // C -> D
};

/// Conditional independence of B and C given D: the conditional
/// distribution of the C-value given the B-value factors through B -> D.
bool is_independent_square(const ProbSquare& sq);

/// Whether the square of horizontal (B->A, D->C) or vertical (C->A, D->B)
/// Bayesian inverses commutes on positive-mass points.
bool bayes_inverse_square_commutes(const ProbSquare& sq, bool horizontal);

/// Cospan of measure-preserving functions into a shared base.
struct PlainCospan {
    PlainCospan(FinProbSpace left, Fn left_map, FinProbSpace right, Fn right_map,
                FinProbSpace base);

    FinProbSpace left;
    Fn left_map;
    FinProbSpace right;
    Fn right_map;
    FinProbSpace base;
};

/// Set-pullback carrier with the conditionally independent coupling
/// P(g1, g2) = P1(g1) * P2(g2) / Q(base point) over positive base points.
struct PlainPullback {
    FinProbSpace space;
    Fn proj1;
    Fn proj2;
};

PlainPullback independent_pullback_plain(const PlainCospan& cospan);

/// Filtered independent pullback: the coupling above, with level i given by
/// intersecting products of level-i blocks with the carrier. Projections
/// come back as validated filtered maps.
struct FilteredPullback {
    FilteredSpace space;
    FilteredMap proj1;
    FilteredMap proj2;
};

FilteredPullback independent_pullback(const FilteredMap& leg1,
                                      const FilteredMap& leg2);

/// Presheaf action: precomposing a behavior's processes with a filtered map.
StochBehavior restrict_behavior(const FilteredMap& phi, const StochBehavior& b);

/// Factors a phi-invariant behavior on the source through phi. Invariance is
/// checked on the independent pullback of phi against itself; failures throw
/// GluingError with a witness pair, and a factored step that is not constant
/// on a positive target block throws AdaptednessError.
StochBehavior glue_behavior(const FilteredMap& phi, const StochBehavior& b);

} // namespace clockwork
