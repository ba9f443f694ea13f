#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clockwork/clock.hpp"
#include "clockwork/system.hpp"

namespace clockwork {

/// A horizon-T run of a deterministic machine: states, outputs and inputs.
/// Outputs are constrained at every step, updates at steps 1..T-1, and the
/// final input is free, mirroring the truncated clock exactly.
struct DetBehavior {
    std::vector<Label> xs;
    std::vector<Label> outs;
    std::vector<Label> ins;

    friend bool operator==(const DetBehavior& a, const DetBehavior& b) {
        return a.xs == b.xs && a.outs == b.outs && a.ins == b.ins;
    }
    friend bool operator<(const DetBehavior& a, const DetBehavior& b) {
        if (a.xs != b.xs) return a.xs < b.xs;
        if (a.outs != b.outs) return a.outs < b.outs;
        return a.ins < b.ins;
    }
};

/// Adapted state/output/input processes over a shared filtered sample
/// space. Step i of each process is constant on level-i blocks.
struct StochBehavior {
    FinProbSpace space;
    Filtration filt;
    AdaptedProcess xs;
    AdaptedProcess outs;
    AdaptedProcess ins;

    friend bool operator==(const StochBehavior& a, const StochBehavior& b) {
        return a.space == b.space && a.filt == b.filt && a.xs == b.xs &&
               a.outs == b.outs && a.ins == b.ins;
    }
};

/// Forward-simulation oracle: picks a start state and an input word, then
/// iterates the machine. Independent of the morphism-square route.
std::vector<DetBehavior> enumerate_det_behaviors(const MonadicSystem& s, Horizon h,
                                                 const EnumOptions& opts = {});

bool check_det_behavior(const MonadicSystem& s, const DetBehavior& b);

/// Output condition at every step and the conditional-law condition at steps
/// 1..T-1, both quantified over positive-mass points, with exact rational
/// equality of distributions.
bool check_stoch_behavior(const MonadicSystem& s, const StochBehavior& b);

/// Filters every adapted candidate triple through check_stoch_behavior.
std::vector<StochBehavior> enumerate_stoch_behaviors(const MonadicSystem& s,
                                                     const FinProbSpace& space,
                                                     const Filtration& filt,
                                                     Horizon h,
                                                     const EnumOptions& opts = {});

/// Morphism conditions out of a truncated clock: components must be
/// level-wise measurable (constant on the clock's state groups), square (i)
/// holds at every level and square (ii) at non-absorbing levels, quantified
/// over positive-mass groups.
bool check_truncated_clock_morphism(const ClockSystem& clock,
                                    const MonadicSystem& s, const Fn& state_map,
                                    const Chart& chart);

std::vector<SystemMorphism> enumerate_truncated_clock_morphisms(
    const ClockSystem& clock, const MonadicSystem& s, const EnumOptions& opts = {});

/// Reads a clock morphism as the run it names: level i gives step i.
DetBehavior to_det_behavior(const ClockSystem& clock, const SystemMorphism& m);
StochBehavior to_stoch_behavior(const ClockSystem& clock, const SystemMorphism& m);

/// Two-sided representability check. Scans the full candidate space once,
/// evaluating the morphism-square predicate and the behavior predicate on
/// every (level-wise measurable) candidate, and additionally compares the
/// passing set against the independent enumeration oracle where one exists
/// (forward simulation for the deterministic theory).
struct RepresentabilityReport {
    MonadTag tag{};
    ClockKind kind{};
    int horizon = 0;
    std::uint64_t candidates = 0;
    std::uint64_t morphism_count = 0;
    std::uint64_t behavior_count = 0;
    std::uint64_t oracle_count = 0;
    bool predicates_agree = true;
    bool oracle_matches = true;
    bool bijection = false;
    std::string witness;

    std::string to_text() const;
};

RepresentabilityReport check_representability(const ClockSystem& clock,
                                              const MonadicSystem& s,
                                              const EnumOptions& opts = {});

/// Functorial action of a system morphism on runs.
DetBehavior pushforward_behavior(const SystemMorphism& m, const DetBehavior& b);
StochBehavior pushforward_behavior(const SystemMorphism& m, const StochBehavior& b);
/// Nondeterministic runs are clock morphisms; pushing forward is
/// postcomposition.
SystemMorphism pushforward_behavior(const SystemMorphism& m, const SystemMorphism& b,
                                    const ClockSystem& clock);

/// Charts from the clock interface into `target`, restricted to level-wise
/// measurable components.
std::vector<Chart> enumerate_interface_charts(const ClockSystem& clock,
                                              const Arena& target,
                                              const EnumOptions& opts = {});

/// The compatibility relation a lens induces between interface behaviors:
/// chart pairs (a, b) with b+ = l.fwd after a+ and a- = l.sharp(a+, b-),
/// quantified over the clock's positive-mass states.
struct BehaviorRelationEntry {
    Chart left;
    Chart right;
    bool related = false;
};

std::vector<BehaviorRelationEntry> behavior_relation(const Lens& l,
                                                     const ClockSystem& clock,
                                                     const EnumOptions& opts = {});

} // namespace clockwork
