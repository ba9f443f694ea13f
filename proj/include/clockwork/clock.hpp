#pragma once

#include <optional>
#include <vector>

#include "clockwork/prob.hpp"
#include "clockwork/system.hpp"

namespace clockwork {

/// Number of observed time steps. The underlying mathematical clocks run
/// forever; we verify against a finite truncation whose top level is
/// absorbing, and behavior checks skip update constraints at the top.
struct Horizon {
    explicit Horizon(int steps);
    int steps;
};

/// A finite directed graph, edges named and carrying (source, target).
struct Graph {
    Graph(FinSet nodes, FinSet edges, std::map<Label, std::pair<Label, Label>> endpoints);

    FinSet nodes;
    FinSet edges;
    std::map<Label, std::pair<Label, Label>> endpoints;

    std::vector<Label> edges_from(const Label& node) const;
};

enum class ClockKind { deterministic, stochastic, nondet_linear, graph };

std::string to_string(ClockKind kind);

/// States of a clock that must take equal values under any morphism
/// component (one block of one filtration level for the stochastic clock;
/// singletons otherwise). `positive` records whether the group carries
/// measure, which is where truncated-morphism equations are enforced.
struct StateGroup {
    std::vector<Label> states;
    int level = 0;
    bool positive = true;
};

/// One of the four clock constructions together with the truncation
/// metadata the behavior layer needs: which states are absorbing, the level
/// of each state, and the value-sharing groups for chart enumeration.
class ClockSystem {
public:
    ClockSystem(ClockKind kind, Horizon horizon, MonadicSystem system,
                std::map<Label, int> level, std::vector<StateGroup> groups,
                std::optional<FinProbSpace> space, std::optional<Filtration> filt,
                Fn state_point);

    ClockKind kind() const { return kind_; }
    const Horizon& horizon() const { return horizon_; }
    const MonadicSystem& system() const { return system_; }
    int level_of(const Label& state) const { return level_.at(state); }
    bool is_absorbing(const Label& state) const {
        return level_.at(state) == horizon_.steps;
    }
    const std::vector<StateGroup>& groups() const { return groups_; }

    /// Only set for stochastic clocks.
    const std::optional<FinProbSpace>& space() const { return space_; }
    const std::optional<Filtration>& filtration() const { return filt_; }
    /// Stochastic clocks: which sample point a state carries.
    const Fn& state_point() const { return state_point_; }

private:
    ClockKind kind_;
    Horizon horizon_;
    MonadicSystem system_;
    std::map<Label, int> level_;
    std::vector<StateGroup> groups_;
    std::optional<FinProbSpace> space_;
    std::optional<Filtration> filt_;
    Fn state_point_;
};

/// Counter clock: states 1..T, readout the identity, update counts up and
/// absorbs at T.
ClockSystem build_deterministic_clock(Horizon h);

/// Stochastic clock on leveled points (i, w): the update resamples w from
/// the conditional of the measure given level-i information while stepping
/// the level, and absorbs at level T. Needs at least T filtration levels.
ClockSystem build_stochastic_clock(const FinProbSpace& space,
                                   const Filtration& filt, Horizon h);

/// Nondeterministic clock on seed lists of length <= T: below the horizon
/// the update offers every one-seed extension.
ClockSystem build_nondet_linear_clock(const FinSet& omega, Horizon h);

/// Nondeterministic clock on seed-decorated paths of length <= T in a
/// graph; dead ends yield the empty successor set.
ClockSystem build_graph_clock(const Graph& g, const FinSet& omega, Horizon h);

/// Canonical state labels, exposed for relabeling-based comparisons.
Label leveled_point_label(int level, const Label& omega_point);
Label seed_list_label(const std::vector<Label>& seeds);
Label decorated_path_label(const Label& start,
                           const std::vector<std::pair<Label, Label>>& steps);

} // namespace clockwork
