#include "clockwork/clock.hpp"

#include <algorithm>

#include "clockwork/errors.hpp"

namespace clockwork {

Horizon::Horizon(int s) : steps(s) {
    if (s < 1) {
        throw ValidityError("horizon must be at least 1");
    }
}

Graph::Graph(FinSet nodes_, FinSet edges_,
             std::map<Label, std::pair<Label, Label>> endpoints_)
    : nodes(std::move(nodes_)), edges(std::move(edges_)),
      endpoints(std::move(endpoints_)) {
    if (nodes.empty()) {
        throw ValidityError("graph needs at least one node");
    }
    for (const Label& e : edges) {
        auto it = endpoints.find(e);
        if (it == endpoints.end()) {
            throw ValidityError("graph edge '" + e + "' has no endpoints");
        }
        if (!nodes.contains(it->second.first) || !nodes.contains(it->second.second)) {
            throw ValidityError("graph edge '" + e + "' references unknown nodes");
        }
    }
    if (endpoints.size() != edges.size()) {
        throw ValidityError("graph endpoint table does not match the edge set");
    }
}

std::vector<Label> Graph::edges_from(const Label& node) const {
    std::vector<Label> out;
    for (const Label& e : edges) {
        if (endpoints.at(e).first == node) {
            out.push_back(e);
        }
    }
    return out;
}

std::string to_string(ClockKind kind) {
    switch (kind) {
        case ClockKind::deterministic: return "deterministic";
        case ClockKind::stochastic: return "stochastic";
        case ClockKind::nondet_linear: return "nondet";
        case ClockKind::graph: return "graph";
    }
    return "?";
}

ClockSystem::ClockSystem(ClockKind kind, Horizon horizon, MonadicSystem system,
                         std::map<Label, int> level, std::vector<StateGroup> groups,
                         std::optional<FinProbSpace> space,
                         std::optional<Filtration> filt, Fn state_point)
    : kind_(kind), horizon_(horizon), system_(std::move(system)),
      level_(std::move(level)), groups_(std::move(groups)),
      space_(std::move(space)), filt_(std::move(filt)),
      state_point_(std::move(state_point)) {}

Label leveled_point_label(int level, const Label& omega_point) {
    return "(" + std::to_string(level) + "," + omega_point + ")";
}

Label seed_list_label(const std::vector<Label>& seeds) {
    Label out = "[";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out += ",";
        out += seeds[i];
    }
    return out + "]";
}

Label decorated_path_label(const Label& start,
                           const std::vector<std::pair<Label, Label>>& steps) {
    Label out = start;
    for (const auto& [e, w] : steps) {
        out += "|" + e + ":" + w;
    }
    return out;
}

namespace {

Arena closed_arena(const FinSet& states) {
    return Arena(states, FinSet({"*"}));
}

Fn identity_on(const FinSet& s) {
    Fn out;
    for (const Label& l : s) out[l] = l;
    return out;
}

} // namespace

ClockSystem build_deterministic_clock(Horizon h) {
    std::vector<Label> labels;
    for (int n = 1; n <= h.steps; ++n) {
        labels.push_back(std::to_string(n));
    }
    FinSet states(labels);
    std::map<std::pair<Label, Label>, MonadValue> update;
    std::map<Label, int> level;
    std::vector<StateGroup> groups;
    for (int n = 1; n <= h.steps; ++n) {
        const Label state = std::to_string(n);
        const Label next = std::to_string(std::min(n + 1, h.steps));
        update.emplace(std::make_pair(state, Label("*")), next);
        level[state] = n;
        groups.push_back(StateGroup{{state}, n, true});
    }
    MonadicSystem system(MonadTag::identity, states, closed_arena(states),
                         identity_on(states), std::move(update));
    return ClockSystem(ClockKind::deterministic, h, std::move(system),
                       std::move(level), std::move(groups), std::nullopt,
                       std::nullopt, {});
}

ClockSystem build_stochastic_clock(const FinProbSpace& space,
                                   const Filtration& filt, Horizon h) {
    if (filt.length() < static_cast<std::size_t>(h.steps)) {
        throw ShapeError("stochastic clock needs a filtration with at least " +
                         std::to_string(h.steps) + " levels, got " +
                         std::to_string(filt.length()));
    }
    std::vector<Label> labels;
    std::map<Label, int> level;
    Fn state_point;
    for (int i = 1; i <= h.steps; ++i) {
        for (const Label& w : space.omega()) {
            const Label state = leveled_point_label(i, w);
            labels.push_back(state);
            level[state] = i;
            state_point[state] = w;
        }
    }
    FinSet states(labels);

    std::map<std::pair<Label, Label>, MonadValue> update;
    for (int i = 1; i <= h.steps; ++i) {
        // The resampling row at (i, w) pushes the conditional of the sample
        // point given level-i information up to level i + 1.
        const auto cond =
            conditional_probability(space, filt.level(i), identity_on(space.omega()));
        for (const Label& w : space.omega()) {
            const Label state = leveled_point_label(i, w);
            if (i == h.steps) {
                update.emplace(std::make_pair(state, Label("*")), Dist::point(state));
                continue;
            }
            Fn inject;
            for (const Label& w2 : space.omega()) {
                inject[w2] = leveled_point_label(i + 1, w2);
            }
            update.emplace(std::make_pair(state, Label("*")),
                           pushforward(inject, cond.at(w)));
        }
    }

    std::vector<StateGroup> groups;
    for (int i = 1; i <= h.steps; ++i) {
        for (const auto& block : filt.level(i).blocks()) {
            StateGroup g;
            g.level = i;
            g.positive = !space.mass_of(block).is_zero();
            for (const Label& w : block) {
                g.states.push_back(leveled_point_label(i, w));
            }
            groups.push_back(std::move(g));
        }
    }

    MonadicSystem system(MonadTag::dist, states, closed_arena(states),
                         identity_on(states), std::move(update));
    std::vector<Partition> trimmed(filt.levels().begin(),
                                   filt.levels().begin() + h.steps);
    return ClockSystem(ClockKind::stochastic, h, std::move(system), std::move(level),
                       std::move(groups), space, Filtration(std::move(trimmed)),
                       std::move(state_point));
}

ClockSystem build_nondet_linear_clock(const FinSet& omega, Horizon h) {
    if (omega.empty()) {
        throw ValidityError("nondeterministic clock needs a non-empty seed set");
    }
    std::vector<std::vector<Label>> current = {{}};
    std::vector<std::vector<Label>> all = current;
    for (int len = 1; len <= h.steps; ++len) {
        std::vector<std::vector<Label>> next;
        for (const auto& w : current) {
            for (const Label& seed : omega) {
                auto ext = w;
                ext.push_back(seed);
                next.push_back(std::move(ext));
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        current = std::move(next);
    }

    std::vector<Label> labels;
    std::map<Label, int> level;
    std::vector<StateGroup> groups;
    for (const auto& w : all) {
        const Label state = seed_list_label(w);
        labels.push_back(state);
        level[state] = static_cast<int>(w.size());
        groups.push_back(StateGroup{{state}, static_cast<int>(w.size()), true});
    }
    FinSet states(labels);

    std::map<std::pair<Label, Label>, MonadValue> update;
    for (const auto& w : all) {
        const Label state = seed_list_label(w);
        if (static_cast<int>(w.size()) == h.steps) {
            update.emplace(std::make_pair(state, Label("*")), Subset({state}));
            continue;
        }
        std::set<Label> successors;
        for (const Label& seed : omega) {
            auto ext = w;
            ext.push_back(seed);
            successors.insert(seed_list_label(ext));
        }
        update.emplace(std::make_pair(state, Label("*")), Subset(std::move(successors)));
    }

    MonadicSystem system(MonadTag::power, states, closed_arena(states),
                         identity_on(states), std::move(update));
    return ClockSystem(ClockKind::nondet_linear, h, std::move(system),
                       std::move(level), std::move(groups), std::nullopt,
                       std::nullopt, {});
}

ClockSystem build_graph_clock(const Graph& g, const FinSet& omega, Horizon h) {
    if (omega.empty()) {
        throw ValidityError("graph clock needs a non-empty seed set");
    }
    struct Path {
        Label start;
        std::vector<std::pair<Label, Label>> steps;
        const Label& end(const Graph& g) const {
            return steps.empty() ? start : g.endpoints.at(steps.back().first).second;
        }
    };
    std::vector<Path> current;
    for (const Label& v : g.nodes) {
        current.push_back(Path{v, {}});
    }
    std::vector<Path> all = current;
    for (int len = 1; len <= h.steps; ++len) {
        std::vector<Path> next;
        for (const auto& p : current) {
            for (const Label& e : g.edges_from(p.end(g))) {
                for (const Label& seed : omega) {
                    Path q = p;
                    q.steps.emplace_back(e, seed);
                    next.push_back(std::move(q));
                }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        current = std::move(next);
    }

    std::vector<Label> labels;
    std::map<Label, int> level;
    std::vector<StateGroup> groups;
    for (const auto& p : all) {
        const Label state = decorated_path_label(p.start, p.steps);
        labels.push_back(state);
        level[state] = static_cast<int>(p.steps.size());
        groups.push_back(StateGroup{{state}, static_cast<int>(p.steps.size()), true});
    }
    FinSet states(labels);

    std::map<std::pair<Label, Label>, MonadValue> update;
    for (const auto& p : all) {
        const Label state = decorated_path_label(p.start, p.steps);
        if (static_cast<int>(p.steps.size()) == h.steps) {
            update.emplace(std::make_pair(state, Label("*")), Subset({state}));
            continue;
        }
        std::set<Label> successors;
        for (const Label& e : g.edges_from(p.end(g))) {
            for (const Label& seed : omega) {
                auto steps = p.steps;
                steps.emplace_back(e, seed);
                successors.insert(decorated_path_label(p.start, steps));
            }
        }
        update.emplace(std::make_pair(state, Label("*")), Subset(std::move(successors)));
    }

    MonadicSystem system(MonadTag::power, states, closed_arena(states),
                         identity_on(states), std::move(update));
    return ClockSystem(ClockKind::graph, h, std::move(system), std::move(level),
                       std::move(groups), std::nullopt, std::nullopt, {});
}

} // namespace clockwork
