#include "clockwork/behavior.hpp"

#include <algorithm>
#include <sstream>

#include "clockwork/errors.hpp"

namespace clockwork {

namespace {

const Label kStar = "*";

/// The space of level-wise measurable morphism candidates out of a clock:
/// one (state, position, direction) value per state group.
struct CandidateSpace {
    const ClockSystem* clock;
    const MonadicSystem* sys;
    std::vector<std::uint64_t> radices;
    std::uint64_t total = 0;

    CandidateSpace(const ClockSystem& c, const MonadicSystem& s,
                   const EnumOptions& opts, const std::string& what)
        : clock(&c), sys(&s) {
        const std::uint64_t nx = s.states().size();
        const std::uint64_t np = s.arena().pos.size();
        const std::uint64_t nd = s.arena().dir.size();
        for (std::size_t g = 0; g < c.groups().size(); ++g) {
            radices.push_back(nx);
            radices.push_back(np);
            radices.push_back(nd);
        }
        total = candidate_count(radices, opts, what);
    }

    struct Tables {
        Fn state_map;
        Fn fwd;
        PairFn flat;
    };

    Tables decode(std::uint64_t index) const {
        std::vector<std::uint64_t> digits;
        decode_mixed_radix(index, radices, digits);
        Tables t;
        const auto& groups = clock->groups();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const Label& xv = sys->states().at(digits[3 * g]);
            const Label& pv = sys->arena().pos.at(digits[3 * g + 1]);
            const Label& dv = sys->arena().dir.at(digits[3 * g + 2]);
            for (const Label& st : groups[g].states) {
                t.state_map[st] = xv;
                t.fwd[st] = pv;
                t.flat[{st, kStar}] = dv;
            }
        }
        return t;
    }
};

/// Square (i) at every positive group, square (ii) at non-absorbing positive
/// groups, with exact equality after pushing the clock update forward.
bool truncated_squares_pass(const ClockSystem& clock, const MonadicSystem& s,
                            const Fn& state_map, const Fn& fwd, const PairFn& flat) {
    for (const StateGroup& g : clock.groups()) {
        if (!g.positive) continue;
        const Label& rep = g.states.front();
        const Label& x = state_map.at(rep);
        if (fwd.at(rep) != s.readout_at(x)) {
            return false;
        }
        if (g.level < clock.horizon().steps) {
            MonadValue lhs = monad_map(state_map, clock.system().update_at(rep, kStar));
            const MonadValue& rhs = s.update_at(x, flat.at({rep, kStar}));
            if (!(lhs == rhs)) {
                return false;
            }
        }
    }
    return true;
}

/// The deterministic recurrence, evaluated on the sequences a candidate
/// names (one state per clock level).
bool det_run_predicate(const ClockSystem& clock, const MonadicSystem& s,
                       const std::vector<Label>& level_state, const Fn& state_map,
                       const Fn& fwd, const PairFn& flat) {
    const int T = clock.horizon().steps;
    for (int i = 1; i <= T; ++i) {
        const Label& st = level_state[i - 1];
        const Label& x = state_map.at(st);
        if (fwd.at(st) != s.readout_at(x)) {
            return false;
        }
        if (i < T) {
            const Label& next = state_map.at(level_state[i]);
            const MonadValue& step = s.update_at(x, flat.at({st, kStar}));
            if (std::get<Label>(step) != next) {
                return false;
            }
        }
    }
    return true;
}

/// The conditional-law conditions from the stochastic behavior definition,
/// computed directly through conditional_probability (independent of the
/// clock's materialized update rows).
bool stoch_law_predicate(const ClockSystem& clock, const MonadicSystem& s,
                         const Fn& state_map, const Fn& fwd, const PairFn& flat) {
    const FinProbSpace& space = *clock.space();
    const Filtration& filt = *clock.filtration();
    const int T = clock.horizon().steps;
    for (const StateGroup& g : clock.groups()) {
        if (!g.positive) continue;
        const Label& rep = g.states.front();
        if (fwd.at(rep) != s.readout_at(state_map.at(rep))) {
            return false;
        }
    }
    for (int i = 1; i < T; ++i) {
        Fn next;
        for (const Label& w : space.omega()) {
            next[w] = state_map.at(leveled_point_label(i + 1, w));
        }
        const auto cond = conditional_probability(space, filt.level(i), next);
        for (const StateGroup& g : clock.groups()) {
            if (!g.positive || g.level != i) continue;
            const Label& rep = g.states.front();
            const Label& w = clock.state_point().at(rep);
            const Dist& rhs =
                std::get<Dist>(s.update_at(state_map.at(rep), flat.at({rep, kStar})));
            if (!(cond.at(w) == rhs)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Label> det_level_states(const ClockSystem& clock) {
    const int T = clock.horizon().steps;
    std::vector<Label> out(T);
    std::vector<int> seen(T + 1, 0);
    for (const Label& st : clock.system().states()) {
        const int lvl = clock.level_of(st);
        if (lvl >= 1 && lvl <= T) {
            out[lvl - 1] = st;
            ++seen[lvl];
        }
    }
    for (int i = 1; i <= T; ++i) {
        if (seen[i] != 1) {
            throw ShapeError("clock does not have exactly one state per level");
        }
    }
    return out;
}

std::string render_candidate(const CandidateSpace::Tables& t) {
    std::ostringstream os;
    os << "state_map:";
    for (const auto& [k, v] : t.state_map) os << " " << k << "->" << v;
    os << "\nchart.fwd:";
    for (const auto& [k, v] : t.fwd) os << " " << k << "->" << v;
    os << "\nchart.flat:";
    for (const auto& [k, v] : t.flat) os << " " << k.first << "->" << v;
    return os.str();
}

} // namespace

std::vector<DetBehavior> enumerate_det_behaviors(const MonadicSystem& s, Horizon h,
                                                 const EnumOptions& opts) {
    if (s.tag() != MonadTag::identity) {
        throw TagError("deterministic behavior enumeration needs an identity-tag "
                       "system, got " + to_string(s.tag()));
    }
    const std::uint64_t nd = s.arena().dir.size();
    std::vector<std::uint64_t> radices{s.states().size()};
    radices.insert(radices.end(), static_cast<std::size_t>(h.steps), nd);
    const std::uint64_t total =
        candidate_count(radices, opts, "enumerate_det_behaviors");

    std::vector<DetBehavior> out;
    out.reserve(total);
    std::vector<std::uint64_t> digits;
    for (std::uint64_t index = 0; index < total; ++index) {
        decode_mixed_radix(index, radices, digits);
        DetBehavior b;
        Label x = s.states().at(digits[0]);
        for (int i = 1; i <= h.steps; ++i) {
            const Label& d = s.arena().dir.at(digits[static_cast<std::size_t>(i)]);
            b.xs.push_back(x);
            b.outs.push_back(s.readout_at(x));
            b.ins.push_back(d);
            if (i < h.steps) {
                x = std::get<Label>(s.update_at(x, d));
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

bool check_det_behavior(const MonadicSystem& s, const DetBehavior& b) {
    if (s.tag() != MonadTag::identity) {
        throw TagError("deterministic behavior check needs an identity-tag system");
    }
    const std::size_t T = b.xs.size();
    if (T == 0 || b.outs.size() != T || b.ins.size() != T) {
        throw ShapeError("behavior components must have equal positive length");
    }
    for (std::size_t i = 0; i < T; ++i) {
        if (b.outs[i] != s.readout_at(b.xs[i])) {
            return false;
        }
        if (i + 1 < T) {
            if (std::get<Label>(s.update_at(b.xs[i], b.ins[i])) != b.xs[i + 1]) {
                return false;
            }
        } else {
            s.arena().dir.index_of(b.ins[i]); // final input only needs to exist
        }
    }
    return true;
}

bool check_stoch_behavior(const MonadicSystem& s, const StochBehavior& b) {
    if (s.tag() != MonadTag::dist) {
        throw TagError("stochastic behavior check needs a dist-tag system");
    }
    if (!(b.xs.target == s.states()) || !(b.outs.target == s.arena().pos) ||
        !(b.ins.target == s.arena().dir)) {
        throw ShapeError("behavior process targets do not match the system");
    }
    const std::size_t T = b.xs.steps.size();
    if (T == 0 || b.outs.steps.size() != T || b.ins.steps.size() != T) {
        throw ShapeError("behavior processes must have equal positive length");
    }
    require_adapted(b.xs, b.space, b.filt, "state process");
    require_adapted(b.outs, b.space, b.filt, "output process");
    require_adapted(b.ins, b.space, b.filt, "input process");

    for (std::size_t i = 1; i <= T; ++i) {
        for (const Label& w : b.space.omega()) {
            if (!b.space.positive(w)) continue;
            if (b.outs.steps[i - 1].at(w) != s.readout_at(b.xs.steps[i - 1].at(w))) {
                return false;
            }
        }
    }
    for (std::size_t i = 1; i < T; ++i) {
        const auto cond =
            conditional_probability(b.space, b.filt.level(i), b.xs.steps[i]);
        for (const Label& w : b.space.omega()) {
            if (!b.space.positive(w)) continue;
            const Dist& rhs = std::get<Dist>(
                s.update_at(b.xs.steps[i - 1].at(w), b.ins.steps[i - 1].at(w)));
            if (!(cond.at(w) == rhs)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<StochBehavior> enumerate_stoch_behaviors(const MonadicSystem& s,
                                                     const FinProbSpace& space,
                                                     const Filtration& filt,
                                                     Horizon h,
                                                     const EnumOptions& opts) {
    ClockSystem clock = build_stochastic_clock(space, filt, h);
    auto morphisms = enumerate_truncated_clock_morphisms(clock, s, opts);
    std::vector<StochBehavior> out;
    out.reserve(morphisms.size());
    for (const auto& m : morphisms) {
        out.push_back(to_stoch_behavior(clock, m));
    }
    return out;
}

bool check_truncated_clock_morphism(const ClockSystem& clock,
                                    const MonadicSystem& s, const Fn& state_map,
                                    const Chart& chart) {
    if (clock.system().tag() != s.tag()) {
        throw ShapeError("clock morphism: monad tags differ");
    }
    if (!(chart.src() == clock.system().arena()) || !(chart.dst() == s.arena())) {
        throw ShapeError("clock morphism: chart endpoints do not align");
    }
    validate_fn(state_map, clock.system().states(), s.states(),
                "clock morphism state map");
    // Level-wise measurability: every component is constant on every group.
    for (const StateGroup& g : clock.groups()) {
        const Label& rep = g.states.front();
        for (const Label& st : g.states) {
            if (state_map.at(st) != state_map.at(rep) ||
                chart.fwd_at(st) != chart.fwd_at(rep) ||
                chart.flat_at(st, kStar) != chart.flat_at(rep, kStar)) {
                return false;
            }
        }
    }
    Fn fwd = chart.fwd();
    PairFn flat = chart.flat();
    return truncated_squares_pass(clock, s, state_map, fwd, flat);
}

std::vector<SystemMorphism> enumerate_truncated_clock_morphisms(
    const ClockSystem& clock, const MonadicSystem& s, const EnumOptions& opts) {
    if (clock.system().tag() != s.tag()) {
        throw ShapeError("clock morphism enumeration: monad tags differ");
    }
    CandidateSpace space(clock, s, opts, "enumerate_truncated_clock_morphisms");
    auto hits = filter_candidates(space.total, opts, [&](std::uint64_t index) {
        auto t = space.decode(index);
        return truncated_squares_pass(clock, s, t.state_map, t.fwd, t.flat);
    });
    auto src = std::make_shared<const MonadicSystem>(clock.system());
    auto dst = std::make_shared<const MonadicSystem>(s);
    std::vector<SystemMorphism> out;
    out.reserve(hits.size());
    for (std::uint64_t index : hits) {
        auto t = space.decode(index);
        out.push_back(SystemMorphism{
            src, dst, std::move(t.state_map),
            Chart(clock.system().arena(), s.arena(), std::move(t.fwd),
                  std::move(t.flat))});
    }
    return out;
}

DetBehavior to_det_behavior(const ClockSystem& clock, const SystemMorphism& m) {
    const auto level_state = det_level_states(clock);
    DetBehavior b;
    for (const Label& st : level_state) {
        b.xs.push_back(m.state_map.at(st));
        b.outs.push_back(m.chart.fwd_at(st));
        b.ins.push_back(m.chart.flat_at(st, kStar));
    }
    return b;
}

StochBehavior to_stoch_behavior(const ClockSystem& clock, const SystemMorphism& m) {
    if (clock.kind() != ClockKind::stochastic) {
        throw ShapeError("stochastic translation needs a stochastic clock");
    }
    const FinProbSpace& space = *clock.space();
    const MonadicSystem& s = *m.dst;
    AdaptedProcess xs{s.states(), {}};
    AdaptedProcess outs{s.arena().pos, {}};
    AdaptedProcess ins{s.arena().dir, {}};
    for (int i = 1; i <= clock.horizon().steps; ++i) {
        Fn xstep, ostep, istep;
        for (const Label& w : space.omega()) {
            const Label st = leveled_point_label(i, w);
            xstep[w] = m.state_map.at(st);
            ostep[w] = m.chart.fwd_at(st);
            istep[w] = m.chart.flat_at(st, kStar);
        }
        xs.steps.push_back(std::move(xstep));
        outs.steps.push_back(std::move(ostep));
        ins.steps.push_back(std::move(istep));
    }
    return StochBehavior{space, *clock.filtration(), std::move(xs), std::move(outs),
                         std::move(ins)};
}

std::string RepresentabilityReport::to_text() const {
    std::ostringstream os;
    os << "theory: " << to_string(tag) << ", clock: " << to_string(kind)
       << ", horizon: " << horizon << "\n";
    os << "candidates: " << candidates << "\n";
    os << "clock morphisms: " << morphism_count << "\n";
    os << "behaviors: " << behavior_count << "\n";
    if (oracle_count || tag == MonadTag::identity) {
        os << "oracle enumeration: " << oracle_count << "\n";
    }
    os << "membership predicates agree: " << (predicates_agree ? "yes" : "NO") << "\n";
    os << "oracle set matches: " << (oracle_matches ? "yes" : "NO") << "\n";
    os << "bijection: " << (bijection ? "holds" : "FAILS") << "\n";
    if (!witness.empty()) {
        os << "witness:\n" << witness << "\n";
    }
    return os.str();
}

RepresentabilityReport check_representability(const ClockSystem& clock,
                                              const MonadicSystem& s,
                                              const EnumOptions& opts) {
    if (clock.system().tag() != s.tag()) {
        throw ShapeError("representability check: monad tags differ");
    }
    RepresentabilityReport report;
    report.tag = s.tag();
    report.kind = clock.kind();
    report.horizon = clock.horizon().steps;

    CandidateSpace space(clock, s, opts, "check_representability");
    report.candidates = space.total;

    std::vector<Label> level_state;
    if (clock.kind() == ClockKind::deterministic) {
        level_state = det_level_states(clock);
    }

    auto eval = [&](std::uint64_t index) -> std::pair<bool, bool> {
        auto t = space.decode(index);
        const bool as_morphism =
            truncated_squares_pass(clock, s, t.state_map, t.fwd, t.flat);
        bool as_behavior = false;
        switch (clock.kind()) {
            case ClockKind::deterministic:
                as_behavior = det_run_predicate(clock, s, level_state, t.state_map,
                                                t.fwd, t.flat);
                break;
            case ClockKind::stochastic:
                as_behavior = stoch_law_predicate(clock, s, t.state_map, t.fwd, t.flat);
                break;
            case ClockKind::nondet_linear:
            case ClockKind::graph:
                // Behaviors are defined as clock morphisms here; this arm is a
                // definitional smoke test.
                as_behavior =
                    truncated_squares_pass(clock, s, t.state_map, t.fwd, t.flat);
                break;
        }
        return {as_morphism, as_behavior};
    };

    const ScanResult scan = scan_candidates(space.total, opts, eval);
    report.morphism_count = scan.first_count;
    report.behavior_count = scan.second_count;
    report.predicates_agree = !scan.first_disagreement.has_value();
    if (scan.first_disagreement) {
        auto t = space.decode(*scan.first_disagreement);
        auto [as_m, as_b] = eval(*scan.first_disagreement);
        std::ostringstream os;
        os << "candidate " << *scan.first_disagreement << " passes "
           << (as_m ? "the morphism squares" : "the behavior conditions")
           << " but not " << (as_m ? "the behavior conditions" : "the morphism squares")
           << "\n" << render_candidate(t);
        report.witness = os.str();
    }

    if (clock.kind() == ClockKind::deterministic) {
        auto oracle = enumerate_det_behaviors(s, clock.horizon(), opts);
        std::sort(oracle.begin(), oracle.end());
        std::vector<DetBehavior> translated;
        auto hits = filter_candidates(space.total, opts, [&](std::uint64_t index) {
            auto t = space.decode(index);
            return truncated_squares_pass(clock, s, t.state_map, t.fwd, t.flat);
        });
        for (std::uint64_t index : hits) {
            auto t = space.decode(index);
            DetBehavior b;
            for (const Label& st : level_state) {
                b.xs.push_back(t.state_map.at(st));
                b.outs.push_back(t.fwd.at(st));
                b.ins.push_back(t.flat.at({st, kStar}));
            }
            translated.push_back(std::move(b));
        }
        std::sort(translated.begin(), translated.end());
        report.oracle_count = oracle.size();
        report.oracle_matches = (translated == oracle);
        if (!report.oracle_matches && report.witness.empty()) {
            report.witness = "translated morphism set differs from the forward-"
                             "simulation enumeration";
        }
    } else {
        report.oracle_count = report.behavior_count;
        report.oracle_matches = true;
    }

    report.bijection = report.predicates_agree && report.oracle_matches &&
                       report.morphism_count == report.behavior_count;
    return report;
}

DetBehavior pushforward_behavior(const SystemMorphism& m, const DetBehavior& b) {
    if (!check_system_morphism(m)) {
        throw ValidityError("pushforward needs a commuting system morphism");
    }
    if (!check_det_behavior(*m.src, b)) {
        throw ValidityError("pushforward input is not a behavior of the source");
    }
    DetBehavior out;
    for (std::size_t i = 0; i < b.xs.size(); ++i) {
        out.xs.push_back(m.state_map.at(b.xs[i]));
        out.outs.push_back(m.chart.fwd_at(b.outs[i]));
        out.ins.push_back(m.chart.flat_at(b.outs[i], b.ins[i]));
    }
    return out;
}

StochBehavior pushforward_behavior(const SystemMorphism& m, const StochBehavior& b) {
    if (!check_system_morphism(m)) {
        throw ValidityError("pushforward needs a commuting system morphism");
    }
    if (!check_stoch_behavior(*m.src, b)) {
        throw ValidityError("pushforward input is not a behavior of the source");
    }
    const MonadicSystem& t = *m.dst;
    StochBehavior out{b.space, b.filt, AdaptedProcess{t.states(), {}},
                      AdaptedProcess{t.arena().pos, {}},
                      AdaptedProcess{t.arena().dir, {}}};
    for (std::size_t i = 0; i < b.xs.steps.size(); ++i) {
        Fn xstep, ostep, istep;
        for (const Label& w : b.space.omega()) {
            const Label& p = b.outs.steps[i].at(w);
            xstep[w] = m.state_map.at(b.xs.steps[i].at(w));
            ostep[w] = m.chart.fwd_at(p);
            istep[w] = m.chart.flat_at(p, b.ins.steps[i].at(w));
        }
        out.xs.steps.push_back(std::move(xstep));
        out.outs.steps.push_back(std::move(ostep));
        out.ins.steps.push_back(std::move(istep));
    }
    return out;
}

SystemMorphism pushforward_behavior(const SystemMorphism& m, const SystemMorphism& b,
                                    const ClockSystem& clock) {
    if (!check_system_morphism(m)) {
        throw ValidityError("pushforward needs a commuting system morphism");
    }
    if (!(*b.dst == *m.src)) {
        throw ShapeError("pushforward: behavior lands in a different system");
    }
    if (!check_truncated_clock_morphism(clock, *b.dst, b.state_map, b.chart)) {
        throw ValidityError("pushforward input is not a clock morphism");
    }
    return compose_system_morphisms(m, b);
}

std::vector<Chart> enumerate_interface_charts(const ClockSystem& clock,
                                              const Arena& target,
                                              const EnumOptions& opts) {
    const Arena& iface = clock.system().arena();
    const std::uint64_t np = target.pos.size();
    const std::uint64_t nd = target.dir.size();
    std::vector<std::uint64_t> radices;
    for (std::size_t g = 0; g < clock.groups().size(); ++g) {
        radices.push_back(np);
        radices.push_back(nd);
    }
    const std::uint64_t total =
        candidate_count(radices, opts, "enumerate_interface_charts");
    std::vector<Chart> out;
    out.reserve(total);
    std::vector<std::uint64_t> digits;
    for (std::uint64_t index = 0; index < total; ++index) {
        decode_mixed_radix(index, radices, digits);
        Fn fwd;
        PairFn flat;
        const auto& groups = clock.groups();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const Label& pv = target.pos.at(digits[2 * g]);
            const Label& dv = target.dir.at(digits[2 * g + 1]);
            for (const Label& st : groups[g].states) {
                fwd[st] = pv;
                flat[{st, kStar}] = dv;
            }
        }
        out.emplace_back(iface, target, std::move(fwd), std::move(flat));
    }
    return out;
}

std::vector<BehaviorRelationEntry> behavior_relation(const Lens& l,
                                                     const ClockSystem& clock,
                                                     const EnumOptions& opts) {
    auto lefts = enumerate_interface_charts(clock, l.src(), opts);
    auto rights = enumerate_interface_charts(clock, l.dst(), opts);
    candidate_count({lefts.size(), rights.size()}, opts, "behavior_relation");

    std::vector<BehaviorRelationEntry> out;
    out.reserve(lefts.size() * rights.size());
    for (const Chart& a : lefts) {
        for (const Chart& b : rights) {
            bool related = true;
            for (const StateGroup& g : clock.groups()) {
                if (!g.positive) continue;
                const Label& p = g.states.front();
                if (b.fwd_at(p) != l.fwd_at(a.fwd_at(p)) ||
                    a.flat_at(p, kStar) !=
                        l.sharp_at(a.fwd_at(p), b.flat_at(p, kStar))) {
                    related = false;
                    break;
                }
            }
            out.push_back(BehaviorRelationEntry{a, b, related});
        }
    }
    return out;
}

} // namespace clockwork
