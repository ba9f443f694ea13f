#include "clockwork/system.hpp"

#include <algorithm>

#include "clockwork/errors.hpp"

namespace clockwork {

namespace {

Kernel build_update_kernel(const FinSet& states, const Arena& arena, MonadTag tag,
                           std::map<std::pair<Label, Label>, MonadValue> update) {
    std::map<Label, MonadValue> table;
    for (auto& [key, value] : update) {
        if (!states.contains(key.first)) {
            throw ValidityError("update key state '" + key.first + "' is unknown");
        }
        if (!arena.dir.contains(key.second)) {
            throw ValidityError("update key direction '" + key.second + "' is unknown");
        }
        table.emplace(pair_label(key.first, key.second), std::move(value));
    }
    return Kernel(product(states, arena.dir), states, tag, std::move(table));
}

} // namespace

MonadicSystem::MonadicSystem(MonadTag tag, FinSet states, Arena arena, Fn readout,
                             std::map<std::pair<Label, Label>, MonadValue> update)
    : tag_(tag), states_(std::move(states)), arena_(std::move(arena)),
      readout_(std::move(readout)),
      update_(build_update_kernel(states_, arena_, tag_, std::move(update))) {
    validate_fn(readout_, states_, arena_.pos, "system readout");
}

const Label& MonadicSystem::readout_at(const Label& state) const {
    auto it = readout_.find(state);
    if (it == readout_.end()) {
        throw DomainError("readout: unknown state '" + state + "'");
    }
    return it->second;
}

const MonadValue& MonadicSystem::update_at(const Label& state,
                                           const Label& dir) const {
    return update_.at(pair_label(state, dir));
}

SystemMorphism identity_morphism(const MonadicSystem& s) {
    auto shared = std::make_shared<MonadicSystem>(s);
    Fn id;
    for (const Label& x : s.states()) id[x] = x;
    return SystemMorphism{shared, shared, std::move(id), identity_chart(s.arena())};
}

bool check_system_morphism(const SystemMorphism& m) {
    const MonadicSystem& s = *m.src;
    const MonadicSystem& t = *m.dst;
    if (s.tag() != t.tag()) {
        throw ShapeError("system morphism: monad tags differ");
    }
    if (!(m.chart.src() == s.arena()) || !(m.chart.dst() == t.arena())) {
        throw ShapeError("system morphism: chart endpoints do not match the arenas");
    }
    validate_fn(m.state_map, s.states(), t.states(), "system morphism state map");
    for (const Label& x : s.states()) {
        const Label& mapped = m.state_map.at(x);
        if (m.chart.fwd_at(s.readout_at(x)) != t.readout_at(mapped)) {
            return false;
        }
        for (const Label& d : s.arena().dir) {
            MonadValue lhs = monad_map(m.state_map, s.update_at(x, d));
            const MonadValue& rhs =
                t.update_at(mapped, m.chart.flat_at(s.readout_at(x), d));
            if (!(lhs == rhs)) {
                return false;
            }
        }
    }
    return true;
}

SystemMorphism compose_system_morphisms(const SystemMorphism& outer,
                                        const SystemMorphism& inner) {
    if (!(*inner.dst == *outer.src)) {
        throw ShapeError("system morphism composition: endpoints do not align");
    }
    Fn state_map;
    for (const auto& [x, y] : inner.state_map) {
        state_map[x] = outer.state_map.at(y);
    }
    return SystemMorphism{inner.src, outer.dst, std::move(state_map),
                          compose_charts(outer.chart, inner.chart)};
}

std::vector<SystemMorphism> enumerate_system_morphisms(
    const MonadicSystem& src, const MonadicSystem& dst, const EnumOptions& opts) {
    if (src.tag() != dst.tag()) {
        throw ShapeError("morphism enumeration: monad tags differ");
    }
    const auto& x1 = src.states().labels();
    const auto& p1 = src.arena().pos.labels();
    const auto& d1 = src.arena().dir.labels();
    const std::uint64_t nx = dst.states().size();
    const std::uint64_t np = dst.arena().pos.size();
    const std::uint64_t nd = dst.arena().dir.size();

    std::vector<std::uint64_t> radices;
    radices.insert(radices.end(), x1.size(), nx);
    radices.insert(radices.end(), p1.size(), np);
    radices.insert(radices.end(), d1.size() * p1.size(), nd);
    const std::uint64_t total =
        candidate_count(radices, opts, "enumerate_system_morphisms");

    auto src_ptr = std::make_shared<const MonadicSystem>(src);
    auto dst_ptr = std::make_shared<const MonadicSystem>(dst);

    auto decode = [&](std::uint64_t index) {
        std::vector<std::uint64_t> digits;
        decode_mixed_radix(index, radices, digits);
        std::size_t slot = 0;
        Fn state_map;
        for (const Label& x : x1) {
            state_map[x] = dst.states().at(digits[slot++]);
        }
        Fn fwd;
        for (const Label& p : p1) {
            fwd[p] = dst.arena().pos.at(digits[slot++]);
        }
        PairFn flat;
        for (const Label& p : p1) {
            for (const Label& d : d1) {
                flat[{p, d}] = dst.arena().dir.at(digits[slot++]);
            }
        }
        return SystemMorphism{src_ptr, dst_ptr, std::move(state_map),
                              Chart(src.arena(), dst.arena(), std::move(fwd),
                                    std::move(flat))};
    };

    auto hits = filter_candidates(total, opts, [&](std::uint64_t index) {
        return check_system_morphism(decode(index));
    });
    std::vector<SystemMorphism> out;
    out.reserve(hits.size());
    for (std::uint64_t index : hits) {
        out.push_back(decode(index));
    }
    return out;
}

MonadicSystem compose_system_with_lens(const MonadicSystem& s, const Lens& l) {
    if (!(s.arena() == l.src())) {
        throw ShapeError("compose with lens: system arena differs from lens source");
    }
    Fn readout;
    std::map<std::pair<Label, Label>, MonadValue> update;
    for (const Label& x : s.states()) {
        readout[x] = l.fwd_at(s.readout_at(x));
        for (const Label& dB : l.dst().dir) {
            update.emplace(std::make_pair(x, dB),
                           s.update_at(x, l.sharp_at(s.readout_at(x), dB)));
        }
    }
    return MonadicSystem(s.tag(), s.states(), l.dst(), std::move(readout),
                         std::move(update));
}

namespace {

Label rename(const Fn& names, const Label& l) {
    auto it = names.find(l);
    if (it == names.end()) {
        throw DomainError("relabeling has no entry for '" + l + "'");
    }
    return it->second;
}

} // namespace

MonadicSystem relabel_system(const MonadicSystem& s, const Fn& state_names,
                             const Fn& pos_names, const Fn& dir_names) {
    std::vector<Label> states, pos, dir;
    for (const Label& x : s.states()) states.push_back(rename(state_names, x));
    for (const Label& p : s.arena().pos) pos.push_back(rename(pos_names, p));
    for (const Label& d : s.arena().dir) dir.push_back(rename(dir_names, d));

    Fn readout;
    for (const Label& x : s.states()) {
        readout[rename(state_names, x)] = rename(pos_names, s.readout_at(x));
    }
    std::map<std::pair<Label, Label>, MonadValue> update;
    for (const Label& x : s.states()) {
        for (const Label& d : s.arena().dir) {
            update.emplace(
                std::make_pair(rename(state_names, x), rename(dir_names, d)),
                monad_map(state_names, s.update_at(x, d)));
        }
    }
    return MonadicSystem(s.tag(), FinSet(std::move(states)),
                         Arena(FinSet(std::move(pos)), FinSet(std::move(dir))),
                         std::move(readout), std::move(update));
}

} // namespace clockwork
