#pragma once

#include <map>
#include <memory>
#include <vector>

#include "clockwork/arena.hpp"
#include "clockwork/enumeration.hpp"
#include "clockwork/monad.hpp"

namespace clockwork {

/// A Moore machine branching through the tagged monad: a readout from states
/// to positions and an update kernel from (state, direction) pairs back into
/// monadic values over the states.
class MonadicSystem {
public:
    MonadicSystem(MonadTag tag, FinSet states, Arena arena, Fn readout,
                  std::map<std::pair<Label, Label>, MonadValue> update);

    MonadTag tag() const { return tag_; }
    const FinSet& states() const { return states_; }
    const Arena& arena() const { return arena_; }
    const Fn& readout() const { return readout_; }
    const Kernel& update() const { return update_; }

    const Label& readout_at(const Label& state) const;
    const MonadValue& update_at(const Label& state, const Label& dir) const;

    friend bool operator==(const MonadicSystem& a, const MonadicSystem& b) {
        return a.tag_ == b.tag_ && a.states_ == b.states_ && a.arena_ == b.arena_ &&
               a.readout_ == b.readout_ && a.update_ == b.update_;
    }

private:
    MonadTag tag_;
    FinSet states_;
    Arena arena_;
    Fn readout_;
    Kernel update_;
};

/// Morphism data between two systems of the same tag: a state map plus a
/// chart between their arenas.
struct SystemMorphism {
    std::shared_ptr<const MonadicSystem> src;
    std::shared_ptr<const MonadicSystem> dst;
    Fn state_map;
    Chart chart;
};

SystemMorphism identity_morphism(const MonadicSystem& s);

/// Both commutativity squares, checked strictly at every state/direction:
///   (i)  chart.fwd(readout1(s)) = readout2(state_map(s))
///   (ii) M(state_map)(update1(s,d)) = update2(state_map(s), chart.flat(readout1(s), d))
bool check_system_morphism(const SystemMorphism& m);

SystemMorphism compose_system_morphisms(const SystemMorphism& outer,
                                        const SystemMorphism& inner);

/// Brute-force hom-set oracle: filters every total (state_map, chart.fwd,
/// chart.flat) triple through check_system_morphism. Deterministic order.
std::vector<SystemMorphism> enumerate_system_morphisms(
    const MonadicSystem& src, const MonadicSystem& dst,
    const EnumOptions& opts = {});

/// Wires a lens onto a system's interface: readout becomes l.fwd after the
/// readout, updates pull the new direction back through l.sharp.
MonadicSystem compose_system_with_lens(const MonadicSystem& s, const Lens& l);

/// Rebuilds a system along bijective renamings of its states, positions and
/// directions. Used for structural-equality comparisons between clocks.
MonadicSystem relabel_system(const MonadicSystem& s, const Fn& state_names,
                             const Fn& pos_names, const Fn& dir_names);

} // namespace clockwork
