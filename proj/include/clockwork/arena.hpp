#pragma once

#include <map>
#include <utility>

#include "clockwork/finset.hpp"

namespace clockwork {

/// An interface: positions (outputs, A+) and directions (inputs, A-).
struct Arena {
    Arena() = default;
    Arena(FinSet positions, FinSet directions);

    FinSet pos;
    FinSet dir;

    friend bool operator==(const Arena& a, const Arena& b) {
        return a.pos == b.pos && a.dir == b.dir;
    }
};

using PairFn = std::map<std::pair<Label, Label>, Label>;

/// Interface morphism: positions push forward, and directions push forward
/// over a source position. flat is keyed by (src position, src direction).
class Chart {
public:
    Chart(Arena src, Arena dst, Fn fwd, PairFn flat);

    const Arena& src() const { return src_; }
    const Arena& dst() const { return dst_; }
    const Fn& fwd() const { return fwd_; }
    const PairFn& flat() const { return flat_; }

    const Label& fwd_at(const Label& p) const;
    const Label& flat_at(const Label& p, const Label& d) const;

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.fwd_ == b.fwd_ &&
               a.flat_ == b.flat_;
    }
    friend bool operator<(const Chart& a, const Chart& b) {
        if (a.fwd_ != b.fwd_) return a.fwd_ < b.fwd_;
        return a.flat_ < b.flat_;
    }

private:
    Arena src_;
    Arena dst_;
    Fn fwd_;
    PairFn flat_;
};

/// Composition pattern: positions push forward, directions pull back.
/// sharp is keyed by (src position, dst direction).
class Lens {
public:
    Lens(Arena src, Arena dst, Fn fwd, PairFn sharp);

    const Arena& src() const { return src_; }
    const Arena& dst() const { return dst_; }
    const Fn& fwd() const { return fwd_; }
    const PairFn& sharp() const { return sharp_; }

    const Label& fwd_at(const Label& p) const;
    const Label& sharp_at(const Label& p, const Label& d) const;

    friend bool operator==(const Lens& a, const Lens& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.fwd_ == b.fwd_ &&
               a.sharp_ == b.sharp_;
    }

private:
    Arena src_;
    Arena dst_;
    Fn fwd_;
    PairFn sharp_;
};

Chart identity_chart(const Arena& a);
Lens identity_lens(const Arena& a);

/// fwd = g.fwd after f.fwd; flat feeds f's output position into g.
Chart compose_charts(const Chart& g, const Chart& f);

/// fwd = g.fwd after f.fwd; sharp pulls a C-direction back through g then f.
Lens compose_lenses(const Lens& g, const Lens& f);

/// The two commutativity conditions for a square with lenses f1 (top), f2
/// (bottom) and charts a (left), b (right):
///   (i)  b.fwd(f1.fwd(p)) = f2.fwd(a.fwd(p))
///   (ii) a.flat(p, f1.sharp(p, d)) = f2.sharp(a.fwd(p), b.flat(f1.fwd(p), d))
/// quantified over p in A1.pos and d in B1.dir.
bool check_lens_chart_square(const Lens& f1, const Lens& f2, const Chart& a,
                             const Chart& b);

} // namespace clockwork
