#include "clockwork/arena.hpp"

#include "clockwork/errors.hpp"

namespace clockwork {

Arena::Arena(FinSet positions, FinSet directions)
    : pos(std::move(positions)), dir(std::move(directions)) {
    if (pos.empty()) {
        throw ValidityError("arena needs at least one position");
    }
    if (dir.empty()) {
        throw ValidityError("arena needs at least one direction");
    }
}

namespace {

void validate_pair_fn(const PairFn& f, const FinSet& first, const FinSet& second,
                      const FinSet& codomain, const std::string& what) {
    for (const auto& [key, v] : f) {
        if (!first.contains(key.first) || !second.contains(key.second)) {
            throw ValidityError(what + ": key (" + key.first + "," + key.second +
                                ") is outside the domain");
        }
        if (!codomain.contains(v)) {
            throw ValidityError(what + ": value '" + v + "' is outside the codomain");
        }
    }
    if (f.size() != first.size() * second.size()) {
        throw ValidityError(what + ": table is not total (" +
                            std::to_string(f.size()) + " of " +
                            std::to_string(first.size() * second.size()) +
                            " entries)");
    }
}

const Label& pair_at(const PairFn& f, const Label& a, const Label& b,
                     const std::string& what) {
    auto it = f.find({a, b});
    if (it == f.end()) {
        throw DomainError(what + ": no entry for (" + a + "," + b + ")");
    }
    return it->second;
}

} // namespace

Chart::Chart(Arena src, Arena dst, Fn fwd, PairFn flat)
    : src_(std::move(src)), dst_(std::move(dst)), fwd_(std::move(fwd)),
      flat_(std::move(flat)) {
    validate_fn(fwd_, src_.pos, dst_.pos, "chart fwd");
    validate_pair_fn(flat_, src_.pos, src_.dir, dst_.dir, "chart flat");
}

const Label& Chart::fwd_at(const Label& p) const {
    auto it = fwd_.find(p);
    if (it == fwd_.end()) {
        throw DomainError("chart fwd: no entry for '" + p + "'");
    }
    return it->second;
}

const Label& Chart::flat_at(const Label& p, const Label& d) const {
    return pair_at(flat_, p, d, "chart flat");
}

Lens::Lens(Arena src, Arena dst, Fn fwd, PairFn sharp)
    : src_(std::move(src)), dst_(std::move(dst)), fwd_(std::move(fwd)),
      sharp_(std::move(sharp)) {
    validate_fn(fwd_, src_.pos, dst_.pos, "lens fwd");
    validate_pair_fn(sharp_, src_.pos, dst_.dir, src_.dir, "lens sharp");
}

const Label& Lens::fwd_at(const Label& p) const {
    auto it = fwd_.find(p);
    if (it == fwd_.end()) {
        throw DomainError("lens fwd: no entry for '" + p + "'");
    }
    return it->second;
}

const Label& Lens::sharp_at(const Label& p, const Label& d) const {
    return pair_at(sharp_, p, d, "lens sharp");
}

Chart identity_chart(const Arena& a) {
    Fn fwd;
    PairFn flat;
    for (const Label& p : a.pos) {
        fwd[p] = p;
        for (const Label& d : a.dir) {
            flat[{p, d}] = d;
        }
    }
    return Chart(a, a, std::move(fwd), std::move(flat));
}

Lens identity_lens(const Arena& a) {
    Fn fwd;
    PairFn sharp;
    for (const Label& p : a.pos) {
        fwd[p] = p;
        for (const Label& d : a.dir) {
            sharp[{p, d}] = d;
        }
    }
    return Lens(a, a, std::move(fwd), std::move(sharp));
}

Chart compose_charts(const Chart& g, const Chart& f) {
    if (!(f.dst() == g.src())) {
        throw ShapeError("chart composition: inner codomain differs from outer domain");
    }
    Fn fwd;
    PairFn flat;
    for (const Label& p : f.src().pos) {
        fwd[p] = g.fwd_at(f.fwd_at(p));
        for (const Label& d : f.src().dir) {
            flat[{p, d}] = g.flat_at(f.fwd_at(p), f.flat_at(p, d));
        }
    }
    return Chart(f.src(), g.dst(), std::move(fwd), std::move(flat));
}

Lens compose_lenses(const Lens& g, const Lens& f) {
    if (!(f.dst() == g.src())) {
        throw ShapeError("lens composition: inner codomain differs from outer domain");
    }
    Fn fwd;
    PairFn sharp;
    for (const Label& p : f.src().pos) {
        fwd[p] = g.fwd_at(f.fwd_at(p));
        for (const Label& dC : g.dst().dir) {
            sharp[{p, dC}] = f.sharp_at(p, g.sharp_at(f.fwd_at(p), dC));
        }
    }
    return Lens(f.src(), g.dst(), std::move(fwd), std::move(sharp));
}

bool check_lens_chart_square(const Lens& f1, const Lens& f2, const Chart& a,
                             const Chart& b) {
    if (!(a.src() == f1.src()) || !(a.dst() == f2.src()) ||
        !(b.src() == f1.dst()) || !(b.dst() == f2.dst())) {
        throw ShapeError("lens-chart square: endpoints do not align");
    }
    for (const Label& p : f1.src().pos) {
        if (b.fwd_at(f1.fwd_at(p)) != f2.fwd_at(a.fwd_at(p))) {
            return false;
        }
        for (const Label& d : f1.dst().dir) {
            const Label& lhs = a.flat_at(p, f1.sharp_at(p, d));
            const Label& rhs =
                f2.sharp_at(a.fwd_at(p), b.flat_at(f1.fwd_at(p), d));
            if (lhs != rhs) {
                return false;
            }
        }
    }
    return true;
}

} // namespace clockwork
