#include "clockwork/filtration_maps.hpp"

#include <algorithm>
#include <sstream>

#include "clockwork/errors.hpp"

namespace clockwork {

FilteredSpace::FilteredSpace(FinProbSpace space_, Filtration filt_)
    : space(std::move(space_)), filt(std::move(filt_)) {
    for (const Partition& level : filt.levels()) {
        if (!(level.ambient() == space.omega())) {
            throw ValidityError("filtration level is not a partition of the sample space");
        }
    }
}

namespace {

void require_measure_preserving(const FinProbSpace& src, const FinProbSpace& dst,
                                const Fn& map, const std::string& what) {
    validate_fn(map, src.omega(), dst.omega(), what);
    std::map<Label, Rational> pushed;
    for (const Label& w : dst.omega()) pushed[w] = Rational(0);
    for (const Label& w : src.omega()) {
        pushed[map.at(w)] += src.mass(w);
    }
    for (const Label& w : dst.omega()) {
        if (pushed.at(w) != dst.mass(w)) {
            throw ValidityError(what + ": pushforward mass at '" + w + "' is " +
                                pushed.at(w).str() + ", expected " +
                                dst.mass(w).str());
        }
    }
}

} // namespace

FilteredMap::FilteredMap(FilteredSpace src, FilteredSpace dst, Fn map)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
    if (src_.filt.length() != dst_.filt.length()) {
        throw ValidityError("filtered map: filtration lengths differ");
    }
    require_measure_preserving(src_.space, dst_.space, map_, "filtered map");
    for (std::size_t i = 1; i <= src_.filt.length(); ++i) {
        const Partition& fine = src_.filt.level(i);
        const Partition& image = dst_.filt.level(i);
        for (const auto& block : fine.blocks()) {
            const std::size_t target = image.block_index_of(map_.at(block.front()));
            for (const Label& w : block) {
                if (image.block_index_of(map_.at(w)) != target) {
                    throw ValidityError(
                        "filtered map does not preserve level " + std::to_string(i) +
                        ": block containing '" + block.front() +
                        "' maps across target blocks");
                }
            }
        }
    }
}

FilteredMap identity_filtered_map(const FilteredSpace& fs) {
    Fn id;
    for (const Label& w : fs.space.omega()) id[w] = w;
    return FilteredMap(fs, fs, std::move(id));
}

FilteredMap compose_filtered_maps(const FilteredMap& g, const FilteredMap& f) {
    if (!(f.dst() == g.src())) {
        throw ShapeError("filtered map composition: endpoints do not align");
    }
    Fn composite;
    for (const auto& [w, v] : f.map()) {
        composite[w] = g.at(v);
    }
    return FilteredMap(f.src(), g.dst(), std::move(composite));
}

StochKernelMap conditional_kernel(const FilteredSpace& fs, std::size_t i) {
    if (i == 0 || i + 1 > fs.filt.length()) {
        throw DomainError("conditional kernel level " + std::to_string(i) +
                          " out of range");
    }
    const Partition& now = fs.filt.level(i);
    const Partition& next = fs.filt.level(i + 1);
    StochKernelMap out{now, next, {}};
    for (std::size_t bi = 0; bi < now.block_count(); ++bi) {
        const auto& block = now.block(bi);
        const Rational pb = fs.space.mass_of(block);
        if (pb.is_zero()) {
            // canonical choice: the first sub-block
            const std::size_t sub = next.block_index_of(block.front());
            out.table.emplace(now.block_label(bi), Dist::point(next.block_label(sub)));
            continue;
        }
        std::map<Label, Rational> weights;
        std::set<std::size_t> subs;
        for (const Label& w : block) {
            subs.insert(next.block_index_of(w));
        }
        for (std::size_t sub : subs) {
            weights[next.block_label(sub)] = fs.space.mass_of(next.block(sub)) / pb;
        }
        out.table.emplace(now.block_label(bi), Dist(std::move(weights)));
    }
    return out;
}

namespace {

/// Induced map on level-i blocks; well-defined by filtration preservation.
Fn induced_block_map(const FilteredMap& phi, std::size_t i) {
    const Partition& src = phi.src().filt.level(i);
    const Partition& dst = phi.dst().filt.level(i);
    Fn out;
    for (std::size_t bi = 0; bi < src.block_count(); ++bi) {
        const std::size_t target = dst.block_index_of(phi.at(src.block(bi).front()));
        out[src.block_label(bi)] = dst.block_label(target);
    }
    return out;
}

} // namespace

bool is_immersion_kernel(const FilteredMap& phi) {
    const std::size_t T = phi.src().filt.length();
    for (std::size_t i = 1; i + 1 <= T; ++i) {
        const StochKernelMap src_kernel = conditional_kernel(phi.src(), i);
        const StochKernelMap dst_kernel = conditional_kernel(phi.dst(), i);
        const Fn beta_now = induced_block_map(phi, i);
        const Fn beta_next = induced_block_map(phi, i + 1);
        const Partition& now = phi.src().filt.level(i);
        for (std::size_t bi = 0; bi < now.block_count(); ++bi) {
            if (phi.src().space.mass_of(now.block(bi)).is_zero()) continue;
            const Label b = now.block_label(bi);
            const Dist pushed = pushforward(beta_next, src_kernel.table.at(b));
            if (!(pushed == dst_kernel.table.at(beta_now.at(b)))) {
                return false;
            }
        }
    }
    return true;
}

std::optional<Subset> martingale_counterexample(const FilteredMap& phi) {
    const FinProbSpace& src = phi.src().space;
    const FinProbSpace& dst = phi.dst().space;
    const std::size_t T = phi.src().filt.length();
    const std::size_t n = dst.omega().size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::set<Label> members;
        for (std::size_t k = 0; k < n; ++k) {
            if (mask & (1ull << k)) members.insert(dst.omega().at(k));
        }
        // indicator of V, conditioned down the target filtration
        RationalMap indicator;
        for (const Label& w : dst.omega()) {
            indicator[w] = members.count(w) ? Rational(1) : Rational(0);
        }
        std::vector<RationalMap> levels;
        for (std::size_t i = 1; i <= T; ++i) {
            levels.push_back(
                conditional_expectation(dst, phi.dst().filt.level(i), indicator));
        }
        // pull back along phi and test the martingale property on the source
        std::vector<RationalMap> pulled(T);
        for (std::size_t i = 0; i < T; ++i) {
            for (const Label& w : src.omega()) {
                pulled[i][w] = levels[i].at(phi.at(w));
            }
        }
        for (std::size_t i = 1; i + 1 <= T; ++i) {
            const RationalMap expected =
                conditional_expectation(src, phi.src().filt.level(i), pulled[i]);
            for (const Label& w : src.omega()) {
                if (!src.positive(w)) continue;
                if (expected.at(w) != pulled[i - 1].at(w)) {
                    return Subset(std::move(members));
                }
            }
        }
    }
    return std::nullopt;
}

bool is_immersion_martingale(const FilteredMap& phi) {
    return !martingale_counterexample(phi).has_value();
}

Kernel bayesian_inverse(const FinProbSpace& a, const FinProbSpace& b, const Fn& f) {
    require_measure_preserving(a, b, f, "bayesian inverse");
    std::map<Label, MonadValue> table;
    for (const Label& y : b.omega()) {
        std::vector<Label> fiber;
        for (const Label& x : a.omega()) {
            if (f.at(x) == y) fiber.push_back(x);
        }
        if (!b.positive(y)) {
            if (fiber.empty()) {
                throw CanonicalizationError(
                    "bayesian inverse: null point '" + y +
                    "' has an empty fiber, nothing to canonicalize at");
            }
            table.emplace(y, Dist::point(fiber.front()));
            continue;
        }
        std::map<Label, Rational> weights;
        for (const Label& x : fiber) {
            weights[x] = a.mass(x) / b.mass(y);
        }
        table.emplace(y, Dist(std::move(weights)));
    }
    return Kernel(b.omega(), a.omega(), MonadTag::dist, std::move(table));
}

namespace {

void validate_square(const ProbSquare& sq) {
    require_measure_preserving(sq.a, sq.b, sq.ab, "square A->B");
    require_measure_preserving(sq.a, sq.c, sq.ac, "square A->C");
    require_measure_preserving(sq.b, sq.d, sq.bd, "square B->D");
    require_measure_preserving(sq.c, sq.d, sq.cd, "square C->D");
    for (const Label& x : sq.a.omega()) {
        if (sq.bd.at(sq.ab.at(x)) != sq.cd.at(sq.ac.at(x))) {
            throw ShapeError("square does not commute at '" + x + "'");
        }
    }
}

/// Conditional distribution of the C-value given the B-value, for positive b.
Dist conditional_of_c_given_b(const ProbSquare& sq, const Label& b) {
    std::map<Label, Rational> weights;
    for (const Label& x : sq.a.omega()) {
        if (sq.ab.at(x) != b) continue;
        weights[sq.ac.at(x)] += sq.a.mass(x) / sq.b.mass(b);
    }
    return Dist(std::move(weights));
}

Dist conditional_of_b_given_c(const ProbSquare& sq, const Label& c) {
    std::map<Label, Rational> weights;
    for (const Label& x : sq.a.omega()) {
        if (sq.ac.at(x) != c) continue;
        weights[sq.ab.at(x)] += sq.a.mass(x) / sq.c.mass(c);
    }
    return Dist(std::move(weights));
}

} // namespace

bool is_independent_square(const ProbSquare& sq) {
    validate_square(sq);
    std::map<Label, Dist> first_seen;
    for (const Label& b : sq.b.omega()) {
        if (!sq.b.positive(b)) continue;
        const Dist cond = conditional_of_c_given_b(sq, b);
        const Label& d = sq.bd.at(b);
        auto [it, inserted] = first_seen.emplace(d, cond);
        if (!inserted && !(it->second == cond)) {
            return false;
        }
    }
    return true;
}

bool bayes_inverse_square_commutes(const ProbSquare& sq, bool horizontal) {
    validate_square(sq);
    if (horizontal) {
        const Kernel inv_cd = bayesian_inverse(sq.c, sq.d, sq.cd);
        for (const Label& b : sq.b.omega()) {
            if (!sq.b.positive(b)) continue;
            const Dist via_a = conditional_of_c_given_b(sq, b);
            const Dist& via_d = std::get<Dist>(inv_cd.at(sq.bd.at(b)));
            if (!(via_a == via_d)) return false;
        }
        return true;
    }
    const Kernel inv_bd = bayesian_inverse(sq.b, sq.d, sq.bd);
    for (const Label& c : sq.c.omega()) {
        if (!sq.c.positive(c)) continue;
        const Dist via_a = conditional_of_b_given_c(sq, c);
        const Dist& via_d = std::get<Dist>(inv_bd.at(sq.cd.at(c)));
        if (!(via_a == via_d)) return false;
    }
    return true;
}

PlainCospan::PlainCospan(FinProbSpace left_, Fn left_map_, FinProbSpace right_,
                         Fn right_map_, FinProbSpace base_)
    : left(std::move(left_)), left_map(std::move(left_map_)),
      right(std::move(right_)), right_map(std::move(right_map_)),
      base(std::move(base_)) {
    require_measure_preserving(left, base, left_map, "cospan left leg");
    require_measure_preserving(right, base, right_map, "cospan right leg");
}

PlainPullback independent_pullback_plain(const PlainCospan& cospan) {
    std::vector<Label> carrier;
    std::map<Label, Rational> measure;
    Fn proj1, proj2;
    for (const Label& g1 : cospan.left.omega()) {
        for (const Label& g2 : cospan.right.omega()) {
            if (cospan.left_map.at(g1) != cospan.right_map.at(g2)) continue;
            const Label point = pair_label(g1, g2);
            carrier.push_back(point);
            const Rational q = cospan.base.mass(cospan.left_map.at(g1));
            measure[point] = q.is_zero()
                                 ? Rational(0)
                                 : cospan.left.mass(g1) * cospan.right.mass(g2) / q;
            proj1[point] = g1;
            proj2[point] = g2;
        }
    }
    return PlainPullback{FinProbSpace(FinSet(std::move(carrier)), std::move(measure)),
                         std::move(proj1), std::move(proj2)};
}

FilteredPullback independent_pullback(const FilteredMap& leg1,
                                      const FilteredMap& leg2) {
    if (!(leg1.dst() == leg2.dst())) {
        throw ShapeError("independent pullback: legs land in different spaces");
    }
    PlainCospan cospan(leg1.src().space, leg1.map(), leg2.src().space, leg2.map(),
                       leg1.dst().space);
    PlainPullback plain = independent_pullback_plain(cospan);

    const std::size_t T = leg1.src().filt.length();
    std::vector<Partition> levels;
    for (std::size_t i = 1; i <= T; ++i) {
        const Partition& p1 = leg1.src().filt.level(i);
        const Partition& p2 = leg2.src().filt.level(i);
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Label>> blocks;
        for (const Label& point : plain.space.omega()) {
            blocks[{p1.block_index_of(plain.proj1.at(point)),
                    p2.block_index_of(plain.proj2.at(point))}]
                .push_back(point);
        }
        std::vector<std::vector<Label>> block_list;
        for (auto& [key, block] : blocks) {
            (void)key;
            block_list.push_back(std::move(block));
        }
        levels.emplace_back(plain.space.omega(), std::move(block_list));
    }
    FilteredSpace pullback_space(plain.space, Filtration(std::move(levels)));
    FilteredMap proj1(pullback_space, leg1.src(), plain.proj1);
    FilteredMap proj2(pullback_space, leg2.src(), plain.proj2);
    return FilteredPullback{std::move(pullback_space), std::move(proj1),
                            std::move(proj2)};
}

StochBehavior restrict_behavior(const FilteredMap& phi, const StochBehavior& b) {
    if (!(b.space == phi.dst().space) || !(b.filt == phi.dst().filt)) {
        throw ShapeError("behavior restriction: behavior lives on a different space");
    }
    auto pull = [&](const AdaptedProcess& proc) {
        AdaptedProcess out{proc.target, {}};
        for (const Fn& step : proc.steps) {
            Fn pulled;
            for (const Label& w : phi.src().space.omega()) {
                pulled[w] = step.at(phi.at(w));
            }
            out.steps.push_back(std::move(pulled));
        }
        return out;
    };
    return StochBehavior{phi.src().space, phi.src().filt, pull(b.xs), pull(b.outs),
                         pull(b.ins)};
}

StochBehavior glue_behavior(const FilteredMap& phi, const StochBehavior& b) {
    if (!(b.space == phi.src().space) || !(b.filt == phi.src().filt)) {
        throw ShapeError("gluing: behavior lives on a different space");
    }
    const FinProbSpace& gamma = phi.src().space;
    const FinProbSpace& omega = phi.dst().space;

    // invariance on the self-pullback: both pullbacks of every process agree
    // wherever the coupling puts mass
    const FilteredPullback pb = independent_pullback(phi, phi);
    struct Family {
        const char* name;
        const AdaptedProcess* proc;
    };
    const Family families[] = {{"states", &b.xs}, {"outs", &b.outs}, {"ins", &b.ins}};
    for (const Label& point : pb.space.space.omega()) {
        if (!pb.space.space.positive(point)) continue;
        const Label& g1 = pb.proj1.at(point);
        const Label& g2 = pb.proj2.at(point);
        for (const Family& family : families) {
            for (std::size_t n = 0; n < family.proc->steps.size(); ++n) {
                if (family.proc->steps[n].at(g1) != family.proc->steps[n].at(g2)) {
                    throw GluingError("behavior is not invariant: " +
                                      std::string(family.name) + " step " +
                                      std::to_string(n + 1) + " differs on pair (" +
                                      g1 + ", " + g2 + ")");
                }
            }
        }
    }

    // factor each step through phi, then extend block-constantly
    auto factor = [&](const AdaptedProcess& proc,
                      const std::string& name) -> AdaptedProcess {
        AdaptedProcess out{proc.target, {}};
        for (std::size_t n = 1; n <= proc.steps.size(); ++n) {
            const Fn& step = proc.steps[n - 1];
            std::map<Label, Label> pointwise;
            for (const Label& g : gamma.omega()) {
                if (!gamma.positive(g)) continue;
                pointwise.emplace(phi.at(g), step.at(g));
            }
            Fn factored;
            const Partition& level = phi.dst().filt.level(n);
            for (std::size_t bi = 0; bi < level.block_count(); ++bi) {
                const auto& block = level.block(bi);
                std::optional<Label> value;
                for (const Label& w : block) {
                    if (!omega.positive(w)) continue;
                    auto it = pointwise.find(w);
                    if (it == pointwise.end()) continue;
                    if (value && *value != it->second) {
                        throw AdaptednessError(
                            "glued " + name + " step " + std::to_string(n) +
                            " is not constant on target block containing '" +
                            block.front() + "'");
                    }
                    value = it->second;
                }
                if (!value) {
                    // null or unreached block: canonical fill from the first
                    // fiber element, else the first target label
                    const Label& w0 = block.front();
                    Label fill = proc.target.at(0);
                    for (const Label& g : gamma.omega()) {
                        if (phi.at(g) == w0) {
                            fill = step.at(g);
                            break;
                        }
                    }
                    value = fill;
                }
                for (const Label& w : block) {
                    factored[w] = *value;
                }
            }
            out.steps.push_back(std::move(factored));
        }
        return out;
    };

    return StochBehavior{omega, phi.dst().filt, factor(b.xs, "states"),
                         factor(b.outs, "outs"), factor(b.ins, "ins")};
}

} // namespace clockwork
