#include "clockwork/prob.hpp"

#include <algorithm>

#include "clockwork/errors.hpp"

namespace clockwork {

FinProbSpace::FinProbSpace(FinSet omega, std::map<Label, Rational> measure)
    : omega_(std::move(omega)), measure_(std::move(measure)) {
    Rational total;
    for (const Label& w : omega_) {
        auto it = measure_.find(w);
        if (it == measure_.end()) {
            throw ValidityError("measure has no entry for '" + w + "'");
        }
        if (it->second.is_negative()) {
            throw ValidityError("measure of '" + w + "' is negative");
        }
        total += it->second;
    }
    if (measure_.size() != omega_.size()) {
        throw ValidityError("measure has entries outside the sample space");
    }
    if (!total.is_one()) {
        throw ValidityError("measure sums to " + total.str() + ", expected 1");
    }
}

Rational FinProbSpace::mass(const Label& point) const {
    auto it = measure_.find(point);
    if (it == measure_.end()) {
        throw DomainError("point '" + point + "' is not in the sample space");
    }
    return it->second;
}

Rational FinProbSpace::mass_of(const std::vector<Label>& block) const {
    Rational total;
    for (const Label& w : block) total += mass(w);
    return total;
}

Partition::Partition(FinSet ambient, std::vector<std::vector<Label>> blocks)
    : ambient_(std::move(ambient)) {
    std::vector<bool> seen(ambient_.size(), false);
    for (auto& block : blocks) {
        if (block.empty()) {
            throw ValidityError("partition contains an empty block");
        }
        for (const Label& w : block) {
            const std::size_t i = ambient_.index_of(w);
            if (seen[i]) {
                throw ValidityError("partition blocks overlap at '" + w + "'");
            }
            seen[i] = true;
        }
        std::sort(block.begin(), block.end(), [&](const Label& a, const Label& b) {
            return ambient_.index_of(a) < ambient_.index_of(b);
        });
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw ValidityError("partition does not cover '" + ambient_.at(i) + "'");
        }
    }
    std::sort(blocks.begin(), blocks.end(),
              [&](const std::vector<Label>& a, const std::vector<Label>& b) {
                  return ambient_.index_of(a.front()) < ambient_.index_of(b.front());
              });
    blocks_ = std::move(blocks);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        for (const Label& w : blocks_[i]) {
            block_index_[w] = i;
        }
    }
}

Partition Partition::finest(const FinSet& ambient) {
    std::vector<std::vector<Label>> blocks;
    for (const Label& w : ambient) blocks.push_back({w});
    return Partition(ambient, std::move(blocks));
}

Partition Partition::coarsest(const FinSet& ambient) {
    return Partition(ambient, {ambient.labels()});
}

std::size_t Partition::block_index_of(const Label& point) const {
    auto it = block_index_.find(point);
    if (it == block_index_.end()) {
        throw DomainError("point '" + point + "' is not in the partitioned set");
    }
    return it->second;
}

const std::vector<Label>& Partition::block_of(const Label& point) const {
    return blocks_[block_index_of(point)];
}

Label Partition::block_label(std::size_t i) const {
    const auto& block = blocks_.at(i);
    Label out = block.front();
    for (std::size_t k = 1; k < block.size(); ++k) {
        out += "+" + block[k];
    }
    return out;
}

FinSet Partition::block_labels() const {
    std::vector<Label> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        out.push_back(block_label(i));
    }
    return FinSet(std::move(out));
}

bool refines(const Partition& finer, const Partition& coarser) {
    if (!(finer.ambient() == coarser.ambient())) {
        return false;
    }
    for (const auto& block : finer.blocks()) {
        const std::size_t target = coarser.block_index_of(block.front());
        for (const Label& w : block) {
            if (coarser.block_index_of(w) != target) {
                return false;
            }
        }
    }
    return true;
}

Filtration::Filtration(std::vector<Partition> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw ValidityError("filtration needs at least one level");
    }
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
        if (!refines(levels_[i + 1], levels_[i])) {
            throw ValidityError("filtration level " + std::to_string(i + 2) +
                                " does not refine level " + std::to_string(i + 1));
        }
    }
}

const Partition& Filtration::level(std::size_t i) const {
    if (i == 0 || i > levels_.size()) {
        throw DomainError("filtration level " + std::to_string(i) + " out of range");
    }
    return levels_[i - 1];
}

bool is_adapted(const AdaptedProcess& proc, const FinProbSpace& space,
                const Filtration& filt) {
    if (proc.steps.size() > filt.length()) {
        return false;
    }
    for (std::size_t i = 1; i <= proc.steps.size(); ++i) {
        const Fn& step = proc.steps[i - 1];
        validate_fn(step, space.omega(), proc.target,
                    "process step " + std::to_string(i));
        for (const auto& block : filt.level(i).blocks()) {
            const Label& v = step.at(block.front());
            for (const Label& w : block) {
                if (step.at(w) != v) {
                    return false;
                }
            }
        }
    }
    return true;
}

void require_adapted(const AdaptedProcess& proc, const FinProbSpace& space,
                     const Filtration& filt, const std::string& what) {
    if (proc.steps.size() > filt.length()) {
        throw AdaptednessError(what + ": process has " +
                               std::to_string(proc.steps.size()) +
                               " steps but the filtration has only " +
                               std::to_string(filt.length()) + " levels");
    }
    for (std::size_t i = 1; i <= proc.steps.size(); ++i) {
        const Fn& step = proc.steps[i - 1];
        validate_fn(step, space.omega(), proc.target,
                    what + ": step " + std::to_string(i));
        for (const auto& block : filt.level(i).blocks()) {
            const Label& v = step.at(block.front());
            for (const Label& w : block) {
                if (step.at(w) != v) {
                    throw AdaptednessError(
                        what + ": step " + std::to_string(i) +
                        " is not constant on block containing '" + block.front() +
                        "' (differs at '" + w + "')");
                }
            }
        }
    }
}

RationalMap conditional_expectation(const FinProbSpace& space, const Partition& g,
                                    const RationalMap& x) {
    RationalMap out;
    for (const auto& block : g.blocks()) {
        const Rational pb = space.mass_of(block);
        Rational value;
        if (!pb.is_zero()) {
            for (const Label& w : block) {
                value += space.mass(w) * x.at(w);
            }
            value /= pb;
        }
        for (const Label& w : block) {
            out[w] = value;
        }
    }
    return out;
}

std::map<Label, Dist> conditional_probability(const FinProbSpace& space,
                                              const Partition& g, const Fn& x) {
    std::map<Label, Dist> out;
    for (const auto& block : g.blocks()) {
        const Rational pb = space.mass_of(block);
        if (pb.is_zero()) {
            for (const Label& w : block) {
                out.emplace(w, Dist::point(x.at(w)));
            }
            continue;
        }
        std::map<Label, Rational> weights;
        for (const Label& w : block) {
            weights[x.at(w)] += space.mass(w) / pb;
        }
        Dist d(std::move(weights));
        for (const Label& w : block) {
            out.emplace(w, d);
        }
    }
    return out;
}

bool check_pushforward_lemma(const FinProbSpace& space, const Partition& g,
                             const Fn& x, const Fn& f) {
    Fn composite;
    for (const auto& [w, v] : x) {
        composite[w] = f.at(v);
    }
    const auto lhs = conditional_probability(space, g, x);
    const auto rhs = conditional_probability(space, g, composite);
    for (const Label& w : space.omega()) {
        if (!space.positive(w)) continue;
        const MonadValue pushed = monad_map(f, MonadValue(lhs.at(w)));
        if (!(std::get<Dist>(pushed) == rhs.at(w))) {
            return false;
        }
    }
    return true;
}

bool is_markov_with_law(const FinProbSpace& space, const Filtration& filt,
                        const AdaptedProcess& proc, const Kernel& law) {
    if (proc.steps.size() < 2) {
        throw ValidityError("Markov check needs a process with at least 2 steps");
    }
    if (law.tag() != MonadTag::dist) {
        throw TagError("Markov law kernel must have tag dist");
    }
    require_adapted(proc, space, filt, "Markov check");
    const std::size_t horizon = proc.steps.size();
    for (std::size_t i = 1; i + 1 <= horizon; ++i) {
        const auto cond = conditional_probability(space, filt.level(i),
                                                  proc.steps[i]); // x_{i+1}
        for (const auto& block : filt.level(i).blocks()) {
            if (space.mass_of(block).is_zero()) continue;
            const Label& w = block.front();
            const Dist& expected = std::get<Dist>(law.at(proc.steps[i - 1].at(w)));
            if (!(cond.at(w) == expected)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace clockwork
