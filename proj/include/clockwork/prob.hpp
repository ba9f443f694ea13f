#pragma once

#include <map>
#include <vector>

#include "clockwork/finset.hpp"
#include "clockwork/monad.hpp"
#include "clockwork/rational.hpp"

namespace clockwork {

/// A finite sample space with an exact rational probability measure. The
/// ambient sigma-algebra is the full powerset; sub-sigma-algebras appear as
/// partitions.
class FinProbSpace {
public:
    FinProbSpace(FinSet omega, std::map<Label, Rational> measure);

    const FinSet& omega() const { return omega_; }
    const std::map<Label, Rational>& measure() const { return measure_; }

    Rational mass(const Label& point) const;
    bool positive(const Label& point) const { return !mass(point).is_zero(); }
    Rational mass_of(const std::vector<Label>& block) const;

    friend bool operator==(const FinProbSpace& a, const FinProbSpace& b) {
        return a.omega_ == b.omega_ && a.measure_ == b.measure_;
    }

private:
    FinSet omega_;
    std::map<Label, Rational> measure_;
};

/// A partition of the sample space. On a finite set every sub-sigma-algebra
/// is atomic, so partitions are the whole story. Blocks are canonically
/// ordered by their least element (in ambient order) and each block is
/// sorted the same way.
class Partition {
public:
    Partition(FinSet ambient, std::vector<std::vector<Label>> blocks);

    static Partition finest(const FinSet& ambient);
    static Partition coarsest(const FinSet& ambient);

    const FinSet& ambient() const { return ambient_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<Label>& block(std::size_t i) const { return blocks_.at(i); }
    const std::vector<std::vector<Label>>& blocks() const { return blocks_; }

    std::size_t block_index_of(const Label& point) const;
    const std::vector<Label>& block_of(const Label& point) const;

    /// Canonical label for a block: members joined with '+' in ambient order.
    Label block_label(std::size_t i) const;
    FinSet block_labels() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.ambient_ == b.ambient_ && a.blocks_ == b.blocks_;
    }

private:
    FinSet ambient_;
    std::vector<std::vector<Label>> blocks_;
    std::map<Label, std::size_t> block_index_;
};

/// True when every block of `coarser` is a union of blocks of `finer`.
bool refines(const Partition& finer, const Partition& coarser);

/// An ascending chain of information: level i+1 refines level i.
class Filtration {
public:
    explicit Filtration(std::vector<Partition> levels);

    std::size_t length() const { return levels_.size(); }
    /// 1-based, matching the usual subscripts.
    const Partition& level(std::size_t i) const;
    const std::vector<Partition>& levels() const { return levels_; }

    friend bool operator==(const Filtration& a, const Filtration& b) {
        return a.levels_ == b.levels_;
    }

private:
    std::vector<Partition> levels_;
};

/// A time-indexed family of variables into a common target. Step i must be
/// constant on the blocks of filtration level i to be adapted.
struct AdaptedProcess {
    FinSet target;
    std::vector<Fn> steps; // steps[i-1] is the i-th variable

    friend bool operator==(const AdaptedProcess& a, const AdaptedProcess& b) {
        return a.target == b.target && a.steps == b.steps;
    }
};

bool is_adapted(const AdaptedProcess& proc, const FinProbSpace& space,
                const Filtration& filt);

/// Throws AdaptednessError naming the first offending step and block.
void require_adapted(const AdaptedProcess& proc, const FinProbSpace& space,
                     const Filtration& filt, const std::string& what);

using RationalMap = std::map<Label, Rational>;

/// Blockwise averaging. On a block of measure zero the value is 0; the
/// defining identity (integrals agree on every union of blocks) holds
/// exactly.
RationalMap conditional_expectation(const FinProbSpace& space, const Partition& g,
                                    const RationalMap& x);

/// Blockwise restrict-and-renormalize pushed along x. On a null block the
/// value is the point mass at x(point), the globally fixed version choice;
/// every theorem check quantifies over positive-mass blocks only.
std::map<Label, Dist> conditional_probability(const FinProbSpace& space,
                                              const Partition& g, const Fn& x);

/// Pushing a conditional forward along f lands on the conditional of the
/// composite, exactly, at every positive-mass point.
bool check_pushforward_lemma(const FinProbSpace& space, const Partition& g,
                             const Fn& x, const Fn& f);

/// The conditional distribution of the next step given level-i information
/// equals the kernel applied to the current value, on positive-mass blocks.
bool is_markov_with_law(const FinProbSpace& space, const Filtration& filt,
                        const AdaptedProcess& proc, const Kernel& law);

} // namespace clockwork
