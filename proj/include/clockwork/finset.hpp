#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace clockwork {

/// Labels are short text tokens; within one finite set they are pairwise
/// distinct. Composite labels (pairs, lists, paths, blocks) are built from
/// user labels with reserved punctuation.
using Label = std::string;

/// A plain function between finite sets, stored as a total lookup table.
using Fn = std::map<Label, Label>;

/// A finite set with a deterministic (insertion) iteration order.
class FinSet {
public:
    FinSet() = default;
    explicit FinSet(std::vector<Label> labels);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    bool contains(const Label& l) const { return index_.count(l) != 0; }

    /// Throws DomainError when the label is not a member.
    std::size_t index_of(const Label& l) const;
    const Label& at(std::size_t i) const { return labels_.at(i); }
    const std::vector<Label>& labels() const { return labels_; }

    auto begin() const { return labels_.begin(); }
    auto end() const { return labels_.end(); }

    friend bool operator==(const FinSet& a, const FinSet& b) {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<Label> labels_;
    std::map<Label, std::size_t> index_;
};

/// Canonical label for an ordered pair; used for product carriers.
Label pair_label(const Label& a, const Label& b);

/// Product set in row-major order (left factor outermost).
FinSet product(const FinSet& a, const FinSet& b);

/// Validates that `f` is a total map from `domain` into `codomain`.
void validate_fn(const Fn& f, const FinSet& domain, const FinSet& codomain,
                 const std::string& what);

} // namespace clockwork
