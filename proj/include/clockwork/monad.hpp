#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>

#include "clockwork/finset.hpp"
#include "clockwork/rational.hpp"

namespace clockwork {

/// Which strong monad a system branches through. `identity` is deterministic
/// update, `dist` is finite-support probability, `power` is nondeterminism.
enum class MonadTag { identity, dist, power };

std::string to_string(MonadTag tag);

/// Finitely supported probability distribution with exact rational weights.
/// Weights are strictly positive (zero entries are dropped on construction)
/// and sum to exactly 1, so structural equality is measure equality.
class Dist {
public:
    explicit Dist(std::map<Label, Rational> weights);
    static Dist point(const Label& l);

    const std::map<Label, Rational>& weights() const { return w_; }
    Rational at(const Label& l) const;
    std::size_t support_size() const { return w_.size(); }

    std::string str() const;

    friend bool operator==(const Dist& a, const Dist& b) { return a.w_ == b.w_; }
    friend bool operator<(const Dist& a, const Dist& b) { return a.w_ < b.w_; }

private:
    std::map<Label, Rational> w_;
};

/// A subset of some ambient finite set; the empty subset is allowed and
/// downstream enumeration reads it as "no successor".
class Subset {
public:
    Subset() = default;
    explicit Subset(std::set<Label> members) : m_(std::move(members)) {}

    const std::set<Label>& members() const { return m_; }
    bool contains(const Label& l) const { return m_.count(l) != 0; }
    bool empty() const { return m_.empty(); }
    std::size_t size() const { return m_.size(); }

    std::string str() const;

    friend bool operator==(const Subset& a, const Subset& b) { return a.m_ == b.m_; }
    friend bool operator<(const Subset& a, const Subset& b) { return a.m_ < b.m_; }

private:
    std::set<Label> m_;
};

/// One value of M(X) for the tagged monad: a point, a distribution, or a
/// subset.
using MonadValue = std::variant<Label, Dist, Subset>;

MonadTag tag_of(const MonadValue& v);
std::string to_string(const MonadValue& v);
bool monad_value_eq(const MonadValue& a, const MonadValue& b);

/// Validates that `v` only references labels of `carrier`.
void validate_monad_value(const MonadValue& v, const FinSet& carrier,
                          const std::string& what);

/// A total table from a finite domain into monadic values over a finite
/// codomain, e.g. a Markov kernel when the tag is `dist`.
class Kernel {
public:
    Kernel(FinSet domain, FinSet codomain, MonadTag tag,
           std::map<Label, MonadValue> table);

    const FinSet& domain() const { return domain_; }
    const FinSet& codomain() const { return codomain_; }
    MonadTag tag() const { return tag_; }
    const std::map<Label, MonadValue>& table() const { return table_; }

    const MonadValue& at(const Label& l) const;

    friend bool operator==(const Kernel& a, const Kernel& b) {
        return a.tag_ == b.tag_ && a.domain_ == b.domain_ &&
               a.codomain_ == b.codomain_ && a.table_ == b.table_;
    }

private:
    FinSet domain_;
    FinSet codomain_;
    MonadTag tag_;
    std::map<Label, MonadValue> table_;
};

/// Functorial action of the monad on a plain function: pointwise application
/// for points, weight pushforward for distributions, image for subsets.
MonadValue monad_map(const Fn& f, const MonadValue& v);

/// Same, for a kernel whose tag is `identity`.
MonadValue monad_map(const Kernel& f, const MonadValue& v);

/// Kleisli extension: composition for points, exact mixtures for
/// distributions, unions for subsets.
MonadValue monad_bind(const Kernel& k, const MonadValue& v);

/// Pushforward of a distribution along a plain function.
Dist pushforward(const Fn& f, const Dist& d);

} // namespace clockwork
