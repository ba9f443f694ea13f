#include "clockwork/monad.hpp"

#include <sstream>

#include "clockwork/errors.hpp"

namespace clockwork {

std::string to_string(MonadTag tag) {
    switch (tag) {
        case MonadTag::identity: return "identity";
        case MonadTag::dist: return "dist";
        case MonadTag::power: return "power";
    }
    return "?";
}

Dist::Dist(std::map<Label, Rational> weights) {
    Rational total;
    for (auto& [l, w] : weights) {
        if (w.is_negative()) {
            throw ValidityError("negative weight " + w.str() + " at '" + l + "'");
        }
        total += w;
        if (!w.is_zero()) {
            w_.emplace(l, w);
        }
    }
    if (!total.is_one()) {
        throw ValidityError("distribution weights sum to " + total.str() +
                            ", expected 1");
    }
}

Dist Dist::point(const Label& l) {
    return Dist({{l, Rational(1)}});
}

Rational Dist::at(const Label& l) const {
    auto it = w_.find(l);
    return it == w_.end() ? Rational(0) : it->second;
}

std::string Dist::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [l, w] : w_) {
        os << (first ? "" : " ") << l << ": " << w;
        first = false;
    }
    os << "}";
    return os.str();
}

std::string Subset::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& l : m_) {
        os << (first ? "" : " ") << l;
        first = false;
    }
    os << "}";
    return os.str();
}

MonadTag tag_of(const MonadValue& v) {
    if (std::holds_alternative<Label>(v)) return MonadTag::identity;
    if (std::holds_alternative<Dist>(v)) return MonadTag::dist;
    return MonadTag::power;
}

std::string to_string(const MonadValue& v) {
    if (const auto* l = std::get_if<Label>(&v)) return *l;
    if (const auto* d = std::get_if<Dist>(&v)) return d->str();
    return std::get<Subset>(v).str();
}

bool monad_value_eq(const MonadValue& a, const MonadValue& b) {
    return a == b;
}

void validate_monad_value(const MonadValue& v, const FinSet& carrier,
                          const std::string& what) {
    if (const auto* l = std::get_if<Label>(&v)) {
        if (!carrier.contains(*l)) {
            throw ValidityError(what + ": label '" + *l + "' is not in the carrier");
        }
        return;
    }
    if (const auto* d = std::get_if<Dist>(&v)) {
        for (const auto& [l, w] : d->weights()) {
            (void)w;
            if (!carrier.contains(l)) {
                throw ValidityError(what + ": distribution references '" + l +
                                    "' outside the carrier");
            }
        }
        return;
    }
    for (const auto& l : std::get<Subset>(v).members()) {
        if (!carrier.contains(l)) {
            throw ValidityError(what + ": subset references '" + l +
                                "' outside the carrier");
        }
    }
}

Kernel::Kernel(FinSet domain, FinSet codomain, MonadTag tag,
               std::map<Label, MonadValue> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), tag_(tag),
      table_(std::move(table)) {
    for (const Label& l : domain_) {
        auto it = table_.find(l);
        if (it == table_.end()) {
            throw ValidityError("kernel has no entry for '" + l + "'");
        }
        if (tag_of(it->second) != tag_) {
            throw TagError("kernel entry at '" + l + "' has tag " +
                           to_string(tag_of(it->second)) + ", expected " +
                           to_string(tag_));
        }
        validate_monad_value(it->second, codomain_, "kernel entry at '" + l + "'");
    }
    if (table_.size() != domain_.size()) {
        throw ValidityError("kernel table has entries outside its domain");
    }
}

const MonadValue& Kernel::at(const Label& l) const {
    auto it = table_.find(l);
    if (it == table_.end()) {
        throw DomainError("label '" + l + "' is not in the kernel domain");
    }
    return it->second;
}

namespace {

const Label& apply_fn(const Fn& f, const Label& l) {
    auto it = f.find(l);
    if (it == f.end()) {
        throw DomainError("label '" + l + "' is not in the function domain");
    }
    return it->second;
}

} // namespace

Dist pushforward(const Fn& f, const Dist& d) {
    std::map<Label, Rational> out;
    for (const auto& [l, w] : d.weights()) {
        out[apply_fn(f, l)] += w;
    }
    return Dist(std::move(out));
}

MonadValue monad_map(const Fn& f, const MonadValue& v) {
    if (const auto* l = std::get_if<Label>(&v)) {
        return apply_fn(f, *l);
    }
    if (const auto* d = std::get_if<Dist>(&v)) {
        return pushforward(f, *d);
    }
    std::set<Label> image;
    for (const auto& l : std::get<Subset>(v).members()) {
        image.insert(apply_fn(f, l));
    }
    return Subset(std::move(image));
}

MonadValue monad_map(const Kernel& f, const MonadValue& v) {
    if (f.tag() != MonadTag::identity) {
        throw TagError("monad_map needs an identity-tag kernel, got " +
                       to_string(f.tag()));
    }
    Fn plain;
    for (const auto& [k, val] : f.table()) {
        plain.emplace(k, std::get<Label>(val));
    }
    return monad_map(plain, v);
}

MonadValue monad_bind(const Kernel& k, const MonadValue& v) {
    if (tag_of(v) != k.tag()) {
        throw TagError("monad_bind tag mismatch: value is " +
                       to_string(tag_of(v)) + ", kernel is " + to_string(k.tag()));
    }
    switch (k.tag()) {
        case MonadTag::identity:
            return k.at(std::get<Label>(v));
        case MonadTag::dist: {
            std::map<Label, Rational> out;
            for (const auto& [x, wx] : std::get<Dist>(v).weights()) {
                const Dist& row = std::get<Dist>(k.at(x));
                for (const auto& [y, wy] : row.weights()) {
                    out[y] += wx * wy;
                }
            }
            return Dist(std::move(out));
        }
        case MonadTag::power: {
            std::set<Label> out;
            for (const auto& x : std::get<Subset>(v).members()) {
                const Subset& row = std::get<Subset>(k.at(x));
                out.insert(row.members().begin(), row.members().end());
            }
            return Subset(std::move(out));
        }
    }
    throw TagError("unreachable monad tag");
}

} // namespace clockwork
