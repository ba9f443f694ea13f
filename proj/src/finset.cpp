#include "clockwork/finset.hpp"

#include <cctype>

#include "clockwork/errors.hpp"

namespace clockwork {

FinSet::FinSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const Label& l = labels_[i];
        if (l.empty()) {
            throw ValidityError("empty label in finite set");
        }
        for (char c : l) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                throw ValidityError("label '" + l + "' contains whitespace");
            }
        }
        if (!index_.emplace(l, i).second) {
            throw ValidityError("duplicate label '" + l + "' in finite set");
        }
    }
}

std::size_t FinSet::index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) {
        throw DomainError("label '" + l + "' is not a member of the set");
    }
    return it->second;
}

Label pair_label(const Label& a, const Label& b) {
    return "(" + a + "," + b + ")";
}

FinSet product(const FinSet& a, const FinSet& b) {
    std::vector<Label> out;
    out.reserve(a.size() * b.size());
    for (const Label& x : a) {
        for (const Label& y : b) {
            out.push_back(pair_label(x, y));
        }
    }
    return FinSet(std::move(out));
}

void validate_fn(const Fn& f, const FinSet& domain, const FinSet& codomain,
                 const std::string& what) {
    for (const auto& [k, v] : f) {
        if (!domain.contains(k)) {
            throw ValidityError(what + ": table key '" + k + "' is not in the domain");
        }
        if (!codomain.contains(v)) {
            throw ValidityError(what + ": value '" + v + "' is not in the codomain");
        }
    }
    if (f.size() != domain.size()) {
        for (const Label& l : domain) {
            if (!f.count(l)) {
                throw ValidityError(what + ": no entry for domain label '" + l + "'");
            }
        }
    }
}

} // namespace clockwork
