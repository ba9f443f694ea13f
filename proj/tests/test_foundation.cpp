#include <doctest.h>

#include <vector>

#include "clockwork/errors.hpp"
#include "clockwork/monad.hpp"
#include "clockwork/rational.hpp"

using namespace clockwork;

TEST_SUITE_BEGIN("foundation");

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(3, 6).str() == "1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational::parse("7/21") == Rational(1, 3));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK_THROWS_AS(Rational(1, 0), ValidityError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ValidityError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ValidityError);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK_THROWS_AS(Rational(1) / Rational(0), ValidityError);
}

TEST_CASE("finite sets keep insertion order and reject duplicates") {
    FinSet s({"b", "a", "c"});
    CHECK(s.size() == 3);
    CHECK(s.at(0) == "b");
    CHECK(s.index_of("c") == 2);
    CHECK_THROWS_AS(s.index_of("z"), DomainError);
    CHECK_THROWS_AS(FinSet({"a", "a"}), ValidityError);
    CHECK_THROWS_AS(FinSet({""}), ValidityError);
    CHECK_THROWS_AS(FinSet({"a b"}), ValidityError);
}

TEST_CASE("distributions drop zero weights and must sum to exactly 1") {
    Dist d({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}, {"c", Rational(0)}});
    CHECK(d.support_size() == 2);
    CHECK(d.at("c") == Rational(0));
    CHECK(d == Dist({{"b", Rational(1, 2)}, {"a", Rational(1, 2)}}));
    CHECK_THROWS_AS(Dist({{"a", Rational(9, 8)}}), ValidityError);
    CHECK_THROWS_AS(Dist({{"a", Rational(3, 2)}, {"b", Rational(-1, 2)}}),
                    ValidityError);
}

namespace {

Kernel identity_kernel(const FinSet& s) {
    std::map<Label, MonadValue> table;
    for (const Label& l : s) table.emplace(l, l);
    return Kernel(s, s, MonadTag::identity, table);
}

} // namespace

TEST_CASE("monad_map: identity, preimage sums, images") {
    FinSet ab({"a", "b"});
    FinSet abc({"a", "b", "c"});
    FinSet uv({"u", "v"});

    SUBCASE("identity function is the identity on distributions") {
        Fn id{{"a", "a"}, {"b", "b"}};
        Dist half({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
        CHECK(std::get<Dist>(monad_map(id, MonadValue(half))) == half);
    }
    SUBCASE("weights sum over preimages") {
        Fn f{{"a", "u"}, {"b", "u"}, {"c", "v"}};
        Dist thirds({{"a", Rational(1, 3)}, {"b", Rational(1, 3)}, {"c", Rational(1, 3)}});
        Dist expected({{"u", Rational(2, 3)}, {"v", Rational(1, 3)}});
        CHECK(std::get<Dist>(monad_map(f, MonadValue(thirds))) == expected);
    }
    SUBCASE("subsets map to their image") {
        Fn f{{"a", "u"}, {"b", "v"}};
        Subset s({"a", "b"});
        CHECK(std::get<Subset>(monad_map(f, MonadValue(s))) == Subset({"u", "v"}));
    }
    SUBCASE("unknown label raises a domain error") {
        Fn f{{"a", "u"}};
        CHECK_THROWS_AS(monad_map(f, MonadValue(Label("z"))), DomainError);
    }
    SUBCASE("identity-tag kernel overload agrees with plain tables") {
        Kernel k = identity_kernel(ab);
        Dist half({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
        CHECK(std::get<Dist>(monad_map(k, MonadValue(half))) == half);
    }
}

TEST_CASE("monad_bind: composition, mixtures, unions") {
    FinSet ab({"a", "b"});
    FinSet uvz({"u", "v", "z"});

    SUBCASE("constant kernel sends every distribution to a point mass") {
        std::map<Label, MonadValue> t{{"a", Dist::point("z")}, {"b", Dist::point("z")}};
        Kernel k(ab, uvz, MonadTag::dist, t);
        Dist v({{"a", Rational(1, 4)}, {"b", Rational(3, 4)}});
        CHECK(std::get<Dist>(monad_bind(k, MonadValue(v))) == Dist::point("z"));
    }
    SUBCASE("mixtures add exactly") {
        std::map<Label, MonadValue> t{
            {"a", Dist({{"u", Rational(1, 2)}, {"v", Rational(1, 2)}})},
            {"b", Dist({{"u", Rational(1)}})}};
        Kernel k(ab, uvz, MonadTag::dist, t);
        Dist v({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
        Dist expected({{"u", Rational(3, 4)}, {"v", Rational(1, 4)}});
        CHECK(std::get<Dist>(monad_bind(k, MonadValue(v))) == expected);
    }
    SUBCASE("unions of singletons") {
        std::map<Label, MonadValue> t{{"a", Subset({"u"})}, {"b", Subset({"v"})}};
        Kernel k(ab, uvz, MonadTag::power, t);
        CHECK(std::get<Subset>(monad_bind(k, MonadValue(Subset({"a", "b"})))) ==
              Subset({"u", "v"}));
    }
    SUBCASE("tag mismatch raises") {
        std::map<Label, MonadValue> t{{"a", Dist::point("u")}, {"b", Dist::point("v")}};
        Kernel k(ab, uvz, MonadTag::dist, t);
        CHECK_THROWS_AS(monad_bind(k, MonadValue(Subset({"a"}))), TagError);
    }
}

TEST_CASE("kernel construction validates totality, tags and codomain labels") {
    FinSet ab({"a", "b"});
    FinSet uv({"u", "v"});
    std::map<Label, MonadValue> missing{{"a", Label("u")}};
    CHECK_THROWS_AS(Kernel(ab, uv, MonadTag::identity, missing), ValidityError);
    std::map<Label, MonadValue> wrong_tag{{"a", Label("u")}, {"b", Dist::point("u")}};
    CHECK_THROWS_AS(Kernel(ab, uv, MonadTag::identity, wrong_tag), TagError);
    std::map<Label, MonadValue> stray{{"a", Label("u")}, {"b", Label("w")}};
    CHECK_THROWS_AS(Kernel(ab, uv, MonadTag::identity, stray), ValidityError);
    std::map<Label, MonadValue> empty_ok{{"a", Subset({})}, {"b", Subset({"u"})}};
    CHECK_NOTHROW(Kernel(ab, uv, MonadTag::power, empty_ok));
}

namespace {

// all total functions between two label vectors, as tables
std::vector<Fn> all_fns(const std::vector<Label>& dom, const std::vector<Label>& cod) {
    std::vector<Fn> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < dom.size(); ++i) total *= cod.size();
    for (std::size_t index = 0; index < total; ++index) {
        Fn f;
        std::size_t rest = index;
        for (const Label& d : dom) {
            f[d] = cod[rest % cod.size()];
            rest /= cod.size();
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<MonadValue> sample_values(const std::vector<Label>& carrier) {
    std::vector<MonadValue> out;
    for (const Label& l : carrier) out.emplace_back(l);
    // every subset
    const std::size_t n = carrier.size();
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::set<Label> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) members.insert(carrier[i]);
        }
        out.emplace_back(Subset(std::move(members)));
    }
    // point masses, uniform, and a skewed distribution
    for (const Label& l : carrier) out.emplace_back(Dist::point(l));
    {
        std::map<Label, Rational> u;
        for (const Label& l : carrier) u[l] = Rational(1, (long)n);
        out.emplace_back(Dist(std::move(u)));
    }
    if (n >= 2) {
        std::map<Label, Rational> skew;
        skew[carrier[0]] = Rational(3, 4);
        Rational rest = Rational(1, 4) / Rational((long)(n - 1));
        for (std::size_t i = 1; i < n; ++i) skew[carrier[i]] = rest;
        out.emplace_back(Dist(std::move(skew)));
    }
    return out;
}

} // namespace

TEST_CASE("functoriality: mapping a composite equals mapping twice, sets up to size 3") {
    const std::vector<std::vector<Label>> carriers = {
        {"a"}, {"a", "b"}, {"a", "b", "c"}};
    for (const auto& A : carriers) {
        for (const auto& B : carriers) {
            for (const auto& C : carriers) {
                for (const Fn& f : all_fns(A, B)) {
                    for (const Fn& g : all_fns(B, C)) {
                        Fn gf;
                        for (const auto& [k, v] : f) gf[k] = g.at(v);
                        for (const MonadValue& v : sample_values(A)) {
                            CHECK(monad_map(gf, v) == monad_map(g, monad_map(f, v)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("monad unit laws on carriers up to size 3") {
    const std::vector<std::vector<Label>> carriers = {
        {"a"}, {"a", "b"}, {"a", "b", "c"}};
    for (const auto& A : carriers) {
        FinSet s(A);
        // left unit: binding with the return kernel is the identity
        std::map<Label, MonadValue> ret_dist, ret_power, ret_id;
        for (const Label& l : A) {
            ret_dist.emplace(l, Dist::point(l));
            ret_power.emplace(l, Subset({l}));
            ret_id.emplace(l, l);
        }
        Kernel kd(s, s, MonadTag::dist, ret_dist);
        Kernel kp(s, s, MonadTag::power, ret_power);
        Kernel ki(s, s, MonadTag::identity, ret_id);
        for (const MonadValue& v : sample_values(A)) {
            switch (tag_of(v)) {
                case MonadTag::dist: CHECK(monad_bind(kd, v) == v); break;
                case MonadTag::power: CHECK(monad_bind(kp, v) == v); break;
                case MonadTag::identity: CHECK(monad_bind(ki, v) == v); break;
            }
        }
        // right unit: binding a return value with k gives the kernel row
        std::map<Label, MonadValue> rows_d, rows_p;
        for (std::size_t i = 0; i < A.size(); ++i) {
            std::map<Label, Rational> w{{A[i], Rational(1, 2)},
                                        {A[(i + 1) % A.size()], Rational(1, 2)}};
            if (A.size() == 1) w = {{A[0], Rational(1)}};
            rows_d.emplace(A[i], Dist(w));
            rows_p.emplace(A[i], Subset({A[i], A[(i + 1) % A.size()]}));
        }
        Kernel kd2(s, s, MonadTag::dist, rows_d);
        Kernel kp2(s, s, MonadTag::power, rows_p);
        for (const Label& l : A) {
            CHECK(monad_bind(kd2, MonadValue(Dist::point(l))) == kd2.at(l));
            CHECK(monad_bind(kp2, MonadValue(Subset({l}))) == kp2.at(l));
        }
    }
}

TEST_SUITE_END();
