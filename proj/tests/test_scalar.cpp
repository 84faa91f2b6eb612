#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conicdisc/scalar.hpp"

using namespace conicdisc;

TEST_CASE("rational arithmetic stays reduced") {
    FieldPtr q = FieldSpec::rationals();
    Scalar a = Scalar::from_rational(q, Rational(4, 6));
    CHECK(a == Scalar::from_rational(q, Rational(2, 3)));
    Scalar b = Scalar::from_rational(q, Rational(1, 3));
    CHECK((a + b).is_one());
    CHECK((a - a).is_zero());
    CHECK((a * b) == Scalar::from_rational(q, Rational(2, 9)));
    CHECK(a.inverse() == Scalar::from_rational(q, Rational(3, 2)));
}

TEST_CASE("prime field arithmetic and inverses") {
    FieldPtr f7 = FieldSpec::prime_field(7);
    for (int i = 1; i < 7; ++i) {
        Scalar x = Scalar::from_int(f7, i);
        CHECK((x * x.inverse()).is_one());
    }
    CHECK(Scalar::from_int(f7, 3) + Scalar::from_int(f7, 5) == Scalar::from_int(f7, 1));
    CHECK(-Scalar::from_int(f7, 2) == Scalar::from_int(f7, 5));
}

TEST_CASE("extension fields: modulus table and basic identities") {
    FieldPtr f4 = FieldSpec::extension_field(2, 2);
    Scalar w = Scalar::generator(f4);
    // w^2 + w + 1 = 0
    CHECK((w * w + w + Scalar::one(f4)).is_zero());
    CHECK(f4->order() == 4);

    FieldPtr f9 = FieldSpec::extension_field(3, 2);
    Scalar g = Scalar::generator(f9);
    CHECK((g * g + Scalar::one(f9)).is_zero()); // w^2 + 1 = 0
    // multiplicative group order 8
    CHECK(g.pow(8).is_one());

    FieldPtr f27 = FieldSpec::extension_field(3, 3);
    Scalar h = Scalar::generator(f27);
    CHECK(h.pow(26).is_one());
    CHECK(h.pow(27) == h); // Frobenius fixed-point identity x^q = x
}

TEST_CASE("frobenius and p-th roots") {
    FieldPtr f8 = FieldSpec::extension_field(2, 3);
    for (const Scalar& x : all_field_elements(f8)) {
        CHECK(x.pth_root().frobenius() == x);
        CHECK(x.frobenius().pth_root() == x);
    }
}

TEST_CASE("field_sqrt: identity, exhaustive F_7 oracle, rationals") {
    FieldPtr f3 = FieldSpec::prime_field(3);
    CHECK(*field_sqrt(Scalar::one(f3)) == Scalar::one(f3));

    // exhaustive oracle over F_7: collect the squares
    FieldPtr f7 = FieldSpec::prime_field(7);
    for (const Scalar& a : all_field_elements(f7)) {
        bool has_root = false;
        Scalar expect = Scalar::zero(f7);
        for (const Scalar& r : all_field_elements(f7)) {
            if (r * r == a) {
                if (!has_root || r.less_than(expect)) expect = r;
                has_root = true;
            }
        }
        auto got = field_sqrt(a);
        CHECK(got.has_value() == has_root);
        if (has_root) CHECK(*got == expect);
    }
    CHECK(*field_sqrt(Scalar::from_int(f7, 2)) == Scalar::from_int(f7, 3));

    FieldPtr q = FieldSpec::rationals();
    CHECK(*field_sqrt(Scalar::from_rational(q, Rational(4, 9))) ==
          Scalar::from_rational(q, Rational(2, 3)));
    CHECK(!field_sqrt(Scalar::from_int(q, 2)).has_value());
    CHECK(!field_sqrt(Scalar::from_int(q, -1)).has_value());
}

TEST_CASE("field_sqrt is total and unique in char-2 fields") {
    for (int k : {1, 2, 3, 4}) {
        FieldPtr f = FieldSpec::extension_field(2, k);
        for (const Scalar& a : all_field_elements(f)) {
            auto r = field_sqrt(a);
            REQUIRE(r.has_value());
            CHECK(*r * *r == a);
        }
    }
}

TEST_CASE("field_sqrt over odd extensions (Tonelli-Shanks route)") {
    for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{5, 2}, {3, 2}, {13, 1}}) {
        FieldPtr f = FieldSpec::extension_field(p, k);
        int roots_found = 0;
        for (const Scalar& a : all_field_elements(f)) {
            auto r = field_sqrt(a);
            if (r) {
                CHECK(*r * *r == a);
                ++roots_found;
            }
        }
        // zero plus half the nonzero elements are squares
        CHECK(roots_found == 1 + (f->order() - 1) / 2);
    }
}

TEST_CASE("solve_quadratic_char2: stated cases") {
    FieldPtr f2 = FieldSpec::prime_field(2);
    Scalar one = Scalar::one(f2), zero = Scalar::zero(f2);
    CHECK(*solve_quadratic_char2(one, zero, one) == one);       // mu^2 = 1
    CHECK(*solve_quadratic_char2(one, one, zero) == zero);      // roots {0,1}: smaller
    CHECK(!solve_quadratic_char2(one, one, one).has_value());   // irreducible over F_2

    FieldPtr f4 = FieldSpec::extension_field(2, 2);
    auto root = solve_quadratic_char2(Scalar::one(f4), Scalar::one(f4), Scalar::one(f4));
    REQUIRE(root.has_value());
    CHECK(*root == Scalar::generator(f4)); // smaller of {w, w+1}
    CHECK((*root * *root + *root + Scalar::one(f4)).is_zero());
}

TEST_CASE("solve_quadratic_char2: exhaustive agreement over F_2, F_4, F_8") {
    for (int k : {1, 2, 3}) {
        FieldPtr f = FieldSpec::extension_field(2, k);
        auto elems = all_field_elements(f);
        for (const Scalar& a : elems) {
            if (a.is_zero()) continue;
            for (const Scalar& b : elems) {
                for (const Scalar& c : elems) {
                    bool has = false;
                    Scalar smallest = Scalar::zero(f);
                    for (const Scalar& mu : elems) {
                        if ((a * mu * mu + b * mu + c).is_zero()) {
                            if (!has || mu.less_than(smallest)) smallest = mu;
                            has = true;
                        }
                    }
                    auto got = solve_quadratic_char2(a, b, c);
                    CHECK(got.has_value() == has);
                    if (has) CHECK(*got == smallest);
                }
            }
        }
    }
}

TEST_CASE("embedding into the doubled field is a ring map") {
    FieldPtr f4 = FieldSpec::extension_field(2, 2);
    FieldPtr f16 = doubled_field(f4);
    CHECK(f16->order() == 16);
    auto elems = all_field_elements(f4);
    for (const Scalar& x : elems) {
        for (const Scalar& y : elems) {
            CHECK(embed_scalar(x * y, f16) == embed_scalar(x, f16) * embed_scalar(y, f16));
            CHECK(embed_scalar(x + y, f16) == embed_scalar(x, f16) + embed_scalar(y, f16));
        }
    }
    // every element of F_4 becomes a square in F_16 (it already was), and
    // nonsquares of F_5 become squares in F_25
    FieldPtr f5 = FieldSpec::prime_field(5);
    FieldPtr f25 = doubled_field(f5);
    for (const Scalar& x : all_field_elements(f5)) {
        CHECK(field_sqrt(embed_scalar(x, f25)).has_value());
    }
}

TEST_CASE("absolute trace: kernel size is half the field") {
    for (int k : {1, 2, 3, 4}) {
        FieldPtr f = FieldSpec::extension_field(2, k);
        int zeros = 0;
        for (const Scalar& a : all_field_elements(f))
            if (absolute_trace_char2(a) == 0) ++zeros;
        CHECK(zeros == f->order() / 2);
    }
}

TEST_CASE("user-supplied modulus is validated") {
    CHECK_THROWS_AS(FieldSpec::extension_field(2, 2, {0, 0, 1}), ConicError); // w^2 reducible
    CHECK_NOTHROW(FieldSpec::extension_field(2, 2, {1, 1, 1}));
    CHECK_THROWS_AS(FieldSpec::prime_field(6), ConicError);
}
