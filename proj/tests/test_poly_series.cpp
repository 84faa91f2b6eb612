#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conicdisc/expr.hpp"
#include "conicdisc/poly.hpp"
#include "conicdisc/series.hpp"

using namespace conicdisc;

TEST_CASE("polynomial ring basics and canonical printing") {
    auto ring = make_poly_ring(FieldSpec::rationals(), {"u", "v"});
    Poly u = Poly::variable(ring, "u");
    Poly v = Poly::variable(ring, "v");
    Poly p = (u + v) * (u - v);
    CHECK(p == u * u - v * v);
    CHECK(p.str() == "u^2 - v^2");
    CHECK((u + v).pow(2).str() == "u^2 + 2*u*v + v^2");
    Poly zero = p - p;
    CHECK(zero.is_zero());
    CHECK(zero.str() == "0");
    CHECK(p.total_degree() == 2);
}

TEST_CASE("graded-lexicographic term order in printing") {
    auto ring = make_poly_ring(FieldSpec::rationals(), {"u", "v"});
    Poly u = Poly::variable(ring, "u");
    Poly v = Poly::variable(ring, "v");
    Poly p = Poly::from_int(ring, 1) + u * v * v + u * u * v + v;
    CHECK(p.str() == "u^2*v + u*v^2 + v + 1");
}

TEST_CASE("derivative and evaluation") {
    auto ring = make_poly_ring(FieldSpec::prime_field(5), {"t"});
    Poly t = Poly::variable(ring, "t");
    Poly p = t.pow(5) + t.pow(2) + Poly::from_int(ring, 3);
    Poly dp = p.derivative(0);
    // d/dt t^5 = 5 t^4 = 0 mod 5
    CHECK(dp == Poly::from_int(ring, 2) * t);
    FieldPtr f = ring->field;
    CHECK(p.evaluate({Scalar::from_int(f, 2)}) ==
          Scalar::from_int(f, 32 + 4 + 3));
}

TEST_CASE("substitution into a smaller ring") {
    auto ring = make_poly_ring(FieldSpec::prime_field(2), {"u", "v"});
    auto target = make_poly_ring(FieldSpec::prime_field(2), {"u"});
    Poly p = parse_expression("u^2*v + u + v + 1", ring);
    FieldPtr f = ring->field;
    Poly q = p.substitute({std::nullopt, Scalar::one(f)}, target);
    CHECK(q == parse_expression("u^2 + u", target));
}

TEST_CASE("poly_pth_root: stated cases and round trip") {
    auto ring = make_poly_ring(FieldSpec::prime_field(2), {"u", "v"});
    Poly u = Poly::variable(ring, "u");
    Poly v = Poly::variable(ring, "v");
    CHECK(*poly_pth_root(u * u + v * v) == u + v);
    CHECK(*poly_pth_root(u.pow(4) * v.pow(2)) == u.pow(2) * v);
    CHECK(!poly_pth_root(u.pow(3)).has_value());

    // seeded sample: pth_root(f^p) = f
    auto ring9 = make_poly_ring(FieldSpec::extension_field(3, 2), {"u", "v"});
    Scalar w = Scalar::generator(ring9->field);
    Poly f = Poly::variable(ring9, "u").pow(2).scaled(w) + Poly::variable(ring9, "v") +
             Poly::constant(ring9, w * w);
    Poly fp = f.pow(3);
    auto root = poly_pth_root(fp);
    REQUIRE(root.has_value());
    CHECK(*root == f);
    CHECK(root->pow(3) == fp);
}

TEST_CASE("expression parser: grammar, errors, rationals") {
    auto ring = make_poly_ring(FieldSpec::rationals(), {"t"});
    CHECK(parse_expression("t^3 + t^4", ring) ==
          Poly::variable(ring, "t").pow(3) + Poly::variable(ring, "t").pow(4));
    CHECK(parse_expression("(1+t)*(1-t)", ring) ==
          Poly::from_int(ring, 1) - Poly::variable(ring, "t").pow(2));
    CHECK(parse_expression("-3*t", ring) == Poly::from_int(ring, -3) * Poly::variable(ring, "t"));
    CHECK(parse_expression("1/2*t", ring).str() == "1/2*t");
    CHECK_THROWS_AS(parse_expression("t^-1", ring), ConicError);
    CHECK_THROWS_AS(parse_expression("w + 1", ring), ConicError); // undeclared
    CHECK_THROWS_AS(parse_expression("t +", ring), ConicError);
    CHECK_THROWS_AS(parse_expression("(t", ring), ConicError);

    auto ring4 = make_poly_ring(FieldSpec::extension_field(2, 2), {"u"});
    Poly g = parse_expression("w^2 + w*u", ring4);
    Scalar w = Scalar::generator(ring4->field);
    CHECK(g == Poly::constant(ring4, w * w) + Poly::variable(ring4, "u").scaled(w));
}

TEST_CASE("series arithmetic and truncation semantics") {
    FieldPtr f = FieldSpec::rationals();
    Series t = Series::variable(f, "t", 6);
    Series one = Series::from_int(f, "t", 6, 1);
    Series p = one + t;
    CHECK((p * p).coeff(2) == Scalar::one(f));
    Series q = p.truncated(3);
    CHECK((p * q).precision() == 3);
    CHECK(p.shifted_up(2).precision() == 8);
    CHECK(p.shifted_up(2).coeff(3) == Scalar::one(f));
    CHECK((p.shifted_up(2)).shifted_down(2) == p);
    CHECK_THROWS_AS(t.shifted_down(2), ConicError);
    CHECK(p.str() == "1 + t");
}

TEST_CASE("series_valuation: stated cases") {
    FieldPtr f = FieldSpec::rationals();
    Series t = Series::variable(f, "t", 8);
    Series v = t.scaled(Scalar::zero(f)); // 0
    Series g = t * t * t + t * t * t * t * t;
    CHECK(series_valuation(g).exact);
    CHECK(series_valuation(g).value == 3);
    CHECK(!series_valuation(v).exact);
    CHECK(series_valuation(v).value == 8);
    // char-2 collapse: 2t = 0
    FieldPtr f2 = FieldSpec::prime_field(2);
    Series t2 = Series::variable(f2, "t", 8);
    Series collapsed = t2 + t2;
    CHECK(!series_valuation(collapsed).exact);
    CHECK(series_valuation(collapsed).value == 8);
}

TEST_CASE("series_invert: stated cases and product check") {
    FieldPtr q = FieldSpec::rationals();
    Series one = Series::from_int(q, "t", 4, 1);
    CHECK(series_invert(one) == one);
    Series p = one + Series::variable(q, "t", 4);
    Series inv = series_invert(p);
    CHECK(inv == Series::from_coeffs(q, "t", 4,
                                     {Scalar::from_int(q, 1), Scalar::from_int(q, -1),
                                      Scalar::from_int(q, 1), Scalar::from_int(q, -1)}));
    CHECK(p * inv == one);

    FieldPtr f2 = FieldSpec::prime_field(2);
    Series p2 = Series::from_int(f2, "t", 4, 1) + Series::variable(f2, "t", 4);
    Series inv2 = series_invert(p2);
    for (int i = 0; i < 4; ++i) CHECK(inv2.coeff(i).is_one());
    CHECK(p2 * inv2 == Series::from_int(f2, "t", 4, 1));

    Series not_unit = Series::variable(q, "t", 4);
    CHECK_THROWS_AS(series_invert(not_unit), ConicError);
}

TEST_CASE("hensel_sqrt: stated values and square-back property") {
    FieldPtr q = FieldSpec::rationals();
    Series one = Series::from_int(q, "t", 4, 1);
    CHECK(hensel_sqrt(one) == one);
    Series u = one + Series::variable(q, "t", 4);
    Series s = hensel_sqrt(u);
    CHECK(s == Series::from_coeffs(q, "t", 4,
                                   {Scalar::from_int(q, 1), Scalar::from_rational(q, Rational(1, 2)),
                                    Scalar::from_rational(q, Rational(-1, 8)),
                                    Scalar::from_rational(q, Rational(1, 16))}));
    CHECK(s * s == u);

    Series u2 = Series::from_coeffs(q, "t", 2, {Scalar::from_int(q, 4), Scalar::one(q)});
    Series s2 = hensel_sqrt(u2);
    CHECK(s2 == Series::from_coeffs(q, "t", 2,
                                    {Scalar::from_int(q, 2), Scalar::from_rational(q, Rational(1, 4))}));
    CHECK(s2 * s2 == u2);

    CHECK_THROWS_AS(hensel_sqrt(Series::from_int(q, "t", 4, 2)), ConicError); // no residue root
    CHECK_THROWS_AS(hensel_sqrt(Series::variable(q, "t", 4)), ConicError);    // not a unit

    // seeded square-back property over F_5 and Q
    for (std::int64_t p : {0LL, 5LL}) {
        FieldPtr f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime_field(p);
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Scalar> c;
            c.push_back(Scalar::one(f)); // unit square residue
            for (int i = 1; i < 12; ++i)
                c.push_back(Scalar::from_int(f, static_cast<std::int64_t>(rng() % 11) - 5));
            Series su = Series::from_coeffs(f, "t", 12, c);
            Series r = hensel_sqrt(su);
            CHECK(r * r == su);
        }
    }
}

TEST_CASE("hensel_factor_quadratic: stated cases and product identity") {
    FieldPtr f2 = FieldSpec::prime_field(2);
    Series one = Series::from_int(f2, "t", 8, 1);
    Series zero = Series::zero(f2, "t", 8);

    auto [d0, e0] = hensel_factor_quadratic(one, zero);
    CHECK(d0 == zero);
    CHECK(e0 == one);

    Series t = Series::variable(f2, "t", 8);
    auto [d1, e1] = hensel_factor_quadratic(one, t);
    // roots of Y^2 + Y + t: t + t^2 + t^4 and 1 + t + t^2 + t^4 mod t^8
    CHECK(d1 == Series::from_coeffs(f2, "t", 8,
                                    {Scalar::zero(f2), Scalar::one(f2), Scalar::one(f2),
                                     Scalar::zero(f2), Scalar::one(f2)}));
    CHECK(e1 == d1 + one);
    // product identity b(Y+d)(Y+e) = bY^2 + Y + c: compare coefficients
    CHECK(d1 + e1 == series_invert(one));
    CHECK(d1 * e1 == t);

    CHECK_THROWS_AS(hensel_factor_quadratic(one, one), ConicError); // Y^2+Y+1 irreducible

    // split over F_4 instead
    FieldPtr f4 = FieldSpec::extension_field(2, 2);
    Series one4 = Series::from_int(f4, "t", 8, 1);
    auto [d2, e2] = hensel_factor_quadratic(one4, one4);
    CHECK(d2 + e2 == one4);
    CHECK(d2 * e2 == one4);
    CHECK(d2.at_zero() == Scalar::generator(f4));

    // seeded product identity with series coefficients
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Scalar> bc, cc;
        bc.push_back(Scalar::one(f2));
        cc.push_back(Scalar::zero(f2)); // split residue Y^2+Y
        for (int i = 1; i < 10; ++i) {
            bc.push_back(Scalar::from_int(f2, static_cast<std::int64_t>(rng() % 2)));
            cc.push_back(Scalar::from_int(f2, static_cast<std::int64_t>(rng() % 2)));
        }
        Series b = Series::from_coeffs(f2, "t", 10, bc);
        Series c = Series::from_coeffs(f2, "t", 10, cc);
        auto [dl, ep] = hensel_factor_quadratic(b, c);
        CHECK(b * (dl + ep) == Series::from_int(f2, "t", 10, 1));
        CHECK(b * dl * ep == c);
        CHECK(dl.at_zero().less_than(ep.at_zero()));
    }
}

TEST_CASE("even_series_sqrt") {
    FieldPtr f4 = FieldSpec::extension_field(2, 2);
    Scalar w = Scalar::generator(f4);
    Series s = Series::from_coeffs(f4, "t", 9,
                                   {w, Scalar::zero(f4), Scalar::one(f4), Scalar::zero(f4),
                                    w * w});
    auto r = even_series_sqrt(s);
    REQUIRE(r.has_value());
    // (r)^2 recovers s on the even part
    Series sq = *r * *r;
    for (int i = 0; i < sq.precision() && i < s.precision(); ++i)
        CHECK(sq.coeff(i) == s.coeff(i));
    Series odd = Series::variable(f4, "t", 6);
    CHECK(!even_series_sqrt(odd).has_value());
}
