#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conicdisc/mat3.hpp"

using namespace conicdisc;

namespace {

Mat3<Scalar> random_invertible(const FieldPtr& f, std::mt19937_64& rng) {
    const std::int64_t q = f->order();
    while (true) {
        std::array<std::array<Scalar, 3>, 3> e;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                e[i][j] = Scalar::from_int(f, static_cast<std::int64_t>(rng() % q));
        Mat3<Scalar> m = Mat3<Scalar>::from_entries(std::move(e));
        if (m.is_invertible()) return m;
    }
}

Series random_series(const FieldPtr& f, const std::string& var, int prec,
                     std::mt19937_64& rng, bool unit) {
    const std::int64_t q = f->order();
    std::vector<Scalar> c(prec, Scalar::zero(f));
    for (int i = 0; i < prec; ++i) c[i] = Scalar::from_int(f, static_cast<std::int64_t>(rng() % q));
    if (unit && c[0].is_zero()) c[0] = Scalar::one(f);
    return Series::from_coeffs(f, var, prec, c);
}

Mat3<Series> random_invertible_series(const FieldPtr& f, int prec, std::mt19937_64& rng) {
    while (true) {
        std::array<std::array<Series, 3>, 3> e;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e[i][j] = random_series(f, "t", prec, rng, false);
        Mat3<Series> m = Mat3<Series>::from_entries(std::move(e));
        if (m.is_invertible()) return m;
    }
}

} // namespace

TEST_CASE("decompose_gl3: stated cases") {
    FieldPtr f3 = FieldSpec::prime_field(3);
    Scalar one = Scalar::one(f3);

    Mat3<Scalar> id = Mat3<Scalar>::identity(one);
    CHECK(decompose_gl3(id).empty());

    ElementaryMove<Scalar> swap_xy{ElementaryMove<Scalar>::Kind::Swap, Axis::X, Axis::Y,
                                   Scalar::zero(f3)};
    Mat3<Scalar> sw = move_matrix(swap_xy, one);
    auto moves = decompose_gl3(sw);
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].kind == ElementaryMove<Scalar>::Kind::Swap);
    CHECK(product_of_moves(moves, one) == sw);

    ElementaryMove<Scalar> shear{ElementaryMove<Scalar>::Kind::Shear, Axis::X, Axis::Y, one};
    Mat3<Scalar> sh = move_matrix(shear, one);
    auto moves2 = decompose_gl3(sh);
    REQUIRE(moves2.size() == 1);
    CHECK(moves2[0].kind == ElementaryMove<Scalar>::Kind::Shear);
    CHECK(product_of_moves(moves2, one) == sh);
}

TEST_CASE("decompose_gl3: product reconstruction, 1000 seeded matrices per field") {
    for (std::int64_t p : {2, 3, 5}) {
        FieldPtr f = FieldSpec::prime_field(p);
        std::mt19937_64 rng(1000 + p);
        for (int trial = 0; trial < 1000; ++trial) {
            Mat3<Scalar> m = random_invertible(f, rng);
            auto moves = decompose_gl3(m);
            CHECK(product_of_moves(moves, Scalar::one(f)) == m);
        }
    }
}

TEST_CASE("decompose_gl3 over F_3[[t]]/(t^8): 1000 seeded matrices") {
    FieldPtr f = FieldSpec::prime_field(3);
    std::mt19937_64 rng(42);
    Series sample = Series::from_int(f, "t", 8, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        Mat3<Series> m = random_invertible_series(f, 8, rng);
        auto moves = decompose_gl3(m);
        Mat3<Series> prod = product_of_moves(moves, sample);
        CHECK(prod == m);
    }
}

TEST_CASE("decompose_gl3 rejects non-invertible input") {
    FieldPtr f = FieldSpec::prime_field(3);
    std::array<std::array<Scalar, 3>, 3> e;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e[i][j] = Scalar::from_int(f, i == j ? 1 : 0);
    e[2][2] = Scalar::zero(f);
    Mat3<Scalar> m = Mat3<Scalar>::from_entries(std::move(e));
    CHECK_THROWS_AS(decompose_gl3(m), ConicError);

    // over a series ring: det must be a unit, not merely nonzero
    Series t = Series::variable(f, "t", 8);
    std::array<std::array<Series, 3>, 3> se;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            se[i][j] = i == j ? Series::from_int(f, "t", 8, 1) : Series::zero(f, "t", 8);
    se[0][0] = t; // det = t: nonzero but not a unit
    Mat3<Series> ms = Mat3<Series>::from_entries(std::move(se));
    CHECK_THROWS_AS(decompose_gl3(ms), ConicError);
}
