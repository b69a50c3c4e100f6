#include <doctest.h>

#include <random>

#include "mori/numfield.hpp"

using namespace mori;

TEST_CASE("field construction and omega conventions") {
    ImagQuadField gauss = ImagQuadField::make(-1);
    CHECK_FALSE(gauss.half_integral());
    CHECK(gauss.discriminant() == -4);
    CHECK(gauss.omega_description() == "sqrt(-1)");

    ImagQuadField k7 = ImagQuadField::make(-7);
    CHECK(k7.half_integral());
    CHECK(k7.discriminant() == -7);
    CHECK(k7.min_poly_c() == 2);  // t^2 - t + 2

    CHECK_THROWS_AS(ImagQuadField::make(-5), std::invalid_argument);
    CHECK_THROWS_AS(ImagQuadField::make(1), std::invalid_argument);
    CHECK(ImagQuadField::supported().size() == 9);
}

TEST_CASE("norm is multiplicative in every supported field") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (int d : ImagQuadField::supported()) {
        ImagQuadField K = ImagQuadField::make(d);
        for (int i = 0; i < 25; ++i) {
            OKElement a{dist(rng), dist(rng)}, b{dist(rng), dist(rng)};
            CHECK(K.norm(K.mul(a, b)) == K.norm(a) * K.norm(b));
            CHECK(K.norm(a) >= 0);
            // norm = a * conj(a)
            OKElement prod = K.mul(a, K.conj(a));
            CHECK(prod.x == K.norm(a));
            CHECK(prod.y == 0);
        }
    }
}

TEST_CASE("OK element parsing and printing") {
    ImagQuadField K = ImagQuadField::make(-1);
    CHECK(K.parse("2+i") == OKElement{2, 1});
    CHECK(K.parse("2-i") == OKElement{2, -1});
    CHECK(K.parse("-3") == OKElement{-3, 0});
    CHECK(K.parse("5*i") == OKElement{0, 5});
    CHECK(K.parse("1+2*w") == OKElement{1, 2});
    CHECK(K.to_string(OKElement{2, 1}) == "2+i");
    CHECK(K.to_string(OKElement{0, -1}) == "-i");
    CHECK(K.parse(K.to_string(OKElement{-7, 12})) == OKElement{-7, 12});

    ImagQuadField k7 = ImagQuadField::make(-7);
    CHECK(k7.parse("1-2*w") == OKElement{1, -2});
    CHECK(k7.to_string(OKElement{1, -2}) == "1-2*w");
}

TEST_CASE("exact division") {
    ImagQuadField K = ImagQuadField::make(-1);
    OKElement a{2, 1}, b{1, 3};
    OKElement prod = K.mul(a, b);
    CHECK(K.divides(a, prod));
    CHECK(K.exact_div(prod, a) == b);
    CHECK_FALSE(K.divides(K.from_int(2), OKElement{1, 0}));
    CHECK_THROWS_AS(K.exact_div(OKElement{1, 0}, K.from_int(2)), std::invalid_argument);
}

TEST_CASE("splitting in Q(i)") {
    ImagQuadField K = ImagQuadField::make(-1);

    auto at5 = splitting(5, K);
    REQUIRE(at5.size() == 2);
    for (const auto& ideal : at5) {
        CHECK(ideal.res_degree == 1);
        CHECK(ideal.ram_index == 1);
        CHECK(K.norm(ideal.generator) == 5);
    }

    auto at163 = splitting(163, K);
    REQUIRE(at163.size() == 1);
    CHECK(at163[0].res_degree == 2);
    CHECK(at163[0].generator == K.from_int(163));

    auto at2 = splitting(2, K);
    REQUIRE(at2.size() == 1);
    CHECK(at2[0].ram_index == 2);
    CHECK(K.norm(at2[0].generator) == 2);  // (1 + i)
}

TEST_CASE("splitting consistency: sum of e*f over ideals above p equals 2") {
    std::vector<mpz_class> ps = {2, 3, 5, 7, 11, 13, 17, 19, 23, 163};
    for (int d : ImagQuadField::supported()) {
        ImagQuadField K = ImagQuadField::make(d);
        for (const auto& p : ps) {
            unsigned total = 0;
            for (const auto& ideal : splitting(p, K))
                total += ideal.ram_index * ideal.res_degree;
            CHECK(total == 2);
        }
    }
}

TEST_CASE("2 splits in Q(sqrt(-7)) and is inert in Q(sqrt(-3))") {
    ImagQuadField K = ImagQuadField::make(-7);
    auto at2 = splitting(2, K);
    REQUIRE(at2.size() == 2);
    for (const auto& ideal : at2) {
        CHECK(ideal.ram_index == 1);
        CHECK(ideal.res_degree == 1);
        CHECK(K.norm(ideal.generator) == 2);
    }
    auto inert2 = splitting(2, ImagQuadField::make(-3));
    REQUIRE(inert2.size() == 1);
    CHECK(inert2[0].res_degree == 2);
}

TEST_CASE("residue maps") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);
    CHECK(p5.p == 5);
    CHECK(p5.omega_a0 == 3);  // i = 3 mod (2+i)
    FqContext ctx = residue_field(p5);
    CHECK(residue_map(K.from_int(5), p5, ctx, K) == ctx.zero());
    CHECK(residue_map(K.from_int(1), p5, ctx, K) == ctx.one());
    CHECK(residue_map(OKElement{0, 1}, p5, ctx, K) == ctx.make(3));
    CHECK(residue_map(K.parse("2+i"), p5, ctx, K) == ctx.zero());

    // inert: omega's image must satisfy its minimal polynomial in F_{p^2}
    MaximalIdeal p163 = splitting(163, K)[0];
    FqContext c163 = residue_field(p163);
    CHECK(c163.k() == 2);
    FqElement omega = residue_map(OKElement{0, 1}, p163, c163, K);
    CHECK(c163.mul(omega, omega) == c163.make(-1));  // omega^2 = -1

    ImagQuadField k7 = ImagQuadField::make(-7);
    MaximalIdeal inert = splitting(5, k7)[0];  // (-7/5) = -1
    FqContext c5 = residue_field(inert);
    FqElement w = residue_map(OKElement{0, 1}, inert, c5, k7);
    // w^2 - w + 2 = 0
    CHECK(c5.add(c5.sub(c5.mul(w, w), w), c5.make(2)) == c5.zero());
}

TEST_CASE("ideal valuation") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal b2 = splitting(2, K)[0];
    CHECK(ideal_valuation(K.from_int(2), b2, K) == 2);  // 2 = -i (1+i)^2
    CHECK(ideal_valuation(K.from_int(4), b2, K) == 4);
    CHECK(ideal_valuation(K.from_int(5), b2, K) == 0);
    CHECK(ideal_valuation(OKElement{1, 1}, b2, K) == 1);

    MaximalIdeal p163 = splitting(163, K)[0];
    CHECK(ideal_valuation(K.from_int(-652), p163, K) == 1);
}

TEST_CASE("ideal coprimality") {
    ImagQuadField K = ImagQuadField::make(-1);
    CHECK(ideals_coprime(K.from_int(2), K.from_int(5), K));
    CHECK_FALSE(ideals_coprime(K.from_int(10), K.from_int(5), K));
    // 2 and 1+i share the ideal (1+i)
    CHECK_FALSE(ideals_coprime(K.from_int(2), OKElement{1, 1}, K));
    // 2+i and 2-i are coprime (distinct primes above 5)
    CHECK(ideals_coprime(K.parse("2+i"), K.parse("2-i"), K));
    CHECK(ideals_coprime(K.from_int(1), K.from_int(100), K));
}

TEST_CASE("ideal_from_generator") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal inert = ideal_from_generator(K.from_int(163), K);
    CHECK(inert.res_degree == 2);
    CHECK(inert.p == 163);

    MaximalIdeal ram = ideal_from_generator(K.parse("1+i"), K);
    CHECK(ram.ram_index == 2);
    CHECK(ram.p == 2);

    // 3+4i = (2+i)^2 generates a non-maximal ideal
    CHECK_THROWS_AS(ideal_from_generator(K.parse("3+4*i"), K), std::invalid_argument);
    CHECK_THROWS_AS(ideal_from_generator(K.from_int(1), K), std::invalid_argument);
}

TEST_CASE("validate_generalized_quadruple: the Q(i) worked example") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);

    GenMoriQuadruple good =
        validate_generalized_quadruple(K, 1, p5, K.from_int(2), K.from_int(5));
    CHECK(good.validation.valid());

    // c = 2+i fails (iii): c - 1 = 1+i is not in 2O
    GenMoriQuadruple bad =
        validate_generalized_quadruple(K, 1, p5, K.from_int(2), K.parse("2+i"));
    CHECK_FALSE(bad.validation.valid());
    CHECK(bad.validation.c_in_p);
    CHECK_FALSE(bad.validation.c_minus_1_even);

    // b in the ideal fails (ii)
    GenMoriQuadruple bad2 =
        validate_generalized_quadruple(K, 1, p5, K.from_int(5), K.from_int(5));
    CHECK_FALSE(bad2.validation.b_primitive);
}

TEST_CASE("certify_K: the Q(i) worked example is S_3 over K") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);
    GenMoriQuadruple q =
        validate_generalized_quadruple(K, 1, p5, K.from_int(2), K.from_int(5));
    REQUIRE(q.validation.valid());

    KCertificate cert = certify_K(K, q);
    CHECK(cert.conclusion == Conclusion::FullSymmetric);

    // U = x^3 - 8x - 10
    REQUIRE(cert.u_coeffs.size() == 4);
    CHECK(cert.u_coeffs[0] == K.from_int(-10));
    CHECK(cert.u_coeffs[1] == K.from_int(-8));

    CHECK(cert.irreducible);
    CHECK(cert.ideal_above_2.ram_index == 2);
    REQUIRE(cert.polygon.has_value());
    CHECK(cert.polygon->vertices()[0] == PolygonPoint{0, -4});  // -2 e(b2)
    CHECK(cert.polygon->vertices()[1] == PolygonPoint{3, 0});

    CHECK(cert.mod_p_pattern.degree_partition() == std::vector<unsigned>{2, 1});
    CHECK(cert.lang_criterion_holds);

    CHECK(cert.delta == K.from_int(-652));
    CHECK(cert.m == 1);
    CHECK(cert.d0 == K.from_int(-163));
    CHECK(cert.d0_minus_1_in_4O);

    REQUIRE(cert.transposition.has_value());
    CHECK(cert.transposition->ideal.p == 163);
    CHECK(cert.transposition->ideal.res_degree == 2);
    CHECK(cert.transposition->double_root == FqElement{100, 0});
    CHECK(cert.transposition->root_in_prime_subfield);
    CHECK(cert.transposition->delta_valuation == 1);
}

TEST_CASE("D0 - 1 lies in 4O for valid generalized quadruples") {
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);
    GenMoriQuadruple q =
        validate_generalized_quadruple(K, 1, p5, K.from_int(2), K.from_int(5));
    KCertificate cert = certify_K(K, q);
    OKElement diff = K.sub(cert.d0, K.from_int(1));
    CHECK(K.divides(K.from_int(4), diff));
}

TEST_CASE("generate_quadruple finds p = 5 for Q(i), g = 1") {
    ImagQuadField K = ImagQuadField::make(-1);
    GenMoriQuadruple q = generate_quadruple(K, 1, {50, 8});
    CHECK(q.validation.valid());
    CHECK(q.p_ideal.p == 5);  // p = 3 divides 2g+1 = 3 and is skipped

    KSearchBounds empty{2, 1};
    CHECK_THROWS_AS(generate_quadruple(K, 1, empty), std::runtime_error);
}

TEST_CASE("generated quadruples certify end to end") {
    ImagQuadField K = ImagQuadField::make(-1);
    GenMoriQuadruple q = generate_quadruple(K, 1, {50, 8});
    KCertificate cert = certify_K(K, q);
    CHECK(cert.conclusion == Conclusion::FullSymmetric);

    ImagQuadField k7 = ImagQuadField::make(-7);
    GenMoriQuadruple q7 = generate_quadruple(k7, 1, {50, 8});
    KCertificate cert7 = certify_K(k7, q7);
    CHECK(cert7.conclusion == Conclusion::FullSymmetric);
}

TEST_CASE("at most one multiple root at every odd ideal of K") {
    // U = x^3 - 8x - 10 from the Q(i) worked example; scan ideals above all
    // odd primes below 60 plus the transposition prime 163
    ImagQuadField K = ImagQuadField::make(-1);
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);
    GenMoriQuadruple q =
        validate_generalized_quadruple(K, 1, p5, K.from_int(2), K.from_int(5));
    KCertificate cert = certify_K(K, q);
    unsigned n = q.degree();

    std::vector<mpz_class> rational_primes;
    for (unsigned long r : primes_up_to(60))
        if (r > 2) rational_primes.emplace_back(r);
    rational_primes.emplace_back(163);

    for (const auto& r : rational_primes) {
        for (const auto& ideal : splitting(r, K)) {
            FqContext ctx = residue_field(ideal);
            std::vector<FqElement> coeffs;
            for (const auto& a : cert.u_coeffs)
                coeffs.push_back(residue_map(a, ideal, ctx, K));
            FqPoly ubar(ctx, std::move(coeffs));
            auto prof = multiplicity_profile(ubar);
            CHECK(prof.size() <= 1);
            for (const auto& entry : prof) {
                CHECK(entry.multiplicity == 2);
                CHECK(entry.is_linear);  // the double root lies in k(b)
                CHECK_FALSE(ctx.is_zero(entry.root));
                FqElement gamma = expected_double_root(
                    n, residue_map(cert.u_coeffs[1], ideal, ctx, K),
                    residue_map(cert.u_coeffs[0], ideal, ctx, K), ctx);
                CHECK(entry.root == gamma);
            }
        }
    }
}

TEST_CASE("generated quadruples certify in every supported field") {
    for (int d : ImagQuadField::supported()) {
        ImagQuadField K = ImagQuadField::make(d);
        GenMoriQuadruple q = generate_quadruple(K, 1, {200, 10});
        KCertificate cert = certify_K(K, q);
        CHECK(cert.conclusion == Conclusion::FullSymmetric);
        CHECK(cert.ramified_at_all_divisors_of_2);
        CHECK(cert.unramified_outside_2);
        REQUIRE(cert.transposition.has_value());
        // the transposition ideal is never the quadruple's own ideal p
        bool same = cert.transposition->ideal.p == q.p_ideal.p &&
                    K.divides(cert.transposition->ideal.generator,
                              q.p_ideal.generator) &&
                    K.divides(q.p_ideal.generator,
                              cert.transposition->ideal.generator);
        CHECK_FALSE(same);
    }
}

TEST_CASE("a g = 2 generalized quadruple certifies S_5 over Q(i)") {
    // p = 5 divides 2g+1 and is skipped by the generator; p = 13 is next
    ImagQuadField K = ImagQuadField::make(-1);
    GenMoriQuadruple q = generate_quadruple(K, 2, {200, 10});
    CHECK(q.p_ideal.p == 13);
    KCertificate cert = certify_K(K, q);
    CHECK(cert.conclusion == Conclusion::FullSymmetric);
}

TEST_CASE("rational data embedded in Q(i) matches the rational route") {
    // g = 2, p = 5, b = 2, c = 5: over Q the trinomial of (2,5,2,1) has
    // pc = 5, so U agrees with the generalized quadruple using c = 5
    ImagQuadField K = ImagQuadField::make(-1);
    MoriQuadruple rq = validate_quadruple(2, 5, 2, 1);
    REQUIRE(rq.validation.valid());
    MaximalIdeal p5 = ideal_from_generator(K.parse("2+i"), K);
    GenMoriQuadruple kq =
        validate_generalized_quadruple(K, 2, p5, K.from_int(2), K.from_int(5));
    REQUIRE(kq.validation.valid());
    KCertificate cert = certify_K(K, kq);
    DiscriminantDecomposition dec = d0_closed_form(rq);
    CHECK(cert.delta.x == dec.delta);
    CHECK(cert.delta.y == 0);
    CHECK(cert.d0.x == dec.d0);
    CHECK(cert.conclusion == Conclusion::FullSymmetric);
}
