#include <doctest.h>

#include "mori/galois.hpp"

using namespace mori;

TEST_CASE("certify the g = 1 worked example") {
    GaloisCertificate cert = certify(validate_quadruple(1, 3, 2, 1));
    CHECK(cert.conclusion == Conclusion::FullSymmetric);
    CHECK(cert.irreducibility.verified);
    REQUIRE(cert.irreducibility.polygon.has_value());
    CHECK(cert.irreducibility.polygon->vertices()[0] == PolygonPoint{0, -2});
    CHECK(cert.irreducibility.polygon->vertices()[1] == PolygonPoint{3, 0});
    REQUIRE(cert.cycle.has_value());
    CHECK(cert.cycle->pattern.degree_partition() == std::vector<unsigned>{2, 1});
    REQUIRE(cert.transposition.has_value());
    CHECK(cert.transposition->ell == 269);
    REQUIRE(cert.discriminant.has_value());
    CHECK(cert.discriminant->d0 == 269);
    CHECK(cert.ramification.splitting_field_ramified_at_2);
    CHECK(cert.ramification.sqrt_disc_unramified_at_2);
    CHECK(cert.ramification.relative_group_over_sqrt_disc == "A_3");
}

TEST_CASE("certify the g = 2 worked example") {
    GaloisCertificate cert = certify(validate_quadruple(2, 5, 2, 1));
    CHECK(cert.conclusion == Conclusion::FullSymmetric);
    REQUIRE(cert.transposition.has_value());
    CHECK(cert.transposition->ell == 13);
    CHECK(cert.transposition->double_root == 9);
    CHECK(cert.cycle->pattern.degree_partition() == std::vector<unsigned>{4, 1});
    CHECK(cert.discriminant->d0 == -144027);
}

TEST_CASE("certify rejects invalid quadruples") {
    MoriQuadruple bad = validate_quadruple(2, 7, 3, 1);
    CHECK_THROWS_AS(certify(bad), std::invalid_argument);
}

TEST_CASE("budget exhaustion downgrades to conditional") {
    // g = 5, p = 11, b = 2, c = 1 has a large D0; a zero budget cannot
    // factor it, so the certificate must degrade gracefully
    MoriQuadruple q = validate_quadruple(5, 11, 2, 1);
    REQUIRE(q.validation.valid());
    CertifyOptions opts;
    opts.budget.trial_bound = 2;
    opts.budget.rho_iterations = 0;
    GaloisCertificate cert = certify(q, opts);
    CHECK(cert.conclusion == Conclusion::ConditionalFullSymmetric);
    CHECK_FALSE(cert.transposition.has_value());
    CHECK_FALSE(cert.discriminant->d0_factors.complete());
}

TEST_CASE("certify_general_trinomial: x^5 - x - 1 is S_5") {
    GeneralCertifyResult res = certify_general_trinomial(5, -1, -1);
    REQUIRE(res.hypotheses.all());
    REQUIRE(res.certificate.has_value());
    const GaloisCertificate& cert = *res.certificate;
    CHECK(cert.conclusion == Conclusion::FullSymmetric);
    REQUIRE(cert.transposition.has_value());
    CHECK(cert.transposition->ell == 19);
    CHECK(cert.transposition->double_root == 13);
    CHECK(cert.irreducibility.verified);
    CHECK(cert.irreducibility.full_degree_prime.has_value());
    CHECK(cert.n_minus_1_cycle_prime.has_value());
    CHECK(cert.discriminant->delta == 2869);
}

TEST_CASE("certify_general_trinomial: x^3 - 8x - 6 is S_3") {
    GeneralCertifyResult res = certify_general_trinomial(3, -8, -6);
    REQUIRE(res.certificate.has_value());
    CHECK(res.certificate->conclusion == Conclusion::FullSymmetric);
    CHECK(res.certificate->transposition->ell == 269);
}

TEST_CASE("certify_general_trinomial: hypothesis gates") {
    // x^2 + 2x + 1 = (x+1)^2: vanishing discriminant
    GeneralCertifyResult sq = certify_general_trinomial(2, 2, 1);
    CHECK_FALSE(sq.hypotheses.squarefree);
    CHECK_FALSE(sq.certificate.has_value());

    // x^4 + 2x + 1: Delta = -176 = 2^4 * (-11), D0 = -11 = 1 mod 4
    GeneralCertifyResult ok = certify_general_trinomial(4, 2, 1);
    CHECK(ok.hypotheses.all());

    // x^2 + 4x + 1: Delta = 12 = 2^2 * 3, D0 = 3 mod 4
    GeneralCertifyResult bad = certify_general_trinomial(2, 4, 1);
    CHECK_FALSE(bad.hypotheses.d0_1_mod_4);
    CHECK_FALSE(bad.certificate.has_value());

    // x^2 + 2x - 1: Delta = 8, odd 2-adic valuation
    GeneralCertifyResult odd2 = certify_general_trinomial(2, 2, -1);
    CHECK_FALSE(odd2.hypotheses.even_two_valuation);

    // x^2 + 3x + 2 = (x+1)(x+2): Delta = 1, a perfect square
    GeneralCertifyResult square = certify_general_trinomial(2, 3, 2);
    CHECK_FALSE(square.hypotheses.delta_not_square);

    // gcd(B, C) = 3 is neither 1 nor a power of two
    GeneralCertifyResult gc = certify_general_trinomial(4, 3, 3);
    CHECK_FALSE(gc.hypotheses.gcd_b_c_power_of_2);
}

TEST_CASE("subgroup oracle: n = 3") {
    SubgroupOracleReport r = subgroup_oracle(3);
    CHECK(r.property_holds);
    CHECK(r.subgroup_count == 6);   // 1, three C2, C3, S3
    CHECK(r.class_count == 4);
    CHECK(r.transitive_class_count == 2);  // A_3 and S_3
    // only S_3 among the transitive classes contains a transposition
    int with_transposition = 0;
    for (const auto& c : r.classes)
        if (c.transitive && c.has_transposition) {
            ++with_transposition;
            CHECK(c.is_full_symmetric);
        }
    CHECK(with_transposition == 1);
}

TEST_CASE("subgroup oracle: n = 5 finds 156 subgroups") {
    SubgroupOracleReport r = subgroup_oracle(5);
    CHECK(r.property_holds);
    CHECK(r.subgroup_count == 156);
    CHECK(r.class_count == 19);
    CHECK_THROWS_AS(subgroup_oracle(9), std::invalid_argument);
    CHECK_THROWS_AS(subgroup_oracle(4), std::invalid_argument);
}

TEST_CASE("frobenius_sample: x^3 - 8x - 6 below 100 shows all three types") {
    CycleTypeHistogram hist = frobenius_sample(Trinomial{3, -8, -6}, 100);
    CHECK(hist.counts.count({1, 1, 1}) == 1);
    CHECK(hist.counts.count({2, 1}) == 1);
    CHECK(hist.counts.count({3}) == 1);
    // primes 2 and 269 are excluded; 269 > 100 anyway
    std::size_t total = 0;
    for (const auto& [part, c] : hist.counts) total += c;
    CHECK(total == hist.sample_size);
    CHECK(hist.sample_size == 24);  // odd primes below 100 (25 primes incl. 2)

    CHECK(frobenius_sample(Trinomial{3, -8, -6}, 2).sample_size == 0);
}

TEST_CASE("frobenius_sample includes q = 5 for the g = 2 trinomial") {
    // v_5(Delta) = 0, so 5 is unramified and contributes pattern [4,1]
    CycleTypeHistogram hist = frobenius_sample(Trinomial{5, -32, -40}, 5);
    REQUIRE(hist.counts.count({4, 1}) == 1);
    CHECK(hist.counts.at({4, 1}) == 1);
    CHECK(hist.sample_size == 1);  // q = 3 divides Delta and is excluded
}

TEST_CASE("every searched quadruple with g <= 3 certifies FullSymmetric") {
    std::vector<MoriQuadruple> corpus;
    for (auto q : search_quadruples(1, {3, 12}, {1, 5}, {1, 3})) corpus.push_back(q);
    for (auto q : search_quadruples(2, {5, 15}, {1, 5}, {1, 3})) corpus.push_back(q);
    for (auto q : search_quadruples(3, {7, 15}, {1, 5}, {1, 3})) corpus.push_back(q);
    REQUIRE(corpus.size() >= 10);
    for (const auto& q : corpus) {
        GaloisCertificate cert = certify(q);
        CHECK(cert.conclusion == Conclusion::FullSymmetric);
        REQUIRE(cert.transposition.has_value());
        CHECK(cert.transposition->ell != 2);
        CHECK(cert.transposition->ell != q.p);
        CHECK(cert.transposition->delta_valuation % 2 == 1);
        // exactly one multiplicity-2 entry, everything else simple
        unsigned doubles = 0;
        for (const auto& e : cert.transposition->pattern.entries) {
            CHECK(e.multiplicity <= 2);
            if (e.multiplicity == 2) {
                ++doubles;
                CHECK(e.degree == 1);
            }
        }
        CHECK(doubles == 1);
    }
}

TEST_CASE("FullSymmetric certificates see all three landmark cycle types below 10^4") {
    // n-cycle, [1, 2g] and a transposition pattern must all occur by
    // Chebotarev; checked as a smoke test on the worked examples
    for (auto [g, p, b, c] :
         std::vector<std::tuple<unsigned, long, long, long>>{{1, 3, 2, 1}, {2, 5, 2, 1}}) {
        MoriQuadruple q = validate_quadruple(g, p, b, c);
        GaloisCertificate cert = certify(q);
        REQUIRE(cert.conclusion == Conclusion::FullSymmetric);
        CycleTypeHistogram hist = frobenius_sample(cert.trinomial, 10000);
        unsigned n = 2 * g + 1;
        Partition full{n};
        Partition cycle2g{2 * g, 1};
        Partition transposition(n - 1, 1);
        transposition[0] = 2;
        CHECK(hist.counts.count(full) == 1);
        CHECK(hist.counts.count(cycle2g) == 1);
        CHECK(hist.counts.count(transposition) == 1);
    }
}

TEST_CASE("frobenius_sample: deterministic parallel merge") {
    CycleTypeHistogram seq = frobenius_sample(Trinomial{5, -32, -40}, 20000, 1);
    CycleTypeHistogram par = frobenius_sample(Trinomial{5, -32, -40}, 20000, 4);
    CHECK(seq.counts == par.counts);
    CHECK(seq.sample_size == par.sample_size);
}

TEST_CASE("sn_class_distribution") {
    auto d3 = sn_class_distribution(3);
    CHECK(d3.at({1, 1, 1}) == mpq_class(1, 6));
    CHECK(d3.at({2, 1}) == mpq_class(1, 2));
    CHECK(d3.at({3}) == mpq_class(1, 3));

    auto d5 = sn_class_distribution(5);
    CHECK(d5.size() == 7);
    CHECK(d5.at({5}) == mpq_class(1, 5));
    CHECK(d5.at({4, 1}) == mpq_class(1, 4));
    CHECK(d5.at({3, 2}) == mpq_class(1, 6));
    CHECK(d5.at({1, 1, 1, 1, 1}) == mpq_class(1, 120));
    mpq_class sum = 0;
    for (const auto& [p, f] : d5) sum += f;
    CHECK(sum == 1);

    auto d1 = sn_class_distribution(1);
    CHECK(d1.at({1}) == 1);
    CHECK_THROWS_AS(sn_class_distribution(13), std::invalid_argument);
}

TEST_CASE("compare_distribution") {
    auto expected = sn_class_distribution(5);

    // perfect match: counts proportional to 1/z_lambda over 120 samples
    CycleTypeHistogram perfect;
    perfect.n = 5;
    perfect.sample_size = 120;
    for (const auto& [part, freq] : expected) {
        mpq_class c = freq * 120;
        perfect.counts[part] = static_cast<std::size_t>(c.get_num().get_ui());
    }
    auto cmp = compare_distribution(perfect, expected);
    CHECK(cmp.max_deviation == 0);
    CHECK(cmp.missing.empty());

    // everything concentrated on one partition: deviation >= 3/4
    CycleTypeHistogram lumped;
    lumped.n = 5;
    lumped.sample_size = 10000;
    lumped.counts[{4, 1}] = 10000;
    auto cmp2 = compare_distribution(lumped, expected);
    CHECK(cmp2.max_deviation >= mpq_class(3, 4));
    CHECK_FALSE(cmp2.missing.empty());
}
