#include "mori/io.hpp"

#include <sstream>

namespace mori {

namespace {

Json fq_to_json(const FqElement& e, unsigned k) {
    if (k == 1) return e.a0.get_str();
    return Json::array({e.a0.get_str(), e.a1.get_str()});
}

Json coeffs_to_json(const std::vector<FqElement>& coeffs, unsigned k) {
    Json arr = Json::array();
    for (const auto& c : coeffs) arr.push_back(fq_to_json(c, k));
    return arr;
}

Json validation_to_json(const QuadrupleValidation& v) {
    Json j;
    j["p_odd_prime"] = v.p_odd_prime;
    j["p_probable_only"] = v.p_probable_only;
    j["condition_i"] = v.divisors_of_g_divide_half_p_minus_1;
    j["condition_ii"] = v.b_primitive_root;
    j["condition_iii"] = v.c_odd_and_coprime;
    j["c_congruent_minus_p_mod_4"] = v.c_congruent_minus_p_mod_4;
    j["failures"] = v.failures;
    return j;
}

Json ideal_to_json(const IdealDescriptor& d, const ImagQuadField& K) {
    Json j;
    j["p"] = d.p.get_str();
    j["residue_degree"] = d.res_degree;
    j["ramification_index"] = d.ram_index;
    j["generator"] = K.to_string(d.generator);
    return j;
}

}  // namespace

Json quadruple_to_json(const MoriQuadruple& q) {
    Json j;
    j["type"] = "mori_quadruple";
    j["g"] = q.g;
    j["p"] = q.p.get_str();
    j["b"] = q.b.get_str();
    j["c"] = q.c.get_str();
    j["validation"] = validation_to_json(q.validation);
    return j;
}

Json pattern_to_json(const FactorPattern& p) {
    Json arr = Json::array();
    for (const auto& e : p.entries) {
        Json je;
        je["degree"] = e.degree;
        je["multiplicity"] = e.multiplicity;
        unsigned k = 1;
        for (const auto& c : e.factor_coeffs)
            if (c.a1 != 0) k = 2;
        // element width is decided per pattern entry by the context the
        // caller used; a1 == 0 everywhere serializes in prime-field form
        je["coeffs"] = coeffs_to_json(e.factor_coeffs, k);
        arr.push_back(je);
    }
    return arr;
}

Json polygon_to_json(const NewtonPolygon& pg) {
    Json j;
    Json verts = Json::array();
    for (const auto& v : pg.vertices()) verts.push_back(Json::array({v.index, v.valuation}));
    j["vertices"] = verts;
    Json segs = Json::array();
    for (const auto& s : pg.segments()) {
        Json js;
        js["from"] = Json::array({s.from.index, s.from.valuation});
        js["to"] = Json::array({s.to.index, s.to.valuation});
        std::ostringstream os;
        os << s.slope_num << "/" << s.slope_den;
        js["slope"] = os.str();
        js["lattice_points"] = s.lattice_points;
        segs.push_back(js);
    }
    j["segments"] = segs;
    return j;
}

Json factorization_to_json(const Factorization& f) {
    Json j;
    j["sign"] = f.sign;
    Json primes = Json::array();
    for (const auto& [p, e] : f.prime_powers)
        primes.push_back(Json::array({p.get_str(), e}));
    j["primes"] = primes;
    j["cofactor"] = f.cofactor.get_str();
    j["any_probable_prime"] = f.any_probable_prime;
    return j;
}

Json histogram_to_json(const CycleTypeHistogram& h) {
    Json j;
    j["n"] = h.n;
    j["prime_bound"] = h.prime_bound;
    j["sample_size"] = h.sample_size;
    Json counts = Json::array();
    for (const auto& [part, count] : h.counts) {
        Json je;
        je["partition"] = part;
        je["count"] = count;
        counts.push_back(je);
    }
    j["counts"] = counts;
    return j;
}

Json oracle_report_to_json(const SubgroupOracleReport& r) {
    Json j;
    j["n"] = r.n;
    j["property_holds"] = r.property_holds;
    j["subgroup_count"] = r.subgroup_count;
    j["class_count"] = r.class_count;
    j["transitive_class_count"] = r.transitive_class_count;
    Json classes = Json::array();
    for (const auto& c : r.classes) {
        Json jc;
        jc["order"] = c.order;
        jc["class_size"] = c.class_size;
        jc["transitive"] = c.transitive;
        jc["has_n_minus_1_cycle"] = c.has_n_minus_1_cycle;
        jc["has_transposition"] = c.has_transposition;
        classes.push_back(jc);
    }
    j["classes"] = classes;
    return j;
}

Json hypothesis_report_to_json(const TrinomialHypothesisReport& r) {
    Json j;
    j["b_nonzero"] = r.b_nonzero;
    j["c_nonzero"] = r.c_nonzero;
    j["squarefree"] = r.squarefree;
    j["gcd_b_c_power_of_2"] = r.gcd_b_c_power_of_2;
    j["gcd_n_b_power_of_2"] = r.gcd_n_b_power_of_2;
    j["gcd_n1_c_power_of_2"] = r.gcd_n1_c_power_of_2;
    j["even_two_valuation"] = r.even_two_valuation;
    j["d0_1_mod_4"] = r.d0_1_mod_4;
    j["delta_not_square"] = r.delta_not_square;
    j["failures"] = r.failures;
    return j;
}

Json certificate_to_json(const GaloisCertificate& cert, const DocumentMeta& meta) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = meta.command;
    j["timestamp"] = meta.timestamp;
    j["verification_seed"] = std::to_string(meta.seed);

    if (cert.quadruple) {
        j["input"] = quadruple_to_json(*cert.quadruple);
    } else {
        Json in;
        in["type"] = "trinomial";
        in["n"] = cert.trinomial.n;
        in["B"] = cert.trinomial.B.get_str();
        in["C"] = cert.trinomial.C.get_str();
        j["input"] = in;
        j["prime_scan_bound"] = cert.cycle_scan_bound;
    }
    Json polys;
    if (cert.f_polynomial) polys["f"] = cert.f_polynomial->to_string();
    polys["u"] = cert.trinomial.to_polynomial().to_string();
    j["polynomials"] = polys;

    Json w;
    {
        Json irr;
        if (cert.irreducibility.polygon) {
            irr["newton_polygon"] = polygon_to_json(*cert.irreducibility.polygon);
            irr["span_gcd"] = cert.irreducibility.span_gcd;
        }
        if (cert.irreducibility.full_degree_prime)
            irr["full_degree_prime"] = cert.irreducibility.full_degree_prime->get_str();
        irr["verified"] = cert.irreducibility.verified;
        w["irreducibility"] = irr;
    }
    if (cert.cycle) {
        Json c;
        c["prime"] = cert.cycle->p.get_str();
        c["pattern"] = pattern_to_json(cert.cycle->pattern);
        c["lang_criterion_holds"] = cert.cycle->lang_criterion_holds;
        w["cycle"] = c;
    }
    if (cert.n_minus_1_cycle_prime)
        w["n_minus_1_cycle_prime"] = cert.n_minus_1_cycle_prime->get_str();
    if (cert.transposition) {
        Json t;
        t["ell"] = cert.transposition->ell.get_str();
        t["double_root"] = cert.transposition->double_root.get_str();
        t["delta_valuation"] = cert.transposition->delta_valuation;
        t["pattern"] = pattern_to_json(cert.transposition->pattern);
        Json others = Json::array();
        for (const auto& [ell, gamma] : cert.transposition->others_verified) {
            Json o;
            o["ell"] = ell.get_str();
            o["double_root"] = gamma.get_str();
            others.push_back(o);
        }
        t["others_verified"] = others;
        w["transposition"] = t;
    }
    if (cert.discriminant) {
        Json d;
        d["delta"] = cert.discriminant->delta.get_str();
        d["m"] = cert.discriminant->m;
        d["d0"] = cert.discriminant->d0.get_str();
        d["delta_is_square"] = cert.discriminant->delta_is_square;
        d["factors"] = factorization_to_json(cert.discriminant->d0_factors);
        w["discriminant"] = d;
    }
    j["witnesses"] = w;
    j["conclusion"] = to_string(cert.conclusion);
    j["failing_stage"] = cert.failing_stage;
    j["status_note"] = cert.status_note;
    Json ram;
    ram["splitting_field_ramified_at_2"] = cert.ramification.splitting_field_ramified_at_2;
    ram["sqrt_disc_unramified_at_2"] = cert.ramification.sqrt_disc_unramified_at_2;
    ram["relative_ramified_at_divisors_of_2"] =
        cert.ramification.relative_ramified_at_divisors_of_2;
    ram["odd_primes_unramified_over_sqrt_disc"] =
        cert.ramification.odd_primes_unramified_over_sqrt_disc;
    ram["relative_group_over_sqrt_disc"] = cert.ramification.relative_group_over_sqrt_disc;
    j["ramification"] = ram;
    j["group_fact_basis"] = cert.group_fact_basis;
    return j;
}

namespace {

Json gen_validation_to_json(const GenQuadrupleValidation& v) {
    Json j;
    j["residue_char_odd"] = v.residue_char_odd;
    j["condition_i"] = v.divisors_of_g_divide_half_q_minus_1;
    j["condition_ii"] = v.b_primitive;
    j["c_in_p"] = v.c_in_p;
    j["c_minus_1_even"] = v.c_minus_1_even;
    j["coprime_b_c"] = v.coprime_b_c;
    j["coprime_b_2g1"] = v.coprime_b_2g1;
    j["coprime_2g_c"] = v.coprime_2g_c;
    j["failures"] = v.failures;
    return j;
}

}  // namespace

Json gen_quadruple_to_json(const GenMoriQuadruple& q, const ImagQuadField& K) {
    Json j;
    j["type"] = "generalized_mori_quadruple";
    j["d"] = q.d;
    j["omega"] = K.omega_description();
    j["g"] = q.g;
    Json ideal;
    ideal["p"] = q.p_ideal.p.get_str();
    ideal["residue_degree"] = q.p_ideal.res_degree;
    ideal["ramification_index"] = q.p_ideal.ram_index;
    ideal["generator"] = K.to_string(q.p_ideal.generator);
    j["p_ideal"] = ideal;
    j["b"] = K.to_string(q.b);
    j["c"] = K.to_string(q.c);
    j["validation"] = gen_validation_to_json(q.validation);
    return j;
}

Json k_certificate_to_json(const KCertificate& cert, const ImagQuadField& K,
                           const DocumentMeta& meta) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = meta.command;
    j["timestamp"] = meta.timestamp;
    j["verification_seed"] = std::to_string(meta.seed);
    j["input"] = gen_quadruple_to_json(cert.quadruple, K);

    Json upoly = Json::array();
    for (const auto& c : cert.u_coeffs) upoly.push_back(K.to_string(c));
    j["u_coefficients"] = upoly;

    Json w;
    {
        Json irr;
        irr["ideal_above_2"] = ideal_to_json(cert.ideal_above_2, K);
        if (cert.polygon) irr["newton_polygon"] = polygon_to_json(*cert.polygon);
        irr["span_gcd"] = cert.span_gcd;
        irr["verified"] = cert.irreducible;
        w["irreducibility"] = irr;
    }
    {
        Json c;
        c["pattern"] = pattern_to_json(cert.mod_p_pattern);
        c["lang_criterion_holds"] = cert.lang_criterion_holds;
        w["cycle"] = c;
    }
    {
        Json d;
        d["delta"] = K.to_string(cert.delta);
        d["m"] = cert.m;
        d["d0"] = K.to_string(cert.d0);
        d["d0_minus_1_in_4O"] = cert.d0_minus_1_in_4O;
        d["norm_d0_factors"] = factorization_to_json(cert.norm_d0_factors);
        w["discriminant"] = d;
    }
    if (cert.transposition) {
        const auto& t = *cert.transposition;
        Json jt;
        jt["ideal"] = ideal_to_json(t.ideal, K);
        jt["double_root"] = fq_to_json(t.double_root, t.double_root.a1 != 0 ? 2 : 1);
        jt["root_in_prime_subfield"] = t.root_in_prime_subfield;
        jt["delta_valuation"] = t.delta_valuation;
        jt["pattern"] = pattern_to_json(t.pattern);
        Json others = Json::array();
        for (const auto& o : t.others_verified) others.push_back(ideal_to_json(o, K));
        jt["others_verified"] = others;
        w["transposition"] = jt;
    }
    j["witnesses"] = w;
    j["conclusion"] = to_string(cert.conclusion);
    j["failing_stage"] = cert.failing_stage;
    j["status_note"] = cert.status_note;
    Json ram;
    ram["ramified_at_all_divisors_of_2"] = cert.ramified_at_all_divisors_of_2;
    ram["unramified_outside_2"] = cert.unramified_outside_2;
    ram["relative_group_over_sqrt_disc"] = cert.relative_group;
    j["ramification"] = ram;
    return j;
}

namespace {

Factorization factorization_from_json(const Json& j) {
    Factorization f;
    f.sign = j.at("sign").get<int>();
    for (const auto& pe : j.at("primes"))
        f.prime_powers.emplace_back(mpz_class(pe.at(0).get<std::string>()),
                                    pe.at(1).get<unsigned>());
    f.cofactor = mpz_class(j.at("cofactor").get<std::string>());
    f.any_probable_prime = j.at("any_probable_prime").get<bool>();
    return f;
}

// the stored factor list must be a genuine partial factorization of v
std::string check_factors_against(const Factorization& f, const mpz_class& v,
                                  std::uint64_t seed) {
    mpz_class prod = f.cofactor;
    if ((f.sign < 0) != (v < 0)) return "stored factorization sign mismatch";
    for (const auto& [p, e] : f.prime_powers) {
        if (!is_probable_prime(p, seed).is_prime)
            return "stored factor " + p.get_str() + " is not prime";
        if (valuation(v, p) != e)
            return "stored valuation of " + p.get_str() + " is wrong";
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        prod *= pe;
    }
    if (prod != abs(v)) return "stored factors do not reconstruct the value";
    return {};
}

std::string mpq_str(const Json& j, const char* key) {
    return j.at(key).get<std::string>();
}

}  // namespace

VerifyReport verify_certificate_document(const Json& doc) {
    VerifyReport rep;
    try {
        const Json& input = doc.at("input");
        std::string type = input.at("type").get<std::string>();
        rep.stored_conclusion = doc.at("conclusion").get<std::string>();
        DocumentMeta meta;
        meta.command = doc.at("command").get<std::string>();
        meta.timestamp = doc.at("timestamp").get<std::string>();
        meta.seed = std::stoull(doc.at("verification_seed").get<std::string>());
        rep.parsed = true;

        Json reproduced;
        if (type == "mori_quadruple") {
            unsigned g = input.at("g").get<unsigned>();
            mpz_class p(mpq_str(input, "p")), b(mpq_str(input, "b")), c(mpq_str(input, "c"));
            MoriQuadruple q = validate_quadruple(g, p, b, c, {}, meta.seed);
            if (!q.validation.valid()) {
                rep.detail = "stored input fails validation";
                rep.derived_conclusion = "Inconclusive";
                return rep;
            }
            CertifyOptions opts;
            opts.seed = meta.seed;
            Factorization stored =
                factorization_from_json(doc.at("witnesses").at("discriminant").at("factors"));
            mpz_class d0(mpq_str(doc.at("witnesses").at("discriminant"), "d0"));
            std::string err = check_factors_against(stored, d0, meta.seed);
            if (!err.empty()) {
                rep.detail = err;
                rep.derived_conclusion = "Inconclusive";
                return rep;
            }
            opts.injected_discriminant_factors = stored;
            GaloisCertificate cert = certify(q, opts);
            rep.derived_conclusion = to_string(cert.conclusion);
            reproduced = certificate_to_json(cert, meta);
        } else if (type == "trinomial") {
            unsigned n = input.at("n").get<unsigned>();
            mpz_class B(mpq_str(input, "B")), C(mpq_str(input, "C"));
            CertifyOptions opts;
            opts.seed = meta.seed;
            if (doc.contains("prime_scan_bound"))
                opts.cycle_scan_bound = doc.at("prime_scan_bound").get<unsigned long>();
            if (doc.at("witnesses").contains("discriminant")) {
                Factorization stored = factorization_from_json(
                    doc.at("witnesses").at("discriminant").at("factors"));
                mpz_class d0(mpq_str(doc.at("witnesses").at("discriminant"), "d0"));
                std::string err = check_factors_against(stored, d0, meta.seed);
                if (!err.empty()) {
                    rep.detail = err;
                    rep.derived_conclusion = "Inconclusive";
                    return rep;
                }
                opts.injected_discriminant_factors = stored;
            }
            GeneralCertifyResult res = certify_general_trinomial(n, B, C, opts);
            if (!res.certificate) {
                rep.detail = "stored input fails the trinomial hypotheses";
                rep.derived_conclusion = "Inconclusive";
                return rep;
            }
            rep.derived_conclusion = to_string(res.certificate->conclusion);
            reproduced = certificate_to_json(*res.certificate, meta);
        } else if (type == "generalized_mori_quadruple") {
            int d = input.at("d").get<int>();
            ImagQuadField K = ImagQuadField::make(d);
            unsigned g = input.at("g").get<unsigned>();
            OKElement pgen = K.parse(input.at("p_ideal").at("generator").get<std::string>());
            MaximalIdeal p_ideal = ideal_from_generator(pgen, K, meta.seed);
            OKElement b = K.parse(input.at("b").get<std::string>());
            OKElement c = K.parse(input.at("c").get<std::string>());
            GenMoriQuadruple q =
                validate_generalized_quadruple(K, g, p_ideal, b, c, {}, meta.seed);
            if (!q.validation.valid()) {
                rep.detail = "stored input fails validation";
                rep.derived_conclusion = "Inconclusive";
                return rep;
            }
            CertifyOptions opts;
            opts.seed = meta.seed;
            Factorization stored = factorization_from_json(
                doc.at("witnesses").at("discriminant").at("norm_d0_factors"));
            OKElement d0 = K.parse(mpq_str(doc.at("witnesses").at("discriminant"), "d0"));
            std::string err = check_factors_against(stored, K.norm(d0), meta.seed);
            if (!err.empty()) {
                rep.detail = err;
                rep.derived_conclusion = "Inconclusive";
                return rep;
            }
            opts.injected_discriminant_factors = stored;
            KCertificate cert = certify_K(K, q, opts);
            rep.derived_conclusion = to_string(cert.conclusion);
            reproduced = k_certificate_to_json(cert, K, meta);
        } else {
            rep.parsed = false;
            rep.detail = "unknown input type: " + type;
            return rep;
        }

        if (reproduced == doc) {
            rep.matches = true;
        } else {
            // locate the first differing top-level field for the report
            for (auto it = reproduced.begin(); it != reproduced.end(); ++it) {
                if (!doc.contains(it.key()) || doc.at(it.key()) != it.value()) {
                    rep.detail = "field '" + it.key() + "' does not match its recomputation";
                    break;
                }
            }
            if (rep.detail.empty()) rep.detail = "document has extra fields";
        }
    } catch (const std::exception& e) {
        rep.parsed = false;
        rep.detail = e.what();
    }
    return rep;
}

}  // namespace mori
