#include "mori/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mori/io.hpp"

namespace mori {

namespace {

std::string now_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join_args(const std::vector<std::string>& args) {
    std::ostringstream os;
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
    return os.str();
}

int conclusion_exit(const std::string& c) {
    if (c == "FullSymmetric") return 0;
    if (c == "ConditionalFullSymmetric") return 2;
    return 3;
}

SearchRange parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("range", "expected lo:hi");
    return {mpz_class(text.substr(0, colon)), mpz_class(text.substr(colon + 1))};
}

struct CommonOpts {
    std::uint64_t seed = kDefaultSeed;
    unsigned long factor_budget = FactorBudget{}.rho_iterations;
    std::string format = "json";
    std::string timestamp;

    FactorBudget budget() const {
        FactorBudget b;
        b.rho_iterations = factor_budget;
        return b;
    }
    std::string stamp() const { return timestamp.empty() ? now_utc() : timestamp; }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "seed for randomized subroutines");
    cmd->add_option("--factor-budget", c.factor_budget,
                    "Pollard-Brent iteration cap for integer factorization");
    cmd->add_option("--format", c.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--timestamp", c.timestamp,
                    "override the document timestamp (for reproducible output)");
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string validation_text(const MoriQuadruple& q) {
    std::ostringstream os;
    os << "quadruple (g=" << q.g << ", p=" << q.p << ", b=" << q.b << ", c=" << q.c
       << "): " << (q.validation.valid() ? "valid" : "invalid") << "\n";
    for (const auto& f : q.validation.failures) os << "  - " << f << "\n";
    return os.str();
}

std::string certificate_text(const GaloisCertificate& cert) {
    std::ostringstream os;
    unsigned n = cert.trinomial.n;
    os << "u = " << cert.trinomial.to_polynomial().to_string() << "\n";
    os << "conclusion: " << to_string(cert.conclusion);
    if (cert.conclusion == Conclusion::FullSymmetric) os << " (S_" << n << ")";
    os << "\n";
    if (!cert.failing_stage.empty()) os << "failing stage: " << cert.failing_stage << "\n";
    if (!cert.status_note.empty()) os << "note: " << cert.status_note << "\n";
    if (cert.irreducibility.polygon) {
        os << "newton polygon vertices:";
        for (const auto& v : cert.irreducibility.polygon->vertices())
            os << " (" << v.index << "," << v.valuation << ")";
        os << "  span gcd " << cert.irreducibility.span_gcd << "\n";
    }
    if (cert.cycle) {
        os << "pattern mod " << cert.cycle->p << ": [";
        auto part = cert.cycle->pattern.degree_partition();
        for (std::size_t i = part.size(); i-- > 0;)
            os << part[i] << (i ? ", " : "");
        os << "]\n";
    }
    if (cert.discriminant) {
        os << "Delta(u) = " << cert.discriminant->delta << " = 2^" << 2 * cert.discriminant->m
           << " * " << cert.discriminant->d0 << "\n";
    }
    if (cert.transposition) {
        os << "transposition prime ell = " << cert.transposition->ell << ", double root "
           << cert.transposition->double_root << " (v_ell = "
           << cert.transposition->delta_valuation << ")\n";
    }
    return os.str();
}

std::string k_certificate_text(const KCertificate& cert, const ImagQuadField& K) {
    std::ostringstream os;
    os << "K = Q(sqrt(" << cert.d << ")), omega = " << K.omega_description() << "\n";
    os << "U coefficients:";
    for (const auto& c : cert.u_coeffs) os << " " << K.to_string(c);
    os << "\n";
    os << "conclusion: " << to_string(cert.conclusion);
    if (cert.conclusion == Conclusion::FullSymmetric)
        os << " (S_" << cert.quadruple.degree() << " over K)";
    os << "\n";
    if (!cert.failing_stage.empty()) os << "failing stage: " << cert.failing_stage << "\n";
    if (!cert.status_note.empty()) os << "note: " << cert.status_note << "\n";
    os << "Delta(U) = " << K.to_string(cert.delta) << " = 2^" << 2 * cert.m << " * "
       << K.to_string(cert.d0) << "\n";
    if (cert.transposition) {
        os << "transposition ideal above " << cert.transposition->ideal.p
           << " (generator " << K.to_string(cert.transposition->ideal.generator)
           << "), double root " << cert.transposition->double_root.a0.get_str();
        if (cert.transposition->double_root.a1 != 0)
            os << "+" << cert.transposition->double_root.a1.get_str() << "*t";
        os << "\n";
    }
    return os.str();
}

int run_quadruple_certify(const MoriQuadruple& q, const CommonOpts& common,
                          const std::string& command, std::ostream& out) {
    if (!q.validation.valid()) {
        Json j;
        j["input"] = quadruple_to_json(q);
        j["error"] = "validation failed";
        if (common.format == "text")
            out << validation_text(q);
        else
            emit(out, j);
        return 1;
    }
    CertifyOptions opts;
    opts.seed = common.seed;
    opts.budget = common.budget();
    GaloisCertificate cert = certify(q, opts);
    DocumentMeta meta{command, common.stamp(), common.seed};
    if (common.format == "text")
        out << certificate_text(cert);
    else
        emit(out, certificate_to_json(cert, meta));
    return conclusion_exit(to_string(cert.conclusion));
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
    CLI::App app{"exact Galois-group certification for Mori trinomials"};
    app.require_subcommand(1);
    std::string command = "mori " + join_args(args);

    // ---- validate ----------------------------------------------------
    auto* validate_cmd = app.add_subcommand("validate", "check the quadruple conditions");
    CommonOpts validate_common;
    std::vector<std::string> validate_pos;
    validate_cmd->add_option("gpbc", validate_pos, "g p b c")->expected(0, 4);
    bool validate_stdin = false;
    validate_cmd->add_flag("--stdin", validate_stdin, "read quadruples from stdin");
    add_common(validate_cmd, validate_common);

    // ---- certify -----------------------------------------------------
    auto* certify_cmd = app.add_subcommand("certify", "produce a Galois certificate");
    CommonOpts certify_common;
    std::vector<std::string> certify_pos;
    certify_cmd->add_option("gpbc", certify_pos, "g p b c")->expected(0, 4);
    std::vector<std::string> certify_trinomial;
    certify_cmd->add_option("--trinomial", certify_trinomial, "n B C (general trinomial)")
        ->expected(3);
    unsigned long certify_prime_bound = 10'000;
    certify_cmd->add_option("--prime-bound", certify_prime_bound,
                            "prime scan bound for general trinomials");
    bool certify_stdin = false;
    certify_cmd->add_flag("--stdin", certify_stdin, "read quadruples from stdin");
    std::string certify_output;
    certify_cmd->add_option("--output", certify_output, "also write the JSON document here");
    add_common(certify_cmd, certify_common);

    // ---- search ------------------------------------------------------
    auto* search_cmd = app.add_subcommand("search", "enumerate valid quadruples");
    CommonOpts search_common;
    unsigned search_g = 1;
    std::string search_p, search_b, search_c;
    unsigned search_jobs = 1;
    search_cmd->add_option("g", search_g, "genus parameter")->required();
    search_cmd->add_option("--p-range", search_p, "lo:hi")->required();
    search_cmd->add_option("--b-range", search_b, "lo:hi")->required();
    search_cmd->add_option("--c-range", search_c, "lo:hi")->required();
    search_cmd->add_option("--jobs", search_jobs, "worker threads");
    add_common(search_cmd, search_common);

    // ---- reduce ------------------------------------------------------
    auto* reduce_cmd = app.add_subcommand("reduce", "factor u mod ell");
    CommonOpts reduce_common;
    std::vector<std::string> reduce_pos;
    reduce_cmd->add_option("gpbc", reduce_pos, "g p b c")->expected(4)->required();
    std::string reduce_ell;
    reduce_cmd->add_option("--ell", reduce_ell, "odd prime modulus")->required();
    add_common(reduce_cmd, reduce_common);

    // ---- frobenius ---------------------------------------------------
    auto* frob_cmd = app.add_subcommand("frobenius", "cycle-type statistics");
    CommonOpts frob_common;
    std::vector<std::string> frob_pos;
    frob_cmd->add_option("gpbc", frob_pos, "g p b c")->expected(0, 4);
    std::vector<std::string> frob_trinomial;
    frob_cmd->add_option("--trinomial", frob_trinomial, "n B C")->expected(3);
    unsigned long frob_bound = 100'000;
    frob_cmd->add_option("--bound", frob_bound, "prime bound");
    unsigned frob_jobs = 1;
    frob_cmd->add_option("--jobs", frob_jobs, "worker threads");
    bool frob_compare = false;
    frob_cmd->add_flag("--compare", frob_compare,
                       "include the exact S_n distribution and the Linf deviation");
    double frob_tolerance = 0.02;
    frob_cmd->add_option("--tolerance", frob_tolerance,
                         "Linf tolerance reported with --compare");
    add_common(frob_cmd, frob_common);

    // ---- oracle --------------------------------------------------
    auto* oracle_cmd = app.add_subcommand("oracle", "subgroup enumeration check");
    CommonOpts oracle_common;
    unsigned oracle_n = 5;
    oracle_cmd->add_option("--n", oracle_n, "degree (odd, 3..7)")->required();
    add_common(oracle_cmd, oracle_common);

    // ---- quadfield -----------------------------------------------
    auto* quad_cmd = app.add_subcommand("quadfield", "imaginary quadratic field pipeline");
    quad_cmd->require_subcommand(1);

    auto* quad_certify = quad_cmd->add_subcommand("certify", "certify over Q(sqrt(d))");
    CommonOpts qc_common;
    int qc_d = -1;
    unsigned qc_g = 1;
    std::string qc_pgen, qc_b, qc_c;
    quad_certify->add_option("--d", qc_d, "field: squarefree negative d")->required();
    quad_certify->add_option("--g", qc_g, "genus parameter")->required();
    quad_certify->add_option("--p-gen", qc_pgen, "generator of the ideal p")->required();
    quad_certify->add_option("--b", qc_b, "b as x+y*w")->required();
    quad_certify->add_option("--c", qc_c, "c as x+y*w")->required();
    add_common(quad_certify, qc_common);

    auto* quad_validate = quad_cmd->add_subcommand("validate", "check conditions over K");
    CommonOpts qv_common;
    int qv_d = -1;
    unsigned qv_g = 1;
    std::string qv_pgen, qv_b, qv_c;
    quad_validate->add_option("--d", qv_d)->required();
    quad_validate->add_option("--g", qv_g)->required();
    quad_validate->add_option("--p-gen", qv_pgen)->required();
    quad_validate->add_option("--b", qv_b)->required();
    quad_validate->add_option("--c", qv_c)->required();
    add_common(quad_validate, qv_common);

    auto* quad_generate = quad_cmd->add_subcommand("generate", "search for a quadruple");
    CommonOpts qg_common;
    int qg_d = -1;
    unsigned qg_g = 1;
    unsigned long qg_pbound = 100;
    long qg_coord = 10;
    quad_generate->add_option("--d", qg_d)->required();
    quad_generate->add_option("--g", qg_g)->required();
    quad_generate->add_option("--p-bound", qg_pbound, "rational prime bound");
    quad_generate->add_option("--coord-bound", qg_coord, "coordinate box bound");
    add_common(quad_generate, qg_common);

    // ---- verify --------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "re-check a stored certificate");
    CommonOpts verify_common;
    std::string verify_file;
    verify_cmd->add_option("file", verify_file, "certificate path, or - for stdin")
        ->required();
    add_common(verify_cmd, verify_common);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);  // CLI11 consumes a reversed argument vector
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*validate_cmd) {
            auto handle_one = [&](unsigned g, const mpz_class& p, const mpz_class& b,
                                  const mpz_class& c) {
                MoriQuadruple q =
                    validate_quadruple(g, p, b, c, validate_common.budget(), validate_common.seed);
                if (validate_common.format == "text")
                    out << validation_text(q);
                else
                    emit(out, quadruple_to_json(q));
                return q.validation.valid() ? 0 : 1;
            };
            if (validate_pos.size() == 4) {
                return handle_one(static_cast<unsigned>(std::stoul(validate_pos[0])),
                                  mpz_class(validate_pos[1]), mpz_class(validate_pos[2]),
                                  mpz_class(validate_pos[3]));
            }
            if (!validate_pos.empty()) {
                err << "error: validate expects g p b c (got " << validate_pos.size()
                    << " values)\n";
                return 1;
            }
            // batch mode: one quadruple per line
            int worst = 0;
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                unsigned g;
                std::string ps, bs, cs;
                if (!(ls >> g >> ps >> bs >> cs)) continue;
                worst = std::max(worst,
                                 handle_one(g, mpz_class(ps), mpz_class(bs), mpz_class(cs)));
            }
            return worst;
        }

        if (*certify_cmd) {
            if (!certify_trinomial.empty()) {
                unsigned n = static_cast<unsigned>(std::stoul(certify_trinomial[0]));
                mpz_class B(certify_trinomial[1]), C(certify_trinomial[2]);
                CertifyOptions opts;
                opts.seed = certify_common.seed;
                opts.budget = certify_common.budget();
                opts.cycle_scan_bound = certify_prime_bound;
                GeneralCertifyResult res = certify_general_trinomial(n, B, C, opts);
                if (!res.certificate) {
                    Json j;
                    j["error"] = "trinomial hypotheses violated";
                    j["hypotheses"] = hypothesis_report_to_json(res.hypotheses);
                    emit(out, j);
                    return 1;
                }
                DocumentMeta meta{command, certify_common.stamp(), certify_common.seed};
                Json doc = certificate_to_json(*res.certificate, meta);
                if (certify_common.format == "text")
                    out << certificate_text(*res.certificate);
                else
                    emit(out, doc);
                if (!certify_output.empty()) {
                    std::ofstream f(certify_output);
                    f << doc.dump(2) << "\n";
                }
                return conclusion_exit(to_string(res.certificate->conclusion));
            }
            if (certify_pos.size() == 4) {
                MoriQuadruple q = validate_quadruple(
                    static_cast<unsigned>(std::stoul(certify_pos[0])), mpz_class(certify_pos[1]),
                    mpz_class(certify_pos[2]), mpz_class(certify_pos[3]),
                    certify_common.budget(), certify_common.seed);
                if (!certify_output.empty() && q.validation.valid()) {
                    CertifyOptions opts;
                    opts.seed = certify_common.seed;
                    opts.budget = certify_common.budget();
                    GaloisCertificate cert = certify(q, opts);
                    DocumentMeta meta{command, certify_common.stamp(), certify_common.seed};
                    Json doc = certificate_to_json(cert, meta);
                    std::ofstream f(certify_output);
                    f << doc.dump(2) << "\n";
                    if (certify_common.format == "text")
                        out << certificate_text(cert);
                    else
                        emit(out, doc);
                    return conclusion_exit(to_string(cert.conclusion));
                }
                return run_quadruple_certify(q, certify_common, command, out);
            }
            if (!certify_pos.empty()) {
                err << "error: certify expects g p b c (got " << certify_pos.size()
                    << " values)\n";
                return 1;
            }
            // batch via stdin
            int worst = 0;
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                unsigned g;
                std::string ps, bs, cs;
                if (!(ls >> g >> ps >> bs >> cs)) continue;
                MoriQuadruple q =
                    validate_quadruple(g, mpz_class(ps), mpz_class(bs), mpz_class(cs),
                                       certify_common.budget(), certify_common.seed);
                worst = std::max(worst,
                                 run_quadruple_certify(q, certify_common, command, out));
            }
            return worst;
        }

        if (*search_cmd) {
            auto quads = search_quadruples(search_g, parse_range(search_p),
                                           parse_range(search_b), parse_range(search_c),
                                           search_common.budget(), search_common.seed,
                                           search_jobs);
            Json arr = Json::array();
            for (const auto& q : quads) arr.push_back(quadruple_to_json(q));
            Json j;
            j["count"] = quads.size();
            j["quadruples"] = arr;
            if (search_common.format == "text") {
                for (const auto& q : quads)
                    out << q.g << " " << q.p << " " << q.b << " " << q.c << "\n";
            } else {
                emit(out, j);
            }
            return 0;
        }

        if (*reduce_cmd) {
            MoriQuadruple q = validate_quadruple(
                static_cast<unsigned>(std::stoul(reduce_pos[0])), mpz_class(reduce_pos[1]),
                mpz_class(reduce_pos[2]), mpz_class(reduce_pos[3]), reduce_common.budget(),
                reduce_common.seed);
            if (!q.validation.valid()) {
                emit(out, quadruple_to_json(q));
                return 1;
            }
            mpz_class ell(reduce_ell);
            if (ell == 2 || !is_probable_prime(ell, reduce_common.seed).is_prime) {
                err << "error: --ell must be an odd prime\n";
                return 1;
            }
            TrinomialPair t = build_trinomials(q);
            FactorPattern pat = factor(reduce_mod(t.u, ell), reduce_common.seed);
            Json j;
            j["input"] = quadruple_to_json(q);
            j["ell"] = ell.get_str();
            j["u"] = t.u.to_polynomial().to_string();
            j["pattern"] = pattern_to_json(pat);
            Json profile = Json::array();
            for (const auto& m : multiplicity_profile(reduce_mod(t.u, ell), reduce_common.seed)) {
                Json je;
                je["multiplicity"] = m.multiplicity;
                if (m.is_linear) je["root"] = m.root.a0.get_str();
                profile.push_back(je);
            }
            j["multiple_factors"] = profile;
            emit(out, j);
            return 0;
        }

        if (*frob_cmd) {
            Trinomial u;
            if (!frob_trinomial.empty()) {
                u.n = static_cast<unsigned>(std::stoul(frob_trinomial[0]));
                u.B = mpz_class(frob_trinomial[1]);
                u.C = mpz_class(frob_trinomial[2]);
            } else if (frob_pos.size() == 4) {
                MoriQuadruple q = validate_quadruple(
                    static_cast<unsigned>(std::stoul(frob_pos[0])), mpz_class(frob_pos[1]),
                    mpz_class(frob_pos[2]), mpz_class(frob_pos[3]), frob_common.budget(),
                    frob_common.seed);
                if (!q.validation.valid()) {
                    emit(out, quadruple_to_json(q));
                    return 1;
                }
                u = build_trinomials(q).u;
            } else {
                err << "error: frobenius needs a quadruple or --trinomial\n";
                return 1;
            }
            CycleTypeHistogram hist = frobenius_sample(u, frob_bound, frob_jobs, frob_common.seed);
            Json j = histogram_to_json(hist);
            if (frob_compare) {
                auto expected = sn_class_distribution(u.n);
                auto cmp = compare_distribution(hist, expected);
                Json je = Json::array();
                for (const auto& [part, fr] : expected) {
                    Json p;
                    p["partition"] = part;
                    p["frequency"] = fr.get_str();
                    je.push_back(p);
                }
                j["expected"] = je;
                j["max_deviation"] = cmp.max_deviation.get_str();
                j["max_deviation_decimal"] = cmp.max_deviation.get_d();
                j["tolerance"] = frob_tolerance;
                j["within_tolerance"] = cmp.max_deviation.get_d() <= frob_tolerance;
                Json miss = Json::array();
                for (const auto& part : cmp.missing) miss.push_back(part);
                j["missing_partitions"] = miss;
            }
            emit(out, j);
            return 0;
        }

        if (*oracle_cmd) {
            SubgroupOracleReport report = subgroup_oracle(oracle_n);
            if (oracle_common.format == "text") {
                out << "n = " << report.n << ": property "
                    << (report.property_holds ? "holds" : "FAILS") << "; "
                    << report.subgroup_count << " subgroups in " << report.class_count
                    << " conjugacy classes\n";
            } else {
                emit(out, oracle_report_to_json(report));
            }
            return report.property_holds ? 0 : 3;
        }

        if (*quad_cmd) {
            if (*quad_certify) {
                ImagQuadField K = ImagQuadField::make(qc_d);
                MaximalIdeal p_ideal =
                    ideal_from_generator(K.parse(qc_pgen), K, qc_common.seed);
                GenMoriQuadruple q = validate_generalized_quadruple(
                    K, qc_g, p_ideal, K.parse(qc_b), K.parse(qc_c), qc_common.budget(),
                    qc_common.seed);
                if (!q.validation.valid()) {
                    emit(out, gen_quadruple_to_json(q, K));
                    return 1;
                }
                CertifyOptions opts;
                opts.seed = qc_common.seed;
                opts.budget = qc_common.budget();
                KCertificate cert = certify_K(K, q, opts);
                DocumentMeta meta{command, qc_common.stamp(), qc_common.seed};
                if (qc_common.format == "text")
                    out << k_certificate_text(cert, K);
                else
                    emit(out, k_certificate_to_json(cert, K, meta));
                return conclusion_exit(to_string(cert.conclusion));
            }
            if (*quad_validate) {
                ImagQuadField K = ImagQuadField::make(qv_d);
                MaximalIdeal p_ideal =
                    ideal_from_generator(K.parse(qv_pgen), K, qv_common.seed);
                GenMoriQuadruple q = validate_generalized_quadruple(
                    K, qv_g, p_ideal, K.parse(qv_b), K.parse(qv_c), qv_common.budget(),
                    qv_common.seed);
                emit(out, gen_quadruple_to_json(q, K));
                return q.validation.valid() ? 0 : 1;
            }
            if (*quad_generate) {
                ImagQuadField K = ImagQuadField::make(qg_d);
                KSearchBounds bounds{qg_pbound, qg_coord};
                GenMoriQuadruple q =
                    generate_quadruple(K, qg_g, bounds, qg_common.budget(), qg_common.seed);
                emit(out, gen_quadruple_to_json(q, K));
                return 0;
            }
        }

        if (*verify_cmd) {
            Json doc;
            if (verify_file == "-") {
                doc = Json::parse(in);
            } else {
                std::ifstream f(verify_file);
                if (!f) {
                    err << "error: cannot open " << verify_file << "\n";
                    return 1;
                }
                doc = Json::parse(f);
            }
            VerifyReport rep = verify_certificate_document(doc);
            Json j;
            j["parsed"] = rep.parsed;
            j["matches_stored"] = rep.matches;
            j["stored_conclusion"] = rep.stored_conclusion;
            j["derived_conclusion"] = rep.derived_conclusion;
            j["detail"] = rep.detail;
            emit(out, j);
            if (!rep.parsed) return 1;
            if (!rep.matches) return 3;
            return conclusion_exit(rep.derived_conclusion);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace mori
