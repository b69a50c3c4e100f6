#ifndef MORI_IO_HPP
#define MORI_IO_HPP

#include <string>

#include <json.hpp>

#include "mori/galois.hpp"
#include "mori/numfield.hpp"

namespace mori {

using Json = nlohmann::ordered_json;

/// Envelope metadata shared by every emitted certificate document.
struct DocumentMeta {
    std::string command;
    std::string timestamp;
    std::uint64_t seed = kDefaultSeed;
};

Json quadruple_to_json(const MoriQuadruple& q);
Json pattern_to_json(const FactorPattern& p);
Json polygon_to_json(const NewtonPolygon& pg);
Json factorization_to_json(const Factorization& f);
Json histogram_to_json(const CycleTypeHistogram& h);
Json oracle_report_to_json(const SubgroupOracleReport& r);

Json certificate_to_json(const GaloisCertificate& cert, const DocumentMeta& meta);
Json hypothesis_report_to_json(const TrinomialHypothesisReport& r);

Json gen_quadruple_to_json(const GenMoriQuadruple& q, const ImagQuadField& K);
Json k_certificate_to_json(const KCertificate& cert, const ImagQuadField& K,
                           const DocumentMeta& meta);

struct VerifyReport {
    bool parsed = false;
    bool matches = false;
    std::string stored_conclusion;
    std::string derived_conclusion;
    std::string detail;  // first mismatch description, empty when matching
};

// Re-checks a stored certificate document: reruns the pipeline with the
// stored inputs and seed, injecting the stored discriminant factorization
// (after verifying each listed prime and valuation) so that nothing is
// re-factored, and compares the reproduction with the document field by
// field.
VerifyReport verify_certificate_document(const Json& doc);

}  // namespace mori

#endif
