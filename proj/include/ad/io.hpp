#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ad/hopf.hpp"
#include "ad/numfield.hpp"
#include "ad/profinite.hpp"

namespace ad::io {

// Input problems (missing files, malformed JSON, bad shapes) are ParseError;
// mathematical failures stay plain Error. The CLI maps them to exit codes
// 2 and 1 respectively.
struct ParseError : Error {
    using Error::Error;
};

// Canonical JSON: keys in fixed order, every rational the string "p/q"
// (or "p" for integers), tensors flattened row-major (lexicographic).
using Json = nlohmann::ordered_json;

Json dump_vec(const Vec& v);
Vec parse_vec(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// One corpus entry: a tower presentation of L with root certificates,
// optional mid-subfield generators, optional root of unity, expected values.
struct CorpusCase {
    std::string name;
    std::shared_ptr<nf::NumberField> L;
    nf::RootCertificates certs;
    std::vector<nf::FieldElement> mid_generators;  // empty when no tower check
    std::optional<nf::FieldElement> zeta;          // primitive |N|-th root
    int expected_group_order = 0;                  // 0 when unspecified
    int expected_points = 0;
    std::vector<int> expected_degrees;
    std::optional<hopf::CharacterData> characters;
};

// Builds the field from its tower spec (this verifies it) and checks every
// shape; throws ParseError on malformed input.
CorpusCase load_corpus_case(const std::string& path, int degree_bound = 24);

// { "base": field spec, "factors": [field spec, ...] }
pf::EtaleAlgebra load_etale(const std::string& path, int degree_bound = 24);

Json dump_field(const nf::NumberField& F);
Json dump_hopf(const hopf::HopfAlgebra& H);

// The byte-exact rendering used for golden files.
std::string render(const Json& j);

}  // namespace ad::io
