#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ad/adjoint.hpp"
#include "ad/io.hpp"
#include "ad/suite.hpp"
#include "fixtures.hpp"

using namespace ad;

namespace {
const std::string kCorpus = AD_SOURCE_DIR "/data/corpus";
const std::string kGoldens = AD_SOURCE_DIR "/goldens";
}  // namespace

TEST_CASE("rational vector round trip") {
    Vec v = {Rat(1), Rat(-3), Rat(2, 7), Rat(0)};
    io::Json j = io::dump_vec(v);
    CHECK(j[0] == "1");
    CHECK(j[2] == "2/7");
    CHECK(io::parse_vec(j) == v);

    nlohmann::json mixed = nlohmann::json::array({"1/2", 3, "-4"});
    Vec w = io::parse_vec(mixed);
    CHECK(w[0] == Rat(1, 2));
    CHECK(w[1] == 3);
    CHECK_THROWS_AS(io::parse_vec(nlohmann::json::array({1.5})), io::ParseError);
    CHECK_THROWS_AS(io::parse_vec(nlohmann::json::object()), io::ParseError);
}

TEST_CASE("corpus case loading") {
    io::CorpusCase c = io::load_corpus_case(kCorpus + "/s3.json");
    CHECK(c.name == "s3");
    CHECK(c.L->degree == 6);
    CHECK(c.certs.size() == 2);
    CHECK(c.certs[1].size() == 3);
    CHECK(c.expected_group_order == 6);
    CHECK(c.expected_degrees == std::vector<int>{1, 3, 2});
    CHECK(c.characters.has_value());
    CHECK(!c.zeta.has_value());

    // the loaded field matches the fixture construction exactly
    auto s3 = fx::s3_field();
    CHECK(c.L->mult == s3.L->mult);
    CHECK(c.certs == s3.certs);

    io::CorpusCase k3 = io::load_corpus_case(kCorpus + "/kummer3.json");
    CHECK(k3.mid_generators.size() == 1);
    CHECK(k3.zeta.has_value());

    CHECK_THROWS_AS(io::load_corpus_case(kCorpus + "/missing.json"), io::ParseError);
    io::write_file("tmp_bad_case.json", "{\"name\": \"x\", \"tower\": []}");
    CHECK_THROWS_AS(io::load_corpus_case("tmp_bad_case.json"), io::ParseError);
}

TEST_CASE("etale algebra loading") {
    io::write_file("tmp_etale.json", R"({
      "base": {"tower": []},
      "factors": [{"tower": []}, {"tower": [{"label": "i", "minpoly": [["1"], ["0"], ["1"]]}]}]
    })");
    pf::EtaleAlgebra A = io::load_etale("tmp_etale.json");
    CHECK(A.factors.size() == 2);
    pf::TrivialityReport r = pf::is_trivial_etale(A);
    CHECK(!r.trivial);
    CHECK(r.hom_count == 1);
    CHECK(r.k_dim == 3);
}

TEST_CASE("hopf dumps are canonical") {
    auto q = std::make_shared<nf::NumberField>(nf::base_rationals());
    io::Json j = io::dump_hopf(hopf::trivial_bundle_hopf(grp::cyclic_group(2), q));
    CHECK(j["dim"] == 2);
    auto keys_in_order = std::vector<std::string>{};
    for (auto it = j.begin(); it != j.end(); ++it) keys_in_order.push_back(it.key());
    CHECK(keys_in_order == std::vector<std::string>{"dim", "base", "labels", "unit",
                                                    "mult", "comult", "counit",
                                                    "antipode"});
    CHECK(j["mult"].size() == 8);  // 2^3 flattened lexicographically
    CHECK(io::render(j) == io::render(io::dump_hopf(
                               hopf::trivial_bundle_hopf(grp::cyclic_group(2), q))));
}

TEST_CASE("dump selectors") {
    CHECK(cli::dump_selector("base")["degree"] == 1);
    CHECK(cli::dump_selector("trivial:3")["dim"] == 3);
    io::Json c4 = cli::dump_selector("cartier:4");
    CHECK(c4["mu"]["dim"] == 4);
    CHECK(c4["mu"]["base"]["degree"] == 2);
    CHECK_THROWS_AS(cli::dump_selector("nope"), io::ParseError);
    CHECK_THROWS_AS(cli::dump_selector("trivial:x"), io::ParseError);
    CHECK_THROWS_AS(cli::dump_selector("cartier:5"), io::ParseError);

    // byte-identical to the checked-in goldens
    CHECK(io::render(cli::dump_selector("adjoint:" + kCorpus + "/s3.json")) ==
          io::read_file(kGoldens + "/s3_adjoint.json"));
    CHECK(io::render(cli::dump_selector("cartier:3")) ==
          io::read_file(kGoldens + "/cartier3.json"));
}

TEST_CASE("single case report") {
    io::CorpusCase c = io::load_corpus_case(kCorpus + "/qi.json");
    cli::CaseReport rep = cli::run_case(c);
    CHECK(rep.pass());
    std::vector<std::string> names;
    for (const auto& ch : rep.checks) names.push_back(ch.name);
    CHECK(std::find(names.begin(), names.end(), "collapse") != names.end());
    CHECK(std::find(names.begin(), names.end(), "mutations") != names.end());
}

TEST_CASE("suite run over the bundled corpus") {
    cli::SuiteReport rep = cli::run_suite(kCorpus, 4, kGoldens);
    CHECK(rep.all_pass());
    CHECK(rep.warning.empty());
    std::vector<std::string> names;
    for (const auto& c : rep.cases) names.push_back(c.name);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::find(names.begin(), names.end(), "goldens") != names.end());
    CHECK(std::find(names.begin(), names.end(), "profinite") != names.end());
    CHECK(names.size() == 8);  // 6 corpus cases + profinite + goldens
}
