#include "ad/io.hpp"

#include <fstream>
#include <sstream>

namespace ad::io {

using nlohmann::json;

Json dump_vec(const Vec& v) {
    Json out = Json::array();
    for (const Rat& q : v) out.push_back(rat_to_string(q));
    return out;
}

Vec parse_vec(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vec v;
    for (const auto& e : j) {
        if (e.is_string())
            v.push_back(rat_from_string(e.get<std::string>()));
        else if (e.is_number_integer())
            v.push_back(Rat(e.get<long>()));
        else
            throw ParseError("expected a rational entry");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

namespace {

json parse_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::shared_ptr<nf::NumberField> build_field(const json& spec, int degree_bound) {
    if (!spec.is_object() || !spec.contains("tower") || !spec["tower"].is_array())
        throw ParseError("field spec needs a tower array");
    nf::NumberField F = nf::base_rationals();
    for (const auto& step : spec["tower"]) {
        if (!step.contains("label") || !step.contains("minpoly"))
            throw ParseError("tower step needs label and minpoly");
        std::vector<Vec> minpoly;
        for (const auto& c : step["minpoly"]) minpoly.push_back(parse_vec(c));
        F = nf::extend(F, step["label"].get<std::string>(), minpoly, degree_bound);
    }
    if (spec.contains("base_degree")) {
        int bd = spec["base_degree"].get<int>();
        if (bd < 1 || F.degree % bd != 0) throw ParseError("bad base_degree");
        F.base_degree = bd;
    }
    return std::make_shared<nf::NumberField>(std::move(F));
}

}  // namespace

CorpusCase load_corpus_case(const std::string& path, int degree_bound) {
    json j = parse_json(path);
    CorpusCase c;
    try {
        if (!j.contains("name")) throw ParseError("corpus case needs a name");
        c.name = j["name"].get<std::string>();
        c.L = build_field(j, degree_bound);

        if (!j.contains("roots") || !j["roots"].is_array() ||
            j["roots"].size() != c.L->tower.size())
            throw ParseError("roots must list one certificate set per tower step");
        for (const auto& step_roots : j["roots"]) {
            std::vector<nf::FieldElement> roots;
            for (const auto& r : step_roots) {
                Vec v = parse_vec(r);
                if (static_cast<int>(v.size()) != c.L->degree)
                    throw ParseError("root certificate has wrong length");
                roots.push_back(std::move(v));
            }
            c.certs.push_back(std::move(roots));
        }

        if (j.contains("mid"))
            for (const auto& g : j["mid"]["generators"]) {
                Vec v = parse_vec(g);
                if (static_cast<int>(v.size()) != c.L->degree)
                    throw ParseError("mid generator has wrong length");
                c.mid_generators.push_back(std::move(v));
            }
        if (j.contains("zeta")) {
            Vec v = parse_vec(j["zeta"]);
            if (static_cast<int>(v.size()) != c.L->degree)
                throw ParseError("zeta has wrong length");
            c.zeta = std::move(v);
        }
        if (j.contains("expected")) {
            const auto& e = j["expected"];
            if (e.contains("group_order"))
                c.expected_group_order = e["group_order"].get<int>();
            if (e.contains("points")) c.expected_points = e["points"].get<int>();
            if (e.contains("degrees"))
                for (const auto& d : e["degrees"])
                    c.expected_degrees.push_back(d.get<int>());
        }
        if (j.contains("characters")) {
            const auto& ch = j["characters"];
            hopf::CharacterData cd;
            cd.group_order = ch["group_order"].get<int>();
            for (const auto& d : ch["dims"]) cd.irreducible_dims.push_back(d.get<int>());
            for (const auto& orb : ch["orbits"]) {
                std::vector<int> o;
                for (const auto& i : orb) o.push_back(i.get<int>());
                cd.galois_orbits.push_back(std::move(o));
            }
            c.characters = std::move(cd);
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return c;
}

pf::EtaleAlgebra load_etale(const std::string& path, int degree_bound) {
    json j = parse_json(path);
    pf::EtaleAlgebra A;
    try {
        A.base = build_field(j.at("base"), degree_bound);
        for (const auto& f : j.at("factors")) A.factors.push_back(build_field(f, degree_bound));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return A;
}

Json dump_field(const nf::NumberField& F) {
    Json out;
    out["degree"] = F.degree;
    out["base_degree"] = F.base_degree;
    out["labels"] = F.basis_labels;
    Json tower = Json::array();
    for (const auto& step : F.tower) {
        Json s;
        s["label"] = step.label;
        Json mp = Json::array();
        for (const auto& c : step.minpoly) mp.push_back(dump_vec(c));
        s["minpoly"] = mp;
        tower.push_back(s);
    }
    out["tower"] = tower;
    return out;
}

namespace {

Json dump_scalars(const std::vector<hopf::Scalar>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(dump_vec(x));
    return out;
}

}  // namespace

Json dump_hopf(const hopf::HopfAlgebra& H) {
    Json out;
    out["dim"] = H.dim();
    out["base"] = dump_field(H.K());
    out["labels"] = H.alg.basis_labels;
    out["unit"] = dump_scalars(H.alg.unit);
    out["mult"] = dump_scalars(H.alg.mult);
    out["comult"] = dump_scalars(H.comult);
    out["counit"] = dump_scalars(H.counit);
    out["antipode"] = dump_scalars(H.antipode);
    return out;
}

std::string render(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace ad::io
