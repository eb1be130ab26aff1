#include "ad/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "ad/adjoint.hpp"
#include "ad/profinite.hpp"

namespace ad::cli {

namespace fs = std::filesystem;

bool CaseReport::pass() const {
    if (parse_error) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

bool SuiteReport::all_pass() const {
    for (const auto& c : cases)
        if (!c.pass()) return false;
    return !any_parse_error;
}

std::string SuiteReport::summary() const {
    std::ostringstream out;
    if (!warning.empty()) out << "warning: " << warning << "\n";
    for (const auto& c : cases) {
        out << (c.pass() ? "PASS" : "FAIL") << " " << c.name;
        if (c.parse_error) out << " (parse error)";
        out << " [" << static_cast<long>(c.wall_ms) << " ms]\n";
        for (const auto& ch : c.checks)
            if (!ch.pass) out << "  FAIL " << ch.name << ": " << ch.detail << "\n";
    }
    out << (all_pass() ? "suite: all checks passed" : "suite: FAILURES") << "\n";
    return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
void run_check(CaseReport& rep, const std::string& name, F&& fn) {
    CheckResult r;
    r.name = name;
    try {
        r.detail = fn();
        r.pass = r.detail.empty();
    } catch (const Error& e) {
        r.pass = false;
        r.detail = e.what();
    }
    rep.checks.push_back(std::move(r));
}

}  // namespace

CaseReport run_case(const io::CorpusCase& c) {
    CaseReport rep;
    rep.name = c.name;
    auto t0 = Clock::now();

    adj::GaloisExtensionData ext;
    bool have_ext = false;
    run_check(rep, "extension", [&] {
        ext = adj::build_extension(c.L, c.certs);
        if (c.expected_group_order && ext.G.order != c.expected_group_order)
            return "group order " + std::to_string(ext.G.order) + " expected " +
                   std::to_string(c.expected_group_order);
        have_ext = true;
        return std::string();
    });

    adj::AdjointBundle ad;
    bool have_ad = false;
    if (have_ext) {
        run_check(rep, "adjoint", [&] {
            ad = adj::build_adjoint(ext);
            if (!hopf::verify_hopf(ad.hopf).all_pass()) return std::string("axiom failure");
            if (c.expected_points &&
                static_cast<int>(ad.points.size()) != c.expected_points)
                return "point count " + std::to_string(ad.points.size());
            if (!c.expected_degrees.empty()) {
                std::vector<int> degs;
                for (const auto& p : ad.points) degs.push_back(p.degree);
                if (degs != c.expected_degrees) return std::string("degree mismatch");
            }
            have_ad = true;
            return std::string();
        });
    }

    if (have_ad) {
        run_check(rep, "models", [&] {
            adj::ModelReport mr = adj::check_model_correspondence(ad, ext);
            return mr.pass ? std::string() : mr.detail;
        });
        run_check(rep, "trivialization", [&] {
            adj::base_change_trivialization(ad, ext);
            return std::string();
        });
        run_check(rep, "fiber", [&] {
            grp::FiniteGroup F = adj::fiber_group(ad, ext);
            return F.table == ext.G.table ? std::string() : std::string("table mismatch");
        });
        if (ext.G.is_abelian())
            run_check(rep, "collapse", [&] {
                adj::abelian_collapse(ad, ext);
                return std::string();
            });
        if (!c.mid_generators.empty())
            run_check(rep, "tower", [&] {
                nf::Subfield M = nf::subfield_span(*c.L, c.mid_generators);
                adj::TowerData t = adj::tower_maps(ext, ad, M);
                if (t.kernel.dim() * t.adM.hopf.dim() != ad.hopf.dim())
                    return std::string("exactness dimension mismatch");
                adj::SplitReport sr = adj::pullback_splitting_check(ext, ad, t);
                if (!sr.pass) return sr.detail;
                if (c.zeta) {
                    adj::KernelActionReport ka = adj::kernel_action(ext, t, c.zeta);
                    if (!ka.cyclotomic_checked || !ka.cyclotomic_pass)
                        return std::string("cyclotomic action mismatch");
                }
                return std::string();
            });
        if (c.characters)
            run_check(rep, "characters", [&] {
                if (c.characters->group_order != ext.G.order)
                    return std::string("character table group order mismatch");
                hopf::SchurReport sr = hopf::schur_block_check(*c.characters);
                return sr.total == ext.G.order ? std::string()
                                               : std::string("block total mismatch");
            });
        run_check(rep, "mutations", [&] {
            for (unsigned seed = 1; seed <= 20; ++seed)
                if (hopf::verify_hopf(hopf::perturb_structure_constant(ad.hopf, seed))
                        .all_pass())
                    return "seed " + std::to_string(seed) + " not detected";
            return std::string();
        });
    }

    rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return rep;
}

namespace {

CaseReport profinite_case(const std::vector<io::CorpusCase>& loaded) {
    CaseReport rep;
    rep.name = "profinite";
    auto t0 = Clock::now();

    run_check(rep, "zhat", [&] {
        for (int n = 1; n <= 6; ++n) {
            pf::FiniteTower t = pf::zhat_truncation(n);
            if (!t.all_surjective()) return std::string("reduction not surjective");
            std::vector<int> fam = pf::limit_element(t);
            for (int x : fam)
                if (x != 0) return std::string("limit family not the zero section");
        }
        return std::string();
    });
    run_check(rep, "shift", [&] {
        for (int w = 1; w <= 3; ++w)
            for (int n = 2; n <= 4; ++n)
                if (pf::shift_obstruction(w, n).count != 0)
                    return "solution at w=" + std::to_string(w) +
                           " n=" + std::to_string(n);
        return std::string();
    });
    run_check(rep, "compositum", [&] {
        for (const auto& c : loaded) {
            if (c.L->tower.size() < 2) continue;
            nf::AutomorphismGroup A = nf::automorphisms(*c.L, c.certs);
            std::vector<nf::Subfield> fields = {
                nf::subfield_span(*c.L, {c.L->one()})};
            int prefix = 1;
            for (const auto& step : c.L->tower) {
                nf::FieldElement gen(c.L->degree);
                gen[prefix] = 1;
                fields.push_back(nf::subfield_span(*c.L, {gen}));
                prefix *= step.degree();
            }
            pf::CompositumTower ct = pf::compositum_tower(*c.L, A, fields);
            if (ct.fields[ct.top].degree() != c.L->degree)
                return std::string("top of the lattice is not the full field");
            pf::limit_element(ct.tower);
        }
        return std::string();
    });

    rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& corpus_dir, int jobs,
                      const std::string& golden_dir, int degree_bound) {
    SuiteReport report;
    std::vector<std::string> paths;
    if (!fs::is_directory(corpus_dir))
        throw io::ParseError("not a directory: " + corpus_dir);
    for (const auto& e : fs::directory_iterator(corpus_dir))
        if (e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) report.warning = "empty corpus directory";

    std::vector<CaseReport> reports(paths.size());
    std::vector<io::CorpusCase> loaded(paths.size());
    std::vector<char> ok(paths.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < paths.size(); i = next.fetch_add(1)) {
            try {
                loaded[i] = io::load_corpus_case(paths[i], degree_bound);
                ok[i] = 1;
                reports[i] = run_case(loaded[i]);
            } catch (const io::ParseError& e) {
                reports[i].name = fs::path(paths[i]).stem().string();
                reports[i].parse_error = true;
                reports[i].checks.push_back({"parse", false, e.what()});
            } catch (const Error& e) {
                reports[i].name = fs::path(paths[i]).stem().string();
                reports[i].checks.push_back({"load", false, e.what()});
            }
        }
    };
    int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(paths.size())));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (auto& r : reports) {
        report.any_parse_error = report.any_parse_error || r.parse_error;
        report.cases.push_back(std::move(r));
    }

    std::vector<io::CorpusCase> good;
    for (size_t i = 0; i < loaded.size(); ++i)
        if (ok[i]) good.push_back(loaded[i]);
    report.cases.push_back(profinite_case(good));

    if (!golden_dir.empty()) {
        CaseReport gr;
        gr.name = "goldens";
        auto t0 = Clock::now();
        run_check(gr, "s3_adjoint", [&] {
            std::string produced =
                io::render(dump_selector("adjoint:" + corpus_dir + "/s3.json",
                                         degree_bound));
            std::string golden = io::read_file(golden_dir + "/s3_adjoint.json");
            return produced == golden ? std::string() : std::string("dump differs");
        });
        run_check(gr, "cartier3", [&] {
            std::string produced = io::render(dump_selector("cartier:3", degree_bound));
            std::string golden = io::read_file(golden_dir + "/cartier3.json");
            return produced == golden ? std::string() : std::string("dump differs");
        });
        gr.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        report.cases.push_back(std::move(gr));
    }

    std::sort(report.cases.begin(), report.cases.end(),
              [](const CaseReport& a, const CaseReport& b) { return a.name < b.name; });
    return report;
}

io::Json dump_selector(const std::string& selector, int degree_bound) {
    auto q = std::make_shared<nf::NumberField>(nf::base_rationals());
    if (selector == "base") return io::dump_field(*q);

    size_t colon = selector.find(':');
    if (colon == std::string::npos) throw io::ParseError("unknown selector: " + selector);
    std::string kind = selector.substr(0, colon);
    std::string arg = selector.substr(colon + 1);

    auto dump_matrix = [](const hopf::HopfMorphism& m) {
        io::Json rows = io::Json::array();
        for (const auto& s : m.matrix) rows.push_back(io::dump_vec(s));
        return rows;
    };

    if (kind == "trivial") {
        int n = 0;
        try {
            n = std::stoi(arg);
        } catch (...) {
            throw io::ParseError("bad selector argument: " + arg);
        }
        if (n < 1) throw io::ParseError("bad selector argument: " + arg);
        return io::dump_hopf(hopf::trivial_bundle_hopf(grp::cyclic_group(n), q));
    }
    if (kind == "cartier") {
        std::shared_ptr<nf::NumberField> A;
        nf::FieldElement zeta;
        if (arg == "2") {
            A = q;
            zeta = {Rat(-1)};
        } else if (arg == "3") {
            A = std::make_shared<nf::NumberField>(
                nf::extend(*q, "w", {{Vec{Rat(1)}}, {Vec{Rat(1)}}, {Vec{Rat(1)}}}));
            zeta = {Rat(0), Rat(1)};
        } else if (arg == "4") {
            A = std::make_shared<nf::NumberField>(
                nf::extend(*q, "i", {{Vec{Rat(1)}}, {Vec{Rat(0)}}, {Vec{Rat(1)}}}));
            zeta = {Rat(0), Rat(1)};
        } else {
            throw io::ParseError("bad selector argument: " + arg);
        }
        hopf::CartierIso ci = hopf::cartier_iso(std::stoi(arg), A, zeta);
        io::Json out;
        out["n"] = std::stoi(arg);
        out["mu"] = io::dump_hopf(ci.mu);
        out["trivial"] = io::dump_hopf(ci.trivial);
        out["forward"] = dump_matrix(ci.forward);
        out["backward"] = dump_matrix(ci.backward);
        return out;
    }
    if (kind == "adjoint") {
        io::CorpusCase c = io::load_corpus_case(arg, degree_bound);
        adj::GaloisExtensionData ext = adj::build_extension(c.L, c.certs);
        return io::dump_hopf(adj::build_adjoint(ext).hopf);
    }
    throw io::ParseError("unknown selector: " + selector);
}

}  // namespace ad::cli
