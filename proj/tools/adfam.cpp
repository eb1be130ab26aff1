// adfam: command-line front end for the adjoint-bundle library.

#include <CLI11.hpp>
#include <iostream>
#include <memory>
#include <sstream>

#include "ad/adjoint.hpp"
#include "ad/io.hpp"
#include "ad/profinite.hpp"
#include "ad/suite.hpp"

using namespace ad;

namespace {

struct Options {
    int order_bound = 5040;
    int degree_bound = 24;
    int jobs = 1;
    std::string golden;
};

struct LoadedCase {
    io::CorpusCase c;
    adj::GaloisExtensionData ext;
};

LoadedCase load_ext(const std::string& path, const Options& opt) {
    LoadedCase lc;
    lc.c = io::load_corpus_case(path, opt.degree_bound);
    lc.ext = adj::build_extension(lc.c.L, lc.c.certs);
    if (lc.ext.G.order > opt.order_bound) throw Error("group too large");
    return lc;
}

void print_json(const io::Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << io::render(j);
    else
        io::write_file(out_path, io::render(j));
}

int run(CLI::App& app, const Options& opt, int argc, char** argv) {
    std::string file, out_path, selector, subfield_spec;
    int n = 0, w = 0;
    int exit_code = 0;

    auto* grp_cmd = app.add_subcommand("grp", "finite group queries");
    auto* classes = grp_cmd->add_subcommand("classes", "conjugacy classes of Gal(L/K)");
    classes->add_option("extfile", file)->required();
    classes->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        grp::ConjClassData cc = grp::conjugacy_classes(lc.ext.G);
        io::Json out;
        out["order"] = lc.ext.G.order;
        io::Json cls = io::Json::array();
        for (size_t i = 0; i < cc.reps.size(); ++i) {
            io::Json one;
            one["rep"] = cc.reps[i];
            one["size"] = cc.class_sizes[i];
            one["centralizer_order"] = static_cast<int>(cc.centralizers[i].size());
            cls.push_back(one);
        }
        out["classes"] = cls;
        print_json(out, out_path);
    });

    auto* field_cmd = app.add_subcommand("field", "number field queries");
    auto* info = field_cmd->add_subcommand("info", "tower and basis of the field");
    info->add_option("extfile", file)->required();
    info->callback([&] {
        io::CorpusCase c = io::load_corpus_case(file, opt.degree_bound);
        print_json(io::dump_field(*c.L), out_path);
    });

    auto* hopf_cmd = app.add_subcommand("hopf", "Hopf algebra constructions");
    auto* htriv = hopf_cmd->add_subcommand("trivial", "trivial bundle of Gal(L/K) over Q");
    htriv->add_option("extfile", file)->required();
    htriv->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        auto q = std::make_shared<nf::NumberField>(nf::base_rationals());
        hopf::HopfAlgebra H = hopf::trivial_bundle_hopf(lc.ext.G, q);
        hopf::HopfReport rep = hopf::verify_hopf(H);
        std::cout << rep.summary();
        if (!rep.all_pass()) exit_code = 1;
    });
    auto* hcart = hopf_cmd->add_subcommand("cartier", "Cartier pairing of Z/n over Q(zeta_n)");
    hcart->add_option("n", n)->required();
    hcart->callback([&] {
        print_json(cli::dump_selector("cartier:" + std::to_string(n), opt.degree_bound),
                   out_path);
    });
    auto* hver = hopf_cmd->add_subcommand("verify", "verify the adjoint Hopf axioms");
    hver->add_option("extfile", file)->required();
    hver->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        adj::AdjointBundle ad = adj::build_adjoint(lc.ext);
        hopf::HopfReport rep = hopf::verify_hopf(ad.hopf);
        std::cout << rep.summary();
        if (!rep.all_pass()) exit_code = 1;
    });

    auto* adj_cmd = app.add_subcommand("adjoint", "adjoint bundle of an extension");
    auto* abuild = adj_cmd->add_subcommand("build", "points and dimensions");
    abuild->add_option("extfile", file)->required();
    abuild->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        adj::AdjointBundle ad = adj::build_adjoint(lc.ext);
        io::Json out;
        out["dim"] = ad.hopf.dim();
        io::Json pts = io::Json::array();
        for (const auto& p : ad.points) {
            io::Json one;
            one["class_rep"] = p.class_rep;
            one["degree"] = p.degree;
            pts.push_back(one);
        }
        out["points"] = pts;
        print_json(out, out_path);
    });
    auto* afiber = adj_cmd->add_subcommand("fiber", "convolution group of the fiber");
    afiber->add_option("extfile", file)->required();
    afiber->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        adj::AdjointBundle ad = adj::build_adjoint(lc.ext);
        grp::FiniteGroup F = adj::fiber_group(ad, lc.ext);
        bool match = F.table == lc.ext.G.table;
        std::cout << "fiber group order " << F.order
                  << (match ? ", table matches Gal(L/K)" : ", TABLE MISMATCH") << "\n";
        if (!match) exit_code = 1;
    });
    auto* atower = adj_cmd->add_subcommand("tower", "tower exact sequence through mid");
    atower->add_option("extfile", file)->required();
    atower->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        if (lc.c.mid_generators.empty()) throw io::ParseError("case has no mid subfield");
        adj::AdjointBundle ad = adj::build_adjoint(lc.ext);
        nf::Subfield M = nf::subfield_span(*lc.c.L, lc.c.mid_generators);
        adj::TowerData t = adj::tower_maps(lc.ext, ad, M);
        adj::SplitReport sr = adj::pullback_splitting_check(lc.ext, ad, t);
        io::Json out;
        out["kernel_dim"] = t.kernel.dim();
        out["quotient_dim"] = t.adM.hopf.dim();
        out["splitting"] = sr.pass;
        if (lc.c.zeta) {
            adj::KernelActionReport ka = adj::kernel_action(lc.ext, t, lc.c.zeta);
            out["cyclotomic"] = ka.cyclotomic_pass;
            out["char_values"] = ka.char_values;
            if (!ka.cyclotomic_pass) exit_code = 1;
        }
        if (!sr.pass) exit_code = 1;
        print_json(out, out_path);
    });
    auto* aver = adj_cmd->add_subcommand("verify", "all structural checks for one case");
    aver->add_option("extfile", file)->required();
    aver->callback([&] {
        io::CorpusCase c = io::load_corpus_case(file, opt.degree_bound);
        cli::CaseReport rep = cli::run_case(c);
        for (const auto& ch : rep.checks)
            std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name
                      << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
        if (!rep.pass()) exit_code = 1;
    });

    auto* pf_cmd = app.add_subcommand("profinite", "finite truncations");
    auto* zhat = pf_cmd->add_subcommand("zhat", "factorial tower Z/1! .. Z/n!");
    zhat->add_option("n", n)->required();
    zhat->callback([&] {
        pf::FiniteTower t = pf::zhat_truncation(n);
        io::Json out;
        out["sizes"] = t.sizes;
        out["surjective"] = t.all_surjective();
        out["limit"] = pf::limit_element(t);
        print_json(out, out_path);
    });
    auto* shift = pf_cmd->add_subcommand("shift", "windowed shift obstruction count");
    shift->add_option("w", w)->required();
    shift->add_option("n", n)->required();
    shift->callback([&] {
        pf::ShiftReport r = pf::shift_obstruction(w, n);
        io::Json out;
        out["count"] = r.count;
        out["witness"] = r.witness;
        print_json(out, out_path);
        if (r.count != 0) exit_code = 1;
    });
    auto* ptower = pf_cmd->add_subcommand("tower", "compositum poset of subfields");
    ptower->add_option("extfile", file)->required();
    ptower->add_option("--subfields", subfield_spec,
                       "comma list of basis indices i; each adds Q(b_i)");
    ptower->callback([&] {
        LoadedCase lc = load_ext(file, opt);
        nf::AutomorphismGroup A = nf::automorphisms(*lc.c.L, lc.c.certs);
        std::vector<nf::Subfield> fields = {nf::subfield_span(*lc.c.L, {lc.c.L->one()})};
        std::stringstream ss(subfield_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            int idx = std::stoi(tok);
            if (idx < 0 || idx >= lc.c.L->degree)
                throw io::ParseError("basis index out of range: " + tok);
            nf::FieldElement gen(lc.c.L->degree);
            gen[idx] = 1;
            fields.push_back(nf::subfield_span(*lc.c.L, {gen}));
        }
        pf::CompositumTower ct = pf::compositum_tower(*lc.c.L, A, fields);
        io::Json out;
        out["levels"] = ct.tower.levels();
        out["sizes"] = ct.tower.sizes;
        io::Json degs = io::Json::array();
        for (const auto& f : ct.fields) degs.push_back(f.degree());
        out["degrees"] = degs;
        out["top_degree"] = ct.fields[ct.top].degree();
        print_json(out, out_path);
    });
    auto* ptriv = pf_cmd->add_subcommand("trivial", "Yoneda triviality of an etale algebra");
    ptriv->add_option("algfile", file)->required();
    ptriv->callback([&] {
        pf::EtaleAlgebra A = io::load_etale(file, opt.degree_bound);
        pf::TrivialityReport r = pf::is_trivial_etale(A);
        io::Json out;
        out["trivial"] = r.trivial;
        out["sections"] = r.sections;
        out["hom_count"] = r.hom_count;
        out["k_dim"] = r.k_dim;
        print_json(out, out_path);
    });

    auto* suite_cmd = app.add_subcommand("suite", "orchestrated verification");
    auto* srun = suite_cmd->add_subcommand("run", "run every corpus case");
    srun->add_option("dir", file)->required();
    srun->callback([&] {
        cli::SuiteReport rep = cli::run_suite(file, opt.jobs, opt.golden, opt.degree_bound);
        std::cout << rep.summary();
        if (rep.any_parse_error)
            exit_code = 2;
        else if (!rep.all_pass())
            exit_code = 1;
    });

    auto* dump_cmd = app.add_subcommand("dump", "canonical JSON dump of an object");
    dump_cmd->add_option("selector", selector)->required();
    dump_cmd->callback(
        [&] { print_json(cli::dump_selector(selector, opt.degree_bound), out_path); });

    for (CLI::App* s : {classes, info, hcart, abuild, atower, zhat, shift, ptower, ptriv})
        s->add_option("--out", out_path, "write the JSON here instead of stdout");
    dump_cmd->add_option("--out", out_path, "write the JSON here instead of stdout");

    app.require_subcommand(1);
    for (CLI::App* s : {grp_cmd, field_cmd, hopf_cmd, adj_cmd, pf_cmd, suite_cmd})
        s->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact adjoint-bundle Hopf algebras of Galois extensions"};
    app.fallthrough();

    Options opt;
    app.add_option("--order-bound", opt.order_bound, "largest allowed group order")
        ->envname("ADFAM_ORDER_BOUND");
    app.add_option("--degree-bound", opt.degree_bound, "largest allowed field degree")
        ->envname("ADFAM_DEGREE_BOUND");
    app.add_option("--jobs", opt.jobs, "parallel corpus cases")->envname("ADFAM_JOBS");
    app.add_option("--golden", opt.golden, "golden directory to diff against")
        ->envname("ADFAM_GOLDEN");

    try {
        return run(app, opt, argc, argv);
    } catch (const io::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
