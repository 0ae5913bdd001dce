#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "arrbs/report.hpp"

using namespace arrbs;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> s_names(int r) {
    std::vector<std::string> names;
    for (int k = 1; k <= r; ++k) names.push_back("s" + std::to_string(k));
    return names;
}

std::string tame_status_name(TameStatus t) {
    switch (t) {
        case TameStatus::AutomaticLowRank: return "automatic (rank <= 3)";
        case TameStatus::ImpliedByFree: return "implied by freeness";
        case TameStatus::Asserted: return "asserted by the input";
        default: return "unknown";
    }
}

void run_lattice(Report& rep, const ParsedInput& in) {
    auto lattice = build_lattice(in.arrangement);
    rep.body()["lattice"] = lattice_json(in.arrangement, lattice);
    rep.body()["edges"] = edges_json(edge_records(in.arrangement, lattice, in.spec));
    Poly chi = characteristic_polynomial(in.arrangement, lattice);
    rep.body()["characteristic_polynomial"] = chi.str({"t"});
}

void run_mdr(Report& rep, const ParsedInput& in) {
    // on the input as given: non-essential directions contribute degree-0
    // syzygies and legitimately force mdr = 0
    MdrResult res = mdr(in.arrangement);
    rep.body()["rank"] = arrangement_rank(in.arrangement);
    if (res.above_cap) {
        rep.body()["mdr"] = "above cap";
        rep.body()["cap"] = res.cap;
    } else {
        rep.body()["mdr"] = res.value;
    }
}

void run_free(Report& rep, const ParsedInput& in) {
    Essentialization ess = essentialize(in.arrangement);
    FreenessCertificate cert = freeness_certificate(ess.arrangement);
    rep.body()["rank"] = ess.arrangement.n;
    rep.body()["certificate"] = certificate_json(cert, ess.arrangement);
    if (cert.status == FreenessStatus::Free && !cert.terao_factorization_ok)
        rep.warn("characteristic polynomial does not factor over the exponents");
}

void run_annihilator(Report& rep, const ParsedInput& in) {
    const Arrangement& a = in.arrangement;
    std::vector<Derivation> gens = logder_generators(a);
    auto psis = annihilator_generators(a, in.spec, +1, in.spec.fprime, gens);
    std::vector<std::string> names = a.vars;
    for (const auto& s : s_names(in.spec.r())) names.push_back(s);
    nlohmann::json ops = nlohmann::json::array();
    SectionContext ctx = make_section_context(a, in.spec);
    Section sec = twist_section(a, in.spec, +1, in.spec.fprime);
    for (const auto& psi : psis) {
        if (!act_on_section(psi, sec, ctx).is_zero())
            throw std::logic_error("annihilator generator does not kill its section");
        ops.push_back(psi.str(names));
    }
    rep.body()["generators"] = ops;
    rep.body()["generator_count"] = psis.size();
    rep.body()["flags"] = {{"checked_on_section", true}};
}

void run_verify(Report& rep, const ParsedInput& in, const std::string& check) {
    const Arrangement& a = in.arrangement;
    if (check == "euler") {
        bool ok = true;
        for (int t = 0; t <= 3; ++t) ok = ok && euler_cascade_product(a.n, t) == euler_cascade_sum(a.n, t);
        rep.body()["check"] = "euler";
        rep.body()["ok"] = ok;
        if (!ok) throw std::logic_error("Euler cascade identity failed");
        return;
    }
    if (check == "trace") {
        FreenessCertificate cert = freeness_certificate(a);
        if (cert.status != FreenessStatus::Free) throw HypothesisError("trace check needs a free arrangement");
        auto basis = preferred_basis(cert, a);
        auto residuals = verify_trace_formula(basis, a);
        bool ok = true;
        nlohmann::json res = nlohmann::json::array();
        for (const Poly& p : residuals) {
            ok = ok && p.is_zero();
            res.push_back(p.str(a.vars));
        }
        rep.body()["check"] = "trace";
        rep.body()["residuals"] = res;
        rep.body()["ok"] = ok;
        return;
    }
    if (check == "duality") {
        auto dc = duality_top_row_check(a, in.spec);
        rep.body()["check"] = "duality";
        rep.body()["rows"] = dc.entries;
        rep.body()["ok"] = dc.ok;
        return;
    }
    throw ParseError("unknown check '" + check + "' (expected trace|duality|euler)");
}

void run_bs(Report& rep, const ParsedInput& in, const std::string& mode) {
    BsContext ctx(in.arrangement, in.spec);
    rep.body()["flags"] = {{"mode", mode},
                           {"rank", ctx.rank()},
                           {"tame", tame_status_name(ctx.tame_status())},
                           {"assume_tame", in.arrangement.assume_tame},
                           {"assume_free", in.arrangement.assume_free}};
    rep.body()["edges"] = edges_json(ctx.edges());
    if (mode == "upper") {
        SLinearFactorSet fs = upper_bound_product(ctx);
        rep.body()["factors"] = factors_json(fs);
        rep.body()["product"] = factors_human(fs);
    } else if (mode == "member") {
        SLinearFactorSet fs = member_product(ctx);
        rep.body()["factors"] = factors_json(fs);
        rep.body()["product"] = factors_human(fs);
    } else if (mode == "exact") {
        ExactResult res = exact_variety_product(ctx);
        for (const auto& w : res.warnings) rep.warn(w);
        if (!res.applicable) {
            rep.body()["flags"]["theorem"] = "none (bounds mode)";
            try {
                BoundsResult b = bounds_free_product(ctx);
                rep.body()["factors"] = {{"lower", factors_json(b.lower)}, {"upper", factors_json(b.upper)}};
            } catch (const HypothesisError&) {
                // no bounds either; the error below carries the explanation
            }
            throw HypothesisError("no exactness theorem applies to this input");
        }
        rep.body()["flags"]["theorem"] = res.theorem;
        rep.body()["factors"] = factors_json(res.factors);
        rep.body()["product"] = factors_human(res.factors);
        if (ctx.spec().r() == 1) rep.body()["roots"] = roots_json(univariate_roots(res.factors));
    } else if (mode == "bounds") {
        BoundsResult res = bounds_free_product(ctx);
        for (const auto& w : res.warnings) rep.warn(w);
        rep.body()["factors"] = {{"lower", factors_json(res.lower)}};
        rep.body()["product"] = {{"lower", factors_human(res.lower)}};
        if (res.upper_valid) {
            rep.body()["factors"]["upper"] = factors_json(res.upper);
            rep.body()["product"]["upper"] = factors_human(res.upper);
        }
    } else {
        throw ParseError("unknown mode '" + mode + "' (expected upper|member|exact|bounds)");
    }
}

void run_roots01(Report& rep, const ParsedInput& in) {
    // the formula only sees the trivial factorization
    FactorizationSpec spec = FactorizationSpec::trivial(in.arrangement);
    spec.fprime = in.spec.fprime;
    BsContext ctx(in.arrangement, spec);
    auto roots = roots_unit_interval(ctx);
    rep.body()["flags"] = {{"tame", tame_status_name(ctx.tame_status())}};
    rep.body()["roots"] = roots_json(roots);
    rep.body()["set"] = roots_human(roots);
}

void run_symmetry(Report& rep, const ParsedInput& in) {
    BsContext ctx(in.arrangement, in.spec);
    UnmixedReport ur = unmixed_analysis(ctx.ess(), ctx.spec());
    nlohmann::json ju;
    ju["factorization_unmixed"] = ur.factorization_unmixed;
    ju["fprime_unmixed"] = ur.fprime_unmixed;
    ju["g_unmixed"] = ur.g_unmixed;
    if (ur.factorization_unmixed) {
        ju["d_k"] = ur.d_k;
        ju["m_k"] = ur.m_k;
    }
    rep.body()["unmixed"] = ju;
    for (const auto& n : ur.notes) rep.warn(n);
    PhiMap phi = symmetry_involution(ur); // throws HypothesisError when not unmixed
    nlohmann::json jphi = nlohmann::json::array();
    for (size_t k = 0; k < phi.shift.size(); ++k)
        jphi.push_back("s" + std::to_string(k + 1) + " -> -s" + std::to_string(k + 1) +
                       (phi.shift[k].sign() >= 0 ? " + " + phi.shift[k].str() : " - " + (-phi.shift[k]).str()));
    rep.body()["phi"] = jphi;
}

void run_freeing(Report& rep, const ParsedInput& in, const std::string& root, bool per_edge) {
    if (root.empty()) throw ParseError("freeing needs --root p/q");
    Rational rho = Rational::parse(root);
    FreeingResult res = freeing_lower_bound(in.arrangement, rho, per_edge ? FreeingMode::PerEdge : FreeingMode::Coprime);
    rep.body()["flags"] = {{"mode", per_edge ? "per-edge" : "coprime"}, {"root", rho.str()}, {"v", res.v}};
    rep.body()["notes"] = res.notes;
    if (res.feasible) {
        rep.body()["bound"] = res.bound;
    } else {
        rep.body()["bound"] = "infeasible";
        rep.warn("no qualifying edge; hypotheses should be re-checked");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial Bernstein-Sato data of central hyperplane arrangements"};
    app.require_subcommand(1);

    std::string file, mode = "exact", check = "trace", root, out_path;
    bool json_out = false, per_edge = false, assume_tame_flag = false;

    std::vector<CLI::App*> subs;
    for (const char* name : {"lattice", "mdr", "free", "annihilator", "verify", "bs", "roots01", "symmetry", "freeing"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("file", file, "arrangement input file")->required();
        sub->add_flag("--json", json_out, "emit the JSON report");
        sub->add_option("--out", out_path, "write the report to a file");
        sub->add_flag("--assume-tame", assume_tame_flag, "assert tameness of the input");
        subs.push_back(sub);
    }
    app.get_subcommand("bs")->add_option("--mode", mode, "upper|member|exact|bounds");
    app.get_subcommand("verify")->add_option("--check", check, "trace|duality|euler");
    app.get_subcommand("freeing")->add_option("--root", root, "candidate root p/q");
    app.get_subcommand("freeing")->add_flag("--per-edge", per_edge, "per-edge mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    int code = 0;
    std::string text;
    try {
        text = read_file(file);
    } catch (const ParseError& e) {
        std::cerr << "error[input]: " << e.what() << "\n";
        return 1;
    }
    Report rep(cmd, text);
    try {
        ParsedInput in = parse_arrangement(text);
        if (assume_tame_flag) in.arrangement.assume_tame = true;
        if (cmd == "lattice") run_lattice(rep, in);
        else if (cmd == "mdr") run_mdr(rep, in);
        else if (cmd == "free") run_free(rep, in);
        else if (cmd == "annihilator") run_annihilator(rep, in);
        else if (cmd == "verify") run_verify(rep, in, check);
        else if (cmd == "bs") run_bs(rep, in, mode);
        else if (cmd == "roots01") run_roots01(rep, in);
        else if (cmd == "symmetry") run_symmetry(rep, in);
        else if (cmd == "freeing") run_freeing(rep, in, root, per_edge);
    } catch (const HypothesisError& e) {
        rep.body()["error"] = {{"kind", "hypothesis-not-met"}, {"message", e.what()}};
        rep.warn(e.what());
        code = 2;
    } catch (const ParseError& e) {
        std::cerr << "error[input]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::string output = json_out ? rep.to_json() : rep.to_human();
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << output;
    } else {
        std::cout << output;
    }
    return code;
}
