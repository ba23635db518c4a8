#include "cartan/cli.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cartan/acceptance.hpp"
#include "cartan/assembly.hpp"
#include "cartan/bounds.hpp"
#include "cartan/error.hpp"
#include "cartan/gl2.hpp"
#include "cartan/heights.hpp"
#include "cartan/lie.hpp"
#include "cartan/lifting.hpp"
#include "cartan/local.hpp"
#include "cartan/matgroup.hpp"

namespace cartan {
namespace {

using ordered_json = nlohmann::ordered_json;

void emit_json(std::ostream& out, const ordered_json& j, bool pretty) {
    out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

ordered_json subspace_json(const LieSubspace& v) {
    ordered_json basis = ordered_json::array();
    for (const auto& row : v.basis) {
        std::ostringstream s;
        s << row[0] << "," << row[1] << ";" << row[2] << "," << row[3];
        basis.push_back(s.str());
    }
    return basis;
}

std::vector<Mat2> parse_mat_list(const std::string& text, PrimePower ctx) {
    std::vector<Mat2> mats;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t bar = text.find('|', pos);
        std::string piece =
            text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        if (!piece.empty()) mats.push_back(parse_mat(piece, ctx));
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    if (mats.empty()) fail("ParseError", "no matrices given");
    return mats;
}

Delta7 parse_delta7(const std::string& s) {
    if (s == "1") return Delta7::one;
    if (s == "8/3") return Delta7::eight_thirds;
    if (s == "8") return Delta7::eight;
    fail("ParseError", "delta7 must be one of 1, 8/3, 8");
}

ReductionType parse_reduction(const std::string& s) {
    if (s == "ordinary") return ReductionType::ordinary;
    if (s == "supersingular") return ReductionType::supersingular;
    if (s == "unknown") return ReductionType::unknown;
    fail("ParseError", "reduction must be ordinary, supersingular or unknown");
}

ordered_json known_point_json(const KnownPoint& kp) {
    ordered_json row;
    row["j"] = kp.j ? ordered_json(format_rational(*kp.j)) : ordered_json(nullptr);
    row["source"] = kp.source;
    row["adelic_index"] = kp.adelic_index;
    row["exact"] = kp.exact;
    return row;
}

std::vector<int> battery_ids(const std::string& name) {
    if (name == "mertens") return {9};
    if (name == "cartan-index") return {1};
    if (name == "cartan-tower") return {6};
    if (name == "lie-filtration") return {2, 3, 4, 5};
    if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    fail("ParseError", "unknown verify battery: " + name);
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite Cartan subgroup calculus and certified adelic index bounds"};
    app.name("cartan-adelic");
    app.require_subcommand(1);

    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    int rc = 0;

    // bound -----------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "certified analytic bounds");
    bound->fallthrough();
    bound->require_subcommand(1);

    auto* bound_height = bound->add_subcommand("height", "adelic index bound in the height");
    bound_height->fallthrough();
    double bh_f = 0.0;
    bool bh_refined = false;
    bound_height->add_option("--F", bh_f, "stable Faltings height")->required();
    bound_height->add_flag("--refined", bh_refined, "use the refined curve");
    bound_height->callback([&] {
        Ival f = require_f_domain(bh_f);
        BoundReport r = bh_refined ? adelic_bound_height_refined(f) : adelic_bound_height(f);
        out << bound_report_json(r, pretty) << "\n";
    });

    auto* bound_lambda = bound->add_subcommand("lambda", "isogeny bound in the height");
    bound_lambda->fallthrough();
    double bl_f = 0.0;
    bool bl_refined = false;
    bound_lambda->add_option("--F", bl_f, "stable Faltings height")->required();
    bound_lambda->add_flag("--refined", bl_refined, "use the refined curve");
    bound_lambda->callback([&] {
        Ival f = require_f_domain(bl_f);
        BoundReport r;
        r.formula_id = bl_refined ? "lambda-height-refined" : "lambda-height";
        r.inputs["F"] = format_double(bl_f);
        r.result = bl_refined ? lambda_bound_height_refined(f) : lambda_bound_height(f);
        r.anchor = "cyclic isogeny degree bound in the Faltings height";
        out << bound_report_json(r, pretty) << "\n";
    });

    auto* bound_j = bound->add_subcommand("j", "height interval from the j-invariant");
    bound_j->fallthrough();
    std::string bj_value;
    bound_j->add_option("--value", bj_value, "j-invariant as a/b")->required();
    bound_j->callback([&] {
        BigRational j = parse_rational(bj_value);
        BoundReport r;
        r.formula_id = "faltings-interval";
        r.inputs["j"] = format_rational(j);
        r.result = RealBound{faltings_interval_ival(j), Rounding::nearest};
        r.anchor = "two-sided stable height interval from the j-invariant";
        out << bound_report_json(r, pretty) << "\n";
    });

    auto* bound_cond = bound->add_subcommand("conductor", "adelic index bound in the conductor");
    bound_cond->fallthrough();
    std::uint64_t bc_n = 0;
    bound_cond->add_option("--N", bc_n, "squarefree conductor")->required();
    bound_cond->callback([&] {
        out << bound_report_json(adelic_bound_conductor(mpz_class(bc_n)), pretty) << "\n";
    });

    // cartan ----------------------------------------------------------------
    auto* cartan_cmd = app.add_subcommand("cartan", "Cartan subgroups of GL2(Z/p^n)");
    cartan_cmd->fallthrough();
    std::uint64_t ca_p = 0;
    std::uint32_t ca_n = 1;
    std::string ca_kind = "nonsplit+";
    bool ca_index = false, ca_order = false, ca_gens = false;
    cartan_cmd->add_option("--p", ca_p, "odd prime")->required();
    cartan_cmd->add_option("--n", ca_n, "level");
    cartan_cmd->add_option("--kind", ca_kind, "nonsplit, nonsplit+, split, split+, borel");
    cartan_cmd->add_flag("--index", ca_index, "print the index in GL2 and nothing else");
    cartan_cmd->add_flag("--order", ca_order, "print the group order and nothing else");
    cartan_cmd->add_flag("--generators", ca_gens, "print generators, one per line");
    cartan_cmd->callback([&] {
        PrimePower ctx(ca_p, ca_n);
        MatGroup g = build_cartan(ctx, parse_cartan_kind(ca_kind));
        if (ca_index) {
            out << index_in_gl2(g) << "\n";
        } else if (ca_order) {
            out << group_order(g) << "\n";
        } else if (ca_gens) {
            for (const Mat2& m : g.generators) out << format_mat(m) << "\n";
        } else {
            ordered_json j;
            j["record"] = "cartan-group";
            j["p"] = ca_p;
            j["n"] = ca_n;
            j["kind"] = cartan_kind_name(parse_cartan_kind(ca_kind));
            j["order"] = group_order(g);
            j["index"] = index_in_gl2(g);
            ordered_json gens = ordered_json::array();
            for (const Mat2& m : g.generators) gens.push_back(format_mat(m));
            j["generators"] = gens;
            emit_json(out, j, pretty);
        }
    });

    // lie -------------------------------------------------------------------
    auto* lie_cmd = app.add_subcommand("lie", "conjugation modules and graded images");
    lie_cmd->fallthrough();
    std::uint64_t li_p = 0;
    std::uint32_t li_n = 2, li_grade = 0;
    std::string li_piece, li_case = "nonsplit", li_kind = "nonsplit+";
    lie_cmd->add_option("--p", li_p, "odd prime")->required();
    lie_cmd->add_option("--piece", li_piece, "V1, V2 or V3");
    lie_cmd->add_option("--case", li_case, "split or nonsplit");
    lie_cmd->add_option("--grade", li_grade, "graded image of a Cartan at this grade");
    lie_cmd->add_option("--n", li_n, "level for the graded image");
    lie_cmd->add_option("--kind", li_kind, "Cartan kind for the graded image");
    lie_cmd->callback([&] {
        ordered_json j;
        if (!li_piece.empty()) {
            VPiece which;
            if (li_piece == "V1") which = VPiece::V1;
            else if (li_piece == "V2") which = VPiece::V2;
            else if (li_piece == "V3") which = VPiece::V3;
            else fail("ParseError", "piece must be V1, V2 or V3");
            CartanCase cc = li_case == "split"      ? CartanCase::split
                            : li_case == "nonsplit" ? CartanCase::nonsplit
                                                    : (fail("ParseError",
                                                            "case must be split or nonsplit"),
                                                       CartanCase::nonsplit);
            LieSubspace v = build_V(li_p, which, cc);
            j["record"] = "lie-subspace";
            j["p"] = li_p;
            j["piece"] = li_piece;
            j["case"] = li_case;
            j["dim"] = v.dim();
            j["basis"] = subspace_json(v);
            j["bracket_closed"] = bracket_closed(v);
        } else if (li_grade > 0) {
            PrimePower ctx(li_p, li_n);
            MatGroup g = build_cartan(ctx, parse_cartan_kind(li_kind));
            LieSubspace v = lie_image(g, li_grade);
            j["record"] = "lie-image";
            j["p"] = li_p;
            j["n"] = li_n;
            j["kind"] = cartan_kind_name(parse_cartan_kind(li_kind));
            j["grade"] = li_grade;
            j["dim"] = v.dim();
            j["basis"] = subspace_json(v);
        } else {
            fail("ParseError", "give either --piece or --grade");
        }
        emit_json(out, j, pretty);
    });

    // lift ------------------------------------------------------------------
    auto* lift_cmd = app.add_subcommand("lift", "lifting along the p-power tower");
    lift_cmd->fallthrough();
    lift_cmd->require_subcommand(1);

    auto* lift_tower = lift_cmd->add_subcommand("tower", "Cartan lift census");
    lift_tower->fallthrough();
    std::uint64_t lt_p = 0, lt_seed = 0;
    std::uint32_t lt_nmax = 2;
    std::uint64_t lt_samples = 100;
    lift_tower->add_option("--p", lt_p, "odd prime")->required();
    lift_tower->add_option("--nmax", lt_nmax, "largest level");
    lift_tower->add_option("--samples", lt_samples, "seeded random samples per level");
    lift_tower->add_option("--seed", lt_seed, "sampler seed");
    lift_tower->callback([&] {
        SamplerConfig sc;
        sc.samples = lt_samples;
        sc.seed = lt_seed;
        ordered_json rows = ordered_json::array();
        for (const CartanLiftReport& r : verify_cartan_tower(lt_p, lt_nmax, sc)) {
            ordered_json row;
            row["level"] = r.level;
            row["dims"] = r.g_dims;
            row["class"] = lift_class_name(r.classification);
            row["description"] = r.description;
            rows.push_back(row);
        }
        ordered_json j;
        j["record"] = "cartan-tower";
        j["p"] = lt_p;
        j["nmax"] = lt_nmax;
        j["samples"] = lt_samples;
        j["seed"] = lt_seed;
        j["rows"] = rows;
        emit_json(out, j, pretty);
    });

    auto* lift_eigen = lift_cmd->add_subcommand("eigen", "eigenvalue lifting mod p^n");
    lift_eigen->fallthrough();
    std::uint64_t le_p = 0;
    std::uint32_t le_n = 1;
    std::string le_mat;
    lift_eigen->add_option("--p", le_p, "odd prime")->required();
    lift_eigen->add_option("--n", le_n, "level");
    lift_eigen->add_option("--mat", le_mat, "matrix a,b;c,d")->required();
    lift_eigen->callback([&] {
        PrimePower ctx(le_p, le_n);
        Mat2 m = parse_mat(le_mat, ctx);
        auto [l1, l2] = hensel_eigenvalues(m);
        ordered_json j;
        j["record"] = "eigenvalues";
        j["p"] = le_p;
        j["n"] = le_n;
        j["mat"] = format_mat(m);
        j["roots"] = {format_quad(l1), format_quad(l2)};
        emit_json(out, j, pretty);
    });

    auto* lift_comp = lift_cmd->add_subcommand("complement", "prime-to-p complement");
    lift_comp->fallthrough();
    std::uint64_t lc_p = 0, lc_seed = 0;
    std::uint32_t lc_n = 2;
    std::string lc_gens;
    bool lc_seeded = false;
    lift_comp->add_option("--p", lc_p, "odd prime")->required();
    lift_comp->add_option("--n", lc_n, "level");
    lift_comp->add_option("--gens", lc_gens, "generators m1|m2|...")->required();
    lift_comp->add_flag("--seeded", lc_seeded, "use the seeded search");
    lift_comp->add_option("--seed", lc_seed, "search seed");
    lift_comp->callback([&] {
        PrimePower ctx(lc_p, lc_n);
        MatGroup g = generate(ctx, parse_mat_list(lc_gens, ctx));
        MatGroup h = lc_seeded ? find_complement_seeded(g, lc_seed) : find_complement(g);
        ordered_json gens = ordered_json::array();
        for (const Mat2& m : h.generators) gens.push_back(format_mat(m));
        ordered_json j;
        j["record"] = "complement";
        j["p"] = lc_p;
        j["n"] = lc_n;
        j["group_order"] = group_order(g);
        j["complement_order"] = group_order(h);
        j["is_complement"] = is_complement(g, h);
        j["generators"] = gens;
        emit_json(out, j, pretty);
    });

    // local -----------------------------------------------------------------
    auto* local_cmd = app.add_subcommand("local", "local reduction criteria");
    local_cmd->fallthrough();
    local_cmd->require_subcommand(1);
    auto bool_record = [&](const char* name, ordered_json inputs, bool value) {
        ordered_json j;
        j["record"] = "local-criterion";
        j["name"] = name;
        j["inputs"] = std::move(inputs);
        j["value"] = value;
        emit_json(out, j, pretty);
    };

    auto* loc_ell = local_cmd->add_subcommand("forced-ell", "potential good reduction away from p");
    loc_ell->fallthrough();
    std::uint64_t fe_ell = 0, fe_p = 0;
    std::uint32_t fe_n = 1;
    loc_ell->add_option("--ell", fe_ell, "prime of bad reduction")->required();
    loc_ell->add_option("--p", fe_p, "odd prime")->required();
    loc_ell->add_option("--n", fe_n, "level");
    loc_ell->callback([&] {
        bool_record("potentially-good-forced-at-ell",
                    {{"ell", fe_ell}, {"p", fe_p}, {"n", fe_n}},
                    potentially_good_forced_at_ell(fe_ell, fe_p, fe_n));
    });

    auto* loc_p = local_cmd->add_subcommand("forced-p", "potential good reduction at p");
    loc_p->fallthrough();
    std::uint64_t fp_p = 0, fp_e = 1;
    std::uint32_t fp_n = 1;
    loc_p->add_option("--p", fp_p, "odd prime")->required();
    loc_p->add_option("--n", fp_n, "level");
    loc_p->add_option("--e", fp_e, "ramification index");
    loc_p->callback([&] {
        bool_record("good-reduction-forced-at-p", {{"p", fp_p}, {"n", fp_n}, {"e", fp_e}},
                    good_reduction_forced_at_p(fp_p, fp_n, fp_e));
    });

    auto* loc_canon = local_cmd->add_subcommand("canonical", "canonical subgroup exclusion");
    loc_canon->fallthrough();
    std::uint64_t cs_p = 0, cs_e = 1;
    bool cs_ss = false;
    loc_canon->add_option("--p", cs_p, "odd prime")->required();
    loc_canon->add_option("--e", cs_e, "ramification index");
    loc_canon->add_flag("--supersingular", cs_ss, "supersingular reduction");
    loc_canon->callback([&] {
        bool_record("canonical-subgroup-excluded",
                    {{"p", cs_p}, {"e", cs_e}, {"supersingular", cs_ss}},
                    canonical_subgroup_excluded(cs_p, cs_e, cs_ss));
    });

    auto* loc_ss = local_cmd->add_subcommand("ss-forced", "supersingular reduction forced");
    loc_ss->fallthrough();
    std::uint64_t sf_p = 0, sf_e = 1;
    loc_ss->add_option("--p", sf_p, "odd prime")->required();
    loc_ss->add_option("--e", sf_e, "ramification index");
    loc_ss->callback([&] {
        bool_record("supersingular-forced", {{"p", sf_p}, {"e", sf_e}},
                    supersingular_forced(sf_p, sf_e));
    });

    auto* loc_inertia = local_cmd->add_subcommand("inertia", "inertia image element order");
    loc_inertia->fallthrough();
    LocalContext ic;
    std::string ic_red = "ordinary";
    loc_inertia->add_option("--p", ic.p, "odd prime")->required();
    loc_inertia->add_option("--n", ic.n, "level");
    loc_inertia->add_option("--e", ic.e, "ramification index");
    loc_inertia->add_option("--reduction", ic_red, "ordinary or supersingular");
    loc_inertia->callback([&] {
        ic.reduction = parse_reduction(ic_red);
        ordered_json j;
        j["record"] = "local-criterion";
        j["name"] = "inertia-order";
        j["inputs"] = {{"p", ic.p}, {"n", ic.n}, {"e", ic.e}, {"reduction", ic_red}};
        j["value"] = inertia_order(ic);
        emit_json(out, j, pretty);
    });

    auto* loc_ent = local_cmd->add_subcommand("entangle", "entanglement degree multiples");
    loc_ent->fallthrough();
    std::uint64_t en_p = 0, en_e = 1;
    std::uint32_t en_n = 1, en_eta = 1;
    bool en_rational = false;
    loc_ent->add_option("--p", en_p, "prime")->required();
    loc_ent->add_option("--n", en_n, "level");
    loc_ent->add_option("--eta", en_eta, "root-of-unity index eta")->required();
    loc_ent->add_option("--e", en_e, "ramification index");
    loc_ent->add_flag("--rational", en_rational, "use the Q-specialised form");
    loc_ent->callback([&] {
        EntanglementMultiples m = en_rational
                                      ? entanglement_multiples_q(en_p, en_n, en_eta)
                                      : entanglement_multiples(en_p, en_n, en_eta, en_e);
        ordered_json j;
        j["record"] = "local-criterion";
        j["name"] = en_rational ? "entanglement-multiples-q" : "entanglement-multiples";
        j["inputs"] = {{"p", en_p}, {"n", en_n}, {"eta", en_eta}, {"e", en_e}};
        j["value"] = {{"full_mult", m.full_mult},
                      {"cyclotomic_mult", m.cyclotomic_mult},
                      {"cyclic_order", m.cyclic_order}};
        emit_json(out, j, pretty);
    });

    auto* loc_goursat = local_cmd->add_subcommand("goursat", "total index via Goursat");
    loc_goursat->fallthrough();
    std::uint64_t go_m = 1, go_n = 1, go_d = 1;
    loc_goursat->add_option("--index-m", go_m, "first factor index")->required();
    loc_goursat->add_option("--index-n", go_n, "second factor index")->required();
    loc_goursat->add_option("--degree", go_d, "entanglement degree")->required();
    loc_goursat->callback([&] {
        ordered_json j;
        j["record"] = "local-criterion";
        j["name"] = "goursat-total-index";
        j["inputs"] = {{"index_m", go_m}, {"index_n", go_n}, {"degree", go_d}};
        j["value"] = goursat_total_index(go_m, go_n, go_d);
        emit_json(out, j, pretty);
    });

    // assemble ----------------------------------------------------------------
    auto* asm_cmd = app.add_subcommand("assemble", "index composition and tables");
    asm_cmd->fallthrough();
    std::string as_case = "B", as_lambda, as_delta7 = "8/3";
    std::uint32_t as_beta = 0;
    bool as_absorbed = false, as_padic = false, as_pipeline = false, as_nonintegral = false;
    std::uint64_t as_p = 0;
    std::uint32_t as_n = 1;
    double as_f = 0.0;
    asm_cmd->add_option("--case", as_case, "A or B");
    asm_cmd->add_option("--lambda", as_lambda, "isogeny bound Lambda as a/b");
    asm_cmd->add_option("--beta", as_beta, "exponent of 3");
    asm_cmd->add_option("--delta7", as_delta7, "mod-7 factor: 1, 8/3 or 8");
    asm_cmd->add_flag("--absorbed", as_absorbed, "apply the min(Delta7, 8/3) absorption");
    asm_cmd->add_flag("--padic", as_padic, "p-adic index fact for --p/--n");
    asm_cmd->add_option("--p", as_p, "prime for --padic");
    asm_cmd->add_option("--n", as_n, "level for --padic");
    asm_cmd->add_flag("--pipeline", as_pipeline, "full height pipeline at --F");
    asm_cmd->add_option("--F", as_f, "stable Faltings height for --pipeline");
    asm_cmd->add_flag("--nonintegral", as_nonintegral, "non-integral j in the pipeline");
    asm_cmd->callback([&] {
        if (as_case == "a") as_case = "A";
        if (as_case == "b") as_case = "B";
        if (as_case != "A" && as_case != "B")
            fail("ParseError", "--case must be A or B, got \"" + as_case + "\"");
        if (as_padic) {
            PAdicIndexFact fact = padic_index(as_p, as_n);
            ordered_json j;
            j["record"] = "padic-index";
            j["p"] = fact.p;
            j["n"] = fact.n;
            j["candidates"] = fact.candidates;
            j["upper"] = fact.upper;
            j["note"] = fact.note;
            emit_json(out, j, pretty);
            return;
        }
        if (as_pipeline) {
            PipelineScenario sc;
            sc.kind = as_case == "A" ? PipelineScenario::Case::A : PipelineScenario::Case::B;
            sc.j_integral = !as_nonintegral;
            if (asm_cmd->count("--beta") > 0) sc.beta = as_beta;
            if (asm_cmd->count("--delta7") > 0) sc.d7 = parse_delta7(as_delta7);
            out << bound_report_json(full_pipeline_height(as_f, sc), pretty) << "\n";
            return;
        }
        if (as_lambda.empty()) fail("ParseError", "give --lambda, --padic or --pipeline");
        BigRational lambda = parse_rational(as_lambda);
        BoundReport r = as_case == "A"
                            ? compose_case_A(lambda, as_beta, parse_delta7(as_delta7), as_absorbed)
                            : compose_case_B(lambda);
        out << bound_report_json(r, pretty) << "\n";
    });

    // known -------------------------------------------------------------------
    auto* known_cmd = app.add_subcommand("known", "tabulated points and indices");
    known_cmd->fallthrough();
    std::string kn_j;
    bool kn_list = false;
    known_cmd->add_option("--j", kn_j, "j-invariant as a/b");
    known_cmd->add_flag("--list", kn_list, "print the whole table");
    known_cmd->callback([&] {
        if (kn_list) {
            ordered_json rows = ordered_json::array();
            for (const KnownPoint& kp : known_points()) rows.push_back(known_point_json(kp));
            for (const KnownPoint& kp : exceptional_index_entries())
                rows.push_back(known_point_json(kp));
            ordered_json j;
            j["record"] = "known-points";
            j["rows"] = rows;
            emit_json(out, j, pretty);
            return;
        }
        if (kn_j.empty()) fail("ParseError", "give --j or --list");
        BigRational j = parse_rational(kn_j);
        auto kp = known_point_lookup(j);
        ordered_json rec;
        rec["record"] = "known-point";
        rec["found"] = kp.has_value();
        if (kp) {
            rec["j"] = format_rational(*kp->j);
            rec["source"] = kp->source;
            rec["adelic_index"] = kp->adelic_index;
            rec["exact"] = kp->exact;
        } else {
            rec["j"] = format_rational(j);
        }
        emit_json(out, rec, pretty);
    });

    // verify ------------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run verification batteries");
    verify_cmd->fallthrough();
    std::string vf_name;
    AcceptanceConfig vf_cfg;
    verify_cmd
        ->add_option("battery", vf_name,
                     "mertens, cartan-tower, cartan-index, lie-filtration or all")
        ->required();
    verify_cmd->add_option("--seed", vf_cfg.seed, "seed for randomized batteries");
    verify_cmd->add_option("--max-n", vf_cfg.mertens_max_n, "integer scan limit");
    verify_cmd->add_option("--max-k", vf_cfg.mertens_max_k, "primorial scan limit");
    verify_cmd->add_option("--containment-samples", vf_cfg.containment_samples,
                           "random subgroups for the containment battery");
    verify_cmd->add_option("--tower-samples", vf_cfg.tower_samples,
                           "random samples per prime in the tower census");
    verify_cmd->add_option("--complement-samples", vf_cfg.complement_samples,
                           "random subgroups for the complement battery");
    verify_cmd->add_option("--hensel-samples", vf_cfg.hensel_samples,
                           "random matrices for the eigenvalue battery");
    verify_cmd->add_option("--grid", vf_cfg.pipeline_grid, "pipeline grid size");
    verify_cmd->callback([&] {
        int passed = 0, total = 0;
        for (int id : battery_ids(vf_name)) {
            CriterionResult r = run_criterion(id, vf_cfg);
            ++total;
            if (r.pass) ++passed;
            out << (r.pass ? "ok   " : "FAIL ") << r.name << ": " << r.detail << "\n";
        }
        out << passed << "/" << total << " checks passed, " << (total - passed)
            << " failures\n";
        if (passed != total) rc = 2;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 64;
    } catch (const DomainError& e) {
        ordered_json j;
        j["error"] = e.code();
        j["message"] = e.what();
        emit_json(out, j, pretty);
        return 1;
    }
    return rc;
}

} // namespace cartan
