#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringlab/analysis.hpp"
#include "ringlab/funcspace.hpp"
#include "ringlab/groups.hpp"
#include "ringlab/perm.hpp"
#include "ringlab/poly.hpp"
#include "ringlab/verify.hpp"

namespace {

using namespace ringlab;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

struct CommonOpts {
    std::string spec;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    Budget budget;
    std::string mode = "auto";
    std::string out;
    std::string cache_dir;
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_k = true) {
    cmd->add_option("spec", o.spec, "ring spec, e.g. zn:8, gf:4, ut:2:gf:2, dual:1:zn:4")
        ->required();
    if (with_k) cmd->add_option("--k", o.k, "number of nilpotent generators")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "seed for sampled checks");
    cmd->add_option("--budget-tuples", o.budget.tuples, "max enumeration steps");
    cmd->add_option("--budget-tables", o.budget.tables, "max stored tables");
    cmd->add_option("--mode", o.mode, "auto|exhaustive|sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    cmd->add_option("--out", o.out, "write the JSON report to this path");
    cmd->add_option("--cache-dir", o.cache_dir, "ring table cache directory");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
}

std::string cache_dir_of(const CommonOpts& o) {
    if (const char* env = std::getenv("RINGLAB_CACHE")) return env;
    return o.cache_dir;
}

RingHandle make_ring(const CommonOpts& o) {
    ConstructOptions opt;
    opt.budget = o.budget;
    opt.cache_dir = cache_dir_of(o);
    return construct_ring(o.spec, opt);
}

void emit(const nlohmann::json& j, const CommonOpts& o) {
    std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        f << text;
    }
}

std::string join_indices(const std::vector<Elem>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<Elem> parse_indices(const std::string& text, std::size_t ring_size) {
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad coefficient '" + tok + "'");
        }
        if (pos != tok.size() || v >= ring_size)
            throw ParseError("coefficient '" + tok + "' out of range for ring of size " +
                             std::to_string(ring_size));
        out.push_back(static_cast<Elem>(v));
    }
    if (out.empty()) throw ParseError("empty coefficient list");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_info(const CommonOpts& o) {
    RingHandle r = make_ring(o);
    nlohmann::json j;
    j["spec"] = r->spec();
    j["size"] = r->size();
    j["characteristic"] = r->characteristic();
    j["commutative"] = r->commutative();
    j["storage"] = r->storage();

    std::vector<std::uint8_t> units = unit_mask(*r);
    j["units"] = static_cast<std::uint64_t>(std::count(units.begin(), units.end(), 1));
    j["center_size"] = center(*r).size();
    try {
        j["radical_size"] = jacobson_radical(*r, o.budget).size();
    } catch (const BudgetExceeded& e) {
        j["radical_size"] = nullptr;
        j["radical_note"] = e.what();
    }

    ChainInfo info = chain_analysis(*r);
    j["local"] = info.is_local;
    j["chain"] = info.is_chain;
    if (info.is_chain) {
        j["chain_N"] = info.N;
        if (info.e) j["chain_e"] = *info.e;
        j["chain_q"] = info.q;
        j["chain_p"] = info.p;
        j["chain_c"] = info.c;
        if (info.t) j["chain_t"] = *info.t;
    }
    j["sum_of_units_reaches_all"] = sum_of_units_reachable(*r);
    emit(j, o);
    return kExitPass;
}

int cmd_nullpoly(const CommonOpts& o) {
    RingHandle r = make_ring(o);
    Poly mcn = monic_central_null(r);

    int max_tail = 1, lcm_period = 1;
    for (std::size_t x = 0; x < r->size(); ++x) {
        Preperiod pp = power_preperiod(*r, static_cast<Elem>(x));
        max_tail = std::max(max_tail, pp.tail);
        lcm_period = static_cast<int>(std::lcm(lcm_period, pp.period));
    }

    nlohmann::json j;
    j["spec"] = r->spec();
    j["degree"] = mcn.degree();
    j["tail"] = max_tail;
    j["period_lcm"] = lcm_period;
    j["coefficients"] = join_indices(mcn.c);
    j["pretty"] = poly_to_string(mcn);
    try {
        IdealStats stats = ideal_stats(r, o.budget);
        j["ideal"] = {{"degree_bound", stats.d},
                      {"idx_null", stats.idx_null},
                      {"idx_anull", stats.idx_anull},
                      {"ratio", stats.ratio},
                      {"method", stats.method},
                      {"identity", stats.identity}};
    } catch (const BudgetExceeded& e) {
        j["ideal"] = {{"skipped", e.what()}};
    }
    emit(j, o);
    return kExitPass;
}

int cmd_count(const CommonOpts& o, bool csv) {
    RingHandle r = make_ring(o);
    nlohmann::json j;
    j["spec"] = r->spec();
    j["k"] = o.k;

    auto field = [&](const char* name, auto fn) {
        try {
            j[name] = fn();
        } catch (const BudgetExceeded& e) {
            j[name] = {{"skipped", e.what()}};
        }
    };

    field("polyfun", [&]() -> nlohmann::json {
        try {
            std::uint64_t v = count_polyfun_enumerate(r, o.budget);
            std::uint64_t s = count_polyfun_span(r, o.budget);
            return {{"value", v},
                    {"method", "enumerate"},
                    {"crosscheck", v == s ? "pass" : "fail"}};
        } catch (const BudgetExceeded&) {
            return {{"value", count_polyfun_span(r, o.budget)},
                    {"method", "span"},
                    {"crosscheck", "skipped"}};
        }
    });
    field("polyfun_dual", [&]() -> nlohmann::json {
        DualFunCount c = count_polyfun_dual(r, o.k, o.budget);
        return {{"value", c.formula},
                {"method", "formula"},
                {"crosscheck", c.span_oracle ? (c.agree ? "pass" : "fail") : "skipped"}};
    });
    field("L", [&]() -> nlohmann::json {
        return {{"value", compute_L(r, o.budget)}, {"method", "enumerate"},
                {"crosscheck", "skipped"}};
    });
    field("prpol_dual", [&]() -> nlohmann::json {
        PrPolCount c = count_prpol_dual(r, o.k, o.budget);
        return {{"value", c.formula},
                {"method", "formula"},
                {"crosscheck", c.brute ? (c.agree ? "pass" : "fail") : "skipped"}};
    });
    field("stabilizer", [&]() -> nlohmann::json {
        StabResult st = stabilizer_Stk(r, o.k, o.budget);
        return {{"value", st.set.tables.size()},
                {"method", "span"},
                {"crosscheck", st.within_ratio ? "pass" : "fail"}};
    });
    field("ratio", [&]() -> nlohmann::json {
        IdealStats stats = ideal_stats(r, o.budget);
        return {{"value", stats.ratio},
                {"method", stats.method},
                {"crosscheck", stats.identity ? "pass" : "fail"}};
    });

    if (csv) {
        std::string text = "field,value,method,crosscheck\n";
        for (const auto& [key, val] : j.items()) {
            if (!val.is_object()) continue;
            text += key;
            text += ",";
            text += val.contains("value") ? val["value"].dump() : "";
            text += ",";
            text += val.contains("method") ? val["method"].get<std::string>() : "skipped";
            text += ",";
            text += val.contains("crosscheck") ? val["crosscheck"].get<std::string>() : "";
            text += "\n";
        }
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out);
            f << text;
        }
        return kExitPass;
    }
    emit(j, o);
    return kExitPass;
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
    RunConfig cfg;
    cfg.spec = o.spec;
    cfg.k = o.k;
    cfg.seed = o.seed;
    cfg.budget = o.budget;
    cfg.mode = o.mode;
    cfg.cache_dir = cache_dir_of(o);

    if (suite == "all") {
        std::vector<Report> reports = run_all(cfg);
        bool ok = true;
        nlohmann::json j;
        j["spec"] = cfg.spec;
        j["k"] = cfg.k;
        j["seed"] = cfg.seed;
        j["suite"] = "all";
        j["reports"] = nlohmann::json::array();
        for (const Report& rep : reports) {
            ok = ok && rep.passed();
            j["reports"].push_back(rep.to_json(false));
        }
        j["passed"] = ok;
        if (!o.no_timestamp) j["generated_at"] = current_timestamp();
        emit(j, o);
        return ok ? kExitPass : kExitCheckFailed;
    }

    // precondition violations surface as UnsupportedSuite to the caller
    try {
        Report rep = run_suite(suite, cfg);
        emit(rep.to_json(!o.no_timestamp), o);
        return rep.passed() ? kExitPass : kExitCheckFailed;
    } catch (const NotAChainRing& e) {
        throw UnsupportedSuite(std::string("suite '") + suite + "' does not apply: " + e.what());
    } catch (const CharIsP& e) {
        throw UnsupportedSuite(std::string("suite '") + suite + "' does not apply: " + e.what());
    } catch (const NotCommutative& e) {
        throw UnsupportedSuite(std::string("suite '") + suite + "' does not apply: " + e.what());
    }
}

int cmd_perm_test(const CommonOpts& o, const std::vector<std::string>& comp_texts) {
    RingHandle r = make_ring(o);
    std::vector<Poly> comps;
    for (const std::string& text : comp_texts)
        comps.push_back(Poly::from_coeffs(r, parse_indices(text, r->size())));
    // nilpotent components not given on the command line are zero
    while (comps.size() < o.k + 1) comps.push_back(Poly::zero(r));

    PPVerdict v = is_pp_dual(r, comps, o.k, true, o.budget);
    nlohmann::json j;
    j["spec"] = r->spec();
    j["k"] = o.k;
    j["pp_base"] = v.is_pp_base;
    j["lambda_local"] = v.lambda_local;
    j["pp_dual"] = v.is_pp_dual;
    j["crosscheck"] = v.crosscheck;
    if (!v.witness.is_null()) j["witness"] = v.witness;
    emit(j, o);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact polynomial-function laboratory for finite rings"};
    app.require_subcommand(1);

    CommonOpts info_o, null_o, count_o, verify_o, perm_o;
    bool csv = false;
    std::string suite;
    std::string f_opts[4];

    CLI::App* c_info = app.add_subcommand("info", "structural facts about a ring");
    add_common(c_info, info_o, false);

    CLI::App* c_null = app.add_subcommand("nullpoly", "monic central null polynomial and ideal indices");
    add_common(c_null, null_o, false);

    CLI::App* c_count = app.add_subcommand("count", "function/permutation counts with crosschecks");
    add_common(c_count, count_o);
    c_count->add_flag("--csv", csv, "emit CSV instead of JSON");

    CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite, "suite name or 'all'")->required();
    add_common(c_verify, verify_o);

    CLI::App* c_perm = app.add_subcommand("perm-test", "permutation criterion for one polynomial");
    add_common(c_perm, perm_o);
    c_perm->add_option("--f0", f_opts[0], "pure component, comma-separated coefficient indices")
        ->required();
    c_perm->add_option("--f1", f_opts[1], "first nilpotent component");
    c_perm->add_option("--f2", f_opts[2], "second nilpotent component");
    c_perm->add_option("--f3", f_opts[3], "third nilpotent component");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (c_info->parsed()) return cmd_info(info_o);
        if (c_null->parsed()) return cmd_nullpoly(null_o);
        if (c_count->parsed()) return cmd_count(count_o, csv);
        if (c_verify->parsed()) return cmd_verify(verify_o, suite);
        if (c_perm->parsed()) {
            std::vector<std::string> comps;
            for (const std::string& f : f_opts)
                if (!f.empty()) comps.push_back(f);
            return cmd_perm_test(perm_o, comps);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedSuite& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
