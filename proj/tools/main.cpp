#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prismcalc/config.hpp"
#include "prismcalc/errors.hpp"
#include "prismcalc/report.hpp"
#include "prismcalc/selftest.hpp"
#include "prismcalc/sen_ops.hpp"

namespace {

using namespace prismcalc;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitPrecision = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonOpts {
    std::string file;
    std::int64_t precision = -1;  // -1: take from config
    std::int64_t degree = -1;
    bool json = false;
};

CrystalConfig load_config(const CommonOpts& o) {
    CrystalConfig cfg = parse_config(read_file(o.file));
    if (o.precision > 0) cfg.precision = o.precision;
    if (o.degree >= 0) cfg.degree = o.degree;
    return cfg;
}

void add_field_summary(Report& rep, const CrystalConfig& cfg, const LocalField& f) {
    rep.add("p", f.prime());
    rep.add("e", f.ramification_index());
    rep.add("vpi_Eprime", f.vpi_Eprime_pi().str());
    rep.add("E0", f.E0().str());
    rep.add("target_precision", cfg.precision);
    rep.add("working_precision", f.precision());
    rep.human("K = Q_" + std::to_string(f.prime()) + "[u]/E(u), e = " +
              std::to_string(f.ramification_index()) + ", v_pi(E'(pi)) = " +
              f.vpi_Eprime_pi().str());
}

void emit(const Report& rep, bool json) {
    std::cout << (json ? rep.render_json() : rep.render_text());
}

void add_verdict(Report& rep, const NhtVerdict& v) {
    rep.add("verdict", v.nearly_ht ? "NearlyHT" : "NotNearlyHT");
    rep.add("threshold_vpi_Eprime", v.vpi_Eprime.str());
    rep.add("threshold_e_minus_1", v.e_minus_1);
    rep.add("all_roots_integral", v.all_roots_integral ? "true" : "false");
    if (v.e_minus_1 > 0)
        rep.add("coeffs_in_maximal_ideal", v.coeffs_in_maximal_ideal ? "true" : "false");
    for (const auto& [i, m] : v.residue_classes)
        rep.add("residue_class", std::to_string(i) + " x" + std::to_string(m));
    if (v.unmatched_degree > 0) rep.add("unmatched_degree", v.unmatched_degree);
    rep.human(std::string("nearly Hodge-Tate: ") + (v.nearly_ht ? "yes" : "no"));
}

const HTCrystal& require_crystal(const CrystalInstance& inst) {
    if (!inst.crystal) throw ParseError(0, 0, "config has no A1 matrix");
    return *inst.crystal;
}

int cmd_check(const CommonOpts& o) {
    CrystalConfig cfg = load_config(o);
    CrystalInstance inst = build_instance(cfg);
    const HTCrystal& c = require_crystal(inst);
    Report rep("check");
    add_field_summary(rep, cfg, *inst.field);
    NhtVerdict v = nearly_ht_check(c);
    add_verdict(rep, v);
    emit(rep, o.json);
    return v.nearly_ht ? kExitOk : kExitPropertyFailure;
}

int cmd_stratify(const CommonOpts& o) {
    CrystalConfig cfg = load_config(o);
    CrystalInstance inst = build_instance(cfg);
    const HTCrystal& c = require_crystal(inst);
    Report rep("stratify");
    add_field_summary(rep, cfg, *inst.field);
    StratificationSeries s = stratify(c, cfg.degree);
    rep.add("degree", cfg.degree);
    for (std::int64_t n = 0; n <= s.degree; ++n) {
        rep.add("A" + std::to_string(n), s.a[n].str());
        rep.human("A_" + std::to_string(n) + " = " + s.a[n].str());
    }
    StratificationSeries b = binomial_series(c, cfg.degree);
    bool agree = true;
    for (std::int64_t n = 0; n <= s.degree; ++n)
        if (!eq_tracked(s.a[n], b.a[n])) agree = false;
    rep.add("matches_binomial_closed_form", agree ? "true" : "false");
    emit(rep, o.json);
    return agree ? kExitOk : kExitPropertyFailure;
}

int cmd_cocycle(const CommonOpts& o) {
    CrystalConfig cfg = load_config(o);
    if (cfg.degree < 2) cfg.degree = 2;
    CrystalInstance inst = build_instance(cfg);
    const HTCrystal& c = require_crystal(inst);
    Report rep("cocycle");
    add_field_summary(rep, cfg, *inst.field);
    CocycleResult r = cocycle_check(stratify(c, cfg.degree));
    rep.add("degree", cfg.degree);
    rep.add("cocycle", r.holds ? "holds" : "fails");
    if (!r.holds) {
        rep.add("fail_degree", r.degree);
        rep.add("witness_index",
                "[" + std::to_string(r.witness[0]) + "," + std::to_string(r.witness[1]) + "]");
        if (r.witness_diff) rep.add("witness_diff", r.witness_diff->str());
    }
    rep.human(r.holds ? "cocycle condition holds to degree " + std::to_string(r.degree)
                      : "cocycle condition fails at degree " + std::to_string(r.degree));
    emit(rep, o.json);
    return r.holds ? kExitOk : kExitPropertyFailure;
}

int cmd_sen(const CommonOpts& o) {
    CrystalConfig cfg = load_config(o);
    CrystalInstance inst = build_instance(cfg);
    const HTCrystal& c = require_crystal(inst);
    Report rep("sen");
    add_field_summary(rep, cfg, *inst.field);
    SenData sd = sen_from_crystal(c);
    rep.add("Phi", sd.phi.str());
    rep.add("charpoly_Phi", sd.charpoly_phi.str());
    rep.human("Phi = -A1/E'(pi) = " + sd.phi.str());
    for (const auto& seg : sd.weight_polygon.segments)
        rep.add("newton_slope", seg.slope.str() + " x" + std::to_string(seg.length));
    if (sd.unresolved_weights > 0)
        rep.add("unresolved_weights",
                std::to_string(sd.unresolved_weights) + " with total valuation >= " +
                    sd.unresolved_bound.str());
    for (const auto& wc : sd.residue_report)
        rep.add("weight_class", "i=" + std::to_string(wc.residue) + " x" +
                                    std::to_string(wc.multiplicity) +
                                    " vpi(weight-i)>=" + wc.distance_lower_bound.str());
    add_verdict(rep, nearly_ht_check(c));
    KElement theta = theta_u_lambda_prime(*inst.field, cfg.precision);
    rep.add("theta_u_lambda_prime", theta.str());
    rep.human("theta(u lambda') = " + theta.str());
    emit(rep, o.json);
    return kExitOk;
}

int cmd_selftest(const SelftestOptions& opts, bool json) {
    SelftestResult r = run_selftest(opts);
    Report rep("selftest");
    rep.add("seed", static_cast<std::int64_t>(opts.seed));
    rep.add("count", opts.count);
    rep.add("strata", opts.strata);
    for (const auto& line : r.case_lines) rep.human(line);
    rep.add("passed", r.passed);
    rep.add("failed", r.failed);
    if (!r.first_counterexample.empty()) {
        rep.human("first counterexample config:");
        rep.human(r.first_counterexample);
        rep.add("counterexample", r.first_counterexample);
    }
    rep.human("selftest: " + std::to_string(r.passed) + " passed, " + std::to_string(r.failed) +
              " failed");
    emit(rep, json);
    return r.failed == 0 ? kExitOk : kExitPropertyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational Hodge-Tate prismatic crystal calculator"};
    app.require_subcommand(1);

    CommonOpts opts;
    SelftestOptions st;
    bool serial = false;

    auto add_common = [&](CLI::App* cmd, bool needs_file) {
        if (needs_file) cmd->add_option("file", opts.file, "crystal config file")->required();
        cmd->add_option("--precision", opts.precision, "target absolute precision (p-adic digits)");
        cmd->add_option("--degree", opts.degree, "pd truncation degree");
        cmd->add_flag("--json", opts.json, "emit the machine-readable section only");
    };

    CLI::App* check = app.add_subcommand("check", "decide the nearly-Hodge-Tate condition");
    add_common(check, true);
    CLI::App* strat = app.add_subcommand("stratify", "generate the stratification series");
    add_common(strat, true);
    CLI::App* coc = app.add_subcommand("cocycle", "verify the cocycle condition");
    add_common(coc, true);
    CLI::App* sen = app.add_subcommand("sen", "Sen operator, weights and theta(u lambda')");
    add_common(sen, true);

    CLI::App* self = app.add_subcommand("selftest", "seeded oracle-equivalence suites");
    self->add_option("--seed", st.seed, "generator seed");
    self->add_option("--count", st.count, "number of cases");
    self->add_option("--strata", st.strata, "subset of a,b,c");
    self->add_option("--precision", st.precision, "target absolute precision");
    self->add_option("--degree", st.degree, "pd truncation degree");
    self->add_flag("--serial", serial, "run cases serially");
    self->add_flag("--json", opts.json, "emit the machine-readable section only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opts);
        if (strat->parsed()) return cmd_stratify(opts);
        if (coc->parsed()) return cmd_cocycle(opts);
        if (sen->parsed()) return cmd_sen(opts);
        if (self->parsed()) {
            st.strata.erase(std::remove(st.strata.begin(), st.strata.end(), ','), st.strata.end());
            st.parallel = !serial;
            return cmd_selftest(st, opts.json);
        }
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitParseError;
    } catch (const NotEisenstein& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitParseError;
    } catch (const NotMonic& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitParseError;
    } catch (const ShapeMismatch& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitParseError;
    } catch (const PrecisionInsufficient& ex) {
        std::cerr << "precision error: " << ex.what() << "\n";
        return kExitPrecision;
    } catch (const PrecisionExhausted& ex) {
        std::cerr << "precision error: " << ex.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParseError;
    }
    return kExitOk;
}
