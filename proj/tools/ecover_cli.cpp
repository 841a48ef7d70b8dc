// Command-line front end for the cover pipeline: each stage individually
// plus the end-to-end run, with optional JSON output.
//
// Exit codes:
//   0  success (all requested checks passed)
//   1  flag/usage errors (including digits below the 15-digit floor)
//   2  solver failure (no convergence / iterate left the domain)
//   3  recognition failure
//   4  numeric fit failure
//   5  exact verification failure (square root, identities)

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecover/mapfit.hpp"
#include "ecover/monodromy.hpp"

using nlohmann::json;
using namespace ecover;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitRecognize = 3;
constexpr int kExitFit = 4;
constexpr int kExitVerify = 5;

unsigned default_digits() {
    if (const char* env = std::getenv("ECOVER_DIGITS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 15) return static_cast<unsigned>(v);
    }
    return 50;
}

void emit(const json& doc, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << human;
}

int cmd_find_kappa(const std::string& seed, const std::string& target, unsigned digits,
                   int max_iter, const std::string& fd_eps, bool as_json) {
    PrecisionContext ctx(digits);
    PrecisionScope scope(ctx);
    NewtonConfig cfg = NewtonConfig::defaults(ctx, Real(seed), Real(target));
    cfg.max_iter = max_iter;
    if (!fd_eps.empty()) cfg.fd_epsilon = Real(fd_eps);

    try {
        auto [root, trace] = find_kappa(cfg, ctx);
        json doc;
        doc["command"] = "find-kappa";
        doc["digits"] = digits;
        doc["kappa"] = root.str(digits);
        doc["converged"] = trace.converged;
        std::ostringstream os;
        for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
            doc["iterates"].push_back(trace.iterates[n].str(digits));
            os << "s" << n << " = " << trace.iterates[n].str(std::min(digits, 24u))
               << "   |rho - " << target << "| = " << Real(abs(trace.residuals[n])).str(4)
               << "\n";
        }
        os << "kappa = " << root.str(digits) << "\n";
        emit(doc, as_json, os.str());
        return 0;
    } catch (const Error& e) {
        std::cerr << "find-kappa: " << e.what() << "\n";
        return kExitSolver;
    }
}

int cmd_recognize(const std::string& value, int max_deg, const std::string& field_d,
                  bool as_json) {
    // the decimal string's own length is the digit budget
    unsigned digits = 0;
    for (char c : value)
        if (c >= '0' && c <= '9') ++digits;
    unsigned ctx_digits = std::max(15u, digits);
    PrecisionContext ctx(ctx_digits);
    PrecisionScope scope(ctx_digits + 10);
    Real r(value);
    r.precision(std::max(5u, digits));

    json doc;
    doc["command"] = "recognize";
    doc["value"] = value;
    doc["digits"] = digits;
    std::ostringstream os;
    os << "input digits: " << digits << "\n";

    auto cf = cf_expand(r, 64);
    os << "continued fraction: [";
    for (std::size_t i = 0; i < cf.terms.size(); ++i) {
        doc["cf_terms"].push_back(cf.terms[i].str());
        os << (i ? (i == 1 ? "; " : ", ") : "") << cf.terms[i].str();
    }
    os << "]" << (cf.precision_exhausted ? " (digit budget reached)" : "") << "\n";
    doc["cf_exhausted"] = cf.precision_exhausted;

    bool found = false;
    if (auto rat = detect_rational(cf)) {
        found = true;
        doc["rational"] = rat->str();
        os << "rational candidate: " << rat->str() << "\n";
    }
    if (!found && cf.terms.size() >= 8) {
        if (auto surd = detect_quadratic(cf)) {
            found = true;
            doc["surd"] = {{"p", surd->p.str()}, {"q", surd->q.str()}, {"d", surd->d.str()}};
            os << "quadratic candidate: " << surd->p.str() << " + " << surd->q.str()
               << "*sqrt(" << surd->d.str() << ")\n";
        }
    }
    if (!field_d.empty()) {
        PrecisionContext rctx(ctx_digits);
        Real rr(value);
        if (auto pq = recognize_in_field(rr, Int(field_d), rctx)) {
            found = true;
            doc["in_field"] = {{"p", pq->first.str()}, {"q", pq->second.str()},
                               {"d", field_d}};
            os << "field form: " << pq->first.str() << " + " << pq->second.str()
               << "*sqrt(" << field_d << ")\n";
        }
    }
    if (max_deg >= 1) {
        PrecisionContext rctx(ctx_digits);
        Real rr(value);
        if (auto poly = min_poly(rr, max_deg, rctx)) {
            found = true;
            std::ostringstream ps;
            for (std::size_t i = 0; i < poly->coeffs.size(); ++i) {
                doc["min_poly"].push_back(poly->coeffs[i].str());
                ps << (i ? " " : "") << poly->coeffs[i].str();
            }
            os << "min poly (ascending): " << ps.str() << "\n";
            long need = required_digits(poly->degree(),
                                        std::max<long>(1, (long)poly->coeffs.back().str().size()));
            os << "digit-budget advisory: a degree-" << poly->degree()
               << " result of this size wants >= " << need << " digits (have " << digits
               << ")\n";
        }
    }
    if (!found) os << "no recognition passed the thresholds at this digit budget\n";
    doc["recognized"] = found;
    emit(doc, as_json, os.str());
    return 0;
}

int cmd_verify(bool builtin, const std::string& file, bool as_json) {
    MapCoefficients mc;
    if (builtin) {
        mc = theorem1_map();
    } else {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "verify: cannot open '" << file << "'\n";
            return kExitUsage;
        }
        mc = parse_map(in);
    }

    RatFunc g = mc.g(), h1 = mc.h1();
    bool identity = verify_cover_identity(g, h1, mc.quintic(), mc.twist());
    auto pc = pullback_constant(g, h1);
    bool homogeneous = check_homogeneity(g);

    json doc;
    doc["command"] = "verify";
    doc["cover_identity"] = identity;
    doc["pullback_constant"] = pc ? pc->to_string() : "none";
    doc["homogeneous"] = homogeneous;
    std::ostringstream os;
    os << "cover identity h1^2 (q/twist) == g^3 - g: " << (identity ? "PASS" : "FAIL") << "\n";
    os << "pullback g'/h1 constant: " << (pc ? "PASS (" + pc->to_string() + ")" : "FAIL")
       << "\n";
    os << "unit homogeneity of g: " << (homogeneous ? "PASS" : "FAIL") << "\n";
    emit(doc, as_json, os.str());
    return (identity && pc) ? 0 : kExitVerify;
}

int cmd_fit_map(const std::string& seed, const std::string& target, unsigned digits,
                const std::string& out_file, bool as_json) {
    PrecisionContext ctx(digits);
    PrecisionScope scope(ctx);
    NewtonConfig cfg = NewtonConfig::defaults(ctx, Real(seed), Real(target));
    try {
        EndToEndResult res = end_to_end(cfg, ctx);
        json doc;
        doc["command"] = "fit-map";
        doc["kappa"] = res.kappa_numeric.str(digits);
        doc["certificate"] = res.certificate.text();
        std::ostringstream os;
        os << res.certificate.text();
        if (res.map) {
            doc["map"] = serialize_map(*res.map);
            os << serialize_map(*res.map);
            if (!out_file.empty()) {
                std::ofstream out(out_file);
                out << serialize_map(*res.map);
                os << "map written to " << out_file << "\n";
            }
        }
        emit(doc, as_json, os.str());
        return 0;
    } catch (const StageFailure& e) {
        std::cerr << "fit-map: " << e.what() << "\n";
        if (e.stage == "solver") return kExitSolver;
        if (e.stage == "recognize") return kExitRecognize;
        if (e.stage == "mapfit") return kExitFit;
        return kExitVerify;
    }
}

int cmd_count_classes(int n, const std::string& commutator_spec, bool transitive,
                      const std::string& convention, bool list, bool as_json) {
    std::vector<int> type;
    if (commutator_spec.size() > 6 &&
        commutator_spec.substr(commutator_spec.size() - 6) == "-cycle") {
        int k = std::stoi(commutator_spec.substr(0, commutator_spec.size() - 6));
        type = one_cycle_type(n, k);
    } else {
        std::cerr << "count-classes: --commutator expects K-cycle (e.g. 3-cycle)\n";
        return kExitUsage;
    }
    CommutatorConvention conv = convention == "direct" ? CommutatorConvention::DirectFirst
                                                       : CommutatorConvention::InverseFirst;
    auto result = count_classes(n, type, transitive, conv);

    json doc;
    doc["command"] = "count-classes";
    doc["n"] = n;
    doc["count"] = result.count;
    std::ostringstream os;
    os << "classes: " << result.count << "\n";
    if (list) {
        for (const auto& cls : result.classes) {
            json pair;
            std::ostringstream ls;
            ls << "sigma:";
            for (int v : cls.sigma.images) { pair["sigma"].push_back(v); ls << " " << v; }
            ls << "  tau:";
            for (int v : cls.tau.images) { pair["tau"].push_back(v); ls << " " << v; }
            doc["classes"].push_back(pair);
            os << ls.str() << "\n";
        }
    }
    emit(doc, as_json, os.str());
    return 0;
}

int cmd_periods(const std::string& kappa_str, unsigned digits, bool as_json) {
    PrecisionContext ctx(digits);
    PrecisionScope scope(ctx);
    Real kappa(kappa_str);
    BranchPoints bp = branch_points_for(kappa);
    PeriodVector pv = period_vector(bp, ctx);
    Real w = elliptic_real_period(ctx);
    Complex K = homothety_constant(pv, SquareLattice(w));

    json doc;
    doc["command"] = "periods";
    std::ostringstream os;
    for (int j = 0; j < 4; ++j) {
        std::string s = pv.I[j].re.str(digits) + " + " + pv.I[j].im.str(digits) + "i";
        doc["I"].push_back(s);
        os << "I" << j + 1 << " = " << s << "\n";
    }
    Complex r31 = pv.I[2] / pv.I[0];
    Complex r41 = pv.I[3] / pv.I[0];
    os << "I3/I1 = " << r31.re.str(20) << " + " << r31.im.str(6) << "i\n";
    os << "I4/I1 = " << r41.re.str(6) << " + " << r41.im.str(20) << "i\n";
    Real res_h = abs(pv.I[3] - i_times(K * w));
    os << "homothety residual |I4 - i K omega| = " << res_h.str(4) << "\n";
    doc["I3_over_I1"] = r31.re.str(20);
    doc["I4_over_I1_imag"] = r41.im.str(20);
    doc["homothety_residual"] = res_h.str(4);
    emit(doc, as_json, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-5 branched cover of y^2 = x^3 - x: solve, recognize, fit, verify"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");

    unsigned digits = default_digits();
    std::string seed = "2", target = "3", fd_eps, value, file, out_file, field_d;
    int max_iter = 40, max_deg = 0, n = 5;
    bool builtin = false, transitive = false, list = false;
    std::string commutator_spec = "3-cycle", convention = "inverse";

    auto* fk = app.add_subcommand("find-kappa", "Newton solve of rho(s) = target");
    fk->add_option("--seed", seed);
    fk->add_option("--target", target);
    fk->add_option("--digits", digits);
    fk->add_option("--max-iter", max_iter);
    fk->add_option("--fd-epsilon", fd_eps);

    auto* rec = app.add_subcommand("recognize", "identify a decimal as an algebraic number");
    rec->add_option("value", value)->required();
    rec->add_option("--max-deg", max_deg);
    rec->add_option("--field-d", field_d);

    auto* ver = app.add_subcommand("verify", "exact certification of a coefficient table");
    ver->add_flag("--builtin", builtin, "use the built-in certified table");
    ver->add_option("--file", file, "coefficient table in the canonical format");

    auto* fm = app.add_subcommand("fit-map", "end-to-end pipeline");
    fm->add_option("--seed", seed);
    fm->add_option("--target", target);
    fm->add_option("--digits", digits)->default_val(80u);
    fm->add_option("--out", out_file);

    auto* cc = app.add_subcommand("count-classes", "monodromy class count");
    cc->add_option("--n", n);
    cc->add_option("--commutator", commutator_spec);
    cc->add_flag("--transitive", transitive);
    cc->add_option("--convention", convention, "inverse|direct");
    cc->add_flag("--list", list);

    auto* pd = app.add_subcommand("periods", "period vector of the kappa curve");
    std::string kappa_str = "161.49844718999242907073";
    pd->add_option("--kappa", kappa_str);
    pd->add_option("--digits", digits);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fk->parsed()) return cmd_find_kappa(seed, target, digits, max_iter, fd_eps, as_json);
        if (rec->parsed()) return cmd_recognize(value, max_deg, field_d, as_json);
        if (ver->parsed()) {
            if (!builtin && file.empty()) {
                std::cerr << "verify: need --builtin or --file\n";
                return kExitUsage;
            }
            return cmd_verify(builtin, file, as_json);
        }
        if (fm->parsed()) return cmd_fit_map(seed, target, digits, out_file, as_json);
        if (cc->parsed()) return cmd_count_classes(n, commutator_spec, transitive, convention,
                                                   list, as_json);
        if (pd->parsed()) return cmd_periods(kappa_str, digits, as_json);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
