#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orekrylov/bounds.hpp"
#include "orekrylov/checks.hpp"
#include "orekrylov/instances.hpp"
#include "orekrylov/oracle.hpp"
#include "orekrylov/parse.hpp"
#include "orekrylov/verify.hpp"

using nlohmann::json;
using namespace orekrylov;

namespace {

struct OutputOpts {
    bool as_json = false;
    std::string out_file;
    bool verify = false;
    int order = -1;
    int prec = 60;
    std::uint64_t seed = 7;
    std::string kind;
};

void add_common_flags(CLI::App* cmd, OutputOpts& o) {
    cmd->add_flag("--json", o.as_json, "emit JSON instead of text");
    cmd->add_option("--out", o.out_file, "write JSON to this file");
    cmd->add_flag("--verify", o.verify, "run the independent oracle for this instance");
    cmd->add_option("--order", o.order, "relax to a relation of this order (>= rho)");
    cmd->add_option("--prec", o.prec, "oracle truncation precision")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "seed for randomized verification choices");
    cmd->add_option("--kind", o.kind, "diff or shift; constant operators default to diff")
        ->check(CLI::IsMember({"diff", "shift"}));
}

// parse an operator and reconcile it with a requested kind: symbol-free input
// is re-tagged, a conflicting symbol is an error
OrePoly parse_operator_as(const std::string& text, const std::string& kind) {
    OrePoly op = parse_operator(text);
    if (kind.empty()) return op;
    const bool want_shift = kind == "shift";
    if (op.kind().is_shift() == want_shift) return op;
    if (op.order() > 0)
        throw std::invalid_argument("--kind " + kind + " conflicts with the operator symbol in \"" +
                                    text + "\"");
    std::vector<RatFunc> c;
    for (const RatFunc& f : op.coeffs()) c.push_back(f);
    return OrePoly(want_shift ? OreKind::shift() : OreKind::diff(), std::move(c));
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("ORE_KRYLOV_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
        }
    }
    return 7;
}

// relax the stored relation to the requested order and refresh the report
void apply_order_override(InstanceReport& rep, int m) {
    if (!rep.theta || !rep.krylov_seed)
        throw std::invalid_argument("--order is not available for this construction");
    if (m < rep.order) throw std::invalid_argument("--order must be at least the minimal order");
    Relation rel = relation_at_order(*rep.theta, *rep.krylov_seed, m);
    rep.op = ore_normalized(relation_to_operator(rel, rep.theta->kind));
    const int rho = rep.order;
    rep.order = rep.op.order();
    rep.degree = std::max(ore_degree(rep.op), 0);
    BoundQuery q{BoundFamily::Generic,
                 {{"rho", rho},
                  {"d_a", rep.krylov_seed->d_a()},
                  {"degMM_T", rep.degmm_T_bound}},
                 m};
    rep.bound = static_cast<int>(evaluate_bound(q));
}

json report_json(const std::string& command, const InstanceReport& rep,
                 const std::optional<VerifyOutcome>& v, std::uint64_t seed) {
    json coeffs = json::array();
    for (const RatFunc& c : rep.op.coeffs()) coeffs.push_back(c.num().to_string());
    json j{{"command", command},
           {"order", rep.order},
           {"degree", rep.degree},
           {"coefficients", coeffs},
           {"bound", rep.bound},
           {"degmm_T", rep.degmm_T},
           {"verified", nullptr},
           {"elapsed_ms", rep.elapsed_ms},
           {"seed", seed}};
    if (v && v->checked) j["verified"] = v->ok;
    return j;
}

int emit_report(const std::string& command, InstanceReport& rep, const OutputOpts& o,
                const std::optional<VerifyOutcome>& v) {
    if (o.order >= 0) throw std::logic_error("order override must be applied before emitting");
    json j = report_json(command, rep, v, o.seed);
    if (!o.out_file.empty()) {
        std::ofstream f(o.out_file);
        f << j.dump(2) << "\n";
    }
    if (o.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "operator: " << ore_to_string(rep.op) << "\n";
        std::cout << "order:    " << rep.order << "\n";
        std::cout << "degree:   " << rep.degree << " (bound " << rep.bound << ", tightness ";
        if (rep.bound > 0)
            std::cout << rep.degree << "/" << rep.bound;
        else
            std::cout << "exact";
        std::cout << ")\n";
        std::cout << "degMM(T): " << rep.degmm_T << " (bound " << rep.degmm_T_bound << ")\n";
        if (!rep.notes.empty()) std::cout << "notes:    " << rep.notes << "\n";
        if (v && v->checked)
            std::cout << "verified: " << (v->ok ? "yes" : "NO") << " [" << v->method << "]\n";
        else if (v)
            std::cout << "verified: no oracle applicable\n";
        std::cout << "elapsed:  " << rep.elapsed_ms << " ms\n";
    }
    if (v && v->checked && !v->ok) return 2;
    return 0;
}

RatMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<RatFunc>> rows;
    std::stringstream ss(text);
    std::string row;
    std::size_t cols = 0;
    while (std::getline(ss, row, ';')) {
        std::vector<RatFunc> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) r.push_back(parse_ratfunc(cell));
        if (r.empty()) throw std::invalid_argument("empty matrix row");
        if (cols == 0) cols = r.size();
        if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

struct NamedCheck {
    std::string name;
    CheckResult (*fn)(std::uint64_t, int);
    int default_trials;
};

const std::vector<NamedCheck>& all_checks() {
    static const std::vector<NamedCheck> cs{
        {"problem1", [](std::uint64_t s, int t) { return checks::check_problem1(s, t); }, 100},
        {"main-theorem", [](std::uint64_t s, int t) { return checks::check_main_theorem(s, t); },
         100},
        {"kronecker", [](std::uint64_t s, int t) { return checks::check_kronecker(s, t); }, 100},
        {"krylov-mcmillan",
         [](std::uint64_t s, int t) { return checks::check_krylov_mcmillan(s, t); }, 100},
        {"mcmillan-paths",
         [](std::uint64_t s, int t) { return checks::check_mcmillan_paths(s, t); }, 100},
        {"lclm", [](std::uint64_t s, int t) { return checks::check_lclm(s, t); }, 50},
        {"symprod", [](std::uint64_t s, int t) { return checks::check_symprod(s, t); }, 25},
        {"closure", [](std::uint64_t s, int t) { return checks::check_closure(s, t); }, 10},
        {"resolvent", [](std::uint64_t s, int t) { return checks::check_resolvent(s, t); }, 25},
        {"composition", [](std::uint64_t s, int t) { return checks::check_composition(s, t); },
         10},
        {"telescoper", [](std::uint64_t s, int t) { return checks::check_telescoper(s, t); }, 25},
    };
    return cs;
}

int run_check(const std::string& families, int trials, std::uint64_t seed, bool as_json,
              const std::string& out_file) {
    std::vector<std::string> wanted;
    {
        std::stringstream ss(families);
        std::string f;
        while (std::getline(ss, f, ',')) wanted.push_back(f);
    }
    const bool all = wanted.empty() || (wanted.size() == 1 && wanted[0] == "all");
    json results = json::array();
    bool ok = true;
    for (const NamedCheck& c : all_checks()) {
        if (!all) {
            bool hit = false;
            for (const std::string& w : wanted)
                if (w == c.name) hit = true;
            if (!hit) continue;
        }
        CheckResult r = c.fn(seed, trials > 0 ? trials : c.default_trials);
        ok = ok && r.ok();
        results.push_back(json{{"name", r.name},
                               {"trials", r.trials},
                               {"failures", r.failures},
                               {"ok", r.ok()},
                               {"detail", r.detail}});
        if (!as_json)
            std::cout << (r.ok() ? "ok    " : "FAIL  ") << c.name << "  trials=" << r.trials
                      << " failures=" << r.failures
                      << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    }
    if (results.empty()) throw std::invalid_argument("no matching check families: " + families);
    json j{{"command", "check"}, {"seed", seed}, {"results", results}, {"ok", ok}};
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << j.dump(2) << "\n";
    }
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << (ok ? "all checks passed" : "CHECK FAILURES") << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact minimal linear relations for pseudo-linear maps over Q(x)"};
    app.require_subcommand(1);

    OutputOpts o;
    o.seed = env_seed();

    std::vector<std::string> ops;
    std::string poly_text, poly_text2, op_text, op_text2, matrix_text;
    int power = 2;

    auto* c_lclm = app.add_subcommand("lclm", "least common left multiple");
    c_lclm->add_option("operators", ops, "operators, e.g. \"Dx-1\" \"Dx\"")->required();
    add_common_flags(c_lclm, o);

    auto* c_symprod = app.add_subcommand("symprod", "symmetric product");
    c_symprod->add_option("operators", ops)->required();
    add_common_flags(c_symprod, o);

    auto* c_closure = app.add_subcommand("closure", "annihilator of a polynomial in solutions");
    c_closure->add_option("polynomial", poly_text, "e.g. \"y1_0*y2_0 + x*y1_1\"")->required();
    c_closure->add_option("--op", ops, "annihilators of the solution groups")->required();
    add_common_flags(c_closure, o);

    auto* c_sympower = app.add_subcommand("sympower", "symmetric power");
    c_sympower->add_option("operator", op_text)->required();
    c_sympower->add_option("--power", power, "exponent")->check(CLI::PositiveNumber);
    add_common_flags(c_sympower, o);

    auto* c_assoc = app.add_subcommand("associate", "annihilator of a(f) for solutions f");
    c_assoc->add_option("operator", op_text)->required();
    c_assoc->add_option("map", op_text2, "the associate operator a")->required();
    add_common_flags(c_assoc, o);

    auto* c_wron = app.add_subcommand("wronskian", "annihilator of the Wronskian");
    c_wron->add_option("operators", ops)->required();
    add_common_flags(c_wron, o);

    auto* c_resolvent = app.add_subcommand("resolvent", "differential resolvent of P(x,y)");
    c_resolvent->add_option("polynomial", poly_text)->required();
    add_common_flags(c_resolvent, o);

    auto* c_compose = app.add_subcommand("compose", "annihilator of f(g) for algebraic g");
    c_compose->add_option("polynomial", poly_text, "P(x,y) with P(x,g)=0")->required();
    c_compose->add_option("operator", op_text, "annihilator of f")->required();
    add_common_flags(c_compose, o);

    auto* c_tele = app.add_subcommand("telescope", "telescoper of p/q");
    c_tele->add_option("numerator", poly_text)->required();
    c_tele->add_option("denominator", poly_text2)->required();
    add_common_flags(c_tele, o);

    auto* c_mc = app.add_subcommand("mcmillan", "McMillan degree of a rational matrix");
    c_mc->add_option("matrix", matrix_text, "rows ';'-separated, entries ','-separated")
        ->required();
    c_mc->add_flag("--json", o.as_json);
    c_mc->add_option("--out", o.out_file);
    c_mc->add_option("--seed", o.seed);

    std::string family = "generic";
    int bound_m = 0;
    std::vector<std::string> params;
    std::string curve;
    bool table = false;
    auto* c_bound = app.add_subcommand("bound", "evaluate a closed-form degree bound");
    c_bound->add_option("--family", family, "generic|lclm|symprod|closure|algeq|compose|hermite");
    c_bound->add_option("--m", bound_m, "relation order")->required();
    c_bound->add_option("--param", params, "named parameter, e.g. s=2");
    c_bound->add_option("--curve", curve, "order range lo:hi for the order/degree curve");
    c_bound->add_flag("--table", table, "print the symbolic summary row");
    c_bound->add_flag("--json", o.as_json);
    c_bound->add_option("--out", o.out_file);

    std::string families = "all";
    int trials = 0;
    auto* c_check = app.add_subcommand("check", "randomized property sweep");
    c_check->add_option("--families", families, "comma-separated family list or 'all'");
    c_check->add_option("--trials", trials, "override per-family trial count");
    c_check->add_option("--seed", o.seed);
    c_check->add_flag("--json", o.as_json);
    c_check->add_option("--out", o.out_file);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return run_check(families, trials, o.seed, o.as_json, o.out_file);

        if (c_mc->parsed()) {
            RatMatrix m = parse_matrix(matrix_text);
            const int d = mcmillan_degree(m);
            json j{{"command", "mcmillan"}, {"degmm", d}, {"seed", o.seed}};
            if (!o.out_file.empty()) {
                std::ofstream f(o.out_file);
                f << j.dump(2) << "\n";
            }
            if (o.as_json) std::cout << j.dump(2) << "\n";
            else std::cout << "degMM: " << d << "\n";
            return 0;
        }

        if (c_bound->parsed()) {
            BoundQuery q;
            q.family = bound_family_from_name(family);
            q.m = bound_m;
            for (const std::string& p : params) {
                const auto eq = p.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("parameter must be name=value: " + p);
                q.params[p.substr(0, eq)] = std::stol(p.substr(eq + 1));
            }
            json j{{"command", "bound"}, {"family", family}, {"m", q.m}};
            if (table) {
                Table1Row row = table1_row(q.family);
                j["table"] = {{"rho_cap", row.rho_cap},
                              {"degmm_T", row.degmm_T},
                              {"new_bound", row.new_bound}};
                if (!o.as_json)
                    std::cout << "rho <= " << row.rho_cap << ", degMM(T) <= " << row.degmm_T
                              << ", bound " << row.new_bound << "\n";
            }
            if (!curve.empty()) {
                const auto colon = curve.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("--curve expects lo:hi");
                const int lo = std::stoi(curve.substr(0, colon));
                const int hi = std::stoi(curve.substr(colon + 1));
                json arr = json::array();
                for (auto [m, b] : order_degree_curve(q, lo, hi)) {
                    arr.push_back({{"m", m}, {"bound", b}});
                    if (!o.as_json) std::cout << "m=" << m << ": " << b << "\n";
                }
                j["curve"] = arr;
            } else if (!table) {
                const long b = evaluate_bound(q);
                j["bound"] = b;
                if (!o.as_json) std::cout << "bound: " << b << "\n";
            }
            if (!o.out_file.empty()) {
                std::ofstream f(o.out_file);
                f << j.dump(2) << "\n";
            }
            if (o.as_json) std::cout << j.dump(2) << "\n";
            return 0;
        }

        InstanceReport rep;
        std::optional<VerifyOutcome> v;
        std::string command;

        if (c_lclm->parsed()) {
            command = "lclm";
            std::vector<OrePoly> ls;
            for (const std::string& s : ops) ls.push_back(parse_operator_as(s, o.kind));
            rep = lclm(ls);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_lclm(ls, rep.op);
        } else if (c_symprod->parsed()) {
            command = "symprod";
            std::vector<OrePoly> ls;
            for (const std::string& s : ops) ls.push_back(parse_operator_as(s, o.kind));
            rep = symmetric_product(ls);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_symprod(ls, rep.op, o.prec);
        } else if (c_closure->parsed()) {
            command = "closure";
            std::vector<OrePoly> ls;
            for (const std::string& s : ops) ls.push_back(parse_operator_as(s, o.kind));
            ClosurePoly j = parse_closure(poly_text, static_cast<int>(ls.size()));
            rep = polynomial_closure(j, ls);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_closure(j, ls, rep.op, o.prec, o.seed);
        } else if (c_sympower->parsed()) {
            command = "sympower";
            OrePoly l = parse_operator_as(op_text, o.kind);
            rep = sym_power(l, power);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_sym_power(l, power, rep.op, o.prec);
        } else if (c_assoc->parsed()) {
            command = "associate";
            OrePoly l = parse_operator_as(op_text, o.kind);
            OrePoly a = parse_operator_as(op_text2, o.kind);
            rep = associate(l, a);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_associate(l, a, rep.op, o.prec);
        } else if (c_wron->parsed()) {
            command = "wronskian";
            std::vector<OrePoly> ls;
            for (const std::string& s : ops) ls.push_back(parse_operator_as(s, o.kind));
            rep = wronskian_annihilator(ls);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_wronskian(ls, rep.op, o.prec);
        } else if (c_resolvent->parsed()) {
            command = "resolvent";
            BivarPoly p = parse_bivar(poly_text);
            rep = differential_resolvent(p);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_resolvent(p, rep.op, o.prec);
        } else if (c_compose->parsed()) {
            command = "compose";
            BivarPoly p = parse_bivar(poly_text);
            OrePoly l = parse_operator_as(op_text, o.kind);
            rep = compose_annihilator(p, l);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_compose(p, l, rep.op, o.prec);
        } else if (c_tele->parsed()) {
            command = "telescope";
            BivarPoly p = parse_bivar(poly_text);
            BivarPoly q = parse_bivar(poly_text2);
            rep = telescoper(p, q);
            if (o.order >= 0) apply_order_override(rep, o.order);
            if (o.verify) v = verify_telescope(p, q, rep.op);
        } else {
            std::cerr << "unknown command\n";
            return 1;
        }
        o.order = -1;
        return emit_report(command, rep, o, v);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
