#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"

#include "cmc1/io.hpp"

using namespace cmc1;
using io::json;

namespace {

struct Config {
    std::string input;
    std::string out;
    std::string params;
    std::string budget = "8pi";
    std::string format = "json";
    std::string end = "0";
    std::string form = "all";
    std::string domain = "rect:-1,-1,1,1";
    std::string start;
    std::string a = "0", nu = "1/10";
    double tol_int = 1e-12, tol_mono = 1e-6, tol_quad = 1e-10;
    double cut = 0;
    int res = 24;
    bool dual = false;
    std::uint64_t seed = 0;
};

struct NonexistenceExit {};

int budget_of(const std::string& b) {
    if (b == "0") return 0;
    if (b == "4pi") return 1;
    if (b == "8pi") return 2;
    throw std::invalid_argument("budget must be 0, 4pi or 8pi");
}

unsigned threads_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("CMC_CENSUS_THREADS")) {
        long n = std::strtol(e, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(std::min<long>(n, 256));
    }
    return hw;
}

std::map<std::string, ExactScalar> parse_params(const std::string& text) {
    std::map<std::string, ExactScalar> m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("param '" + item + "' is not key=value");
        m[item.substr(0, eq)] = ExactScalar::parse(item.substr(eq + 1));
    }
    return m;
}

ExactScalar param(const std::map<std::string, ExactScalar>& m, const std::string& k, const ExactScalar& dflt) {
    auto it = m.find(k);
    return it == m.end() ? dflt : it->second;
}

long int_param(const std::map<std::string, ExactScalar>& m, const std::string& k, long dflt) {
    auto v = param(m, k, ExactScalar(dflt));
    if (!v.is_integer()) throw std::invalid_argument(k + " must be an integer");
    return v.re_rat().get_num().get_si();
}

/// Census dispatch by case id or type tag.
std::vector<census::CaseRecord> run_case(const std::string& tag, const std::string& params) {
    using namespace census;
    auto P = parse_params(params);
    auto R = [](long n, long d = 1) { return ExactScalar::rational(n, d); };
    if (tag == "horosphere" || tag == "O(0)") return {build_4pi(FourPiCase::horosphere)};
    if (tag == "enneper_dual" || tag == "O(-4)") {
        FourPiParams fp;
        fp.theta = param(P, "theta", 1);
        return {build_4pi(FourPiCase::enneper_dual, fp)};
    }
    if (tag == "catenoid_cousin") {
        FourPiParams fp;
        fp.a = param(P, "a", 1);
        fp.mu = param(P, "mu", R(1, 2));
        return {build_4pi(FourPiCase::catenoid_cousin, fp)};
    }
    if (tag == "warped_catenoid") {
        FourPiParams fp;
        fp.a = param(P, "a", 1);
        fp.b = param(P, "b", 1);
        fp.l = int_param(P, "l", 2);
        return {build_4pi(FourPiCase::warped_catenoid, fp)};
    }
    if (tag == "o112" || tag == "O(-1,-1,-2)") return {o112()};
    if (tag == "o14" || tag == "O(-1,-4)") return {o14()};
    if (tag == "o13" || tag == "O(-1,-3)") return {o13()};
    if (tag == "o122_h1") return {o122_h1(param(P, "p", 4))};
    if (tag == "o122_h3") return {o122_h3(int_param(P, "r", 3))};
    if (tag == "o24_h1") return {o24_h1(param(P, "theta", R(3, 32)), param(P, "q", 2))};
    if (tag == "o24_h3") return o24_h3(int_param(P, "m", 3)).records;
    if (tag == "o23_a") return {o23_a(param(P, "theta", R(3, 16)))};
    if (tag == "o23_b") return {o23_b(param(P, "theta", R(1, 4)))};
    if (tag == "o23_h3_nonexistence") {
        auto pr = o23_h3_nonexistence(int_param(P, "m", 2));
        CaseRecord rec;
        rec.case_id = "o23_h3_nonexistence";
        rec.type_tag = "O(-2,-3)";
        rec.reducibility = Reducibility::H3;
        rec.param("m", std::to_string(pr.m));
        rec.param("c_a", pr.c_a.str());
        rec.param("c_b", pr.c_b.str());
        rec.checks = pr.checks;
        rec.note = "no O(-2,-3) end with integer gap is log-free";
        rec.verdict = rec.all_passed() ? Verdict::nonexistent : Verdict::unknown;
        return {rec};
    }
    if (tag == "o222_irreducible") return {o222_irreducible()};
    if (tag == "o222_h1") return {o222_h1(param(P, "s", 2))};
    if (tag == "o222_h3") return {o222_h3(int_param(P, "m", 4))};
    if (tag == "o22" || tag == "O(-2,-2)") return {o22(param(P, "mu", 3), param(P, "a", 1), param(P, "b", 1))};
    if (tag == "o5" || tag == "O(-5)") return {o5(param(P, "theta", 1))};
    if (tag == "o6" || tag == "O(-6)") return {o6(param(P, "theta", 1))};
    if (tag == "o33" || tag == "O(-3,-3)") return {o33(param(P, "a", 0))};
    if (tag == "i4" || tag == "I(-4)") return {i4()};
    if (tag == "i3" || tag == "I(-3)") return {i3()};
    if (tag == "i22" || tag == "I(-2,-2)") return {i22()};
    if (tag == "i11" || tag == "I(-1,-1)") {
        auto c = [&](const std::string& k, std::complex<double> d) {
            auto it = P.find(k);
            return it == P.end() ? d : it->second.to_complex();
        };
        return {i11_candidate(c("v1", 1.0), c("v2", {0, 1}), c("theta", 1.0))};
    }
    throw std::invalid_argument("unknown type tag: " + tag);
}

json envelope(const Config& cfg, const std::string& cmd) {
    return {{"command", cmd}, {"seed", cfg.seed}};
}

void emit(const Config& cfg, const json& j) {
    std::string text = io::dump17(j);
    if (cfg.out.empty()) std::cout << text;
    else {
        std::ofstream f(cfg.out);
        if (!f) throw std::runtime_error("cannot write " + cfg.out);
        f << text;
    }
}

/// Spec from a file path or a census case id.
moduli::SurfaceSpec load_spec(const Config& cfg) {
    if (cfg.input.size() > 5 && cfg.input.substr(cfg.input.size() - 5) == ".json") return io::read_spec(cfg.input);
    auto recs = run_case(cfg.input, cfg.params);
    if (recs.empty() || !recs[0].spec) throw std::invalid_argument(cfg.input + " carries no rational (G, Q) data");
    return *recs[0].spec;
}

int cmd_analyze(const Config& cfg) {
    auto spec = load_spec(cfg);
    auto a = moduli::analyze(spec);
    auto c = moduli::curvature_report(spec.genus, spec.G.degree(), a.ends, a.umbilics);
    json j = envelope(cfg, "analyze");
    j["spec"] = io::to_json(spec);
    j["spec_hash"] = io::spec_hash(spec);
    j["analysis"] = io::to_json(a, c);
    emit(cfg, j);
    return 0;
}

int cmd_census(const Config& cfg) {
    json j = envelope(cfg, "census");
    std::vector<census::CaseRecord> recs;
    if (cfg.input == "all") {
        int b = budget_of(cfg.budget);
        recs = census::run_all(b, threads_from_env());
        j["budget"] = cfg.budget;
        j["summary"] = io::to_json(census::table1(recs));
    } else {
        recs = run_case(cfg.input, cfg.params);
    }
    json arr = json::array();
    bool failed = false, nonexistent = false;
    for (auto& r : recs) {
        arr.push_back(io::to_json(r));
        failed = failed || !r.all_passed();
        nonexistent = nonexistent || r.verdict == census::Verdict::nonexistent;
    }
    j["records"] = arr;
    emit(cfg, j);
    if (failed) return 1;
    return nonexistent && cfg.input != "all" ? 2 : 0;
}

int cmd_frobenius(const Config& cfg) {
    auto spec = load_spec(cfg);
    SpherePoint end = SpherePoint::parse(cfg.end);
    json j = envelope(cfg, "frobenius");
    j["spec_hash"] = io::spec_hash(spec);
    json forms = json::array();
    std::vector<frobenius::Form> which;
    if (cfg.form == "all") which = {frobenius::Form::E0, frobenius::Form::E1sharp, frobenius::Form::E2sharp};
    else if (cfg.form == "E0") which = {frobenius::Form::E0};
    else if (cfg.form == "E1sharp") which = {frobenius::Form::E1sharp};
    else if (cfg.form == "E2sharp") which = {frobenius::Form::E2sharp};
    else throw std::invalid_argument("form must be E0, E1sharp, E2sharp or all");
    for (auto f : which) forms.push_back(io::to_json(frobenius::verdict_for(f, spec.G, spec.Q, end), end, spec.G, spec.Q));
    j["reports"] = forms;
    if (which.size() == 3) j["consistent"] = frobenius::equivalence_report(spec.G, spec.Q, end).consistent;
    emit(cfg, j);
    return 0;
}

int cmd_monodromy(const Config& cfg) {
    auto spec = load_spec(cfg);
    bryant::MonodromyOptions opt;
    opt.tol_int = cfg.tol_int;
    opt.tol_mono = cfg.tol_mono;
    auto rep = bryant::monodromy(spec.G, spec.Q, spec.ends, opt);
    json j = envelope(cfg, "monodromy");
    j["spec_hash"] = io::spec_hash(spec);
    j["tol_int"] = cfg.tol_int;
    j["tol_mono"] = cfg.tol_mono;
    j["report"] = io::to_json(rep);
    emit(cfg, j);
    return 0;
}

std::vector<double> numbers(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string x;
    while (std::getline(ss, x, ',')) v.push_back(std::stod(x));
    return v;
}

int cmd_mesh(const Config& cfg) {
    auto spec = load_spec(cfg);
    bryant::MeshOptions opt;
    opt.res = cfg.res;
    opt.tol = cfg.tol_int;
    opt.dual = cfg.dual;
    bryant::Mesh m;
    auto colon = cfg.domain.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("domain must be rect:x0,y0,x1,y1 or annulus:cx,cy,r0,r1");
    std::string kind = cfg.domain.substr(0, colon);
    auto v = numbers(cfg.domain.substr(colon + 1));
    if (v.size() != 4) throw std::invalid_argument("domain needs four numbers");
    if (kind == "rect") m = bryant::mesh(spec.G, spec.Q, bryant::Rectangle{{v[0], v[1]}, {v[2], v[3]}}, opt);
    else if (kind == "annulus") m = bryant::mesh(spec.G, spec.Q, bryant::Annulus{{v[0], v[1]}, v[2], v[3], cfg.cut}, opt);
    else throw std::invalid_argument("unknown domain kind " + kind);
    if (cfg.format == "obj") {
        std::ostringstream os;
        os << "# spec " << io::spec_hash(spec) << " seed " << cfg.seed << '\n';
        m.write_obj(os);
        if (cfg.out.empty()) std::cout << os.str();
        else std::ofstream(cfg.out) << os.str();
        return 0;
    }
    json j = envelope(cfg, "mesh");
    j["spec_hash"] = io::spec_hash(spec);
    j["vertices"] = m.vertices.size();
    j["faces"] = m.faces.size();
    j["max_norm"] = m.max_norm();
    j["max_det_drift_per_length"] = m.max_det_drift_per_length;
    j["seam_mismatch"] = m.seam_mismatch;
    json verts = json::array();
    for (auto& p : m.vertices) verts.push_back({p[0], p[1], p[2]});
    j["points"] = verts;
    emit(cfg, j);
    return 0;
}

int cmd_periods(const Config& cfg) {
    json j = envelope(cfg, "periods");
    if (cfg.input == "cg") {
        double sB = std::sqrt(flatlab::B_constant().B);
        std::array<double, 2> start{1.1, 1.1 * sB};
        if (!cfg.start.empty()) {
            auto v = numbers(cfg.start);
            if (v.size() != 2) throw std::invalid_argument("--start needs nu1,nu2");
            start = {v[0], v[1]};
        }
        auto rep = flatlab::cg_solve(start);
        j["B"] = sB * sB;
        j["start"] = {start[0], start[1]};
        j["report"] = io::to_json(rep);
        emit(cfg, j);
        return rep.converged ? 0 : 1;
    }
    if (cfg.input == "o33") {
        auto r = flatlab::o33_period(ExactScalar::parse(cfg.a), ExactScalar::parse(cfg.nu));
        j["a"] = cfg.a;
        j["nu"] = cfg.nu;
        j["residue"] = r.residue.str();
        j["period"] = r.numeric;
        j["closed_form"] = r.closed_form;
        emit(cfg, j);
        return 0;
    }
    if (cfg.input == "B") {
        auto b = flatlab::B_constant();
        j["B"] = b.B;
        j["numerator"] = b.numerator;
        j["denominator"] = b.denominator;
        emit(cfg, j);
        return 0;
    }
    throw std::invalid_argument("periods target must be cg, o33 or B");
}

int cmd_table1(const Config& cfg) {
    auto rows = census::table1(census::run_all(2, threads_from_env()));
    json j = envelope(cfg, "table1");
    j["rows"] = io::to_json(rows);
    bool all = true;
    std::size_t triples = 0;
    for (auto& r : rows) {
        all = all && r.matches();
        triples += r.reference.size();
    }
    j["row_count"] = rows.size();
    j["triple_count"] = triples;
    j["all_match"] = all;
    emit(cfg, j);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CMC-1 surface census in hyperbolic 3-space"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--out", cfg.out, "output path (stdout if omitted)");
    app.add_option("--seed", cfg.seed, "seed recorded in every report");
    app.add_option("--tol-int", cfg.tol_int, "integration tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-mono", cfg.tol_mono, "monodromy tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-quad", cfg.tol_quad, "quadrature tolerance")->check(CLI::PositiveNumber);

    auto* analyze = app.add_subcommand("analyze", "moduli analysis of a spec file or census case");
    analyze->add_option("input", cfg.input)->required();
    analyze->add_option("--params", cfg.params, "key=value,... for census cases");

    auto* census = app.add_subcommand("census", "run one census case or all of them");
    census->add_option("tag", cfg.input)->required();
    census->add_option("--params", cfg.params, "key=value,...");
    census->add_option("--budget", cfg.budget, "0, 4pi or 8pi")->check(CLI::IsMember({"0", "4pi", "8pi"}));

    auto* frob = app.add_subcommand("frobenius", "indicial data and log terms at an end");
    frob->add_option("input", cfg.input)->required();
    frob->add_option("--params", cfg.params);
    frob->add_option("--end", cfg.end, "end point, e.g. 0, 1/2, inf");
    frob->add_option("--form", cfg.form)->check(CLI::IsMember({"E0", "E1sharp", "E2sharp", "all"}));

    auto* mono = app.add_subcommand("monodromy", "loop matrices of the lift around every end");
    mono->add_option("input", cfg.input)->required();
    mono->add_option("--params", cfg.params);

    auto* mesh = app.add_subcommand("mesh", "sample the surface into the Poincare ball");
    mesh->add_option("input", cfg.input)->required();
    mesh->add_option("--params", cfg.params);
    mesh->add_option("--domain", cfg.domain, "rect:x0,y0,x1,y1 or annulus:cx,cy,r0,r1");
    mesh->add_option("--res", cfg.res)->check(CLI::Range(2, 2000));
    mesh->add_option("--tol", cfg.tol_int)->check(CLI::PositiveNumber);
    mesh->add_option("--cut", cfg.cut, "branch cut angle for annuli");
    mesh->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "obj"}));
    mesh->add_flag("--dual", cfg.dual, "mesh the dual surface");

    auto* periods = app.add_subcommand("periods", "period problems: cg, o33, B");
    periods->add_option("target", cfg.input)->required()->check(CLI::IsMember({"cg", "o33", "B"}));
    periods->add_option("--start", cfg.start, "nu1,nu2");
    periods->add_option("--a", cfg.a);
    periods->add_option("--nu", cfg.nu);

    auto* table = app.add_subcommand("table1", "full 8pi census against Table 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        if (*analyze) return cmd_analyze(cfg);
        if (*census) return cmd_census(cfg);
        if (*frob) return cmd_frobenius(cfg);
        if (*mono) return cmd_monodromy(cfg);
        if (*mesh) return cmd_mesh(cfg);
        if (*periods) return cmd_periods(cfg);
        if (*table) return cmd_table1(cfg);
    } catch (const std::exception& e) {
        std::cerr << io::dump17(json{{"error", e.what()}});
        return 1;
    }
    return 1;
}
