#include "qg/cli.hpp"

#include "qg/acceptance.hpp"
#include "qg/category.hpp"
#include "qg/cbnorm.hpp"
#include "qg/corep.hpp"
#include "qg/doubles.hpp"
#include "qg/freeprod.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

namespace qg {

namespace fs = std::filesystem;
using io::json;

bool RunReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::vector<Check> sorted(std::vector<Check> c) {
    std::stable_sort(c.begin(), c.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return c;
}

std::string num(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

}  // namespace

json RunReport::to_json() const {
    json j;
    j["command"] = command;
    json in = json::array();
    for (const auto& [p, d] : inputs) in.push_back({{"path", p}, {"fnv1a", d}});
    j["inputs"] = in;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    json cs = json::array();
    for (const auto& c : sorted(checks))
        cs.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold},
                      {"status", c.pass ? "pass" : "fail"}});
    j["checks"] = cs;
    j["results"] = results;
    j["wall_time_s"] = seconds;
    j["status"] = pass() ? "pass" : "fail";
    return j;
}

std::string RunReport::to_text() const {
    std::ostringstream s;
    s << command << "\n";
    for (const auto& [p, d] : inputs) s << "  input " << p << "  fnv1a " << d << "\n";
    s << "  seed " << seed << "  tolerance " << num(tolerance) << "\n";
    for (const auto& c : sorted(checks))
        s << "  " << (c.pass ? "pass " : "FAIL ") << c.name << "  " << num(c.residual) << " <= " << num(c.threshold)
          << "\n";
    for (auto it = results.begin(); it != results.end(); ++it) {
        std::string v = it->is_string() ? it->get<std::string>() : it->dump();
        if (v.size() > 200) v = v.substr(0, 200) + " ...";
        s << "  " << it.key() << " = " << v << "\n";
    }
    s << (pass() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, " << num(seconds) << " s)\n";
    return s.str();
}

double tolerance_from_env() {
    const char* v = std::getenv("QG_TOLERANCE");
    if (!v || !*v) return kDefaultTolerance;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (*end != '\0' || !(t > 0.0)) throw Error("ParseError", std::string("QG_TOLERANCE is not a positive number: ") + v);
    return t;
}

namespace {

struct Run {
    RunReport& r;

    void check(const std::string& name, double res, double thr) {
        if (!std::isfinite(res)) res = std::numeric_limits<double>::infinity();
        r.checks.push_back({name, res, thr, res <= thr});
    }
    void flag(const std::string& name, bool ok) { r.checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok}); }
    void add(const std::vector<Check>& cs, const std::string& prefix = "") {
        for (const auto& c : cs) r.checks.push_back({prefix + c.name, c.residual, c.threshold, c.pass});
    }
    double tol() const { return r.tolerance; }

    json load(const std::string& path) {
        const std::string text = io::read_text(path);
        r.inputs.push_back({path, io::digest(text)});
        return io::parse_text(text, path);
    }
};

void emit_to(const std::string& path, const json& j) {
    if (!path.empty()) io::write_file(path, j);
}

// A table read from an irr_table file, or built from a hopf file through its engine.
struct TableSource {
    std::unique_ptr<Engine> g;
    std::unique_ptr<EngineTable> et;
    IrrTable t;
};

TableSource load_table(Run& run, const std::string& path) {
    json doc = run.load(path);
    TableSource s;
    if (io::kind_of(doc) == "hopf") {
        HopfData d = io::hopf_from_json(doc);
        d.tol = run.tol();
        s.g = std::make_unique<Engine>(build_engine(d));
        s.et = std::make_unique<EngineTable>(bridge(*s.g));
        s.t = s.et->table;
        run.check("engine: corepresentation identities", s.et->corep_residual, run.tol());
        run.check("engine: conjugation intertwiners", s.et->conj_residual, run.tol());
    } else {
        s.t = io::table_from_json(doc);
    }
    run.add(validate_table(s.t), "table: ");
    return s;
}

json block_dims(const std::vector<int>& d) { return json(d); }

// ------------------------------------------------------------------ Hopf

void cmd_check_hopf(Run& run, const std::string& file) {
    HopfData d = io::hopf_from_json(run.load(file));
    d.tol = run.tol();
    run.add(validate_hopf(d).checks);
    HaarData h = haar_state(d);
    run.check("Haar left invariance", h.left_residual, run.tol());
    run.check("Haar right invariance", h.right_residual, run.tol());
    run.check("Haar trace", h.trace_residual, run.tol());
    run.flag("Haar faithful", h.min_eig > run.tol());
    UnitaryTensor w = multiplicative_unitary(d, h);
    run.check("W unitary", w.unitarity, run.tol());
    run.check("pentagon", w.pentagon, run.tol());
    run.r.results["dim"] = d.dim;
    run.r.results["blocks"] = block_dims(wedderburn(d, h).dims);
}

void cmd_dual(Run& run, const std::string& file, const std::string& emit) {
    HopfData d = io::hopf_from_json(run.load(file));
    d.tol = run.tol();
    Engine g = build_engine(d);
    run.add(validate_hopf(g.dual.data).checks, "dual: ");
    BidualIso iso = biduality(g);
    run.add(iso.checks, "bidual: ");
    run.check("bidual isomorphism", iso.residual, std::max(run.tol(), 1e-8));
    double r = 0.0;
    Mat s = antipode_from_w(g.dual, g.w, &r);
    run.check("dual antipode read off W", max_abs(Mat(s - g.dual.data.antipode)), run.tol());
    run.r.results["dual_dim"] = g.dual.data.dim;
    run.r.results["dual_blocks"] = block_dims(wedderburn(g.dual.data, haar_state(g.dual.data)).dims);
    emit_to(emit, io::to_json(g.dual.data));
}

void cmd_w(Run& run, const std::string& file, const std::string& emit) {
    HopfData d = io::hopf_from_json(run.load(file));
    d.tol = run.tol();
    UnitaryTensor w = multiplicative_unitary(d, haar_state(d));
    run.check("W unitary", w.unitarity, run.tol());
    run.check("pentagon", w.pentagon, run.tol());
    run.r.results["leg_dim"] = w.n;
    emit_to(emit, io::operator_to_json(w.W));
}

// ------------------------------------------------------------------ multipliers

struct MultArgs {
    std::string table, element, pol, emit;
};

void cmd_mult(Run& run, const std::string& op, const MultArgs& a) {
    TableSource src = load_table(run, a.table);
    const IrrTable& t = src.t;
    FinSupp x = io::finsupp_from_json(run.load(a.element));
    check_shapes(t, x);
    const EngineTable* et = src.et.get();
    const double tol = run.tol();
    FinSupp out;
    if (op == "apply") {
        if (et) {
            run.check("engine: (1 (x) a)W^ = (Theta (x) id)W^", et->w_hat_relation(et->to_algebra(x), et->theta_formula(x)),
                      tol);
            run.check("engine: coefficient formula = slices of W^",
                      max_abs(Mat(et->theta_formula(x) - et->theta_engine(et->to_algebra(x)))), tol);
        }
        run.r.results["sup_norm"] = sup_norm(x);
        run.r.results["central"] = is_central(x);
        if (!a.pol.empty()) {
            PolElement p = io::pol_from_json(run.load(a.pol));
            check_shapes(t, p);
            emit_to(a.emit, io::to_json(theta_apply(t, x, p)));
        }
        return;
    }
    if (op == "involute") {
        out = multiplier_involution(t, x);
        run.check("involution is involutive", max_abs(add(multiplier_involution(t, out), x, -1.0)), tol);
        if (et)
            run.check("engine: Theta^l(S(a^*)) = Theta^l(a)^dagger",
                      max_abs(Mat(et->theta_formula(out) - dagger(et->g->dual.data, et->theta_formula(x)))), tol);
    } else if (op == "average") {
        out = central_average(t, x);
        run.check("A idempotent", max_abs(add(central_average(t, out), out, -1.0)), tol);
        run.flag("A(a) central", is_central(out, tol));
        if (et) {
            const HopfData& ah = et->g->dual.data;
            const int n = ah.dim;
            Mat G = et->dual_haar.gram;
            Mat sharp = G.inverse() * ah.comult.adjoint() * kron(G, G);
            Mat rhs = sharp * kron(Mat::Identity(n, n), et->theta_engine(et->to_algebra(x))) * ah.comult;
            run.check("engine: Theta^l(A(a)) = Delta^#(id (x) Theta^l(a))Delta^",
                      max_abs(Mat(et->theta_engine(et->to_algebra(out)) - rhs)), tol);
        }
    } else {
        out = symmetrize_ap_net(t, x);
        double tau = 0.0;
        for (double time : {0.3, -1.7, 2.5})
            tau = std::max(tau, max_abs(add(scaling_modular_action(t, time, out, ModularKind::Tau), out, -1.0)));
        run.check("tau-invariant", tau, tol);
        run.check("S(out^*) = out", max_abs(add(multiplier_involution(t, out), out, -1.0)), tol);
        PolElement one;
        one.coeffs[t.trivial] = Mat::Identity(1, 1);
        run.check("Theta^l(out)(1) = 1", max_abs(add(theta_apply(t, out, one), one, -1.0)), tol);
        std::mt19937 rng(run.r.seed);
        double haar = 0.0;
        for (int it = 0; it < 5; ++it) {
            PolElement y;
            for (int l = 0; l < t.size(); ++l) y.coeffs[l] = random_matrix(t.dims[l], t.dims[l], rng());
            haar = std::max(haar, std::abs(haar_pair(t, theta_apply(t, out, y)) - haar_pair(t, y)));
        }
        run.check("h o Theta^l(out) = h", haar, tol);
    }
    run.r.results["sup_norm"] = sup_norm(out);
    emit_to(a.emit, io::to_json(out));
}

// ------------------------------------------------------------------ cb norms

void cmd_cbnorm(Run& run, const std::string& file, int lower_n) {
    BlockMap f = io::map_from_json(run.load(file));
    check_shape(f);
    CbResult c = cb_norm_exact(f);
    run.check("SDP duality gap", c.gap, 1e-6);
    run.check("certificates bracket the value", std::max(0.0, std::max(c.lower - c.value, c.value - c.upper)), 1e-6);
    json& res = run.r.results;
    res["value"] = c.value;
    res["lower"] = c.lower;
    res["upper"] = c.upper;
    res["gap"] = c.gap;
    res["iterations"] = c.iterations;
    res["completely_positive"] = c.completely_positive;
    if (lower_n > 0) {
        const double lo = cb_norm_lower(f, lower_n, run.r.seed);
        res["amplified_lower"] = lo;
        res["amplification"] = lower_n;
        run.check("||f (x) id_n|| <= ||f||_cb", std::max(0.0, lo - c.value), 1e-6);
    }
}

// ------------------------------------------------------------------ free products

struct FreeArgs {
    std::string file, words, emit;
    int max_len = 4;
    int d = 1;
    int n = 4;
};

void cmd_freeprod(Run& run, const std::string& op, const FreeArgs& a) {
    FreeProductTable fp = io::free_product_from_json(run.load(a.file));
    for (size_t i = 0; i < fp.factors.size(); ++i) run.add(validate_table(fp.factors[i]), "factor " + std::to_string(i) + ": ");
    if (op == "enum") {
        auto words = enumerate_words(fp, a.max_len);
        json counts = json::array();
        for (int len = 0; len <= a.max_len; ++len) {
            long c = std::count_if(words.begin(), words.end(), [&](const AlternatingWord& w) { return w.length() == len; });
            counts.push_back(c);
            run.check("count at length " + std::to_string(len) + " matches the recursion",
                      std::abs(static_cast<double>(c - count_words(fp, len))), 0.0);
        }
        run.r.results["counts"] = counts;
        emit_to(a.emit, io::words_to_json(words));
    } else if (op == "fuse") {
        auto ws = io::words_from_json(run.load(a.words));
        if (ws.size() != 2) throw Error("ParseError", "field 'words': fuse takes exactly two words");
        WordMultiset m = free_fusion(fp, ws[0], ws[1]);
        long rhs = 0;
        json terms = json::array();
        std::vector<AlternatingWord> out;
        for (const auto& [w, k] : m) {
            rhs += static_cast<long>(k) * fp.dim(w);
            terms.push_back({{"word", fp.name(w)}, {"multiplicity", k}, {"dim", fp.dim(w)}});
            out.push_back(w);
        }
        run.check("dim(w1) dim(w2) = sum N dim", std::abs(static_cast<double>(rhs - static_cast<long>(fp.dim(ws[0])) * fp.dim(ws[1]))),
                  0.0);
        run.r.results["fusion"] = terms;
        emit_to(a.emit, io::words_to_json(out));
    } else {
        GradedElement g = op == "pd" ? length_projection(fp, a.d, a.max_len) : tn_series(fp, a.n, a.max_len);
        if (op == "pd") run.check("p_d idempotent", max_abs(add(multiply(g.element, g.element), g.element, -1.0)), 0.0);
        run.flag("central", is_central(g.element));
        run.r.results["support"] = g.element.blocks.size();
        run.r.results["sup_norm"] = sup_norm(g.element);
        if (g.cb_upper) run.r.results["cb_upper"] = *g.cb_upper;
        if (!g.bound.empty()) run.r.results["bound"] = g.bound;
        emit_to(a.emit, io::to_json(g.element));
    }
}

// ------------------------------------------------------------------ fusion

struct FusionArgs {
    std::string ring, theta, omega, f, g;
    std::optional<double> cb_bound;
};

void cmd_fusion(Run& run, const std::string& op, const FusionArgs& a) {
    FusionRing r = io::ring_from_json(run.load(a.ring));
    auto sized = [&](const std::vector<cd>& v, const std::string& what) {
        if (static_cast<int>(v.size()) != r.size())
            throw Error("ParseError", "field 'values' of " + what + ": expected " + std::to_string(r.size()) + " entries");
        return v;
    };
    if (op == "verify") {
        run.add(verify_fusion_ring(r, run.tol()).checks);
        run.r.results["rank"] = r.size();
        return;
    }
    CatMultiplier m{sized(io::vector_from_json(run.load(a.theta)), "theta"), a.cb_bound};
    check_bound(m);
    if (op == "pair") {
        auto w = sized(io::vector_from_json(run.load(a.omega)), "omega");
        cd v = mult_pair(r, m, w);
        run.check("|pair| <= ||omega||_1 ||theta||_inf", std::max(0.0, std::abs(v) - weighted_l1(r, w) * sup_norm(m)),
                  run.tol());
        run.r.results["pair"] = {v.real(), v.imag()};
    } else {
        auto f = sized(io::vector_from_json(run.load(a.f)), "f");
        auto g = sized(io::vector_from_json(run.load(a.g)), "g");
        cd v = corner_pairing(r, m, f, g);
        // same number from the convolution product
        std::vector<cd> tf(f.size());
        for (size_t k = 0; k < f.size(); ++k) tf[k] = m.theta[k] * f[k];
        run.check("Tr(g M_theta(f)) via the corner product", std::abs(v - corner_trace(r, corner_multiply(r, g, tf))),
                  run.tol());
        run.r.results["pairing"] = {v.real(), v.imag()};
    }
}

// ------------------------------------------------------------------ doubles

void cmd_double(Run& run, const std::string& op, const std::string& file, const std::string& emit) {
    Matching m = io::matching_from_json(run.load(file));
    const bool full = op == "check";
    DoubleCrossed d = build_double_crossed(m, full);
    run.add(d.checks);
    run.r.results["dim"] = d.data.dim;
    if (full) {
        try {
            GammaReport g = gamma_embeddings_check(d, std::max(run.tol(), 1e-10));
            run.check("gamma_1 intertwining", g.gamma1, 1e-10);
            run.check("gamma_2 intertwining", g.gamma2, 1e-10);
            run.check("gamma images in the dual", g.membership, 1e-10);
        } catch (const Error& e) {
            run.check(e.what(), e.residual() > 0.0 ? e.residual() : 1.0, 1e-10);
        }
        std::mt19937 rng(run.r.seed);
        double f = 0.0;
        for (int it = 0; it < 5; ++it) {
            Vec w1 = random_matrix(d.n1(), 1, rng()).col(0), w2 = random_matrix(d.n2(), 1, rng()).col(0);
            f = std::max(f, fourier_factorization(d, w1, w2).residual);
        }
        run.check("Fourier factorization", f, 1e-10);
    }
    emit_to(emit, io::to_json(d.data));
}

// ------------------------------------------------------------------ report-all

void cmd_report_all(Run& run, const std::string& dir, bool skip_acceptance) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    json per_file = json::object();
    for (const auto& p : files) {
        const std::string name = p.filename().string();
        RunReport sub;
        sub.seed = run.r.seed;
        sub.tolerance = run.r.tolerance;
        Run s{sub};
        std::string kind;
        try {
            kind = io::kind_of(s.load(p.string()));
            if (kind == "hopf") {
                sub.inputs.clear();
                cmd_check_hopf(s, p.string());
            } else if (kind == "block_map") {
                sub.inputs.clear();
                cmd_cbnorm(s, p.string(), 0);
            } else if (kind == "fusion_ring") {
                sub.inputs.clear();
                cmd_fusion(s, "verify", {p.string(), "", "", "", "", std::nullopt});
            } else if (kind == "matching") {
                sub.inputs.clear();
                cmd_double(s, "check", p.string(), "");
            } else if (kind == "free_product") {
                sub.inputs.clear();
                cmd_freeprod(s, "enum", {p.string(), "", "", 4, 1, 4});
            } else if (kind == "irr_table") {
                s.add(validate_table(io::table_from_json(io::read_file(p.string()))));
            } else {
                // element, word and vector files are inputs to other commands
                continue;
            }
        } catch (const Error& e) {
            if (e.kind() == "ParseError" || e.kind() == "IOError") throw;
            s.check(std::string("error: ") + e.what(), e.residual() > 0.0 ? e.residual() : 1.0, 0.0);
        }
        run.r.inputs.insert(run.r.inputs.end(), sub.inputs.begin(), sub.inputs.end());
        for (const auto& c : sub.checks) run.r.checks.push_back({name + ": " + c.name, c.residual, c.threshold, c.pass});
        json fr = sub.results;
        fr["kind"] = kind;
        fr["status"] = sub.pass() ? "pass" : "fail";
        per_file[name] = fr;
    }
    run.r.results["files"] = per_file;
    if (skip_acceptance) return;
    json crit = json::array();
    for (int id = 1; id <= kCriteria; ++id) {
        Criterion c = run_criterion(id, run.r.seed);
        char tag[32];
        std::snprintf(tag, sizeof tag, "criterion %02d: ", id);
        for (const auto& k : c.checks) run.r.checks.push_back({tag + k.name, k.residual, k.threshold, k.pass});
        crit.push_back({{"id", id}, {"title", c.title}, {"checks", c.checks.size()}, {"status", c.pass() ? "pass" : "fail"}});
    }
    run.r.results["acceptance"] = crit;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite quantum groups: engines, multipliers, cb norms, free products, fusion rings, doubles", "qg"};
    app.require_subcommand(1);
    app.fallthrough();
    RunReport report;
    std::string out_file;
    bool as_json = false;
    app.add_option("--seed", report.seed, "random seed");
    app.add_option("--out", out_file, "also write the JSON report here");
    app.add_flag("--json", as_json, "print the report as JSON");

    std::string file, emit;
    std::function<void(Run&)> action;

    auto hopf_cmd = [&](const std::string& name, const std::string& desc, bool emits,
                        std::function<void(Run&, const std::string&, const std::string&)> fn) {
        auto* c = app.add_subcommand(name, desc);
        c->add_option("file", file, "HopfData file")->required();
        if (emits) c->add_option("--emit", emit, "write the result here");
        c->callback([&, fn] { action = [&, fn](Run& r) { fn(r, file, emit); }; });
    };
    hopf_cmd("check-hopf", "validate axioms, Haar state, W and the pentagon", false,
             [](Run& r, const std::string& f, const std::string&) { cmd_check_hopf(r, f); });
    hopf_cmd("dual", "dual Hopf algebra and biduality", true, cmd_dual);
    hopf_cmd("w", "Kac-Takesaki operator", true, cmd_w);

    MultArgs ma;
    auto* mult = app.add_subcommand("mult", "central and non-central multipliers Theta^l(a)");
    mult->require_subcommand(1);
    for (const char* op : {"apply", "involute", "average", "symmetrize"}) {
        auto* c = mult->add_subcommand(op);
        c->add_option("--table", ma.table, "irr_table file, or a hopf file to work on its engine")->required();
        c->add_option("--element", ma.element, "finsupp file")->required();
        if (std::string(op) == "apply") c->add_option("--pol", ma.pol, "pol_element file to act on");
        c->add_option("--emit", ma.emit, "write the result here");
        std::string o = op;
        c->callback([&, o] { action = [&, o](Run& r) { cmd_mult(r, o, ma); }; });
    }

    int lower_n = 0;
    auto* cb = app.add_subcommand("cbnorm", "completely bounded norm of a block map");
    cb->add_option("file", file, "block_map file")->required();
    cb->add_option("--lower", lower_n, "also run the amplified lower bound at this n");
    cb->callback([&] { action = [&](Run& r) { cmd_cbnorm(r, file, lower_n); }; });

    FreeArgs fa;
    auto* fp = app.add_subcommand("freeprod", "free products of discrete quantum groups");
    fp->require_subcommand(1);
    for (const char* op : {"enum", "fuse", "pd", "tn"}) {
        auto* c = fp->add_subcommand(op);
        c->add_option("file", fa.file, "free_product file")->required();
        c->add_option("--max-len", fa.max_len, "truncation length")->check(CLI::Range(0, 12));
        if (std::string(op) == "fuse") c->add_option("--words", fa.words, "words file with two words")->required();
        if (std::string(op) == "pd") c->add_option("--d", fa.d, "length")->required();
        if (std::string(op) == "tn") c->add_option("--n", fa.n, "index n of T_n")->required();
        c->add_option("--emit", fa.emit, "write the result here");
        std::string o = op;
        c->callback([&, o] { action = [&, o](Run& r) { cmd_freeprod(r, o, fa); }; });
    }

    FusionArgs fu;
    double cb_bound = -1.0;
    auto* fus = app.add_subcommand("fusion", "fusion rings and categorical multipliers");
    fus->require_subcommand(1);
    for (const char* op : {"verify", "pair", "corner"}) {
        auto* c = fus->add_subcommand(op);
        c->add_option("ring", fu.ring, "fusion_ring file")->required();
        std::string o = op;
        if (o != "verify") {
            c->add_option("--theta", fu.theta, "vector file, one value per label")->required();
            c->add_option("--cb-bound", cb_bound, "claimed cb bound of theta");
        }
        if (o == "pair") c->add_option("--omega", fu.omega, "vector file")->required();
        if (o == "corner") {
            c->add_option("--f", fu.f, "vector file")->required();
            c->add_option("--g", fu.g, "vector file")->required();
        }
        c->callback([&, o] {
            action = [&, o](Run& r) {
                if (cb_bound >= 0.0) fu.cb_bound = cb_bound;
                cmd_fusion(r, o, fu);
            };
        });
    }

    auto* dbl = app.add_subcommand("double", "double crossed products from a matching");
    dbl->require_subcommand(1);
    for (const char* op : {"build", "check"}) {
        auto* c = dbl->add_subcommand(op);
        c->add_option("--matching", file, "matching file")->required();
        c->add_option("--emit", emit, "write the double's HopfData here");
        std::string o = op;
        c->callback([&, o] { action = [&, o](Run& r) { cmd_double(r, o, file, emit); }; });
    }

    bool files_only = false;
    auto* all = app.add_subcommand("report-all", "check every file in a corpus directory and run the acceptance suite");
    all->add_option("dir", file, "corpus directory")->required()->check(CLI::ExistingDirectory);
    all->add_flag("--files-only", files_only, "skip the acceptance suite");
    all->callback([&] { action = [&](Run& r) { cmd_report_all(r, file, files_only); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    for (int i = 0; i < argc; ++i) report.command += (i ? " " : "") + std::string(argv[i]);
    Run run{report};
    auto t0 = std::chrono::steady_clock::now();
    try {
        report.tolerance = tolerance_from_env();
        action(run);
    } catch (const Error& e) {
        if (e.kind() == "ParseError" || e.kind() == "IOError" || e.kind() == "ShapeMismatch") {
            err << "qg: " << e.what() << "\n";
            return 2;
        }
        run.check(std::string("error: ") + e.what(), e.residual() > 0.0 ? e.residual() : 1.0, 0.0);
    } catch (const fs::filesystem_error& e) {
        err << "qg: " << e.what() << "\n";
        return 2;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (as_json)
        out << io::emit(report.to_json());
    else
        out << report.to_text();
    if (!out_file.empty()) {
        try {
            io::write_file(out_file, report.to_json());
        } catch (const Error& e) {
            err << "qg: " << e.what() << "\n";
            return 2;
        }
    }
    return report.pass() ? 0 : 1;
}

}  // namespace qg
