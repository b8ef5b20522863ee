// hsym: command-line front end for B-splines, fractional h_z and the
// positivity / semigroup checks. Exit codes: 0 ok, 1 verification failed,
// 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hsym/hsym.hpp"

using json = nlohmann::ordered_json;
using namespace hsym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<double> parse_reals(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw InputError(std::string(what) + ": cannot parse '" + tok + "'");
        }
        if (used != tok.size()) throw InputError(std::string(what) + ": cannot parse '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InputError(std::string(what) + ": empty list");
    return out;
}

std::vector<long> parse_integers(const std::string& s, const char* what) {
    std::vector<long> out;
    for (double v : parse_reals(s, what)) {
        if (v != std::floor(v) || std::fabs(v) > 1e15) throw InputError(std::string(what) + ": integers required");
        out.push_back(static_cast<long>(v));
    }
    return out;
}

double parse_bound(const std::string& s) {
    if (s == "-inf") return -INFINITY;
    if (s == "inf" || s == "+inf") return INFINITY;
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("interval: cannot parse '" + s + "'");
    }
    if (used != s.size()) throw InputError("interval: cannot parse '" + s + "'");
    return v;
}

Interval parse_interval(const std::string& s) {
    if (s == "all") return {};
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw InputError("interval: expected 'all' or LO:HI");
    Interval iv{parse_bound(s.substr(0, colon)), parse_bound(s.substr(colon + 1))};
    if (!(iv.lo < iv.hi)) throw InputError("interval: need LO < HI");
    return iv;
}

// "100:10000:10x" -> 100, 1000, 10000
std::vector<long> parse_m_range(const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) f.push_back(tok);
    if (f.size() != 3 || f[2].empty() || f[2].back() != 'x')
        throw InputError("m-range: expected START:STOP:FACTORx");
    const long start = parse_integers(f[0], "m-range")[0], stop = parse_integers(f[1], "m-range")[0];
    const long factor = parse_integers(f[2].substr(0, f[2].size() - 1), "m-range")[0];
    if (start < 1 || stop < start || factor < 2) throw InputError("m-range: need 1 <= START <= STOP and FACTOR >= 2");
    std::vector<long> out;
    for (long m = start; m <= stop; m *= factor) out.push_back(m);
    return out;
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void write(std::ostream& os) const {
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_text(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct Output {
    bool json_mode = false;
    std::ostringstream text;
    json doc = json::object();
};

// ---------------------------------------------------------------------------

struct BsplineArgs {
    std::string knots;
    int grid = 11;
    std::string form = "truncated";
};

int run_bspline(const BsplineArgs& a, Output& out) {
    BsplineForm form;
    if (a.form == "symmetric") form = BsplineForm::Symmetric;
    else if (a.form == "truncated") form = BsplineForm::Truncated;
    else if (a.form == "determinant") form = BsplineForm::Determinant;
    else if (a.form == "recurrence") form = BsplineForm::Recurrence;
    else throw InputError("form must be one of symmetric, truncated, determinant, recurrence");
    if (a.grid < 2) throw InputError("grid must be at least 2");
    const KnotVector kv(parse_reals(a.knots, "knots"), form == BsplineForm::Recurrence
                                                           ? KnotVector::Multiplicity::Allowed
                                                           : KnotVector::Multiplicity::Distinct);
    Table t({"x", "F"});
    json rows = json::array();
    for (int i = 0; i < a.grid; ++i) {
        const double x = i == a.grid - 1 ? kv.back() : kv.front() + kv.range() * i / (a.grid - 1);
        const double f = eval_bspline(x, kv, form);
        t.add({num(x), num(f)});
        rows.push_back({{"x", x}, {"F", f}});
    }
    out.doc["knots"] = kv.vec();
    out.doc["form"] = a.form;
    out.doc["rows"] = rows;
    t.write(out.text);
    return kExitOk;
}

struct ChsArgs {
    double z = 0.0;
    double z_im = 0.0;
    std::string points;
    bool cross_check = false;
};

int run_chs(const ChsArgs& a, Output& out) {
    const auto pts = parse_reals(a.points, "points");
    const ComplexDegree z(a.z, a.z_im);
    const CHSResult r = h_evaluate(z, pts);
    std::vector<std::string> header{"re", "im", "path", "condition"};
    std::vector<std::string> row{num(r.value.real()), num(r.value.imag()), to_string(r.path), num(r.condition_estimate)};
    out.doc["z"] = {{"re", z.re}, {"im", z.im}};
    out.doc["points"] = pts;
    out.doc["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
    out.doc["path"] = to_string(r.path);
    out.doc["condition"] = r.condition_estimate;
    if (a.cross_check) {
        std::vector<double> knots(pts);
        std::sort(knots.begin(), knots.end());
        const cplx q = h_via_integral(z, KnotVector(knots));
        const double d = std::abs(q - r.value);
        header.insert(header.end(), {"integral_re", "integral_im", "discrepancy"});
        row.insert(row.end(), {num(q.real()), num(q.imag()), num(d)});
        out.doc["integral"] = {{"re", q.real()}, {"im", q.imag()}};
        out.doc["discrepancy"] = d;
    }
    Table t(header);
    t.add(row);
    t.write(out.text);
    return kExitOk;
}

struct VerifyArgs {
    std::string suite;
    std::optional<double> mu;
    std::optional<int> p;
    int q = 2;
    int n = 3;
    std::optional<int> samples;
    double z = 1.0;
    double z_im = 1.0;
    std::string knots = "0,1,2";
};

void suite_rows(const std::vector<SuiteCase>& cases, Output& out, bool& ok) {
    Table t({"case", "samples", "skipped", "violations", "worst_ratio", "pass", "witness"});
    json arr = json::array();
    for (const auto& c : cases) {
        t.add({c.label, std::to_string(c.samples), std::to_string(c.skipped), std::to_string(c.violations), num(c.worst),
               c.passed() ? "PASS" : "FAIL", csv_text(c.witness)});
        arr.push_back({{"case", c.label},
                       {"samples", c.samples},
                       {"skipped", c.skipped},
                       {"violations", c.violations},
                       {"worst_ratio", jnum(c.worst)},
                       {"pass", c.passed()},
                       {"witness", c.witness}});
        ok = ok && c.passed();
    }
    out.doc["cases"] = arr;
    t.write(out.text);
}

void sign_rows(const std::vector<SignCheckReport>& cases, Output& out, bool& ok) {
    Table t({"case", "samples", "skipped", "violations", "worst_margin", "pass", "witness"});
    json arr = json::array();
    for (const auto& c : cases) {
        t.add({c.label, std::to_string(c.samples), std::to_string(c.skipped), std::to_string(c.violations),
               num(c.worst_margin), c.passed() ? "PASS" : "FAIL", c.witness.empty() ? std::string() : csv_text(detail::tuple_string(c.witness))});
        arr.push_back({{"case", c.label},
                       {"samples", c.samples},
                       {"skipped", c.skipped},
                       {"violations", c.violations},
                       {"worst_margin", jnum(c.worst_margin)},
                       {"pass", c.passed()},
                       {"witness", c.witness}});
        ok = ok && c.passed();
    }
    out.doc["cases"] = arr;
    t.write(out.text);
}

int run_verify(const VerifyArgs& a, std::uint64_t seed, Output& out) {
    bool ok = true;
    out.doc["suite"] = a.suite;
    if (a.n < 1) throw InputError("n must be positive");
    if (a.suite == "theorem1") {
        const auto c = verify_theorem1(a.samples.value_or(200), seed);
        suite_rows({c}, out, ok);
        if (c.skipped_fraction() >= 0.2) ok = false;
    } else if (a.suite == "theorem2") {
        if (!a.mu) throw InputError("theorem2 needs --mu");
        const auto rep = verify_theorem2(*a.mu, a.n, a.samples.value_or(1000), seed);
        out.doc["class"] = to_string(rep.cls.kind);
        std::vector<SignCheckReport> cases = rep.regions;
        for (auto& c : cases) c.label = std::string(to_string(rep.cls.kind)) + " " + c.label;
        sign_rows(cases, out, ok);
    } else if (a.suite == "hunter") {
        double mu;
        if (a.mu) mu = *a.mu;
        else if (a.p) mu = 2.0 * *a.p;
        else throw InputError("hunter needs --p or --mu");
        const auto rep = verify_hunter(mu, a.n, a.samples.value_or(100000), seed);
        Table t({"mu", "n", "samples", "skipped", "violations", "min_value", "bound", "pass"});
        t.add({num(mu), std::to_string(a.n), std::to_string(rep.samples), std::to_string(rep.skipped),
               std::to_string(rep.violations), num(rep.min_value), num(rep.bound), rep.passed() ? "PASS" : "FAIL"});
        t.write(out.text);
        out.doc["cases"] = json::array({{{"mu", mu},
                                         {"n", a.n},
                                         {"samples", rep.samples},
                                         {"skipped", rep.skipped},
                                         {"violations", rep.violations},
                                         {"min_value", jnum(rep.min_value)},
                                         {"bound", rep.bound},
                                         {"pass", rep.passed()},
                                         {"witness", rep.witness}}});
        ok = rep.passed();
    } else if (a.suite == "prop2") {
        const ComplexDegree z(a.z, a.z_im);
        const auto w = spiral_witness(z, a.n);
        Table t({"a", "re", "im", "quadrant"});
        json arr = json::array();
        const char* names[4] = {"(+,+)", "(-,+)", "(-,-)", "(+,-)"};
        for (int k = 0; k < 4; ++k) {
            const cplx h = h_equal(z, w[k], a.n);
            t.add({num(w[k]), num(h.real()), num(h.imag()), names[k]});
            arr.push_back({{"a", w[k]}, {"re", h.real()}, {"im", h.imag()}, {"quadrant", names[k]}});
        }
        out.doc["cases"] = arr;
        t.write(out.text);
    } else if (a.suite == "ex1") {
        suite_rows(verify_ex1(a.n, a.samples.value_or(100), seed), out, ok);
    } else if (a.suite == "ex2") {
        if (!a.p) throw InputError("ex2 needs --p");
        const auto c = verify_ex2(*a.p, a.q, a.n, a.samples.value_or(100), seed);
        std::vector<int> parts(static_cast<std::size_t>(a.n));
        for (int i = 0; i < a.n; ++i) parts[i] = (a.n - 1 - i) * (a.q - 1);
        parts[0] += *a.p;
        const Partition lam(parts);
        out.doc["lambda"] = lam.parts();
        out.text << "lambda," << csv_text(lam.to_string()) << '\n';
        suite_rows({c}, out, ok);
    } else if (a.suite == "peano") {
        suite_rows(verify_peano(KnotVector(parse_reals(a.knots, "knots"))), out, ok);
    } else {
        throw InputError("unknown suite '" + a.suite + "'");
    }
    out.doc["passed"] = ok;
    return ok ? kExitOk : kExitFailed;
}

struct ComboArgs {
    std::string file;
    std::optional<std::string> interval;
};

CHSCombination load_combination(const std::string& path, const std::optional<std::string>& interval) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coefficient file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("coefficient file: ") + e.what());
    }
    if (!j.is_object()) throw InputError("coefficient file: expected an object");
    for (const auto& [key, _] : j.items())
        if (key != "kind" && key != "n" && key != "c" && key != "interval")
            throw InputError("coefficient file: unknown key '" + key + "'");
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const int n = j.at("n").get<int>();
        Interval iv;
        if (interval) iv = parse_interval(*interval);
        else if (j.contains("interval")) iv = parse_interval(j["interval"].get<std::string>());
        if (kind == "linear") return CHSCombination::make_linear(j.at("c").get<std::vector<double>>(), n, iv);
        if (kind == "product")
            return CHSCombination::make_product(j.at("c").get<std::vector<std::vector<double>>>(), n, iv);
        throw InputError("coefficient file: kind must be 'linear' or 'product'");
    } catch (const json::exception& e) {
        throw InputError(std::string("coefficient file: ") + e.what());
    }
}

int run_combo(const ComboArgs& a, std::uint64_t seed, Output& out) {
    const auto comb = load_combination(a.file, a.interval);
    PositivityVerdict v;
    if (comb.kind == CHSCombination::Kind::Linear) {
        v = theorem3_check(comb);
    } else {
        FalsificationOptions opt;
        opt.seed = seed;
        v = theorem4_check(comb, opt);
    }
    std::string witness;
    for (std::size_t i = 0; i < v.witness.size(); ++i) witness += (i ? ";" : "") + num(v.witness[i]);
    Table t({"status", "witness", "witness_exact", "sampled_min", "diagonal", "detail"});
    t.add({to_string(v.status), witness, v.witness_exact, v.sampled_min ? num(*v.sampled_min) : "",
           v.diagonal ? to_string(*v.diagonal) : "", csv_text(v.detail)});
    t.write(out.text);
    out.doc["kind"] = comb.kind == CHSCombination::Kind::Linear ? "linear" : "product";
    out.doc["status"] = to_string(v.status);
    out.doc["witness"] = v.witness;
    out.doc["witness_exact"] = v.witness_exact;
    out.doc["sampled_min"] = v.sampled_min ? jnum(*v.sampled_min) : json(nullptr);
    out.doc["diagonal"] = v.diagonal ? json(to_string(*v.diagonal)) : json(nullptr);
    out.doc["detail"] = v.detail;
    const bool ok = v.status == PositivityStatus::Positive || v.status == PositivityStatus::NotFalsified;
    return ok ? kExitOk : kExitFailed;
}

struct SemigroupArgs {
    std::string gens;
    std::optional<long> m;
    std::optional<std::string> m_range;
    bool histogram = false;
};

int run_semigroup(const SemigroupArgs& a, Output& out) {
    const GeneratorSet gs(parse_integers(a.gens, "gens"));
    std::vector<long> ms;
    if (a.m && a.m_range) throw InputError("give either --m or --m-range, not both");
    if (a.m) ms = {*a.m};
    else if (a.m_range) ms = parse_m_range(*a.m_range);
    else throw InputError("semigroup needs --m or --m-range");

    Table dist({"m", "total", "distance"});
    Table hist({"m", "length", "count"});
    json rows = json::array();
    for (long m : ms) {
        const auto d = length_multiset(m, gs);
        if (d.empty()) throw InputError("m = " + std::to_string(m) + " is not representable");
        const double s = compare_to_limit(d, gs);
        dist.add({std::to_string(m), std::to_string(d.total), num(s)});
        json row = {{"m", m}, {"total", d.total}, {"distance", s}};
        if (a.histogram) {
            json h = json::array();
            for (const auto& [len, count] : d.counts) {
                hist.add({std::to_string(m), std::to_string(len), std::to_string(count)});
                h.push_back({{"length", len}, {"count", count}});
            }
            row["histogram"] = h;
        }
        rows.push_back(row);
    }
    out.doc["gens"] = gs.gens();
    out.doc["rows"] = rows;
    dist.write(out.text);
    if (a.histogram) {
        out.text << '\n';
        hist.write(out.text);
    }
    return kExitOk;
}

// Fills options that were not given on the command line from a JSON object.
void apply_config(const json& cfg, CLI::App& app, CLI::App* sub) {
    if (!cfg.is_object()) throw InputError("config: expected a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt && sub && key == "suite") opt = sub->get_option_no_throw("suite");
        if (!opt || key == "config") throw InputError("config: unknown key '" + key + "'");
        if (opt->count() > 0) continue;  // flag wins
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            if (!value.get<bool>()) continue;
            text = "true";
        } else if (value.is_number_integer()) {
            text = std::to_string(value.get<long long>());
        } else if (value.is_number()) {
            text = num(value.get<double>());
        } else if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (!value[i].is_number()) throw InputError("config: '" + key + "' must be a list of numbers");
                text += (i ? "," : "") + num(value[i].get<double>());
            }
        } else {
            throw InputError("config: unsupported value for '" + key + "'");
        }
        opt->add_result(text);
        opt->run_callback();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"B-splines, fractional complete homogeneous symmetric polynomials and related checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "csv";
    std::string output_path;
    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output_path, "write to PATH instead of stdout");
    app.add_option("--seed", seed_flag, "random seed (default 20240229, or $HSYM_SEED)");
    app.add_option("--config", config_path, "JSON file with option values; flags take precedence");

    // required options may also come from --config, so they are checked after merging
    std::vector<CLI::Option*> required;

    BsplineArgs ba;
    auto* bs = app.add_subcommand("bspline", "tabulate F(x; knots) on a uniform grid");
    required.push_back(bs->add_option("--knots", ba.knots, "comma-separated knots"));
    bs->add_option("--grid", ba.grid, "number of grid points on [a_1, a_n]");
    bs->add_option("--form", ba.form, "symmetric, truncated, determinant or recurrence");

    ChsArgs ca;
    auto* ch = app.add_subcommand("chs", "evaluate h_z at a point tuple");
    required.push_back(ch->add_option("--z", ca.z, "real part of the degree"));
    ch->add_option("--z-im", ca.z_im, "imaginary part of the degree");
    required.push_back(ch->add_option("--points", ca.points, "comma-separated points"));
    ch->add_flag("--cross-check", ca.cross_check, "also evaluate the integral representation");

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "run a verification suite");
    required.push_back(ve->add_option("suite", va.suite, "theorem1, theorem2, hunter, prop2, ex1, ex2 or peano"));
    ve->add_option("--mu", va.mu, "real degree");
    ve->add_option("--p", va.p, "integer p");
    ve->add_option("--q", va.q, "denominator q");
    ve->add_option("--n", va.n, "number of variables");
    ve->add_option("--samples", va.samples, "random samples");
    ve->add_option("--z", va.z, "real part of a complex degree (prop2)");
    ve->add_option("--z-im", va.z_im, "imaginary part of a complex degree (prop2)");
    ve->add_option("--knots", va.knots, "knots for the peano suite");

    ComboArgs co;
    auto* cb = app.add_subcommand("combo", "decide positivity of a combination of h_j");
    required.push_back(cb->add_option("--file", co.file, "coefficient JSON file"));
    cb->add_option("--interval", co.interval, "'all' or LO:HI (inf allowed)");

    SemigroupArgs sa;
    auto* sg = app.add_subcommand("semigroup", "factorization lengths against the limit density");
    required.push_back(sg->add_option("--gens", sa.gens, "comma-separated generators"));
    sg->add_option("--m", sa.m, "element");
    sg->add_option("--m-range", sa.m_range, "START:STOP:FACTORx");
    sg->add_flag("--histogram", sa.histogram, "print the length histogram");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw InputError("cannot open config '" + config_path + "'");
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw InputError(std::string("config: ") + e.what());
            }
            apply_config(cfg, app, sub);
        }
        for (CLI::Option* opt : required)
            if (sub->get_option_no_throw(opt->get_name()) == opt && opt->count() == 0)
                throw InputError(opt->get_name() + " is required");
        std::uint64_t seed = kDefaultSeed;
        if (seed_flag) {
            seed = *seed_flag;
        } else if (const char* env = std::getenv("HSYM_SEED")) {
            char* end = nullptr;
            seed = std::strtoull(env, &end, 10);
            if (!*env || *end) throw InputError("HSYM_SEED must be an unsigned integer");
        }

        Output out;
        out.json_mode = format == "json";
        out.doc["schema"] = "1";
        out.doc["command"] = sub->get_name();
        int rc;
        if (sub == bs) rc = run_bspline(ba, out);
        else if (sub == ch) rc = run_chs(ca, out);
        else if (sub == ve) {
            out.doc["seed"] = seed;
            rc = run_verify(va, seed, out);
        } else if (sub == cb) rc = run_combo(co, seed, out);
        else rc = run_semigroup(sa, out);

        const std::string text = out.json_mode ? out.doc.dump(2) + "\n" : out.text.str();
        if (output_path.empty()) {
            std::cout << text << std::flush;
        } else {
            std::ofstream f(output_path, std::ios::binary);
            if (!f) throw InputError("cannot write '" + output_path + "'");
            f << text;
        }
        return rc;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}
