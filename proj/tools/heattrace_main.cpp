// Command-line front end: spectrum ingestion, expansion and verification
// runs, classification, exactness radius, special-function spot checks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heattrace/catalog.hpp"
#include "heattrace/dirichlet.hpp"
#include "heattrace/expansion.hpp"
#include "heattrace/specfun.hpp"
#include "heattrace/tauberian.hpp"

using namespace heattrace;
using json = nlohmann::json;

namespace {

// ----------------------------------------------------------------------
// deterministic serialisation: fixed field order, %.17g floats
// ----------------------------------------------------------------------

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_csv(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class JsonWriter {
public:
    JsonWriter& key(const std::string& k) {
        comma();
        os_ << '"' << k << "\":";
        fresh_ = true;
        return *this;
    }
    JsonWriter& value(double v) { return raw(fmt(v)); }
    JsonWriter& value(long v) { return raw(std::to_string(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(const std::string& s) {
        std::string esc;
        for (char c : s) {
            if (c == '"' || c == '\\') esc += '\\';
            esc += c;
        }
        return raw('"' + esc + '"');
    }
    JsonWriter& begin_obj() { return raw_open("{"); }
    JsonWriter& end_obj() { return raw_close("}"); }
    JsonWriter& begin_arr() { return raw_open("["); }
    JsonWriter& end_arr() { return raw_close("]"); }
    std::string str() const { return os_.str(); }

private:
    JsonWriter& raw(const std::string& s) {
        comma();
        os_ << s;
        fresh_ = false;
        return *this;
    }
    JsonWriter& raw_open(const char* c) {
        comma();
        os_ << c;
        fresh_ = true;
        return *this;
    }
    JsonWriter& raw_close(const char* c) {
        os_ << c;
        fresh_ = false;
        return *this;
    }
    void comma() {
        if (!fresh_) os_ << ',';
        fresh_ = false;
    }
    std::ostringstream os_;
    bool fresh_ = true;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
}

// ----------------------------------------------------------------------
// spectrum file ingestion (JSON; numbers plain or "p/q" strings)
// ----------------------------------------------------------------------

Rational json_rational(const json& j, const std::string& field) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number()) return Rational(j.get<double>());
    } catch (const std::exception&) {
    }
    fail(errc::malformed_spec, "field '" + field + "' is not a number or \"p/q\" string");
}

Poly json_poly(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) fail(errc::malformed_spec, "field '" + field + "' must be a nonempty array");
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(json_rational(v, field));
    return Poly(std::move(c));
}

SpectrumSpec parse_spec_json(const json& j) {
    if (!j.contains("kind")) fail(errc::malformed_spec, "missing field 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    SpectrumSpec spec;
    if (kind == "polynomial" || kind == "Polynomial") {
        PolynomialSpectrum ps;
        if (!j.contains("a_coeffs")) fail(errc::malformed_spec, "missing field 'a_coeffs'");
        if (!j.contains("b_coeffs")) fail(errc::malformed_spec, "missing field 'b_coeffs'");
        ps.a = json_poly(j.at("a_coeffs"), "a_coeffs");
        ps.b = json_poly(j.at("b_coeffs"), "b_coeffs");
        ps.n_start = j.value("n_start", 0);
        spec.kind = std::move(ps);
    } else if (kind == "exponential" || kind == "Exponential") {
        ExponentialSpectrum es;
        if (!j.contains("q")) fail(errc::malformed_spec, "missing field 'q'");
        Rational q = json_rational(j.at("q"), "q");
        es.q = to_double(q);
        es.q_exact = q;
        if (j.contains("p_coeffs")) es.p = json_poly(j.at("p_coeffs"), "p_coeffs");
        es.power_r = j.value("power_r", 1.0);
        if (j.contains("mult_power")) es.mult_power = json_rational(j.at("mult_power"), "mult_power");
        spec.kind = std::move(es);
    } else if (kind == "explicit" || kind == "Explicit") {
        ExplicitSpectrum xs;
        if (!j.contains("pairs")) fail(errc::malformed_spec, "missing field 'pairs'");
        for (const auto& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) fail(errc::malformed_spec, "each entry of 'pairs' is [lambda, M]");
            xs.pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        if (j.contains("tail")) {
            const auto& t = j.at("tail");
            TailDescriptor td;
            std::string tk = t.value("kind", "power");
            if (tk == "power") td.kind = TailDescriptor::Kind::power;
            else if (tk == "exponential") td.kind = TailDescriptor::Kind::exponential;
            else if (tk == "exp_power") td.kind = TailDescriptor::Kind::exp_power;
            else fail(errc::malformed_spec, "tail.kind must be power|exponential|exp_power");
            td.c = t.value("c", 1.0);
            td.g = t.value("g", 1.0);
            td.base = t.value("base", 2.0);
            xs.tail = td;
        }
        spec.kind = std::move(xs);
    } else {
        fail(errc::malformed_spec, "kind must be polynomial|exponential|explicit");
    }
    if (j.contains("scale")) spec.scale = json_rational(j.at("scale"), "scale");
    if (j.contains("shift")) spec.shift = json_rational(j.at("shift"), "shift");
    return make_spectrum(std::move(spec));
}

struct SourceResult {
    SpectrumSpec spec;
    std::vector<std::pair<double, double>> kernel_head;
    std::optional<CatalogEntry> entry;
};

SourceResult load_source(const std::string& spec_path, const std::string& catalog_name) {
    if (!catalog_name.empty()) {
        CatalogEntry e = catalog_entry(catalog_name);
        return {e.spec, e.kernel_head, e};
    }
    if (spec_path.empty()) fail(errc::malformed_spec, "give --spec PATH or --catalog NAME");
    std::ifstream f(spec_path);
    if (!f) fail(errc::malformed_spec, "cannot open spec file '" + spec_path + "'");
    json j;
    try {
        f >> j;
    } catch (const std::exception& ex) {
        fail(errc::malformed_spec, std::string("spec file is not valid JSON: ") + ex.what());
    }
    return {parse_spec_json(j), {}, std::nullopt};
}

const char* kind_name(ConvergenceKind k) {
    switch (k) {
    case ConvergenceKind::exact: return "Exact";
    case ConvergenceKind::almost_exact: return "AlmostExact";
    case ConvergenceKind::asymptotic_only: return "AsymptoticOnly";
    case ConvergenceKind::divergent: return "Divergent";
    case ConvergenceKind::no_continuation: return "NoContinuation";
    }
    return "?";
}

const char* prov_name(Provenance p) {
    switch (p) {
    case Provenance::exact_rational: return "ExactRational";
    case Provenance::exact_special: return "ExactSpecial";
    case Provenance::numeric_cauchy: return "NumericCauchy";
    }
    return "?";
}

void write_classification(JsonWriter& w, const Classification& c) {
    w.key("classification").begin_obj();
    w.key("kind").value(std::string(kind_name(c.kind)));
    w.key("T").value(c.T);
    w.key("absolutely_exact").value(c.absolutely_exact);
    if (c.f_inf.kind == FInfDescriptor::Kind::theta_closed_form) {
        w.key("F_inf").begin_obj();
        w.key("form").value(std::string(c.f_inf.half_offset ? "theta4" : "theta3"));
        w.key("a").value(c.f_inf.a);
        w.key("coeff").value(c.f_inf.coeff);
        w.key("sample_at_1").value(c.f_inf.sample_at_1);
        w.end_obj();
    } else if (c.f_inf.kind == FInfDescriptor::Kind::numeric) {
        w.key("F_inf").begin_obj();
        w.key("form").value(std::string("numeric"));
        w.key("sample_at_1").value(c.f_inf.sample_at_1);
        w.end_obj();
    }
    w.key("evidence").value(c.evidence);
    w.end_obj();
}

void write_tauberian(JsonWriter& w, const TauberianReport& rep) {
    w.key("tauberian").begin_obj();
    w.key("L").value(rep.L);
    w.key("slowly_varying").begin_obj();
    const char* kinds[] = {"constant", "log_power", "unknown"};
    w.key("kind").value(std::string(kinds[static_cast<int>(rep.F.kind)]));
    w.key("scale").value(rep.F.scale);
    w.key("exponent").value(rep.F.exponent);
    w.end_obj();
    w.key("slow_variation_ok").value(rep.slow_variation_ok);
    w.key("note").value(rep.note);
    w.key("ratio_samples").begin_arr();
    for (auto& [t, r] : rep.ratio_samples) {
        w.begin_obj();
        w.key("t").value(t);
        w.key("ratio").value(r);
        w.end_obj();
    }
    w.end_arr();
    w.end_obj();
}

struct GridConfig {
    std::vector<double> ts;
    std::string grid; // min:max:points[:log|linear]
    std::vector<double> resolve() const {
        if (!grid.empty()) {
            std::vector<std::string> part;
            std::stringstream ss(grid);
            std::string tok;
            while (std::getline(ss, tok, ':')) part.push_back(tok);
            if (part.size() < 3) fail(errc::malformed_spec, "--t-grid wants min:max:points[:log|linear]");
            double lo = std::stod(part[0]), hi = std::stod(part[1]);
            int n = std::stoi(part[2]);
            bool logsp = part.size() > 3 ? part[3] == "log" : false;
            if (!(lo > 0) || n < 1) fail(errc::malformed_spec, "--t-grid needs t_min > 0 and points >= 1");
            std::vector<double> out;
            for (int i = 0; i < n; ++i) {
                double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
                out.push_back(logsp ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
            }
            return out;
        }
        for (double t : ts)
            if (!(t > 0)) fail(errc::malformed_spec, "t values must be positive");
        return ts;
    }
};

int run_expand(const SourceResult& src, int strips, const std::string& format, const std::string& out) {
    HeatExpansion exp;
    try {
        exp = build_expansion(src.spec, strips, src.kernel_head);
    } catch (const Error& e) {
        if (e.code() == errc::unsupported_class || e.code() == errc::not_trace_class) {
            // no continuation: fall back to the Tauberian leading-order report
            JsonWriter w;
            w.begin_obj();
            w.key("classification").begin_obj();
            w.key("kind").value(std::string("NoContinuation"));
            w.key("detail").value(std::string(e.what()));
            w.end_obj();
            auto lac = classify_lacunary(src.spec);
            w.key("lacunary").value(lac.lacunary);
            write_tauberian(w, leading_order(src.spec));
            w.end_obj();
            emit(w.str(), out);
            return 2;
        }
        throw;
    }

    if (format == "csv") {
        std::ostringstream os;
        os << "strip,s0_re,s0_im,log_degree,k,coeff_re,coeff_im,exact,provenance\n";
        for (size_t i = 0; i < exp.strips.size(); ++i)
            for (const auto& cell : exp.strips[i].cells)
                for (const auto& term : cell)
                    for (size_t k = 0; k < term.log_coeffs.size(); ++k) {
                        os << i + 1 << ',' << fmt_csv(term.s0.real()) << ',' << fmt_csv(term.s0.imag()) << ','
                           << term.log_coeffs.size() - 1 << ',' << k << ',' << fmt_csv(term.log_coeffs[k].real())
                           << ',' << fmt_csv(term.log_coeffs[k].imag()) << ','
                           << (term.exact_coeffs ? rational_string((*term.exact_coeffs)[k]) : std::string()) << ','
                           << prov_name(term.provenance) << '\n';
                    }
        std::string s = os.str();
        s.pop_back();
        emit(s, out);
        return 0;
    }

    JsonWriter w;
    w.begin_obj();
    write_classification(w, exp.classification);
    w.key("strips").begin_arr();
    for (const auto& strip : exp.strips) {
        w.begin_obj();
        w.key("line_R").value(strip.line_R);
        w.key("bound").begin_obj();
        w.key("C").value(strip.bound.C);
        w.key("eps").value(strip.bound.eps);
        w.key("fit_quality").value(strip.bound.fit_quality);
        w.key("analytic").value(strip.bound.analytic);
        w.end_obj();
        w.key("terms").begin_arr();
        for (const auto& cell : strip.cells)
            for (const auto& term : cell) {
                w.begin_obj();
                w.key("s0_re").value(term.s0.real());
                w.key("s0_im").value(term.s0.imag());
                w.key("log_degree").value(static_cast<int>(term.log_coeffs.size()) - 1);
                w.key("coeffs").begin_arr();
                for (auto& c : term.log_coeffs) {
                    w.begin_obj();
                    w.key("re").value(c.real());
                    w.key("im").value(c.imag());
                    w.end_obj();
                }
                w.end_arr();
                if (term.exact_coeffs) {
                    w.key("coeffs_exact").begin_arr();
                    for (auto& c : *term.exact_coeffs) w.value(rational_string(c));
                    w.end_arr();
                }
                w.key("provenance").value(std::string(prov_name(term.provenance)));
                w.end_obj();
            }
        w.end_arr();
        w.end_obj();
    }
    w.end_arr();
    w.key("truncation_head").begin_arr();
    for (auto& [lam, m] : exp.truncation_head()) {
        w.begin_obj();
        w.key("lambda").value(lam);
        w.key("M").value(m);
        w.end_obj();
    }
    w.end_arr();
    w.key("exp_shift").value(exp.exp_shift);
    w.end_obj();
    emit(w.str(), out);
    return 0;
}

int run_verify(const SourceResult& src, int strips, const GridConfig& grid, double tol,
               const std::string& out) {
    std::vector<double> ts = grid.resolve();
    if (ts.empty()) fail(errc::malformed_spec, "verify needs --t or --t-grid");
    HeatExpansion exp = build_expansion(src.spec, strips, src.kernel_head);

    // inside the exactness window more strips certifiably tighten the remainder
    if (tol > 0 && exp.classification.kind == ConvergenceKind::exact) {
        double t_max = *std::max_element(ts.begin(), ts.end());
        int n = strips;
        while (n < 512 && t_max < exp.classification.T) {
            const auto& b = exp.strips.back().bound;
            double bound = b.C * std::pow(t_max, b.R) / (b.eps * std::numbers::pi);
            if (bound <= tol) break;
            n *= 2;
            exp = build_expansion(src.spec, n, src.kernel_head);
        }
    }
    int k = static_cast<int>(exp.strips.size());

    std::ostringstream os;
    os << "t,direct";
    for (int i = 1; i <= k; ++i) os << ",partial_" << i;
    for (int i = 1; i <= k; ++i) os << ",err_" << i;
    os << "\n";
    bool violated = false;
    for (double t : ts) {
        double direct = 0;
        for (auto& [lam, m] : src.kernel_head) direct += m * std::exp(-lam * t);
        direct += heat_trace_direct(src.spec, t, 1e-13);
        os << fmt_csv(t) << ',' << fmt_csv(direct);
        std::vector<double> partial(k);
        for (int i = 1; i <= k; ++i) {
            partial[i - 1] = evaluate_expansion(exp, t, i);
            os << ',' << fmt_csv(partial[i - 1]);
        }
        for (int i = 1; i <= k; ++i) os << ',' << fmt_csv(std::abs(partial[i - 1] - direct));
        os << "\n";
        if (tol > 0 && std::abs(partial[k - 1] - direct) > tol * std::max(1.0, std::abs(direct)))
            violated = true;
    }
    std::string s = os.str();
    s.pop_back();
    emit(s, out);
    return violated ? 1 : 0;
}

int run_classify(const SourceResult& src, int strips, const std::string& out) {
    try {
        HeatExpansion exp = build_expansion(src.spec, strips, src.kernel_head);
        JsonWriter w;
        w.begin_obj();
        write_classification(w, exp.classification);
        if (src.entry && src.entry->expected.classification) {
            w.key("expected").value(std::string(kind_name(*src.entry->expected.classification)));
            w.key("matches_expected").value(exp.classification.kind == *src.entry->expected.classification);
        }
        w.end_obj();
        emit(w.str(), out);
        return 0;
    } catch (const Error& e) {
        if (e.code() != errc::unsupported_class && e.code() != errc::not_trace_class) throw;
        JsonWriter w;
        w.begin_obj();
        w.key("classification").begin_obj();
        w.key("kind").value(std::string("NoContinuation"));
        w.key("detail").value(std::string(e.what()));
        w.end_obj();
        auto lac = classify_lacunary(src.spec);
        w.key("lacunary").value(lac.lacunary);
        write_tauberian(w, leading_order(src.spec));
        w.end_obj();
        emit(w.str(), out);
        return 2;
    }
}

int run_radius(const SourceResult& src, int strips, const std::string& out) {
    HeatExpansion exp = build_expansion(src.spec, strips, src.kernel_head);
    std::vector<RemainderBound> bounds;
    for (const auto& s : exp.strips) bounds.push_back(s.bound);
    double numeric = exactness_radius(bounds);
    double analytic = exp.classification.kind == ConvergenceKind::exact ? exp.classification.T
                                                                        : std::numeric_limits<double>::quiet_NaN();
    JsonWriter w;
    w.begin_obj();
    w.key("analytic_T").value(analytic);
    w.key("numeric_T").value(numeric);
    if (std::isfinite(analytic) && std::isfinite(numeric))
        w.key("relative_gap").value(std::abs(numeric - analytic) / analytic);
    w.key("strips").value(strips);
    w.end_obj();
    emit(w.str(), out);
    return 0;
}

int run_specfun(const std::string& fn, const std::vector<std::string>& args, const std::string& out) {
    namespace sf = specfun;
    JsonWriter w;
    w.begin_obj();
    w.key("function").value(fn);
    auto arg = [&](size_t i) { return std::stod(args.at(i)); };
    if (fn == "gamma") {
        std::complex<double> v = sf::gamma(std::complex<double>(arg(0), args.size() > 1 ? arg(1) : 0.0));
        w.key("re").value(v.real());
        w.key("im").value(v.imag());
    } else if (fn == "zeta") {
        std::complex<double> v = sf::riemann_zeta({arg(0), args.size() > 1 ? arg(1) : 0.0});
        w.key("re").value(v.real());
        w.key("im").value(v.imag());
    } else if (fn == "hurwitz") {
        std::complex<double> v = sf::hurwitz_zeta({arg(0), args.size() > 2 ? arg(2) : 0.0}, arg(1));
        w.key("re").value(v.real());
        w.key("im").value(v.imag());
    } else if (fn == "theta3") {
        w.key("value").value(sf::theta3(arg(0)));
    } else if (fn == "bernoulli") {
        w.key("value").value(rational_string(sf::bernoulli_number(static_cast<unsigned>(std::stoul(args.at(0))))));
    } else if (fn == "eulerian") {
        w.key("value").value(rational_string(
            Rational(sf::eulerian_number(static_cast<unsigned>(std::stoul(args.at(0))),
                                         static_cast<unsigned>(std::stoul(args.at(1)))))));
    } else {
        fail(errc::unknown_name, "specfun knows gamma, zeta, hurwitz, theta3, bernoulli, eulerian");
    }
    w.end_obj();
    emit(w.str(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    // dispatched by hand so that bare negative numbers pass through, e.g.
    //   heattrace specfun zeta -1
    if (argc >= 2 && std::string(argv[1]) == "specfun") {
        std::string fn, out;
        std::vector<std::string> args;
        for (int i = 2; i < argc; ++i) {
            std::string a = argv[i];
            if (a.rfind("--out=", 0) == 0) out = a.substr(6);
            else if (a == "--out" && i + 1 < argc) out = argv[++i];
            else if (fn.empty()) fn = a;
            else args.push_back(a);
        }
        try {
            if (fn.empty()) fail(errc::unknown_name, "specfun wants a function name and arguments");
            return run_specfun(fn, args, out);
        } catch (const Error& e) {
            std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    CLI::App app{"heat-trace expansions from spectral data"};
    app.require_subcommand(1);

    std::string spec_path, catalog_name, format = "json", out_path;
    int strips = 8, depth = 12;
    double tol = 0;
    GridConfig grid;

    auto add_common = [&](CLI::App* cmd, bool wants_t) {
        cmd->add_option("--spec", spec_path, "spectrum description file (JSON)");
        cmd->add_option("--catalog", catalog_name, "catalog name, e.g. sphere_absD:3");
        cmd->add_option("--strips", strips, "number of expansion strips");
        cmd->add_option("--depth", depth, "binomial reduction depth");
        cmd->add_option("--tol", tol, "tolerance for certified checks");
        cmd->add_option("--format", format, "json|csv");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        if (wants_t) {
            cmd->add_option("--t", grid.ts, "evaluation points");
            cmd->add_option("--t-grid", grid.grid, "min:max:points[:log|linear]");
        }
    };

    auto* c_expand = app.add_subcommand("expand", "residue expansion, classification, bounds");
    add_common(c_expand, false);
    auto* c_verify = app.add_subcommand("verify", "expansion partial sums against direct summation");
    add_common(c_verify, true);
    auto* c_classify = app.add_subcommand("classify", "convergence classification only");
    add_common(c_classify, false);
    auto* c_radius = app.add_subcommand("radius", "analytic and numeric exactness radius");
    add_common(c_radius, false);
    auto* c_catalog = app.add_subcommand("catalog", "list or show named spectra");
    std::vector<std::string> catalog_args;
    c_catalog->add_option("args", catalog_args, "list | show <name>");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_catalog->parsed()) {
            if (catalog_args.empty() || catalog_args[0] == "list") {
                JsonWriter w;
                w.begin_obj().key("entries").begin_arr();
                for (const auto& n : catalog_names()) w.value(n);
                w.end_arr().end_obj();
                emit(w.str(), out_path);
                return 0;
            }
            if (catalog_args[0] == "show" && catalog_args.size() > 1) {
                CatalogEntry e = catalog_entry(catalog_args[1]);
                JsonWriter w;
                w.begin_obj();
                w.key("name").value(e.name);
                w.key("description").value(e.description);
                if (e.expected.classification)
                    w.key("expected_classification").value(std::string(kind_name(*e.expected.classification)));
                w.key("kernel_head").begin_arr();
                for (auto& [lam, m] : e.kernel_head) {
                    w.begin_obj();
                    w.key("lambda").value(lam);
                    w.key("M").value(m);
                    w.end_obj();
                }
                w.end_arr();
                w.end_obj();
                emit(w.str(), out_path);
                return 0;
            }
            std::cerr << "catalog wants: list | show <name>\n";
            return 1;
        }
        SourceResult src = load_source(spec_path, catalog_name);
        if (c_expand->parsed()) return run_expand(src, strips, format, out_path);
        if (c_verify->parsed()) return run_verify(src, strips, grid, tol, out_path);
        if (c_classify->parsed()) return run_classify(src, strips, out_path);
        if (c_radius->parsed()) return run_radius(src, strips, out_path);
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
