// wplcount: exact counting over the two module-category presentations of a
// weighted projective line.
//
// Subcommands: kac, count, volume, nil-volume, euler, torsion-check,
// nil-check, stratum-check, suite.  Every number printed is exact: counts
// are integers, volumes are "num/den" strings.  Outputs are deterministic
// for a fixed config; --workers only changes wall time, never a value.
//
// Dimension vectors follow the vertex order of the presentations: source,
// then the length-two sink, then the arm vertices arm by arm.  Parameter
// values (--lambda) are small integers: the element indices used for the
// run's field, mapped through Z -> F_q when a command samples several
// fields at once.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpl/kacpoly.hpp"
#include "wpl/series.hpp"
#include "wpl/suite.hpp"
#include "wpl/torsionpair.hpp"

using namespace wpl;
using nlohmann::json;

namespace {

json json_int(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (lo <= v && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

json json_rat(const Rat& r) { return rat_to_string(r); }

json json_class(const KClass& c) {
    return {{"e", c.e}, {"delta", c.delta}, {"arms", c.arms}};
}

struct Options {
    std::string algebra = "canonical";
    std::vector<unsigned> p;
    std::vector<long long> lambda;
    unsigned long field = 0;
    std::vector<unsigned long> fields;
    DimVec dim;
    DimVec bound;
    unsigned workers = 1;
    long long cap = 0;  // 0: library default, or WPLCOUNT_CAP if set
    std::string out;
    std::string config;
};

void add_algebra_flags(CLI::App* sub, Options& o) {
    sub->add_option("--algebra", o.algebra, "canonical or squid")
        ->check(CLI::IsMember({"canonical", "squid"}));
    sub->add_option("--p", o.p, "weights, e.g. 2,2,2")->delimiter(',');
    sub->add_option("--lambda", o.lambda, "parameter values for arms 3..N")->delimiter(',');
    sub->add_option("--config", o.config, "JSON config record; flags override its fields");
}

void add_run_flags(CLI::App* sub, Options& o) {
    sub->add_option("--workers", o.workers, "enumeration threads (never changes results)");
    sub->add_option("--cap", o.cap, "tuple and span cap (default, or $WPLCOUNT_CAP)");
    sub->add_option("--out", o.out, "also write the report to this file");
}

bool was_set(const CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

// The config record fills any algebra/p/lambda/field/dim the user left off
// the command line.
void apply_config(const CLI::App* sub, Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw std::invalid_argument("config: cannot open " + o.config);
    json c;
    try {
        c = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + std::string(e.what()));
    }
    if (c.contains("algebra") && !was_set(sub, "--algebra"))
        o.algebra = c["algebra"].get<std::string>();
    if (c.contains("p") && !was_set(sub, "--p")) o.p = c["p"].get<std::vector<unsigned>>();
    if (c.contains("lambda") && !was_set(sub, "--lambda"))
        o.lambda = c["lambda"].get<std::vector<long long>>();
    if (c.contains("field") && !was_set(sub, "--field")) {
        unsigned long q = 1;
        const unsigned ch = c["field"].at("characteristic").get<unsigned>();
        const unsigned dg = c["field"].at("degree").get<unsigned>();
        for (unsigned i = 0; i < dg; ++i) q *= ch;
        o.field = q;
    }
    if (c.contains("dim") && !was_set(sub, "--dim")) o.dim = c["dim"].get<DimVec>();
}

EnumOptions enum_options(const Options& o) {
    EnumOptions opt;
    opt.workers = o.workers;
    long long cap = o.cap;
    if (cap == 0)
        if (const char* env = std::getenv("WPLCOUNT_CAP")) cap = std::atoll(env);
    if (cap > 0) {
        opt.tuple_cap = cap;
        opt.span_cap = std::uint64_t(cap);
    }
    return opt;
}

AlgebraKind kind_of(const std::string& s) {
    return s == "squid" ? AlgebraKind::squid : AlgebraKind::canonical;
}

FieldPtr field_for(unsigned long q) {
    const auto [ch, dg] = parse_prime_power(q);
    return make_field(ch, dg);
}

std::vector<Fel> lambda_elements(const FieldPtr& F, const std::vector<long long>& values) {
    std::vector<Fel> out;
    out.reserve(values.size());
    for (long long v : values) {
        if (v < 0 || (unsigned long long)v >= F->order())
            throw std::invalid_argument("lambda: " + std::to_string(v) +
                                        " is not an element index of a field of order " +
                                        std::to_string(F->order()));
        out.push_back(Fel(v));
    }
    return out;
}

Presentation presentation_for(const Options& o, FieldPtr F) {
    if (o.p.empty()) throw std::invalid_argument("--p is required (flag or config)");
    const std::vector<Fel> lam = lambda_elements(F, o.lambda);
    return kind_of(o.algebra) == AlgebraKind::canonical ? canonical_presentation(F, o.p, lam)
                                                        : squid_presentation(F, o.p, lam);
}

void require_dim(const Presentation& A, const DimVec& d, const char* flag) {
    if (d.size() != A.num_vertices())
        throw std::invalid_argument(std::string(flag) + ": expected " +
                                    std::to_string(A.num_vertices()) +
                                    " entries (source, sink, then arm vertices), got " +
                                    std::to_string(d.size()));
}

void deliver(const json& out, const std::string& path) {
    std::cout << out.dump(2) << '\n';
    if (path.empty()) return;
    std::ofstream f(path);
    f << out.dump(2) << '\n';
    if (!f) throw std::runtime_error("failed to write " + path);
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// ---------------------------------------------------------------- count family

enum class CountTask { abs_indec, volume, nil };

int run_count(const Options& o, CountTask task) {
    if (o.field == 0) throw std::invalid_argument("--field is required (flag or config)");
    const EnumOptions opt = enum_options(o);
    const Presentation A = presentation_for(o, field_for(o.field));
    require_dim(A, o.dim, "--dim");

    const auto t0 = std::chrono::steady_clock::now();
    json out{{"q", o.field}, {"dim", o.dim}};
    switch (task) {
        case CountTask::abs_indec:
            out["value"] = json_int(count_abs_indec(A, o.dim, opt));
            out["solutions"] = json_int(count_solutions(A, o.dim, opt));
            break;
        case CountTask::volume: {
            const Int sols = count_solutions(A, o.dim, opt);
            out["value"] = json_rat(Rat(sols) / Rat(gl_order(o.dim, o.field)));
            out["solutions"] = json_int(sols);
            break;
        }
        case CountTask::nil: {
            const Rat vol = nil_volume(A, o.dim, opt);
            const Rat pairs = vol * Rat(gl_order(o.dim, o.field));  // exact by construction
            out["value"] = json_rat(vol);
            out["solutions"] = json_int(rat_num(pairs));
            break;
        }
    }
    out["elapsed_ms"] = ms_since(t0);
    deliver(out, o.out);
    return 0;
}

// ---------------------------------------------------------------- kac

void write_kac_csv(const std::string& path, const DimVec& d, const KacPolynomial& poly) {
    std::ofstream f(path);
    f << "dim";
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i) f << ",c" << i;
    f << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) f << (i ? " " : "") << d[i];
    for (const Int& c : poly.coeffs) f << ',' << c;
    f << '\n';
    if (!f) throw std::runtime_error("failed to write " + path);
}

int run_kac(const Options& o, unsigned long confirm) {
    if (o.fields.empty()) throw std::invalid_argument("--fields is required");
    if (o.p.empty()) throw std::invalid_argument("--p is required (flag or config)");
    const EnumOptions opt = enum_options(o);
    const AlgebraKind kind = kind_of(o.algebra);

    const auto samples = sample_counts(kind, o.p, o.lambda, o.dim, o.fields, opt);
    const KacPolynomial poly = interpolate(kind, o.p, o.dim, samples);

    json jsamples = json::array();
    for (const KacSample& s : samples) jsamples.push_back({s.q, json_int(s.value)});
    json jcoeffs = json::array();
    for (const Int& c : poly.coeffs) jcoeffs.push_back(json_int(c));
    json out{{"dim", o.dim},
             {"samples", jsamples},
             {"polynomial", jcoeffs},
             {"nonnegative", poly.nonnegative()}};

    bool ok = true;
    if (confirm != 0) {
        const Int counted = sample_counts(kind, o.p, o.lambda, o.dim, {confirm}, opt)[0].value;
        const Int predicted = poly.eval(Int(confirm));
        ok = counted == predicted;
        out["confirm"] = {{"q", confirm},
                          {"predicted", json_int(predicted)},
                          {"counted", json_int(counted)},
                          {"pass", ok}};
    }
    if (o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".csv") {
        std::cout << out.dump(2) << '\n';
        write_kac_csv(o.out, o.dim, poly);
    } else {
        deliver(out, o.out);
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- euler

KClass parse_class(const std::vector<unsigned>& p, const std::string& s) {
    if (s == "e") return e_class(p);
    if (s == "delta") return delta_class(p);
    json j;
    try {
        j = json::parse(s);
    } catch (const json::parse_error&) {
        throw std::invalid_argument("class: expected e, delta, or JSON {\"e\",\"delta\",\"arms\"}");
    }
    KClass c = KClass::zero(p);
    c.e = j.at("e").get<long long>();
    c.delta = j.at("delta").get<long long>();
    const auto arms = j.at("arms").get<std::vector<std::vector<long long>>>();
    if (arms.size() != p.size()) throw std::invalid_argument("class: one arm list per weight");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (arms[i].size() != p[i] - 1)
            throw std::invalid_argument("class: arm " + std::to_string(i + 1) + " needs " +
                                        std::to_string(p[i] - 1) + " entries");
        c.arms[i] = arms[i];
    }
    return c;
}

json class_report(const std::vector<unsigned>& p, const KClass& c) {
    json out{{"class", json_class(c)}, {"rank", rank_of(c)}, {"degree", degree_of(p, c)}};
    if (c.is_zero()) {
        out["slope"] = nullptr;
    } else {
        const Slope s = slope(p, c);
        out["slope"] = s.infinite ? json("inf") : json_rat(s.value);
    }
    return out;
}

int run_euler(const Options& o, const std::string& xs, const std::string& ys) {
    if (o.p.empty()) throw std::invalid_argument("--p is required");
    const KClass x = parse_class(o.p, xs), y = parse_class(o.p, ys);
    deliver(json{{"euler", euler(o.p, x, y)},
                 {"sym", sym(o.p, x, y)},
                 {"x", class_report(o.p, x)},
                 {"y", class_report(o.p, y)}},
            o.out);
    return 0;
}

// ---------------------------------------------------------------- torsion-check

int run_torsion_check(const Options& o) {
    if (o.fields.empty()) throw std::invalid_argument("--fields is required");
    const EnumOptions opt = enum_options(o);
    bool ok = true;
    json per_field = json::array();
    for (unsigned long q : o.fields) {
        const Presentation A = presentation_for(o, field_for(q));
        require_dim(A, o.dim, "--dim");
        const ModuleLattice L = module_lattice(A);
        const FactorizationReport rep = check_factorization(A, L, o.dim, opt);
        json splits = json::array();
        for (const FactorizationEntry& e : rep.entries)
            splits.push_back({{"d1", e.d1},
                              {"d2", e.d2},
                              {"volume", json_rat(e.volume)},
                              {"factored", json_rat(e.factored)},
                              {"ok", e.ok}});
        per_field.push_back({{"q", q},
                             {"stack", json_rat(rep.stack)},
                             {"total", json_rat(rep.total)},
                             {"splits", splits},
                             {"pass", rep.pass}});
        ok = ok && rep.pass;
    }
    deliver(json{{"dim", o.dim}, {"fields", per_field}, {"pass", ok}}, o.out);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- nil-check

json coeff_rows(const std::vector<CoeffCheck>& checks) {
    json rows = json::array();
    for (const CoeffCheck& c : checks)
        rows.push_back(
            {{"dim", c.d}, {"lhs", json_rat(c.lhs)}, {"rhs", json_rat(c.rhs)}, {"ok", c.ok}});
    return rows;
}

int run_nil_check(const Options& o) {
    if (o.field == 0) throw std::invalid_argument("--field is required (flag or config)");
    const EnumOptions opt = enum_options(o);
    const Presentation A = presentation_for(o, field_for(o.field));
    require_dim(A, o.bound, "--bound");
    const ModuleLattice L = module_lattice(A);
    const NilExpReport rep = nil_exp_check(A, L, o.bound, opt);
    deliver(json{{"q", o.field},
                 {"bound", o.bound},
                 {"pass", rep.pass},
                 {"full_pass", rep.full_pass},  // informational
                 {"torsion", coeff_rows(rep.torsion)},
                 {"full", coeff_rows(rep.full)}},
            o.out);
    return rep.pass ? 0 : 1;
}

// ---------------------------------------------------------------- stratum-check

// All sequences (a_1, ..., a_k) of nonnegative vectors with sum i*a_i = d
// and a_k nonzero: the possible Jordan types of a nilpotent pair on d.
void jordan_types_of(const DimVec& d, std::vector<JordanType>& out) {
    JordanType cur;
    DimVec rem = d;
    const auto rec = [&](auto&& self, unsigned k) -> void {
        if (std::all_of(rem.begin(), rem.end(), [](unsigned x) { return x == 0; })) {
            if (cur.empty() || std::any_of(cur.back().begin(), cur.back().end(),
                                           [](unsigned x) { return x != 0; }))
                out.push_back(cur);
            return;
        }
        unsigned long total = 0;
        for (unsigned x : rem) total += x;
        if (k > total) return;  // every later part would overshoot
        DimVec part(d.size(), 0);
        const auto bump = [&] {
            for (std::size_t v = 0; v < part.size(); ++v) {
                if (k * (part[v] + 1) <= rem[v]) {
                    ++part[v];
                    return true;
                }
                part[v] = 0;
            }
            return false;
        };
        do {
            for (std::size_t v = 0; v < part.size(); ++v) rem[v] -= k * part[v];
            cur.push_back(part);
            self(self, k + 1);
            cur.pop_back();
            for (std::size_t v = 0; v < part.size(); ++v) rem[v] += k * part[v];
        } while (bump());
    };
    rec(rec, 1);
}

int run_stratum_check(const Options& o) {
    if (o.field == 0) throw std::invalid_argument("--field is required (flag or config)");
    const EnumOptions opt = enum_options(o);
    const Presentation A = presentation_for(o, field_for(o.field));
    require_dim(A, o.bound, "--bound");
    const ModuleLattice L = module_lattice(A);

    bool ok = true;
    json rows = json::array();
    DimVec d(o.bound.size(), 0);
    const auto scan = [&](auto&& self, std::size_t v) -> void {
        if (v == d.size()) {
            if (std::all_of(d.begin(), d.end(), [](unsigned x) { return x == 0; })) return;
            std::vector<JordanType> types;
            jordan_types_of(d, types);
            for (const JordanType& type : types) {
                json row{{"dim", d}, {"type", type}};
                try {
                    const StratumReport rep = stratum_check(A, L, d, type, opt);
                    row["rank"] = rep.rank;
                    row["lhs"] = json_rat(rep.lhs);
                    row["chains"] = json_rat(rep.chains);
                    row["rhs"] = json_rat(rep.rhs);
                    row["pass"] = rep.pass;
                    ok = ok && rep.pass;
                } catch (const std::invalid_argument& e) {
                    row["skipped"] = e.what();  // parts outside the sheaf cone
                }
                rows.push_back(std::move(row));
            }
            return;
        }
        for (d[v] = 0; d[v] <= o.bound[v]; ++d[v]) self(self, v + 1);
        d[v] = 0;
    };
    scan(scan, 0);
    deliver(json{{"q", o.field}, {"bound", o.bound}, {"strata", rows}, {"pass", ok}}, o.out);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- suite

json report_json(const SuiteReport& rep) {
    json rows = json::array();
    for (const CriterionResult& c : rep.criteria)
        rows.push_back({{"id", c.id},
                        {"name", c.name},
                        {"pass", c.pass},
                        {"detail", c.detail},
                        {"elapsed_ms", c.elapsed_ms},
                        {"budget_ms", c.limit_ms},
                        {"values", c.values}});
    return {{"criteria", rows}, {"pass", rep.all_pass()}};
}

int run_suite_cmd(const Options& o, const std::string& record, const std::string& fixture) {
    const SuiteReport rep = run_suite(enum_options(o));
    print_suite(std::cout, rep);
    const json values = suite_fixture(rep);
    bool ok = rep.all_pass();

    if (!record.empty()) {
        std::ofstream f(record);
        f << values.dump(2) << '\n';
        if (!f) throw std::runtime_error("failed to write " + record);
        std::cout << "recorded " << record << '\n';
    }
    if (!fixture.empty()) {
        std::ifstream in(fixture);
        if (!in) throw std::invalid_argument("fixture: cannot open " + fixture);
        const bool match = values == json::parse(in);
        std::cout << "[fx] " << (match ? "PASS" : "FAIL")
                  << "  recorded values match the fixture\n";
        ok = ok && match;
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        f << report_json(rep).dump(2) << '\n';
        if (!f) throw std::runtime_error("failed to write " + o.out);
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact representation counting over weighted projective line algebras"};
    app.require_subcommand(1);
    Options o;
    int rc = 0;

    CLI::App* kac = app.add_subcommand("kac", "interpolate the counting polynomial");
    add_algebra_flags(kac, o);
    add_run_flags(kac, o);
    kac->add_option("--dim", o.dim, "dimension vector")->delimiter(',');
    kac->add_option("--fields", o.fields, "sample field sizes, e.g. 2,3,4,5")->delimiter(',');
    unsigned long confirm = 0;
    kac->add_option("--confirm", confirm, "check the polynomial at one more field size");
    kac->callback([&] {
        apply_config(kac, o);
        rc = run_kac(o, confirm);
    });

    const auto count_sub = [&](const char* name, const char* help, CountTask task) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_algebra_flags(sub, o);
        add_run_flags(sub, o);
        sub->add_option("--dim", o.dim, "dimension vector")->delimiter(',');
        sub->add_option("--field", o.field, "field size q (prime power)");
        sub->callback([&o, sub, task, &rc] {
            apply_config(sub, o);
            rc = run_count(o, task);
        });
    };
    count_sub("count", "count absolutely indecomposable modules", CountTask::abs_indec);
    count_sub("volume", "stack volume: solutions / |GL_d|", CountTask::volume);
    count_sub("nil-volume", "volume of pairs (M, nilpotent endomorphism)", CountTask::nil);

    CLI::App* eul = app.add_subcommand("euler", "pair two classes under the Euler form");
    eul->add_option("--p", o.p, "weights")->delimiter(',');
    eul->add_option("--out", o.out, "also write the report to this file");
    std::string xs = "e", ys = "e";
    eul->add_option("--x", xs, "e, delta, or JSON {\"e\",\"delta\",\"arms\"}");
    eul->add_option("--y", ys, "e, delta, or JSON {\"e\",\"delta\",\"arms\"}");
    eul->callback([&] { rc = run_euler(o, xs, ys); });

    CLI::App* tor = app.add_subcommand("torsion-check",
                                       "splitting partition and volume factorization");
    add_algebra_flags(tor, o);
    add_run_flags(tor, o);
    tor->add_option("--dim", o.dim, "dimension vector")->delimiter(',');
    tor->add_option("--fields", o.fields, "field sizes to check")->delimiter(',');
    tor->callback([&] {
        apply_config(tor, o);
        rc = run_torsion_check(o);
    });

    CLI::App* nil = app.add_subcommand("nil-check", "nilpotent-pair series against its exponential");
    add_algebra_flags(nil, o);
    add_run_flags(nil, o);
    nil->add_option("--bound", o.bound, "componentwise series bound")->delimiter(',');
    nil->add_option("--field", o.field, "field size q (prime power)");
    nil->callback([&] {
        apply_config(nil, o);
        rc = run_nil_check(o);
    });

    CLI::App* str = app.add_subcommand("stratum-check", "Jordan strata against chain stacks");
    add_algebra_flags(str, o);
    add_run_flags(str, o);
    str->add_option("--bound", o.bound, "check every dimension up to this bound")->delimiter(',');
    str->add_option("--field", o.field, "field size q (prime power)");
    str->callback([&] {
        apply_config(str, o);
        rc = run_stratum_check(o);
    });

    CLI::App* sui = app.add_subcommand("suite", "run the full verification battery");
    add_run_flags(sui, o);
    std::string record, fixture;
    sui->add_option("--record", record, "write the derived values to this fixture file");
    sui->add_option("--fixture", fixture, "compare the derived values against this file");
    sui->callback([&] { rc = run_suite_cmd(o, record, fixture); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    } catch (const ResourceError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return rc;
}
