#include "ramify/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ramify/copolygon.hpp"
#include "ramify/errors.hpp"
#include "ramify/invariants.hpp"
#include "ramify/oracle.hpp"
#include "ramify/sweep.hpp"
#include "ramify/tower.hpp"

namespace ramify::cli {

using ojson = nlohmann::ordered_json;

std::shared_ptr<const Floor> Job::floor(const std::string& name) const {
    const auto it = floors.find(name);
    if (it == floors.end()) throw ValidationError("unknown field '" + name + "'");
    return it->second;
}

std::string Job::name_of(const Floor& f) const {
    for (const auto& [name, fl] : floors)
        if (fl.get() == &f) return name;
    throw ValidationError("floor is not part of the job");
}

FloorElement decode_element(const Floor& floor, const nlohmann::json& j) {
    if (!j.is_array()) throw ValidationError("field element must be an array");
    if (floor.is_ground()) {
        std::vector<std::pair<std::int64_t, int>> terms;
        for (const auto& t : j) {
            if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
                throw ValidationError("ground element terms must be [digit, power] integer pairs");
            terms.emplace_back(t[0].get<std::int64_t>(), t[1].get<int>());
        }
        return floor.from_scalar(floor.field().from_terms(terms));
    }
    if (j.size() > static_cast<std::size_t>(floor.degree()))
        throw ValidationError("element has more coordinates than the floor degree " + std::to_string(floor.degree()));
    std::vector<FloorElement> coords;
    for (const auto& c : j) coords.push_back(decode_element(*floor.parent(), c));
    while (coords.size() < static_cast<std::size_t>(floor.degree())) coords.push_back(floor.parent()->zero());
    return floor.from_coords(coords);
}

Job parse_job(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ValidationError("job must be a JSON object");
        const auto p = j.at("p").get<std::int64_t>();
        if (p < 2 || p > 0xffffffffLL) throw ValidationError("p out of range");
        const std::string mode = j.at("mode").get<std::string>();
        Mode m;
        if (mode == "equal" || mode == "EQUAL") m = Mode::Equal;
        else if (mode == "mixed" || mode == "MIXED") m = Mode::Mixed;
        else throw ValidationError("mode must be 'equal' or 'mixed'");
        const auto up = static_cast<std::uint32_t>(p);
        if (!is_prime(up)) throw ValidationError("p must be prime");
        int precision = 0;
        if (j.contains("precision")) precision = j.at("precision").get<int>();
        else precision = m == Mode::Equal ? 48 : BaseField::max_mixed_precision(up);
        const BaseField field(m, up, precision);

        Job job;
        if (j.contains("ground")) job.ground_name = j.at("ground").get<std::string>();
        job.floors[job.ground_name] = Floor::ground(field);
        job.order.push_back(job.ground_name);
        for (const auto& f : j.at("fields")) {
            const std::string name = f.at("name").get<std::string>();
            const std::string base = f.at("base").get<std::string>();
            if (job.floors.count(name) != 0) throw ValidationError("duplicate field name '" + name + "'");
            const auto parent = job.floor(base);
            EisensteinPoly poly;
            for (const auto& c : f.at("coefficients")) poly.coefficients.push_back(decode_element(*parent, c));
            if (poly.coefficients.empty()) throw ValidationError("field '" + name + "' has no coefficients");
            job.floors[name] = attach_eisenstein(parent, std::move(poly));
            job.order.push_back(name);
        }
        return job;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed job: ") + e.what());
    }
}

Job load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open job file '" + path + "'");
    try {
        return parse_job(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("job file is not valid JSON: " + std::string(e.what()));
    }
}

namespace {

struct Options {
    std::string job_path;
    std::string format = "json";
    std::string plot_path;
    std::string field;
    std::string over;
    std::optional<std::int64_t> horizon;
    std::optional<int> j;
    std::optional<int> l;
    std::optional<std::string> at;
    std::int64_t c = 0;
    std::int64_t cmax = 6;
    std::int64_t e = 1;
    std::string norm = "vL";
    std::string flavor = "full";
    std::string u = "1";
};

using Table = std::vector<std::vector<std::string>>;

struct Report {
    ojson json;
    Table table;
    std::optional<ojson> plot;
    int code = kOk;
};

std::string rat(const Rational& r) { return to_string(r); }

ojson ext_json(const ExtNat& v) { return v.is_finite() ? ojson(v.value()) : ojson("inf"); }

ojson pl_json(const PLFunction& f) { return ojson(to_json(f)); }

ojson rational_ojson(const Rational& r) { return ojson::array({r.numerator(), r.denominator()}); }

// Vertex-list JSON plus a dense table at step 1/4 up to past the last vertex.
ojson plot_data(const std::vector<std::pair<std::string, PLFunction>>& fns) {
    Rational xmax = 4;
    for (const auto& [name, f] : fns)
        for (const auto& v : f.vertices()) xmax = std::max(xmax, v.x * 2);
    ojson functions = ojson::object();
    for (const auto& [name, f] : fns) functions[name] = pl_json(f);
    ojson samples = ojson::array();
    for (Rational x = 0; x <= xmax; x += Rational(1, 4)) {
        ojson row = ojson::object();
        row["x"] = rational_ojson(x);
        for (const auto& [name, f] : fns) row[name] = rational_ojson(f(x));
        samples.push_back(row);
    }
    return {{"functions", functions}, {"samples", samples}};
}

Table pl_table(const PLFunction& f) {
    Table t{{"x", "y", "kind"}};
    t.push_back({"0", rat(f.at_zero()), "start"});
    for (const auto& v : f.vertices()) t.push_back({rat(v.x), rat(v.y), "vertex"});
    t.push_back({"inf", rat(f.final_slope()), "final_slope"});
    return t;
}

Flavor parse_flavor(const std::string& s) {
    if (s == "full") return Flavor::Full;
    if (s == "reduced") return Flavor::Reduced;
    throw ValidationError("flavor must be 'full' or 'reduced'");
}

FloorElement parse_u(const Floor& floor, const std::string& s) {
    if (s == "1") return floor.one();
    if (s == "1+pi") return floor.one() + floor.uniformizer();
    if (s.rfind("teich:", 0) == 0) {
        std::int64_t r = 0;
        try {
            r = std::stoll(s.substr(6));
        } catch (const std::logic_error&) {
            throw ValidationError("bad Teichmueller residue in '" + s + "'");
        }
        const auto p = static_cast<std::int64_t>(floor.p());
        r = ((r % p) + p) % p;
        if (r == 0) throw NotAUnit("u = teich:0 is not a unit");
        return floor.from_scalar(teichmuller_lift(floor.field(), static_cast<std::uint32_t>(r)));
    }
    throw ValidationError("u must be 1, 1+pi or teich:r");
}

class Session {
public:
    explicit Session(Options opt) : opt_(std::move(opt)), job_(load_job(opt_.job_path)) {}

    Report invariants() {
        const auto an = analysis(0);
        Report r;
        ojson tilde = ojson::array();
        for (const auto& t : an.profile.tilde) tilde.push_back(ext_json(t));
        r.json["tilde"] = tilde;
        r.json["i"] = an.profile.i;
        r.json["n"] = an.profile.n;
        r.json["nu"] = an.profile.nu;
        r.table = {{"j", "tilde_i", "i"}};
        for (int j = 0; j <= an.profile.nu; ++j)
            r.table.push_back({std::to_string(j), an.profile.tilde[static_cast<std::size_t>(j)].str(),
                               std::to_string(an.profile.i[static_cast<std::size_t>(j)])});
        return r;
    }

    Report phi_cmd() {
        const auto an = analysis(0);
        const int j = level(an.profile.nu);
        const PLFunction f = phi(an.profile, j);
        return function_report(f, "phi");
    }

    Report copolygon() {
        const auto an = analysis(0);
        const int j = level(an.profile.nu);
        const Norm norm = parse_norm(opt_.norm);
        const GeneralSeries g = to_general(an.digits, *top());
        const EpsilonSeries es = fstar(g, *top());
        const PLFunction f = norm == Norm::VL
                                 ? truncated_psi(es, j)
                                 : valuation_function(es, Norm::VK, nilpotency(top()->p(), j, Flavor::Full) - 1);
        return function_report(f, "psi");
    }

    Report oracle() {
        if (opt_.c < 0) throw ValidationError("--c must be nonnegative");
        const auto an = analysis(opt_.c);
        const int j = level(an.profile.nu);
        const Flavor flavor = parse_flavor(opt_.flavor);
        const GeneralSeries g = to_general(an.digits, *top());
        const FloorElement u = parse_u(*top(), opt_.u);
        const std::int64_t value = capital_phi(g, *top(), opt_.c, j, flavor, u);
        const Rational expected = phi(an.profile, j)(opt_.c);
        Report r;
        r.json["j"] = j;
        r.json["c"] = opt_.c;
        r.json["flavor"] = to_string(flavor);
        r.json["u"] = opt_.u;
        r.json["Phi"] = value;
        r.json["phi"] = rational_ojson(expected);
        r.json["match"] = Rational(value) == expected;
        r.table = {{"j", "c", "flavor", "Phi", "phi", "match"},
                   {std::to_string(j), std::to_string(opt_.c), to_string(flavor), std::to_string(value), rat(expected),
                    Rational(value) == expected ? "true" : "false"}};
        return r;
    }

    Report tame() {
        const auto an = analysis(0);
        const TameLift lift = tame_lift_tower(top(), *base(), opt_.e, an.profile.horizon);
        const auto got = lifted_indices(lift);
        std::vector<std::int64_t> expected;
        for (auto i : an.profile.i) expected.push_back(opt_.e * i);
        Report r;
        r.json["e"] = opt_.e;
        r.json["indices"] = got;
        r.json["expected"] = expected;
        r.json["match"] = got == expected;
        r.table = {{"j", "lifted_index", "expected"}};
        for (std::size_t j = 0; j < got.size(); ++j)
            r.table.push_back({std::to_string(j), std::to_string(got[j]), std::to_string(expected[j])});
        if (got != expected) r.code = kInternal;
        return r;
    }

    Report tower() {
        const TowerProfile t = compose_tower(top(), tower_horizons());
        std::vector<int> ls;
        if (opt_.l) {
            if (*opt_.l < 0 || *opt_.l > t.levels())
                throw ValidationError("--l out of range 0.." + std::to_string(t.levels()));
            ls.push_back(*opt_.l);
        } else {
            for (int l = 0; l <= t.levels(); ++l) ls.push_back(l);
        }
        Report r;
        ojson lower = ojson::array();
        for (auto i : t.lower.profile.i) lower.push_back(i);
        ojson upper = ojson::array();
        for (auto i : t.upper.profile.i) upper.push_back(i);
        ojson composed = ojson::array();
        for (auto i : t.composed.profile.i) composed.push_back(i);
        r.json["n"] = t.n();
        r.json["m"] = t.m();
        r.json["i_lower"] = lower;
        r.json["i_upper"] = upper;
        r.json["i_composed"] = composed;
        r.table = {{"l", "x", "lambda", "phi", "hypothesis", "equality", "in_T_l"}};
        ojson levels = ojson::array();
        std::vector<std::pair<std::string, PLFunction>> plot_fns;
        for (int l : ls) {
            const PLFunction lam = lambda_l(t, l);
            const PLFunction ph = phi(t.composed.profile, l);
            plot_fns.emplace_back("lambda_" + std::to_string(l), lam);
            plot_fns.emplace_back("phi_" + std::to_string(l), ph);
            std::vector<Rational> xs;
            if (opt_.at) xs.push_back(parse_rational(*opt_.at));
            else xs = sample_grid(t, l);
            ojson reports = ojson::array();
            for (const auto& x : xs) {
                const GeReport g = ge_report(t, l, x);
                reports.push_back(ojson(to_json(g)));
                r.table.push_back({std::to_string(l), rat(x), rat(g.lambda), rat(g.phi), g.hypothesis ? "true" : "false",
                                   g.equality ? "true" : "false", g.in_t_l ? "true" : "false"});
            }
            ojson entry;
            entry["l"] = l;
            entry["lambda"] = pl_json(lam);
            entry["phi"] = pl_json(ph);
            entry["corollary"] = ojson(to_json(corollary_report(t, l)));
            entry["reports"] = reports;
            levels.push_back(entry);
        }
        r.json["levels"] = levels;
        r.plot = plot_data(plot_fns);
        return r;
    }

    Report verify() {
        if (opt_.cmax < 0) throw ValidationError("--cmax must be nonnegative");
        const auto an = analysis(opt_.cmax);
        const GeneralSeries g = to_general(an.digits, *top());
        SweepRequest req;
        req.series = &g;
        req.floor = top().get();
        req.profile = &an.profile;
        req.cmax = opt_.cmax;
        req.flavor = parse_flavor(opt_.flavor);
        req.u = parse_u(*top(), opt_.u);
        const auto cells = sweep_parallel(req);
        for (const auto& cell : cells)
            if (cell.error) std::rethrow_exception(cell.error);
        Report r;
        ojson rows = ojson::array();
        r.table = {{"j", "c", "phi", "Phi", "match"}};
        for (const auto& cell : cells) {
            ojson row;
            row["j"] = cell.j;
            row["c"] = cell.c;
            row["phi"] = rational_ojson(cell.formula);
            row["Phi"] = *cell.oracle;
            row["match"] = cell.match();
            rows.push_back(row);
            r.table.push_back({std::to_string(cell.j), std::to_string(cell.c), rat(cell.formula),
                               std::to_string(*cell.oracle), cell.match() ? "true" : "false"});
        }
        const bool ok = all_match(cells);
        r.json["cells"] = rows;
        r.json["ok"] = ok;
        r.code = ok ? kOk : kInternal;
        return r;
    }

private:
    std::shared_ptr<const Floor> top() const {
        if (opt_.field.empty()) return job_.floor(job_.order.back());
        return job_.floor(opt_.field);
    }

    std::shared_ptr<const Floor> base() const {
        const auto t = top();
        if (t->is_ground()) throw ValidationError("the ground field has no base");
        if (opt_.over.empty()) return t->parent_shared();
        auto b = job_.floor(opt_.over);
        if (b.get() == t.get() || !t->contains(*b)) throw ValidationError("--over must name a proper subfield");
        return b;
    }

    int level(int nu) const {
        const int j = opt_.j ? *opt_.j : nu;
        if (j < 0 || j > nu) throw ValidationError("--j out of range 0.." + std::to_string(nu));
        return j;
    }

    // The default horizon, widened when the oracle must certify up to c.
    ExtensionAnalysis analysis(std::int64_t c) const {
        const auto t = top();
        const auto b = base();
        if (opt_.horizon) return analyze_extension(*t, *b, opt_.horizon);
        ExtensionAnalysis an = analyze_extension(*t, *b);
        if (c > 0 || an.profile.horizon < an.profile.i.front() + 2) {
            const std::int64_t want = std::min(max_horizon(*t, an.digits.n), an.profile.i.front() + c + 2);
            if (want > an.profile.horizon) an = analyze_extension(*t, *b, want);
        }
        return an;
    }

    TowerHorizons tower_horizons() const {
        TowerHorizons h;
        h.composed = opt_.horizon;
        return h;
    }

    Report function_report(const PLFunction& f, const std::string& name) {
        Report r;
        r.plot = plot_data({{name, f}});
        if (opt_.at) {
            const Rational x = parse_rational(*opt_.at);
            if (x < 0) throw ValidationError("--at must be nonnegative");
            r.json["x"] = rational_ojson(x);
            r.json["value"] = rational_ojson(f(x));
            r.table = {{"x", "value"}, {rat(x), rat(f(x))}};
        } else {
            r.json = pl_json(f);
            r.table = pl_table(f);
        }
        return r;
    }

    Options opt_;
    Job job_;
};

void write_tsv(const Table& t, std::ostream& out) {
    for (const auto& row : t) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
        out << '\n';
    }
}

int emit(const Report& r, const Options& opt, const std::string& command, std::ostream& out) {
    if (!opt.plot_path.empty()) {
        if (!r.plot) throw ValidationError("command '" + command + "' has no plot data");
        std::ofstream f(opt.plot_path);
        if (!f) throw ValidationError("cannot write plot data to '" + opt.plot_path + "'");
        f << r.plot->dump(2) << '\n';
    }
    if (opt.format == "tsv") write_tsv(r.table, out);
    else out << r.json.dump(2) << '\n';
    return r.code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Indices of inseparability and generalized Hasse-Herbrand functions", "ramify"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("job", opt.job_path, "Job file (JSON)")->required();
        sub->add_option("--field", opt.field, "Field to analyze (default: last in the job)");
        sub->add_option("--over", opt.over, "Base field (default: the field's own base)");
        sub->add_option("--horizon", opt.horizon, "Digit horizon override");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
        sub->add_option("--emit-plot-data", opt.plot_path, "Write vertex list and samples to FILE");
    };

    std::map<std::string, std::function<Report(Session&)>> handlers;
    auto add = [&](const std::string& name, const std::string& help, std::function<Report(Session&)> h) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        handlers[name] = std::move(h);
        return sub;
    };

    add("invariants", "Indices of inseparability", &Session::invariants);
    auto* phi_sub = add("phi", "Generalized Hasse-Herbrand function phi^j", &Session::phi_cmd);
    phi_sub->add_option("--j", opt.j, "Level j (default nu)");
    phi_sub->add_option("--at", opt.at, "Evaluate at num/den");
    auto* cop = add("copolygon", "Valuation function of F*(eps_j)", &Session::copolygon);
    cop->add_option("--j", opt.j, "Level j (default nu)");
    cop->add_option("--norm", opt.norm, "Normalization")->check(CLI::IsMember({"vK", "vL"}));
    cop->add_option("--at", opt.at, "Evaluate at num/den");
    auto* orc = add("oracle", "Dual-number oracle Phi^j(c)", &Session::oracle);
    orc->add_option("--j", opt.j, "Level j (default nu)");
    orc->add_option("--c", opt.c, "Perturbation exponent c")->required();
    orc->add_option("--flavor", opt.flavor, "Nilpotency flavor")->check(CLI::IsMember({"full", "reduced"}));
    orc->add_option("--u", opt.u, "Unit factor: 1, 1+pi or teich:r");
    auto* tm = add("tame", "Indices after tame base change", &Session::tame);
    tm->add_option("--e", opt.e, "Tame degree")->required();
    auto* tw = add("tower", "Two-step tower analysis", &Session::tower);
    tw->add_option("--l", opt.l, "Level l (default all)");
    tw->add_option("--at", opt.at, "Evaluate at num/den (default: sample grid)");
    auto* vf = add("verify", "Oracle/formula sweep", &Session::verify);
    vf->add_option("--cmax", opt.cmax, "Largest c");
    vf->add_option("--flavor", opt.flavor, "Nilpotency flavor")->check(CLI::IsMember({"full", "reduced"}));
    vf->add_option("--u", opt.u, "Unit factor: 1, 1+pi or teich:r");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Session session(opt);
        return emit(handlers.at(command)(session), opt, command, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const IndexUnresolved& e) {
        err << "index unresolved: " << e.what() << '\n';
        return kPrecision;
    } catch (const TheoremViolation& e) {
        err << "theorem violation: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

} // namespace ramify::cli
