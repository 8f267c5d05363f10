#include "commands.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "singkit/matheryau.hpp"
#include "singkit/session.hpp"
#include "singkit/stability.hpp"
#include "singkit/unfolding.hpp"

namespace singkit::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Context {
    Session session;
    int D = 8;
    int T = 16;
    GroupSpec spec;
    Options opts;

    const Session::MapDecl& map_decl() const {
        if (!opts.map.empty()) {
            if (auto* m = session.find_map(opts.map)) return *m;
            if (session.find_unfolding(opts.map)) throw UsageError("'" + opts.map + "' is an unfolding; this command needs a map");
            throw UsageError("no map named '" + opts.map + "'");
        }
        if (session.maps.empty()) throw UsageError("no map declared");
        return session.maps.back();
    }
    const Session::UnfoldingDecl& unfolding_decl() const {
        if (!opts.map.empty()) {
            if (auto* u = session.find_unfolding(opts.map)) return *u;
            if (session.find_map(opts.map)) throw UsageError("'" + opts.map + "' is a map; this command needs an unfolding");
            throw UsageError("no unfolding named '" + opts.map + "'");
        }
        if (session.unfoldings.empty()) throw UsageError("no unfolding declared");
        return session.unfoldings.back();
    }
    GermMap germ() const { return session.build_map(map_decl(), D); }
    UnfoldingMap unfolding() const { return session.build_unfolding(unfolding_decl(), D, T); }
};

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json cobasis_json(const RingPtr& ring, int p, const std::vector<CoordIndex>& cobasis) {
    json out = json::array();
    for (const auto& c : cobasis) out.push_back(coord_str(ring, p, c));
    return out;
}

json group_json(const GroupSpec& spec) { return json{{"name", group_name(spec.group)}, {"level", spec.level}}; }

ConditionSpec ideal_spec(const Context& ctx, Group group, const RingPtr& ring) {
    const std::string& text = ctx.opts.ideal;
    if (text.empty()) throw UsageError("--ideal is required (m^d or comma-separated generators)");
    static const std::regex power(R"(\s*m\s*\^\s*([0-9]{1,3})\s*)");
    std::smatch m;
    const auto& vars = ctx.session.vars;
    if (std::regex_match(text, m, power) && std::find(vars.begin(), vars.end(), "m") == vars.end())
        return condition_spec(group, ring, std::stoi(m[1].str()));
    std::vector<Jet> gens;
    std::stringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ',')) gens.push_back(parse_jet(ring, piece));
    return condition_spec(group, ring, gens);
}

json cmd_t1(const Context& ctx) {
    GermMap f = ctx.germ();
    T1Data d = t1(f, ctx.spec);
    return {{"dimension", d.q.dimension},
            {"cobasis", cobasis_json(f.ring, f.p(), d.q.cobasis)},
            {"hilbert", d.q.hilbert},
            {"certified", d.q.certified},
            {"certificate_degree", opt_int(d.q.certificate_degree)},
            {"stable_under_increments", d.stable_under_increments ? json(*d.stable_under_increments) : json(nullptr)},
            {"group", group_json(ctx.spec)}};
}

json cmd_tjurina(const Context& ctx) {
    TjurinaResult r = tjurina(ctx.germ());
    return {{"tau", r.tau}, {"certified", r.certified}, {"certificate_degree", opt_int(r.certificate_degree)}};
}

json cmd_versal(const Context& ctx) {
    bool construct = ctx.session.find_map(ctx.opts.map) || (ctx.opts.map.empty() && ctx.session.unfoldings.empty());
    if (construct) {
        GermMap f = ctx.germ();
        UnfoldingMap u = versal_construct(f, ctx.spec);
        T1Data d = t1(f, ctx.spec);
        return {{"mode", "construct"},
                {"unfolding", u.str()},
                {"parameters", u.params()},
                {"t1_dimension", d.q.dimension},
                {"group", group_json(ctx.spec)}};
    }
    UnfoldingMap F = ctx.unfolding();
    VersalityReport r = inf_versal(F, ctx.spec);
    json classes = json::array();
    auto names = F.family->param_names();
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
        json row = json::array();
        for (const auto& c : r.classes[i]) row.push_back(c.str());
        classes.push_back({{"param", names[i]}, {"class", row}});
    }
    return {{"mode", "check"},
            {"versal", r.versal},
            {"certified", r.certified},
            {"t1_dimension", r.t1.dimension},
            {"cobasis", cobasis_json(F.base.ring, F.p(), r.t1.cobasis)},
            {"classes", classes},
            {"group", group_json(ctx.spec)}};
}

json cmd_rank(const Context& ctx) { return {{"rank", rank(ctx.germ())}}; }

json cmd_stable(const Context& ctx) {
    GermMap F = ctx.germ();
    StabilityVerdict v = inf_stable(F);
    return {{"verdict", kind_name(v.kind)}, {"residue", cobasis_json(F.ring, F.p(), v.residue)}, {"reason", v.reason}};
}

json cmd_genotype(const Context& ctx) {
    GenotypeReport g = genotype(ctx.germ());
    json coeffs = json::array();
    const auto& names = g.form.input.ring->var_names();
    for (std::size_t l = 0; l < g.coefficients.size(); ++l) {
        json row = json::array();
        for (const auto& c : g.coefficients[l]) row.push_back(c.str());
        coeffs.push_back({{"param", names[g.form.param_vars[l]]}, {"class", row}});
    }
    return {{"genotype", g.genotype.str()},
            {"rank", g.form.rank},
            {"generators", g.labels},
            {"certified", g.certified},
            {"coefficients", coeffs}};
}

json cmd_trivial(const Context& ctx) {
    UnfoldingMap F = ctx.unfolding();
    TrivialityReport r = inf_trivial(F, ctx.spec);
    json params = json::array();
    for (const auto& p : r.params)
        params.push_back({{"param", p.param},
                          {"member", p.member},
                          {"within_level0", p.within_level0},
                          {"witness", p.member ? json(p.witness.str()) : json(nullptr)},
                          {"residue", p.member ? json(nullptr) : json(vec_str(F.family, F.p(), p.residue))}});
    return {{"trivial", r.trivial}, {"params", params}, {"group", group_json(ctx.spec)}};
}

json log_json(const PreNormalForm& form) {
    json out = json::array();
    for (const auto& g : form.log) out.push_back(g.str(form.family));
    return out;
}

json cmd_separable(const Context& ctx) {
    SeparabilityVerdict v = separability(ctx.unfolding(), ctx.spec, ctx.T);
    json out = {{"verdict", kind_name(v.kind)},
                {"degree", v.degree},
                {"class", v.kind == SeparabilityVerdict::TrivialUpTo ? json(nullptr) : json(v.class_str)},
                {"group", group_json(ctx.spec)}};
    if (ctx.opts.log) out["log"] = log_json(v.form);
    return out;
}

json cmd_prenormal(const Context& ctx) {
    PreNormalForm form = prenormal(ctx.unfolding(), ctx.spec, ctx.T);
    json coeffs = json::array();
    for (std::size_t j = 0; j < form.labels.size(); ++j)
        coeffs.push_back({{"vector", form.labels[j]}, {"coefficient", form.coefficients[j].str()}});
    std::string nf = "(";
    auto comps = form.normal_form();
    for (std::size_t k = 0; k < comps.size(); ++k) nf += (k ? ", " : "") + comps[k].str();
    json out = {{"normal_form", nf + ")"},
                {"coefficients", coeffs},
                {"t_max", form.t_max},
                {"complete", form.complete},
                {"trivial", form.trivial()},
                {"group", group_json(ctx.spec)}};
    if (ctx.opts.log) out["log"] = log_json(form);
    return out;
}

json cmd_transversal(const Context& ctx) {
    GermMap f = ctx.germ();
    TransversalData t = k_to_a_transversal(f);
    json reps = json::array();
    for (const auto& v : t.reps) reps.push_back(vec_str(f.ring, f.p(), v));
    return {{"dimension", t.q.dimension}, {"representatives", reps}};
}

json cmd_myau_check(const Context& ctx) {
    GermMap f = ctx.germ();
    ConditionResult r = condition_check(f, ideal_spec(ctx, ctx.spec.group, f.ring));
    return {{"holds", r.holds},
            {"certified", r.certified},
            {"ord", r.ord},
            {"failing", r.holds ? json(nullptr) : json(r.failing_str)},
            {"group", group_json(GroupSpec{ctx.spec.group, -1})}};
}

json cmd_fingerprint(const Context& ctx) {
    GermMap f = ctx.germ();
    QuotientData q = algebra_fingerprint(f, ideal_spec(ctx, ctx.spec.group, f.ring));
    return {{"dimension", q.dimension},
            {"hilbert", q.hilbert},
            {"certified", q.certified},
            {"certificate_degree", opt_int(q.certificate_degree)},
            {"group", group_json(GroupSpec{ctx.spec.group, -1})}};
}

json cmd_derval(const Context& ctx) { return {{"dimension", der_values_dim(ctx.session.ring(ctx.D))}}; }

using Handler = json (*)(const Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"t1", cmd_t1},
        {"tjurina", cmd_tjurina},
        {"versal", cmd_versal},
        {"rank", cmd_rank},
        {"stable", cmd_stable},
        {"genotype", cmd_genotype},
        {"trivial", cmd_trivial},
        {"separable", cmd_separable},
        {"prenormal", cmd_prenormal},
        {"transversal", cmd_transversal},
        {"myau-check", cmd_myau_check},
        {"fingerprint", cmd_fingerprint},
        {"derval", cmd_derval},
    };
    return table;
}

std::string yes_no(const json& b) { return b.get<bool>() ? "yes" : "no"; }

std::string join(const json& arr, const std::string& sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) s += sep;
        s += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
    }
    return s;
}

std::string list_or_none(const json& arr) { return arr.empty() ? "(none)" : join(arr); }

std::string certificate(const json& r) {
    if (r["certified"].get<bool>()) return ", certified at N=" + r["certificate_degree"].dump();
    return " (jet-level; no certificate)";
}

std::string group_line(const json& g) {
    return "group: " + g["name"].get<std::string>() + ", level " + g["level"].dump();
}

std::string text_of(const std::string& cmd, const json& r) {
    std::ostringstream o;
    if (cmd == "t1") {
        std::string g = r["group"]["name"];
        o << "dim " << r["dimension"].dump();
        if (g == "A" || g == "L")
            o << " (jet-level; " << g << "-certificates unavailable)\n"
              << "stable under two D increments: " << yes_no(r["stable_under_increments"]) << "\n";
        else
            o << certificate(r) << "\n";
        o << "cobasis: " << list_or_none(r["cobasis"]) << "\n"
          << "hilbert: (" << join(r["hilbert"], ",") << ")\n"
          << group_line(r["group"]) << "\n";
    } else if (cmd == "tjurina") {
        o << "tau = " << r["tau"].dump() << certificate(r) << "\n";
    } else if (cmd == "versal") {
        if (r["mode"] == "construct") {
            o << "versal unfolding: " << r["unfolding"].get<std::string>() << "\n"
              << "parameters = " << r["parameters"].dump() << " (dim T1 = " << r["t1_dimension"].dump() << ")\n";
        } else {
            o << (r["versal"].get<bool>() ? "infinitesimally versal" : "not infinitesimally versal") << "\n"
              << "dim T1 = " << r["t1_dimension"].dump() << (r["certified"].get<bool>() ? " (certified)" : " (jet-level)") << "\n"
              << "cobasis: " << list_or_none(r["cobasis"]) << "\n";
            for (const auto& c : r["classes"])
                o << "class of d/d" << c["param"].get<std::string>() << ": (" << join(c["class"]) << ")\n";
        }
        o << group_line(r["group"]) << "\n";
    } else if (cmd == "rank") {
        o << "rank = " << r["rank"].dump() << "\n";
    } else if (cmd == "stable") {
        std::string v = r["verdict"];
        o << v;
        if (v == "NotStable") o << ", residue: " << join(r["residue"]);
        if (v == "JetLevelStable") o << ": " << r["reason"].get<std::string>();
        o << "\n";
    } else if (cmd == "genotype") {
        o << "genotype = " << r["genotype"].get<std::string>() << "\n"
          << "rank = " << r["rank"].dump() << "\n"
          << "generators: " << list_or_none(r["generators"]) << "\n"
          << "certified: " << yes_no(r["certified"]) << "\n";
        for (const auto& c : r["coefficients"])
            o << "class of d/d" << c["param"].get<std::string>() << ": (" << join(c["class"]) << ")\n";
    } else if (cmd == "trivial") {
        o << (r["trivial"].get<bool>() ? "infinitesimally trivial" : "not infinitesimally trivial") << "\n";
        for (const auto& p : r["params"]) {
            o << p["param"].get<std::string>() << ": ";
            if (p["member"].get<bool>())
                o << "member, witness = " << p["witness"].get<std::string>()
                  << ", within level 0: " << yes_no(p["within_level0"]) << "\n";
            else
                o << "not a member, residue = " << p["residue"].get<std::string>() << "\n";
        }
        o << group_line(r["group"]) << "\n";
    } else if (cmd == "separable") {
        std::string v = r["verdict"];
        if (v == "Inseparable")
            o << "INSEPARABLE at t-degree " << r["degree"].dump() << ", class = " << r["class"].get<std::string>() << "\n";
        else if (v == "SeparableObstruction")
            o << "SEPARABLE obstruction at t-degree " << r["degree"].dump() << ", class = " << r["class"].get<std::string>() << "\n";
        else
            o << "TRIVIAL up to t-degree " << r["degree"].dump() << "\n";
        o << group_line(r["group"]) << "\n";
    } else if (cmd == "prenormal") {
        o << "normal form: " << r["normal_form"].get<std::string>() << "\n";
        for (const auto& c : r["coefficients"])
            o << "a[" << c["vector"].get<std::string>() << "] = " << c["coefficient"].get<std::string>() << "\n";
        o << "reduced through t-degree " << r["t_max"].dump() << (r["complete"].get<bool>() ? " (complete)" : " (partial)") << "\n"
          << "trivial: " << yes_no(r["trivial"]) << "\n"
          << group_line(r["group"]) << "\n";
    } else if (cmd == "transversal") {
        o << "dim " << r["dimension"].dump() << "\n"
          << "representatives: " << list_or_none(r["representatives"]) << "\n";
    } else if (cmd == "myau-check") {
        if (r["holds"].get<bool>())
            o << "holds" << (r["certified"].get<bool>() ? " (certified)" : " (jet-level)") << "\n";
        else
            o << "fails at " << r["failing"].get<std::string>() << "\n";
        o << "ord = " << r["ord"].dump() << "\n" << group_line(r["group"]) << "\n";
    } else if (cmd == "fingerprint") {
        o << "dim " << r["dimension"].dump() << ", hilbert (" << join(r["hilbert"], ",") << ")" << certificate(r) << "\n"
          << group_line(r["group"]) << "\n";
    } else if (cmd == "derval") {
        o << "dim Der|_o = " << r["dimension"].dump() << "\n";
    }
    if (r.contains("log")) {
        o << "log:\n";
        for (const auto& g : r["log"]) o << "  " << g.get<std::string>() << "\n";
    }
    return o.str();
}

Context make_context(const std::string& script, const Options& opts) {
    Context ctx;
    ctx.session = parse_session(script);
    ctx.opts = opts;
    ctx.D = opts.jet.value_or(ctx.session.jetdeg.value_or(8));
    if (ctx.D < 1) throw UsageError("--jet must be at least 1");
    ctx.T = opts.tdeg.value_or(ctx.session.tdeg.value_or(2 * ctx.D));
    if (ctx.T < 0) throw UsageError("--tdeg must be non-negative");
    Group g = ctx.session.group.value_or(Group::K);
    if (opts.group) {
        if (*opts.group != "R" && *opts.group != "K" && *opts.group != "A") throw UsageError("--group must be R, K or A");
        g = parse_group(*opts.group);
    }
    ctx.spec = GroupSpec{g, opts.level.value_or(ctx.session.level.value_or(-1))};
    if (ctx.spec.level < -1) throw UsageError("--level must be at least -1");
    return ctx;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, h] : handlers()) out.push_back(name);
        return out;
    }();
    return names;
}

json report(const std::string& command, const std::string& script, const Options& opts) {
    auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == command; });
    if (it == handlers().end()) throw UsageError("unknown command '" + command + "'");
    Context ctx = make_context(script, opts);
    json r = it->second(ctx);
    r["command"] = command;
    return r;
}

std::string render_text(const json& r) { return text_of(r["command"].get<std::string>(), r); }

Outcome run(const std::string& command, const std::string& script, const Options& opts) {
    Outcome out;
    try {
        json r = report(command, script, opts);
        out.out = opts.format == "json" ? r.dump(2) + "\n" : render_text(r);
    } catch (const ParseError& e) {
        out.code = kParseError;
        out.err = std::string("parse error: ") + e.what() + "\n";
    } catch (const UsageError& e) {
        out.code = kParseError;
        out.err = std::string("error: ") + e.what() + "\n";
    } catch (const Refusal& e) {
        out.code = kRefused;
        out.err = std::string(e.what()) + "\n";
    } catch (const std::invalid_argument& e) {
        out.code = kRefused;
        out.err = std::string("refused: ") + e.what() + "\n";
    }
    return out;
}

}  // namespace singkit::cli
