#include "lnl/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace lnl {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> keys)
{
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
        if (!known.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
    }
}

const json& object_at(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw ConfigError("missing '" + std::string(key) + "' in " + where);
    const json& v = j.at(key);
    if (!v.is_object()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be an object");
    return v;
}

double number(const json& j, const char* key, double fallback, const std::string& where)
{
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
}

double required_number(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw ConfigError("missing '" + std::string(key) + "' in " + where);
    return number(j, key, 0.0, where);
}

long integer(const json& j, const char* key, long fallback, const std::string& where)
{
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be an integer");
    return v.get<long>();
}

bool boolean(const json& j, const char* key, bool fallback, const std::string& where)
{
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be true or false");
    return v.get<bool>();
}

std::string text(const json& j, const char* key, const std::string& fallback, const std::string& where)
{
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a string");
    return v.get<std::string>();
}

Point point(const json& j, int dim, const std::string& where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw ConfigError(where + " must be an array of " + std::to_string(dim) + " numbers");
    }
    Point p{0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
        if (!j[static_cast<std::size_t>(a)].is_number()) throw ConfigError(where + " must hold numbers");
        p[static_cast<std::size_t>(a)] = j[static_cast<std::size_t>(a)].get<double>();
    }
    return p;
}

Box box(const json& j, int dim, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where + " must be an object with 'lo' and 'hi'");
    reject_unknown(j, where, {"lo", "hi"});
    if (!j.contains("lo") || !j.contains("hi")) throw ConfigError(where + " needs 'lo' and 'hi'");
    return Box{point(j.at("lo"), dim, where + ".lo"), point(j.at("hi"), dim, where + ".hi")};
}

std::vector<Box> boxes(const json& j, const char* key, int dim, const std::string& where)
{
    std::vector<Box> out;
    if (!j.contains(key)) return out;
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ConfigError(where + "." + key + " must be an array of boxes");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(box(arr[i], dim, where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

ScalarProfile profile(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) return ScalarProfile::constant(0.0);
    const json& v = j.at(key);
    const std::string at = where + "." + key;
    if (v.is_number()) return ScalarProfile::constant(v.get<double>());
    if (!v.is_object()) throw ConfigError(at + " must be a number or a profile object");
    reject_unknown(v, at, {"kind", "amplitude"});
    const std::string kind = text(v, "kind", "", at);
    if (kind == "constant") return ScalarProfile::constant(required_number(v, "amplitude", at));
    if (kind == "sine_product") return ScalarProfile::sine_product(required_number(v, "amplitude", at));
    throw ConfigError(at + ".kind must be 'constant' or 'sine_product'");
}

json profile_json(const ScalarProfile& p)
{
    if (p.kind == ScalarProfile::Kind::Constant) return p.value;
    return json{{"kind", "sine_product"}, {"amplitude", p.value}};
}

json box_json(const Box& b, int dim)
{
    json lo = json::array();
    json hi = json::array();
    for (int a = 0; a < dim; ++a) {
        lo.push_back(b.lo[static_cast<std::size_t>(a)]);
        hi.push_back(b.hi[static_cast<std::size_t>(a)]);
    }
    return json{{"lo", lo}, {"hi", hi}};
}

StepRule step_rule_from(const std::string& s)
{
    if (s == "armijo_backtracking") return StepRule::ArmijoBacktracking;
    if (s == "barzilai_borwein_safeguarded") return StepRule::BarzilaiBorweinSafeguarded;
    throw ConfigError("solve.step_rule must be 'armijo_backtracking' or 'barzilai_borwein_safeguarded'");
}

}  // namespace

RunConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(j, "config",
                   {"grid", "regions", "delta", "kernel", "p", "regularization", "source", "solve", "output",
                    "coercivity", "convergence", "gradcheck"});
    RunConfig c;
    ProblemSpec& ps = c.problem;

    const json& grid = object_at(j, "grid", "config");
    reject_unknown(grid, "grid", {"dimension", "box", "h"});
    ps.grid.dimension = static_cast<int>(integer(grid, "dimension", 1, "grid"));
    if (ps.grid.dimension != 1 && ps.grid.dimension != 2) throw ConfigError("grid.dimension must be 1 or 2");
    if (!grid.contains("box")) throw ConfigError("missing 'box' in grid");
    ps.grid.bounding_box = box(grid.at("box"), ps.grid.dimension, "grid.box");
    ps.grid.h = required_number(grid, "h", "grid");

    const json& regions = object_at(j, "regions", "config");
    reject_unknown(regions, "regions", {"local", "nonlocal"});
    ps.regions.local_boxes = boxes(regions, "local", ps.grid.dimension, "regions");
    ps.regions.nonlocal_boxes = boxes(regions, "nonlocal", ps.grid.dimension, "regions");

    ps.delta = required_number(j, "delta", "config");

    const json& kernel = object_at(j, "kernel", "config");
    reject_unknown(kernel, "kernel", {"shape", "amplitude", "radius", "exponent"});
    const std::string shape = text(kernel, "shape", "indicator", "kernel");
    if (shape == "indicator") {
        ps.kernel.shape = KernelShape::Indicator;
    } else if (shape == "polynomial_bump") {
        ps.kernel.shape = KernelShape::PolynomialBump;
    } else {
        throw ConfigError("kernel.shape must be 'indicator' or 'polynomial_bump'");
    }
    ps.kernel.amplitude = number(kernel, "amplitude", 1.0, "kernel");
    ps.kernel.support_radius = required_number(kernel, "radius", "kernel");
    ps.kernel.bump_exponent = static_cast<int>(integer(kernel, "exponent", 2, "kernel"));

    ps.p = required_number(j, "p", "config");
    ps.regularization = number(j, "regularization", 0.0, "config");
    if (!(ps.regularization >= 0.0)) throw ConfigError("regularization must be >= 0");

    if (j.contains("source")) {
        const json& src = object_at(j, "source", "config");
        reject_unknown(src, "source", {"form", "g", "a", "b", "q", "s"});
        const std::string form = text(src, "form", "affine", "source");
        if (form == "affine") {
            ps.source.form = SourceForm::Affine;
            ps.source.g = profile(src, "g", "source");
        } else if (form == "monotone_power") {
            ps.source.form = SourceForm::MonotonePower;
            ps.source.a = profile(src, "a", "source");
            ps.source.b = profile(src, "b", "source");
            ps.source.q = number(src, "q", 0.0, "source");
            if (src.contains("s") && !src.at("s").is_null()) ps.source.s = number(src, "s", 0.0, "source");
        } else {
            throw ConfigError("source.form must be 'affine' or 'monotone_power'");
        }
    }

    if (j.contains("solve")) {
        const json& s = object_at(j, "solve", "config");
        reject_unknown(s, "solve",
                       {"grad_tol", "max_iters", "step_rule", "armijo_c", "backtrack_factor", "initial_step", "seed",
                        "history_every", "start"});
        if (s.contains("grad_tol") && !s.at("grad_tol").is_null()) c.solve.grad_tol = number(s, "grad_tol", 0.0, "solve");
        c.solve.max_iters = integer(s, "max_iters", c.solve.max_iters, "solve");
        c.solve.step_rule = step_rule_from(text(s, "step_rule", to_string(c.solve.step_rule), "solve"));
        c.solve.armijo_c = number(s, "armijo_c", c.solve.armijo_c, "solve");
        c.solve.backtrack_factor = number(s, "backtrack_factor", c.solve.backtrack_factor, "solve");
        c.solve.initial_step = number(s, "initial_step", c.solve.initial_step, "solve");
        const long seed = integer(s, "seed", 0, "solve");
        if (seed < 0) throw ConfigError("solve.seed must be >= 0");
        c.solve.seed = static_cast<std::uint64_t>(seed);
        c.solve.history_every = integer(s, "history_every", c.solve.history_every, "solve");
        const std::string start = text(s, "start", "zero", "solve");
        if (start == "zero") {
            c.start = StartKind::Zero;
        } else if (start == "random") {
            c.start = StartKind::Random;
        } else {
            throw ConfigError("solve.start must be 'zero' or 'random'");
        }
    }
    try {
        c.solve.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solve: ") + e.what());
    }

    if (j.contains("output")) {
        const json& o = object_at(j, "output", "config");
        reject_unknown(o, "output", {"dir", "history", "psi"});
        c.output.dir = text(o, "dir", c.output.dir, "output");
        c.output.history = boolean(o, "history", c.output.history, "output");
        c.output.psi = boolean(o, "psi", c.output.psi, "output");
    }

    if (j.contains("coercivity")) {
        const json& o = object_at(j, "coercivity", "config");
        reject_unknown(o, "coercivity", {"n_random", "threshold"});
        c.coercivity.n_random = static_cast<int>(integer(o, "n_random", c.coercivity.n_random, "coercivity"));
        c.coercivity.threshold = number(o, "threshold", c.coercivity.threshold, "coercivity");
        if (c.coercivity.n_random < 0) throw ConfigError("coercivity.n_random must be >= 0");
    }

    if (j.contains("convergence")) {
        const json& o = object_at(j, "convergence", "config");
        reject_unknown(o, "convergence", {"case", "grids"});
        try {
            c.convergence.which = convergence_case_from_string(text(o, "case", to_string(c.convergence.which), "convergence"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (o.contains("grids")) {
            const json& g = o.at("grids");
            if (!g.is_array() || g.empty()) throw ConfigError("convergence.grids must be a non-empty array");
            c.convergence.grids.clear();
            for (const auto& v : g) {
                if (!v.is_number_integer() || v.get<int>() < 1) {
                    throw ConfigError("convergence.grids must hold positive integers");
                }
                c.convergence.grids.push_back(v.get<int>());
            }
        }
    }

    if (j.contains("gradcheck")) {
        const json& o = object_at(j, "gradcheck", "config");
        reject_unknown(o, "gradcheck", {"n_fields", "exponents", "tolerance", "low_p_tolerance"});
        c.gradcheck.n_fields = static_cast<int>(integer(o, "n_fields", c.gradcheck.n_fields, "gradcheck"));
        if (c.gradcheck.n_fields < 1) throw ConfigError("gradcheck.n_fields must be >= 1");
        c.gradcheck.tolerance = number(o, "tolerance", c.gradcheck.tolerance, "gradcheck");
        c.gradcheck.low_p_tolerance = number(o, "low_p_tolerance", c.gradcheck.low_p_tolerance, "gradcheck");
        if (o.contains("exponents")) {
            const json& e = o.at("exponents");
            if (!e.is_array() || e.empty()) throw ConfigError("gradcheck.exponents must be a non-empty array");
            c.gradcheck.exponents.clear();
            for (const auto& v : e) {
                if (!v.is_number()) throw ConfigError("gradcheck.exponents must hold numbers");
                c.gradcheck.exponents.push_back(v.get<double>());
            }
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c)
{
    const ProblemSpec& ps = c.problem;
    const int dim = ps.grid.dimension;
    json j;
    j["grid"] = {{"dimension", dim}, {"box", box_json(ps.grid.bounding_box, dim)}, {"h", ps.grid.h}};
    json local = json::array();
    json nonlocal = json::array();
    for (const auto& b : ps.regions.local_boxes) local.push_back(box_json(b, dim));
    for (const auto& b : ps.regions.nonlocal_boxes) nonlocal.push_back(box_json(b, dim));
    j["regions"] = {{"local", local}, {"nonlocal", nonlocal}};
    j["delta"] = ps.delta;
    j["kernel"] = {{"shape", ps.kernel.shape == KernelShape::Indicator ? "indicator" : "polynomial_bump"},
                   {"amplitude", ps.kernel.amplitude},
                   {"radius", ps.kernel.support_radius},
                   {"exponent", ps.kernel.bump_exponent}};
    j["p"] = ps.p;
    j["regularization"] = ps.regularization;
    if (ps.source.form == SourceForm::Affine) {
        j["source"] = {{"form", "affine"}, {"g", profile_json(ps.source.g)}};
    } else {
        j["source"] = {{"form", "monotone_power"},
                       {"a", profile_json(ps.source.a)},
                       {"b", profile_json(ps.source.b)},
                       {"q", ps.source.q},
                       {"s", std::isinf(ps.source.s) ? json(nullptr) : json(ps.source.s)}};
    }
    j["solve"] = {{"grad_tol", c.solve.grad_tol ? json(*c.solve.grad_tol) : json(nullptr)},
                  {"max_iters", c.solve.max_iters},
                  {"step_rule", to_string(c.solve.step_rule)},
                  {"armijo_c", c.solve.armijo_c},
                  {"backtrack_factor", c.solve.backtrack_factor},
                  {"initial_step", c.solve.initial_step},
                  {"seed", c.solve.seed},
                  {"history_every", c.solve.history_every},
                  {"start", c.start == StartKind::Zero ? "zero" : "random"}};
    j["output"] = {{"dir", c.output.dir}, {"history", c.output.history}, {"psi", c.output.psi}};
    j["coercivity"] = {{"n_random", c.coercivity.n_random}, {"threshold", c.coercivity.threshold}};
    j["convergence"] = {{"case", to_string(c.convergence.which)}, {"grids", c.convergence.grids}};
    j["gradcheck"] = {{"n_fields", c.gradcheck.n_fields},
                      {"exponents", c.gradcheck.exponents},
                      {"tolerance", c.gradcheck.tolerance},
                      {"low_p_tolerance", c.gradcheck.low_p_tolerance}};
    return j;
}

}  // namespace lnl
