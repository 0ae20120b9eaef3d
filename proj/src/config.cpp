#include "landis/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace landis {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Object view that rejects keys nobody asked about.
class Obj {
public:
    Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }
    ~Obj() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(join(path_, it.key()), "unknown key");
    }
    bool has(const std::string& k) {
        seen_.insert(k);
        return j_.contains(k);
    }
    const Json& at(const std::string& k) {
        seen_.insert(k);
        return j_.at(k);
    }
    std::string path(const std::string& k) const { return join(path_, k); }

    void num(const std::string& k, double& out) {
        if (!has(k)) return;
        const Json& v = at(k);
        if (!v.is_number()) fail(path(k), "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out)) fail(path(k), "must be finite");
    }
    void integer(const std::string& k, int& out) {
        if (!has(k)) return;
        const Json& v = at(k);
        if (!v.is_number_integer()) fail(path(k), "expected an integer");
        out = v.get<int>();
    }
    void boolean(const std::string& k, bool& out) {
        if (!has(k)) return;
        const Json& v = at(k);
        if (!v.is_boolean()) fail(path(k), "expected true or false");
        out = v.get<bool>();
    }
    void str(const std::string& k, std::string& out) {
        if (!has(k)) return;
        const Json& v = at(k);
        if (!v.is_string()) fail(path(k), "expected a string");
        out = v.get<std::string>();
    }
    void numbers(const std::string& k, std::vector<double>& out) {
        if (!has(k)) return;
        const Json& v = at(k);
        if (!v.is_array()) fail(path(k), "expected an array of numbers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number()) fail(path(k), "expected an array of numbers");
            out.push_back(e.get<double>());
        }
    }
    void point(const std::string& k, Point& out) {
        if (!has(k)) return;
        out = parse_point(at(k), path(k));
    }
    static Point parse_point(const Json& v, const std::string& p) {
        if (!v.is_array() || v.empty() || v.size() > 2) fail(p, "expected [x] or [x, y]");
        Point x{0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail(p, "expected numeric coordinates");
            x[i] = v[i].get<double>();
        }
        return x;
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class F>
auto guarded(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

FunctionDescriptor parse_function(const Json& j, const std::string& path) {
    if (j.is_number()) return constant_function(j.get<double>());
    Obj o(j, path);
    std::string kind;
    o.str("kind", kind);
    if (kind.empty()) fail(o.path("kind"), "missing builtin name");
    FunctionDescriptor d;
    d.kind = guarded(o.path("kind"), [&] { return function_kind_from_string(kind); });
    for (const auto& [name, value] : d.fields()) {
        double v = value;
        o.num(name, v);
        guarded(o.path(name), [&] {
            d.set_field(name, v);
            return 0;
        });
    }
    return d;
}

Json function_json(const FunctionDescriptor& d) {
    Json j;
    j["kind"] = to_string(d.kind);
    for (const auto& [name, value] : d.fields()) j[name] = value;
    return j;
}

Json point_json(const Point& x, int N) { return N == 1 ? Json::array({x[0]}) : Json::array({x[0], x[1]}); }

Modulation parse_modulation(const Json& j, const std::string& path) {
    Obj o(j, path);
    Modulation m;
    o.integer("sectors", m.sectors);
    o.numbers("shell_edges", m.shell_edges);
    o.numbers("values", m.values);
    return m;
}

Json modulation_json(const Modulation& m) {
    Json j;
    j["sectors"] = m.sectors;
    j["shell_edges"] = m.shell_edges;
    j["values"] = m.values;
    return j;
}

}  // namespace

OperatorSpec ExperimentConfig::op() const {
    if (mode == OperatorMode::pucci_plus || mode == OperatorMode::pucci_minus)
        return OperatorSpec::pucci(mode == OperatorMode::pucci_plus, params);
    std::vector<KernelSpec> ks;
    if (fractional_laplacian) {
        ks.push_back(fractional_laplacian_kernel(params));
    } else {
        for (const Modulation& m : family) ks.push_back(KernelSpec{params, m});
    }
    if (mode == OperatorMode::single) {
        if (ks.size() != 1) throw ConfigError("config field 'operator.family': single mode needs exactly one kernel");
        return OperatorSpec::single(ks.front());
    }
    const Params bounds = fractional_laplacian ? ks.front().params : params;
    return mode == OperatorMode::sup ? OperatorSpec::sup(ks, bounds) : OperatorSpec::inf(ks, bounds);
}

void ExperimentConfig::validate() const {
    guarded("params", [&] {
        params.validate();
        return 0;
    });
    guarded("domain", [&] {
        domain.validate();
        return 0;
    });
    guarded("quadrature", [&] {
        quadrature.validate();
        return 0;
    });
    guarded("operator", [&] {
        op().validate();
        return 0;
    });
    guarded("exhaustion", [&] {
        exhaustion.validate(params.N);
        return 0;
    });
    const Tolerances& t = tolerances;
    for (double v : {t.solve, t.residual, t.exhaustion, t.defect, t.zero})
        if (!(v > 0.0)) fail("tolerances", "every tolerance must be positive");
    if (R_list.empty()) fail("R_list", "must be nonempty");
    for (std::size_t i = 0; i < R_list.size(); ++i)
        if (!(R_list[i] > 0.0) || (i > 0 && !(R_list[i] > R_list[i - 1])))
            fail("R_list", "radii must be positive and increasing");
    if (!(C0 >= 0.0)) fail("harnack.C0", "must be >= 0");
    if (!(r0 > 0.0 && r0 <= 1.0)) fail("harnack.r0", "must lie in (0, 1]");
    if (!(slack >= 0.0)) fail("harnack.slack", "must be >= 0");
    if (!(C_budget > 0.0)) fail("harnack.C_budget", "must be positive");
    if (!(decay_R_min > 0.0 && decay_R_max > decay_R_min)) fail("decay", "need 0 < R_min < R_max");
    if (u.kind == InputSource::Kind::file && u.path.empty()) fail("u.path", "missing file path");
}

ExperimentConfig parse_config(const Json& j) {
    ExperimentConfig c;
    Obj root(j, "");
    if (root.has("params")) {
        Obj o(root.at("params"), "params");
        o.integer("N", c.params.N);
        o.num("s", c.params.s);
        o.num("lambda", c.params.lambda);
        o.num("Lambda", c.params.Lambda);
    }
    c.domain.N = c.params.N;
    if (root.has("operator")) {
        Obj o(root.at("operator"), "operator");
        std::string mode = to_string(c.mode);
        o.str("mode", mode);
        c.mode = guarded(o.path("mode"), [&] { return operator_mode_from_string(mode); });
        std::string kernel = c.fractional_laplacian ? "fractional_laplacian" : "family";
        o.str("kernel", kernel);
        if (kernel != "fractional_laplacian" && kernel != "family")
            fail(o.path("kernel"), "expected 'fractional_laplacian' or 'family'");
        c.fractional_laplacian = kernel == "fractional_laplacian";
        if (o.has("family")) {
            const Json& fam = o.at("family");
            if (!fam.is_array()) fail(o.path("family"), "expected an array");
            for (std::size_t i = 0; i < fam.size(); ++i)
                c.family.push_back(parse_modulation(fam[i], o.path("family") + "[" + std::to_string(i) + "]"));
        }
    }
    if (root.has("domain")) {
        Obj o(root.at("domain"), "domain");
        o.point("center", c.domain.center);
        o.num("R", c.domain.R);
        o.num("h", c.domain.h);
        o.num("R_cut", c.domain.R_cut);
        std::string shape = to_string(c.domain.shape);
        o.str("shape", shape);
        c.domain.shape = guarded(o.path("shape"), [&] { return shape_from_string(shape); });
        o.num("hole", c.domain.hole);
    }
    if (root.has("quadrature")) {
        Obj o(root.at("quadrature"), "quadrature");
        o.integer("core_cells", c.quadrature.core_cells);
        o.num("tail_tol", c.quadrature.tail_tol);
    }
    if (root.has("potential")) c.potential = parse_function(root.at("potential"), "potential");
    if (root.has("f")) c.f = parse_function(root.at("f"), "f");
    if (root.has("g")) c.g = parse_function(root.at("g"), "g");
    if (root.has("reference")) {
        c.reference = parse_function(root.at("reference"), "reference");
        c.has_reference = true;
    }
    if (root.has("u")) {
        const Json& u = root.at("u");
        if (u.is_object() && u.contains("from")) {
            Obj o(u, "u");
            std::string from;
            o.str("from", from);
            if (from == "file") {
                c.u.kind = InputSource::Kind::file;
                o.str("path", c.u.path);
            } else if (from == "solve") {
                c.u.kind = InputSource::Kind::solve;
            } else if (from == "supersolution") {
                c.u.kind = InputSource::Kind::supersolution;
            } else {
                fail(o.path("from"), "expected 'file', 'solve' or 'supersolution'");
            }
        } else {
            c.u.function = parse_function(u, "u");
        }
    }
    if (root.has("points")) {
        const Json& p = root.at("points");
        if (!p.is_array()) fail("points", "expected an array of points");
        for (std::size_t i = 0; i < p.size(); ++i)
            c.points.push_back(Obj::parse_point(p[i], "points[" + std::to_string(i) + "]"));
    }
    if (root.has("tolerances")) {
        Obj o(root.at("tolerances"), "tolerances");
        o.num("solve", c.tolerances.solve);
        o.num("residual", c.tolerances.residual);
        o.num("exhaustion", c.tolerances.exhaustion);
        o.num("defect", c.tolerances.defect);
        o.num("zero", c.tolerances.zero);
    }
    c.exhaustion.tol = c.tolerances.exhaustion;
    if (root.has("exhaustion")) {
        Obj o(root.at("exhaustion"), "exhaustion");
        o.point("x0", c.exhaustion.x0);
        o.numbers("radii", c.exhaustion.radii);
        o.num("h0", c.exhaustion.h0);
        o.integer("max_nodes_per_dim", c.exhaustion.max_nodes_per_dim);
        std::string norm_name = to_string(c.exhaustion.normalization);
        o.str("normalization", norm_name);
        c.exhaustion.normalization = guarded(o.path("normalization"), [&] { return normalization_from_string(norm_name); });
    }
    root.numbers("R_list", c.R_list);
    if (root.has("harnack")) {
        Obj o(root.at("harnack"), "harnack");
        o.num("C0", c.C0);
        o.num("r0", c.r0);
        o.num("slack", c.slack);
        o.num("C_budget", c.C_budget);
    }
    if (root.has("decay")) {
        Obj o(root.at("decay"), "decay");
        o.num("R_min", c.decay_R_min);
        o.num("R_max", c.decay_R_max);
    }
    root.str("output", c.output);
    c.validate();
    return c;
}

Json to_json(const ExperimentConfig& c) {
    const int N = c.params.N;
    Json j;
    j["params"] = {{"N", N}, {"s", c.params.s}, {"lambda", c.params.lambda}, {"Lambda", c.params.Lambda}};
    Json op;
    op["mode"] = to_string(c.mode);
    op["kernel"] = c.fractional_laplacian ? "fractional_laplacian" : "family";
    op["family"] = Json::array();
    for (const Modulation& m : c.family) op["family"].push_back(modulation_json(m));
    j["operator"] = op;
    j["domain"] = {{"center", point_json(c.domain.center, N)}, {"R", c.domain.R},      {"h", c.domain.h},
                   {"R_cut", c.domain.R_cut},                  {"shape", to_string(c.domain.shape)},
                   {"hole", c.domain.hole}};
    j["quadrature"] = {{"core_cells", c.quadrature.core_cells}, {"tail_tol", c.quadrature.tail_tol}};
    j["potential"] = function_json(c.potential);
    j["f"] = function_json(c.f);
    j["g"] = function_json(c.g);
    if (c.has_reference) j["reference"] = function_json(c.reference);
    switch (c.u.kind) {
        case InputSource::Kind::function: j["u"] = function_json(c.u.function); break;
        case InputSource::Kind::file: j["u"] = {{"from", "file"}, {"path", c.u.path}}; break;
        case InputSource::Kind::solve: j["u"] = {{"from", "solve"}}; break;
        case InputSource::Kind::supersolution: j["u"] = {{"from", "supersolution"}}; break;
    }
    j["points"] = Json::array();
    for (const Point& x : c.points) j["points"].push_back(point_json(x, N));
    const Tolerances& t = c.tolerances;
    j["tolerances"] = {{"solve", t.solve},   {"residual", t.residual}, {"exhaustion", t.exhaustion},
                       {"defect", t.defect}, {"zero", t.zero}};
    j["exhaustion"] = {{"x0", point_json(c.exhaustion.x0, N)},
                       {"radii", c.exhaustion.radii},
                       {"h0", c.exhaustion.h0},
                       {"max_nodes_per_dim", c.exhaustion.max_nodes_per_dim},
                       {"normalization", to_string(c.exhaustion.normalization)}};
    j["R_list"] = c.R_list;
    j["harnack"] = {{"C0", c.C0}, {"r0", c.r0}, {"slack", c.slack}, {"C_budget", c.C_budget}};
    j["decay"] = {{"R_min", c.decay_R_min}, {"R_max", c.decay_R_max}};
    j["output"] = c.output;
    return j;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset -> line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << origin << ": JSON syntax error at line " << line << ", column " << col;
        throw ConfigError(msg.str());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(parse_json_text(ss.str(), path));
}

void apply_override(Json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(text);
    } catch (const Json::parse_error&) {
        value = text;
    }
    Json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
        if (!node->is_object()) throw ConfigError("override key '" + key + "' walks into a non-object");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) *node = Json::object();
        start = dot + 1;
    }
}

std::string inputs_digest(const ExperimentConfig& c) {
    Json j = to_json(c);
    j.erase("output");
    return fnv1a_hex(j.dump());
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace landis
