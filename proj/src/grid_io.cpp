#include "landis/grid_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "landis/errors.hpp"

namespace landis {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& text, int line_no) {
    const char* first = text.data();
    const char* last = first + text.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw InputError("grid csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
    return v;
}

using KeyValues = std::map<std::string, std::string>;

KeyValues key_values(const std::vector<std::string>& cells, int line_no) {
    if (cells.size() % 2 != 1)
        throw InputError("grid csv line " + std::to_string(line_no) + ": unpaired key/value");
    KeyValues kv;
    for (std::size_t i = 1; i + 1 < cells.size(); i += 2) kv[cells[i]] = cells[i + 1];
    return kv;
}

const std::string& need(const KeyValues& kv, const std::string& key, int line_no) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw InputError("grid csv line " + std::to_string(line_no) + ": missing key '" + key + "'");
    return it->second;
}

void write_tail(std::ostream& os, const TailModel& tail) {
    os << "tail,kind,";
    switch (tail.kind()) {
    case TailModel::Kind::zero:
        os << "zero";
        break;
    case TailModel::Kind::constant:
        os << "constant,c," << format_double(tail.c());
        break;
    case TailModel::Kind::power_law:
        os << "power_law,c," << format_double(tail.c()) << ",p," << format_double(tail.p());
        break;
    case TailModel::Kind::explicit_fn: {
        if (!tail.descriptor())
            throw InputError("cannot serialize an explicit tail without a builtin descriptor");
        const auto& d = *tail.descriptor();
        os << "explicit,function," << to_string(d.kind);
        for (const auto& [key, value] : d.fields()) os << ',' << key << ',' << format_double(value);
        break;
    }
    }
    os << '\n';
}

TailModel read_tail(const KeyValues& kv, int line_no) {
    const std::string& kind = need(kv, "kind", line_no);
    const auto num = [&](const std::string& key) { return parse_double(need(kv, key, line_no), line_no); };
    if (kind == "zero") return TailModel::zero();
    if (kind == "constant") return TailModel::constant(num("c"));
    if (kind == "power_law") return TailModel::power_law(num("c"), num("p"));
    if (kind == "explicit") {
        FunctionDescriptor d;
        d.kind = function_kind_from_string(need(kv, "function", line_no));
        for (const auto& [key, value] : kv) {
            if (key == "kind" || key == "function") continue;
            d.set_field(key, parse_double(value, line_no));
        }
        return TailModel::from_descriptor(d);
    }
    throw InputError("grid csv line " + std::to_string(line_no) + ": unknown tail kind '" + kind + "'");
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction& u, const Params& params) {
    const DomainSpec& d = u.domain();
    os << "params,N," << params.N << ",s," << format_double(params.s) << ",lambda,"
       << format_double(params.lambda) << ",Lambda," << format_double(params.Lambda) << '\n';
    os << "domain,N," << d.N << ",cx," << format_double(d.center[0]) << ",cy," << format_double(d.center[1])
       << ",R," << format_double(d.R) << ",h," << format_double(d.h) << ",R_cut," << format_double(d.R_cut)
       << ",shape," << to_string(d.shape) << ",hole," << format_double(d.hole) << '\n';
    write_tail(os, u.tail());
    os << (d.N == 1 ? "index,x,value\n" : "index,x,y,value\n");
    for (std::size_t k = 0; k < u.size(); ++k) {
        const Point x = d.node(k);
        os << k << ',' << format_double(x[0]);
        if (d.N == 2) os << ',' << format_double(x[1]);
        os << ',' << format_double(u[k]) << '\n';
    }
}

LoadedGrid read_grid_csv(std::istream& is) {
    std::optional<Params> params;
    std::optional<DomainSpec> domain;
    std::optional<TailModel> tail;
    std::vector<double> values;
    bool in_rows = false;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line);
        const std::string& tag = cells[0];
        if (!in_rows) {
            if (tag == "params") {
                const auto kv = key_values(cells, line_no);
                Params p;
                p.N = static_cast<int>(parse_double(need(kv, "N", line_no), line_no));
                p.s = parse_double(need(kv, "s", line_no), line_no);
                p.lambda = parse_double(need(kv, "lambda", line_no), line_no);
                p.Lambda = parse_double(need(kv, "Lambda", line_no), line_no);
                p.validate();
                params = p;
            } else if (tag == "domain") {
                const auto kv = key_values(cells, line_no);
                DomainSpec d;
                const auto num = [&](const char* key) { return parse_double(need(kv, key, line_no), line_no); };
                d.N = static_cast<int>(num("N"));
                d.center = {num("cx"), num("cy")};
                d.R = num("R");
                d.h = num("h");
                d.R_cut = num("R_cut");
                d.shape = shape_from_string(need(kv, "shape", line_no));
                d.hole = num("hole");
                d.validate();
                domain = d;
            } else if (tag == "tail") {
                tail = read_tail(key_values(cells, line_no), line_no);
            } else if (tag == "index") {
                in_rows = true;
            } else {
                throw InputError("grid csv line " + std::to_string(line_no) + ": unexpected row '" + tag + "'");
            }
            continue;
        }
        if (!domain) throw InputError("grid csv: node rows before domain header");
        const std::size_t expected = domain->N == 1 ? 3 : 4;
        if (cells.size() != expected)
            throw InputError("grid csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected) + " columns");
        values.push_back(parse_double(cells.back(), line_no));
    }
    if (!params || !domain || !tail) throw InputError("grid csv: missing params/domain/tail header");
    if (params->N != domain->N) throw InputError("grid csv: params and domain dimensions differ");
    return {*params, GridFunction(*domain, std::move(values), *tail)};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << contents;
        os.flush();
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void save_grid_csv(const std::filesystem::path& path, const GridFunction& u, const Params& params) {
    std::ostringstream os;
    write_grid_csv(os, u, params);
    write_file_atomic(path, os.str());
}

LoadedGrid load_grid_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open grid file " + path.string());
    return read_grid_csv(is);
}

}  // namespace landis
