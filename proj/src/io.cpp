#include "wwmv/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "wwmv/errors.hpp"

namespace wwmv {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const char* what) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError(std::string("bad number for ") + what + ": '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const char* what) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    return static_cast<int>(v);
}

std::size_t group_order(const std::vector<int>& orders) {
    std::size_t s = 1;
    for (int o : orders) s *= static_cast<std::size_t>(o);
    return s;
}

}  // namespace

const char* kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::wavefunction: return "wavefunction";
        case FieldKind::momentum: return "momentum";
        case FieldKind::kernel: return "kernel";
        case FieldKind::phase2d: return "phase2d";
        case FieldKind::groupfn: return "groupfn";
    }
    return "?";
}

FieldKind parse_kind(const std::string& s) {
    for (auto k : {FieldKind::wavefunction, FieldKind::momentum, FieldKind::kernel,
                   FieldKind::phase2d, FieldKind::groupfn})
        if (s == kind_name(k)) return k;
    throw ParseError("unknown field kind '" + s + "'");
}

std::size_t expected_samples(const FieldFile& f) {
    switch (f.kind) {
        case FieldKind::wavefunction:
        case FieldKind::momentum: return f.grid.size();
        case FieldKind::kernel:
        case FieldKind::phase2d: return f.grid.size() * f.grid.size();
        case FieldKind::groupfn: return group_order(f.orders);
    }
    return 0;
}

void write_field(std::ostream& os, const FieldFile& f) {
    os << "wwmv " << kind_name(f.kind) << " 1\n";
    if (f.kind == FieldKind::groupfn) {
        os << "meta orders=";
        for (std::size_t i = 0; i < f.orders.size(); ++i) os << (i ? "," : "") << f.orders[i];
        os << '\n';
    } else {
        os << "meta n=" << f.grid.dim << " N=" << f.grid.points << " L=" << fmt17(f.grid.length)
           << " hbar=" << fmt17(f.grid.hbar) << " mass=" << fmt17(f.grid.mass) << '\n';
    }
    for (const auto& v : f.values) os << fmt17(v.real()) << ' ' << fmt17(v.imag()) << '\n';
    if (!os) throw IoError("write failed");
}

FieldFile read_field(std::istream& is) {
    FieldFile f;
    std::string line;
    if (!std::getline(is, line)) throw ParseError("missing header line");
    {
        std::istringstream hs(line);
        std::string magic, kind, version;
        hs >> magic >> kind >> version;
        if (magic != "wwmv") throw ParseError("not a wwmv field file");
        if (version != "1") throw ParseError("unsupported field file version '" + version + "'");
        f.kind = parse_kind(kind);
    }
    if (!std::getline(is, line)) throw ParseError("missing meta line");
    {
        std::istringstream ms(line);
        std::string tag;
        ms >> tag;
        if (tag != "meta") throw ParseError("second line must start with 'meta'");
        std::map<std::string, std::string> kv;
        std::string tok;
        while (ms >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("bad meta token '" + tok + "'");
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        if (f.kind == FieldKind::groupfn) {
            if (!kv.count("orders")) throw ParseError("groupfn meta needs orders=");
            std::stringstream os(kv["orders"]);
            std::string part;
            while (std::getline(os, part, ',')) {
                int o = parse_int(part, "orders");
                if (o < 1) throw ParseError("group orders must be positive");
                f.orders.push_back(o);
            }
            if (f.orders.empty()) throw ParseError("empty orders list");
        } else {
            for (const char* key : {"n", "N", "L", "hbar", "mass"})
                if (!kv.count(key)) throw ParseError(std::string("meta missing ") + key);
            f.grid.dim = parse_int(kv["n"], "n");
            f.grid.points = parse_int(kv["N"], "N");
            f.grid.length = parse_double(kv["L"], "L");
            f.grid.hbar = parse_double(kv["hbar"], "hbar");
            f.grid.mass = parse_double(kv["mass"], "mass");
            try {
                f.grid.validate();
            } catch (const ValidationError& e) {
                throw ParseError(e.what());
            }
        }
    }
    std::size_t want = expected_samples(f);
    // groupfn may also carry a phase-space function of length |G|^2
    std::size_t alt = f.kind == FieldKind::groupfn ? want * want : want;
    f.values.reserve(want);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string re, im;
        ls >> re >> im;
        if (im.empty()) throw ParseError("sample line needs '<re> <im>'");
        f.values.emplace_back(parse_double(re, "sample"), parse_double(im, "sample"));
    }
    if (f.values.size() != want && f.values.size() != alt)
        throw ParseError("sample count " + std::to_string(f.values.size()) + " does not match " +
                         std::to_string(want));
    return f;
}

void write_field_file(const std::string& path, const FieldFile& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_field(os, f);
}

FieldFile read_field_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read_field(is);
}

}  // namespace wwmv
