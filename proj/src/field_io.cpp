#include "leray/field_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace leray {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_header(std::ostream& os, const PolarGrid& g, const char* kind) {
    os << "polar-field v1\n" << g.n_r() << ' ' << g.n_theta() << ' ' << fmt17(g.r_outer()) << ' ' << kind;
    if (g.r_inner() != 1.0) os << ' ' << fmt17(g.r_inner());
    os << '\n';
}

double parse_double(const std::string& tok, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw std::runtime_error("polar-field: bad number '" + tok + "' on line " + std::to_string(line));
    return v;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    write_header(os, f.grid(), "scalar");
    for (double v : f.values()) os << fmt17(v) << '\n';
}

void write_field(std::ostream& os, const VectorField& w) {
    write_header(os, w.grid(), "vector");
    for (std::size_t k = 0; k < w.w1().size(); ++k) os << fmt17(w.w1()[k]) << ' ' << fmt17(w.w2()[k]) << '\n';
}

template <class Field>
static void write_file(const std::filesystem::path& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_field(os, f);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

void write_field(const std::filesystem::path& path, const ScalarField& f) { write_file(path, f); }
void write_field(const std::filesystem::path& path, const VectorField& w) { write_file(path, w); }

AnyField read_field(std::istream& is, GridPtr grid) {
    std::string line;
    if (!std::getline(is, line) || line != "polar-field v1")
        throw std::runtime_error("polar-field: missing 'polar-field v1' magic line");
    if (!std::getline(is, line)) throw std::runtime_error("polar-field: missing header line");

    std::istringstream hdr(line);
    std::size_t n_r = 0, n_theta = 0;
    std::string r_outer_tok, kind, r_inner_tok;
    if (!(hdr >> n_r >> n_theta >> r_outer_tok >> kind))
        throw std::runtime_error("polar-field: malformed header '" + line + "'");
    const double r_outer = parse_double(r_outer_tok, 2);
    const double r_inner = (hdr >> r_inner_tok) ? parse_double(r_inner_tok, 2) : 1.0;
    if (kind != "scalar" && kind != "vector") throw std::runtime_error("polar-field: unknown kind '" + kind + "'");

    auto header_grid = std::make_shared<const PolarGrid>(n_r, n_theta, r_inner, r_outer);
    if (!grid || !grid->same_layout(*header_grid)) grid = header_grid;

    const std::size_t n = grid->size();
    const std::size_t per_line = kind == "scalar" ? 1 : 2;
    std::vector<double> a(n), b(per_line == 2 ? n : 0);
    std::string tok;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::getline(is, line)) throw std::runtime_error("polar-field: truncated at node " + std::to_string(k));
        std::istringstream ls(line);
        if (!(ls >> tok)) throw std::runtime_error("polar-field: empty line " + std::to_string(k + 3));
        a[k] = parse_double(tok, k + 3);
        if (per_line == 2) {
            if (!(ls >> tok)) throw std::runtime_error("polar-field: missing second component, line " + std::to_string(k + 3));
            b[k] = parse_double(tok, k + 3);
        }
    }
    if (per_line == 1) return ScalarField(grid, std::move(a));
    return VectorField(ScalarField(grid, std::move(a)), ScalarField(grid, std::move(b)));
}

AnyField read_field(const std::filesystem::path& path, GridPtr grid) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    try {
        return read_field(is, std::move(grid));
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

ScalarField read_scalar_field(const std::filesystem::path& path, GridPtr grid) {
    auto f = read_field(path, std::move(grid));
    if (!std::holds_alternative<ScalarField>(f)) throw std::runtime_error(path.string() + ": expected scalar field");
    return std::get<ScalarField>(std::move(f));
}

VectorField read_vector_field(const std::filesystem::path& path, GridPtr grid) {
    auto f = read_field(path, std::move(grid));
    if (!std::holds_alternative<VectorField>(f)) throw std::runtime_error(path.string() + ": expected vector field");
    return std::get<VectorField>(std::move(f));
}

}  // namespace leray
