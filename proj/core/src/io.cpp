#include "fdlab/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "field format is defined little-endian; byte swapping not implemented");

namespace fdlab {

namespace {

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::int64_t get_i64(std::istream& is) {
    std::int64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

struct Header {
    std::int64_t dim, n, m;
    double length, height, gamma;
};

void write_header(std::ostream& os, const Header& h) {
    put_i64(os, h.dim);
    put_i64(os, h.n);
    put_f64(os, h.length);
    put_i64(os, h.m);
    put_f64(os, h.height);
    put_f64(os, h.gamma);
}

Header read_header(std::istream& is) {
    Header h;
    h.dim = get_i64(is);
    h.n = get_i64(is);
    h.length = get_f64(is);
    h.m = get_i64(is);
    h.height = get_f64(is);
    h.gamma = get_f64(is);
    if (!is) throw std::runtime_error("field read: truncated header");
    return h;
}

std::ofstream open_out(const std::string& path, std::ios_base::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return is;
}

} // namespace

void write_field(const std::string& path, const ScalarField& f) {
    auto os = open_out(path, std::ios::binary);
    write_header(os, {f.grid.dim, f.grid.n, 0, f.grid.length, 0.0, 0.0});
    os.write(reinterpret_cast<const char*>(f.values.data()), 8 * f.values.size());
    if (!os) throw std::runtime_error("field write failed: " + path);
}

void write_field(const std::string& path, const ExtendedField& f) {
    auto os = open_out(path, std::ios::binary);
    write_header(os, {f.xgrid.dim, f.xgrid.n, f.ygrid.m, f.xgrid.length, f.ygrid.height,
                      f.ygrid.gamma});
    os.write(reinterpret_cast<const char*>(f.values.data()), 8 * f.values.size());
    if (!os) throw std::runtime_error("field write failed: " + path);
}

ScalarField read_scalar_field(const std::string& path) {
    auto is = open_in(path);
    Header h = read_header(is);
    if (h.m != 0) throw std::runtime_error("field read: expected scalar field in " + path);
    ScalarField f(TorusGrid::make(static_cast<int>(h.dim), static_cast<int>(h.n), h.length));
    is.read(reinterpret_cast<char*>(f.values.data()), 8 * f.values.size());
    if (!is) throw std::runtime_error("field read: truncated values in " + path);
    return f;
}

ExtendedField read_extended_field(const std::string& path) {
    auto is = open_in(path);
    Header h = read_header(is);
    if (h.m == 0) throw std::runtime_error("field read: expected extended field in " + path);
    TorusGrid xg = TorusGrid::make(static_cast<int>(h.dim), static_cast<int>(h.n), h.length);
    GradedYGrid yg = make_graded_grid(h.height, static_cast<int>(h.m), h.gamma);
    ExtendedField f(xg, yg);
    is.read(reinterpret_cast<char*>(f.values.data()), 8 * f.values.size());
    if (!is) throw std::runtime_error("field read: truncated values in " + path);
    return f;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column mismatch");
    std::size_t rows = columns[0].size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

    auto os = open_out(path, std::ios::out);
    for (std::size_t j = 0; j < header.size(); ++j)
        os << header[j] << (j + 1 < header.size() ? "," : "\n");
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            os << format_double(columns[j][i]) << (j + 1 < columns.size() ? "," : "\n");
    if (!os) throw std::runtime_error("csv write failed: " + path);
}

void write_field_csv(const std::string& path, const ScalarField& f) {
    const TorusGrid& g = f.grid;
    if (g.dim == 1) {
        std::vector<double> x(g.n), v(g.n);
        for (int i = 0; i < g.n; ++i) {
            x[i] = g.signed_coord(i);
            v[i] = f.values[i];
        }
        write_csv(path, {"x", "value"}, {x, v});
    } else {
        std::size_t total = g.num_nodes();
        std::vector<double> x0(total), x1(total), v(total);
        std::size_t r = 0;
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1, ++r) {
                x0[r] = g.signed_coord(i0);
                x1[r] = g.signed_coord(i1);
                v[r] = f.at(i0, i1);
            }
        write_csv(path, {"x0", "x1", "value"}, {x0, x1, v});
    }
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        auto os = open_out(tmp, std::ios::out | std::ios::trunc);
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename failed: " + path);
}

} // namespace fdlab
