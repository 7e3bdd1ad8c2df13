#include "odfrac/field_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace odfrac {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& os, const GridSpec& g) {
    os << "# grid n=" << g.dim << " L=" << format_double(g.half_width)
       << " N=" << g.points_per_axis << "\n";
}

[[noreturn]] void fail_row(std::int64_t line, const std::string& what) {
    throw std::runtime_error("csv: line " + std::to_string(line) + ": " + what);
}

GridSpec read_header(std::istream& is, std::int64_t& line) {
    std::string s;
    if (!std::getline(is, s)) fail_row(1, "missing header");
    ++line;
    int n = 0, N = 0;
    double L = 0.0;
    if (std::sscanf(s.c_str(), "# grid n=%d L=%lf N=%d", &n, &L, &N) != 3)
        fail_row(line, "malformed grid header '" + s + "'");
    return make_grid(n, L, N);
}

// Strict field-by-field parse of "i[,j[,k,l]],value".
bool parse_row(const std::string& s, int nidx, long idx[4], double& val) {
    const char* p = s.c_str();
    char* end = nullptr;
    for (int k = 0; k < nidx; ++k) {
        idx[k] = std::strtol(p, &end, 10);
        if (end == p || *end != ',') return false;
        p = end + 1;
    }
    val = std::strtod(p, &end);
    if (end == p) return false;
    while (*end == ' ' || *end == '\r') ++end;
    return *end == '\0';
}

}  // namespace

void write_scalar_csv(std::ostream& os, const ScalarField& f) {
    write_header(os, f.grid);
    const std::int64_t K = f.grid.node_count();
    for (std::int64_t i = 0; i < K; ++i) {
        auto idx = f.grid.unflatten(i);
        os << idx[0];
        if (f.grid.dim == 2) os << ',' << idx[1];
        os << ',' << format_double(f.values[i]) << "\n";
    }
}

void write_od_csv(std::ostream& os, const OffDiagonalField& f) {
    write_header(os, f.grid);
    const std::int64_t K = f.grid.node_count();
    for (std::int64_t i = 0; i < K; ++i) {
        auto ii = f.grid.unflatten(i);
        for (std::int64_t j = 0; j < K; ++j) {
            if (i == j) continue;
            auto jj = f.grid.unflatten(j);
            os << ii[0];
            if (f.grid.dim == 2) os << ',' << ii[1];
            os << ',' << jj[0];
            if (f.grid.dim == 2) os << ',' << jj[1];
            os << ',' << format_double(f.value(i, j)) << "\n";
        }
    }
}

ScalarField read_scalar_csv(std::istream& is) {
    std::int64_t line = 0;
    GridSpec g = read_header(is, line);
    ScalarField f = zero_scalar(g);
    const int nidx = g.dim;
    std::string s;
    std::int64_t seen = 0;
    while (std::getline(is, s)) {
        ++line;
        if (s.empty()) continue;
        long idx[4];
        double v;
        if (!parse_row(s, nidx, idx, v)) fail_row(line, "malformed row '" + s + "'");
        std::array<int, 2> mi = {static_cast<int>(idx[0]),
                                 g.dim == 2 ? static_cast<int>(idx[1]) : 0};
        if (mi[0] < 0 || mi[0] >= g.points_per_axis || mi[1] < 0 ||
            mi[1] >= g.points_per_axis)
            fail_row(line, "node index out of range");
        f.values[g.flatten(mi)] = v;
        ++seen;
    }
    if (seen != g.node_count()) fail_row(line, "wrong number of node rows");
    return f;
}

OffDiagonalField read_od_csv(std::istream& is) {
    std::int64_t line = 0;
    GridSpec g = read_header(is, line);
    OffDiagonalField f = zero_od(g);
    const int nidx = 2 * g.dim;
    std::string s;
    std::int64_t seen = 0;
    while (std::getline(is, s)) {
        ++line;
        if (s.empty()) continue;
        long idx[4];
        double v;
        if (!parse_row(s, nidx, idx, v)) fail_row(line, "malformed row '" + s + "'");
        std::array<int, 2> mi, mj;
        if (g.dim == 1) {
            mi = {static_cast<int>(idx[0]), 0};
            mj = {static_cast<int>(idx[1]), 0};
        } else {
            mi = {static_cast<int>(idx[0]), static_cast<int>(idx[1])};
            mj = {static_cast<int>(idx[2]), static_cast<int>(idx[3])};
        }
        for (int c : {mi[0], mi[1], mj[0], mj[1]})
            if (c < 0 || c >= g.points_per_axis) fail_row(line, "node index out of range");
        std::int64_t a = g.flatten(mi), b = g.flatten(mj);
        if (a == b) fail_row(line, "diagonal pair in off-diagonal file");
        if (a < b) f.upper[f.upper_index(a, b)] = v;  // lower orientation implied
        ++seen;
    }
    const std::int64_t K = g.node_count();
    if (seen != K * (K - 1)) fail_row(line, "wrong number of pair rows");
    return f;
}

namespace {

template <class F>
void save_file(const std::string& path, F&& write) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write(os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

template <class R>
auto load_file(const std::string& path, R&& read) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read(is);
}

}  // namespace

void save_scalar_csv(const std::string& path, const ScalarField& f) {
    save_file(path, [&](std::ostream& os) { write_scalar_csv(os, f); });
}

void save_od_csv(const std::string& path, const OffDiagonalField& f) {
    save_file(path, [&](std::ostream& os) { write_od_csv(os, f); });
}

ScalarField load_scalar_csv(const std::string& path) {
    return load_file(path, [](std::istream& is) { return read_scalar_csv(is); });
}

OffDiagonalField load_od_csv(const std::string& path) {
    return load_file(path, [](std::istream& is) { return read_od_csv(is); });
}

}  // namespace odfrac
