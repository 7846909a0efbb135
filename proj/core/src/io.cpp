#include "shadowlab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace shadowlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_hpolytope(std::ostream& os, const HPolytope& p) {
    os << "hpoly " << p.rows() << ' ' << p.dim() << '\n';
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.dim(); ++j) os << format_double(p.A(i, j)) << ' ';
        os << format_double(p.rhs(i)) << '\n';
    }
}

HPolytope read_hpolytope(std::istream& is) {
    std::string tag;
    Index m = 0, d = 0;
    if (!(is >> tag >> m >> d) || tag != "hpoly" || m < 1 || d < 1)
        throw ParseError("read_hpolytope: bad header");
    Matrix A(m, d);
    Vector rhs(m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < d; ++j)
            if (!(is >> A(i, j))) throw ParseError("read_hpolytope: bad row entry");
        if (!(is >> rhs(i))) throw ParseError("read_hpolytope: bad rhs entry");
    }
    return HPolytope(std::move(A), std::move(rhs));
}

void write_cloud(std::ostream& os, const PointCloud& cloud) {
    os << "cloud " << cloud.size() << ' ' << cloud.dim() << '\n';
    for (const Vector& p : cloud.points) {
        for (Index j = 0; j < p.size(); ++j) {
            if (j) os << ' ';
            os << format_double(p(j));
        }
        os << '\n';
    }
}

PointCloud read_cloud(std::istream& is) {
    std::string tag;
    Index n = 0, d = 0;
    if (!(is >> tag >> n >> d) || tag != "cloud" || n < 1 || d < 1)
        throw ParseError("read_cloud: bad header");
    PointCloud cloud;
    cloud.points.reserve(n);
    for (Index i = 0; i < n; ++i) {
        Vector p(d);
        for (Index j = 0; j < d; ++j)
            if (!(is >> p(j))) throw ParseError("read_cloud: bad entry");
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

void save_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

std::string load_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::uint64_t content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace shadowlab
