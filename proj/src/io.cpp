#include "offdiag/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace offdiag {

namespace {

IndexWindow window_from_header(std::int64_t n, std::int64_t d, std::int64_t radius) {
    if (d < 1 || radius < 0) throw std::runtime_error("matrix header is malformed");
    IndexWindow w = make_window(Lattice::integers(static_cast<int>(d)),
                                static_cast<int>(radius));
    if (w.size() != static_cast<std::size_t>(n))
        throw std::runtime_error("matrix header size does not match the window");
    return w;
}

}  // namespace

void save_matrix_csv(const OperatorMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    const std::size_t n = a.size();
    out << n << "," << a.window.lattice.dimension << "," << a.window.radius << "\n";
    char buf[96];
    for (const auto& e : a.entries) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e.real(), e.imag());
        out << buf;
    }
}

OperatorMatrix load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file");
    std::int64_t n = 0, d = 0, radius = 0;
    char c1 = 0, c2 = 0;
    std::istringstream hdr(line);
    if (!(hdr >> n >> c1 >> d >> c2 >> radius) || c1 != ',' || c2 != ',')
        throw std::runtime_error("matrix header is malformed");

    OperatorMatrix a = OperatorMatrix::zeros(window_from_header(n, d, radius));
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("matrix file truncated");
        double re = 0.0, im = 0.0;
        char comma = 0;
        std::istringstream row(line);
        if (!(row >> re >> comma >> im) || comma != ',')
            throw std::runtime_error("matrix row is malformed");
        a.entries[i] = cplx(re, im);
    }
    return a;
}

void save_matrix_binary(const OperatorMatrix& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    const std::int64_t header[3] = {static_cast<std::int64_t>(a.size()),
                                    a.window.lattice.dimension, a.window.radius};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    out.write(reinterpret_cast<const char*>(a.entries.data()),
              static_cast<std::streamsize>(a.entries.size() * sizeof(cplx)));
}

OperatorMatrix load_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::int64_t header[3] = {0, 0, 0};
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in) throw std::runtime_error("matrix file truncated");
    OperatorMatrix a = OperatorMatrix::zeros(window_from_header(header[0], header[1], header[2]));
    in.read(reinterpret_cast<char*>(a.entries.data()),
            static_cast<std::streamsize>(a.entries.size() * sizeof(cplx)));
    if (!in) throw std::runtime_error("matrix file truncated");
    return a;
}

}  // namespace offdiag
