#include "picard/generators.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef PICARD_SOURCE_DATA_DIR
#define PICARD_SOURCE_DATA_DIR ""
#endif

namespace picard {

const Mat3& GeneratorData::by_name(const std::string& name) const {
    for (const auto& e : elems)
        if (e.name == name) return e.g;
    throw std::runtime_error("no generator named '" + name + "'");
}

std::vector<Mat3> GeneratorData::matrices() const {
    std::vector<Mat3> out;
    for (const auto& e : elems) out.push_back(e.g);
    return out;
}

std::string data_dir() {
    if (const char* env = std::getenv("PICARD_DATA_DIR"); env && *env) return env;
    namespace fs = std::filesystem;
    for (const char* cand : {"data", "../data", "../../data"})
        if (fs::is_directory(cand)) return cand;
    std::string src = PICARD_SOURCE_DATA_DIR;
    if (!src.empty() && fs::is_directory(src)) return src;
    throw std::runtime_error("cannot locate data directory (set PICARD_DATA_DIR)");
}

std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

Mat3 elem_w(int d) {
    Mat3 m = mat_identity(d);
    m.at(0, 0) = ring_zero(d);
    m.at(2, 2) = ring_zero(d);
    m.at(0, 2) = -ring_one(d);
    m.at(2, 0) = ring_one(d);
    return m;
}

Mat3 elem_tau(int d) {
    Mat3 m = mat_identity(d);
    m.at(0, 2) = ring_one(d);
    return m;
}

Mat3 elem_eps(int d) {
    Rng u = ring_root(d);
    Rng u2 = conj(u) * conj(u);
    Mat3 m = mat_identity(d);
    m.at(0, 0) = u;
    m.at(1, 1) = u2;
    m.at(2, 2) = u;
    return m;
}

namespace {

GeneratorData builtin_eisenstein() {
    const int d = 3;
    auto z = [&](int k) {  // zeta^k
        Rng r = ring_one(d), zeta = ring_root(d);
        for (int i = 0; i < ((k % 6) + 6) % 6; ++i) r = r * zeta;
        return r;
    };
    Rng zero = ring_zero(d), one = ring_one(d);
    Rng s3 = ring_sqrtD(d);  // sqrt(-3)

    GeneratorData gd;
    gd.d = d;
    gd.elems.push_back({"w", elem_w(d)});
    gd.elems.push_back({"tau", elem_tau(d)});
    gd.elems.push_back({"eps", elem_eps(d)});

    Mat3 sigma = mat_identity(d);
    sigma.at(0, 1) = s3;
    sigma.at(0, 2) = z(1);
    sigma.at(1, 2) = one;
    gd.elems.push_back({"sigma", sigma});

    Mat3 g1;
    g1.e = {z(5), zero, z(2),
            -one, z(2), one,
            z(4), s3 * z(1), one};
    gd.elems.push_back({"gamma1", g1});

    Mat3 g2;
    g2.e = {-one, s3, z(5),
            zero, one, -one,
            -one, s3, z(4)};
    gd.elems.push_back({"gamma2", g2});
    return gd;
}

GeneratorData load_from_file(int d, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open generator file " + path);
    GeneratorData gd;
    gd.d = d;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::runtime_error("bad generator line: " + line);
        NamedElement e;
        e.name = line.substr(0, colon);
        e.g = parse_mat(line.substr(colon + 1), d);
        gd.elems.push_back(e);
    }
    if (gd.elems.empty()) throw std::runtime_error("no generators in " + path);
    return gd;
}

}  // namespace

GeneratorData load_generators(int d) {
    GeneratorData gd;
    if (d == 3)
        gd = builtin_eisenstein();
    else if (d == 1)
        gd = load_from_file(1, data_file("generators_d1.txt"));
    else
        throw std::runtime_error("unsupported field d=" + std::to_string(d));
    for (const auto& e : gd.elems)
        if (!is_member(e.g))
            throw std::runtime_error("generator '" + e.name + "' fails the membership check");
    return gd;
}

}  // namespace picard
