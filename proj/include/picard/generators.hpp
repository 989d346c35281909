#pragma once

// Named elements of the integral special unitary group per field.  For the
// Eisenstein field the list is built in; for the Gaussian field it is read
// from the shipped data file.  Every element is validated on construction.

#include <string>
#include <vector>

#include "picard/linalg.hpp"

namespace picard {

struct NamedElement {
    std::string name;
    Mat3 g;
};

struct GeneratorData {
    int d;
    std::vector<NamedElement> elems;

    const Mat3& by_name(const std::string& name) const;
    std::vector<Mat3> matrices() const;
};

// data directory resolution: $PICARD_DATA_DIR, then ./data, then ../data,
// then the compile-time source default
std::string data_dir();
std::string data_file(const std::string& name);

GeneratorData load_generators(int d);

// basic elements available for both fields
Mat3 elem_w(int d);    // antidiagonal involution-like flip
Mat3 elem_tau(int d);  // real translation, corner entry 1
Mat3 elem_eps(int d);  // diag(u, conj(u)^2, u) for the distinguished unit u

}  // namespace picard
