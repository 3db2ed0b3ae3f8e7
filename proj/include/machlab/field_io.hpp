#pragma once

#include <string>

#include "machlab/spectral_field.hpp"

namespace machlab {

// Field file: one text header line "machlab-field n=<n> L=<L> name=<name>"
// followed by n*n little-endian binary doubles, row-major.
void write_field(const std::string& path, const SpectralField& f,
                 const std::string& name);

struct NamedField {
    SpectralField field;
    std::string name;
};
NamedField read_field(const std::string& path);

} // namespace machlab
