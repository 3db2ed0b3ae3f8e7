#include "machlab/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace machlab {

void write_field(const std::string& path, const SpectralField& f,
                 const std::string& name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    char header[256];
    std::snprintf(header, sizeof(header), "machlab-field n=%d L=%.17g name=%s\n",
                  f.n(), f.grid().box_length, name.c_str());
    out << header;
    const auto& p = f.phys();
    out.write(reinterpret_cast<const char*>(p.data()),
              static_cast<std::streamsize>(p.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_field: write failed on " + path);
}

NamedField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    std::string header;
    std::getline(in, header);
    int n = 0;
    double L = 0.0;
    char namebuf[128] = {0};
    if (std::sscanf(header.c_str(), "machlab-field n=%d L=%lg name=%127s", &n,
                    &L, namebuf) != 3)
        throw std::runtime_error("read_field: bad header in " + path);
    Grid g = Grid::make(n, L);
    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_field: truncated data in " + path);
    return NamedField{SpectralField::from_physical(g, std::move(vals)),
                      namebuf};
}

} // namespace machlab
