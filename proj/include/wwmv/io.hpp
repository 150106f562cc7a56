#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wwmv/grid.hpp"

namespace wwmv {

enum class FieldKind { wavefunction, momentum, kernel, phase2d, groupfn };

const char* kind_name(FieldKind k);
FieldKind parse_kind(const std::string& s);

// Text field file:
//   wwmv <kind> 1
//   meta n=<n> N=<N> L=<L> hbar=<hbar> mass=<m>      (groupfn: meta orders=N1,N2,...)
//   <re> <im>                                        one sample per line, row-major
struct FieldFile {
    FieldKind kind = FieldKind::wavefunction;
    GridSpec grid;
    std::vector<int> orders;
    CVec values;
};

// Number of samples a file of this kind must carry.
std::size_t expected_samples(const FieldFile& f);

void write_field(std::ostream& os, const FieldFile& f);
FieldFile read_field(std::istream& is);
void write_field_file(const std::string& path, const FieldFile& f);
FieldFile read_field_file(const std::string& path);

}  // namespace wwmv
