#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mmirp/core.hpp"

namespace mmirp {

// Plain-text instance format. All ids in the file are 1-based.
//
//   MMIRP-INSTANCE 1
//   customers <|I|>
//   periods <|T|>
//   vehicles <|V|>
//   products <|P|>
//   grid <side length>
//   seed <u64>
//   supplier <x> <y>
//   PRODUCTS
//   <p> <weight>                               (|P| rows)
//   VEHICLES
//   <v> <capacity> <f_1> ... <f_T>             (|V| rows)
//   CUSTOMERS
//   <i> <x> <y> <storage> <h_1> ... <h_P>      (|I| rows)
//   DEMAND
//   <i> <t> <d_1> ... <d_P>                    (|I| * |T| rows)
//   END
//
// Lines starting with '#' are comments. Reals are written in shortest
// round-trip form; travel costs are rebuilt from the locations on read.
void write_instance(std::ostream& os, const Instance& instance);
void write_instance(const std::filesystem::path& path, const Instance& instance);

// Throws ParseError naming the offending field, ValidationError on invariant
// violations.
Instance read_instance(std::istream& is);
Instance read_instance(const std::filesystem::path& path);

std::string format_real(double value);

}  // namespace mmirp
