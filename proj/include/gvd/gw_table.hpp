#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvd/rational.hpp"

namespace gvd {

// Genus-0/1 instanton-count table with the classical intersection data needed
// by the quantum Yukawa coupling and the genus-1 coefficient series.
//
// Degree vectors are fixed-length tuples (length h11) of nonnegative
// integers, zero vector forbidden.  kappa is symmetric in all three indices.
struct GWTable {
    unsigned h11 = 0;
    long chat = 0;                                     // complex dimension
    std::vector<std::vector<std::vector<long>>> kappa; // classical triple intersections
    std::vector<long> c2;                              // second-Chern integrals, one per modulus
    std::map<std::vector<unsigned long>, long> N0;     // genus-0 counts by degree vector
    std::map<std::vector<unsigned long>, long> N1;     // genus-1 counts by degree vector

    long kappa_at(unsigned a, unsigned b, unsigned c) const { return kappa[a][b][c]; }
};

// Structural validation; throws UsageError with a named defect.
void validate_gw_table(const GWTable& t);

// JSON ingestion.  Document fields: h11, chat, kappa (nested arrays),
// c2 (array), N0 and N1 (objects keyed by comma-separated degree vectors).
// Unknown fields are rejected.
GWTable parse_gw_table(const std::string& json_text);
GWTable load_gw_table(const std::string& path);

} // namespace gvd
